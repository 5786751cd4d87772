// Copyright 2026 The mclab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// The reference description machine.
//
// A program is a sequence of instructions, each a 3-bit opcode (MSB first)
// followed by its operands. Integers are Elias-gamma coded. Every
// instruction dispatch costs one step and every output bit written costs one
// step.
//
//   000 LIT      emit all remaining program bits, halt
//   001 BIT b    append bit b
//   010 DUP      out <- out || out
//   011 CMP      out <- out || not(out)
//   100 NOT      out <- not(out)
//   101 REP k    append the last output bit k more times (k >= 1)
//   110 LOOP k   jump to the program start; this instruction does so k times
//                in total over the run, then falls through
//   111 INDEX g(id) g(n) g(s + 1) g(d + 1) i
//                High = {y in {0,1}^n : Pr[y <- registry(id, n)] >=
//                (99/100) 2^(-s + d/2)}; reads a fixed-width index i of
//                ceil(log2 |High|) bits, emits member i (0-based, lexicographic)
//                of High, halts. Costs 2^n steps plus the n output bits.
//
// Running off the end after a complete instruction halts normally. A
// truncated operand, an out-of-range index, an unknown distribution, or output
// longer than max_output_len is Invalid.

#include <cstdint>
#include <optional>
#include <vector>

#include "mclab/core/bitstring.hpp"
#include "mclab/dist/registry.hpp"

namespace mclab {

inline constexpr unsigned kLiteralHeaderBits = 3;
inline constexpr unsigned kMaxProgramLen = 24;

enum class Opcode : std::uint8_t { kLit = 0, kBit, kDup, kCmp, kNot, kRep, kLoop, kIndex };

struct UtmConfig {
  std::uint64_t step_cap = 10000;
  unsigned max_program_len = 12;
  unsigned max_output_len = 24;
  /// Backs INDEX; nullptr makes every INDEX instruction Invalid.
  const DistributionRegistry* registry = nullptr;

  /// ConfigInvalid unless step_cap >= 1, 1 <= max_program_len <= 24 and
  /// 1 <= max_output_len <= 64.
  void validate() const;
};

struct Program {
  BitString bits;

  static Program from_bits(const BitString& bits);
  static Program parse(std::string_view text) { return from_bits(BitString::parse(text)); }
  unsigned length() const noexcept { return bits.size(); }
};

enum class RunStatus { kHalted, kTimeout, kInvalid };

struct RunResult {
  RunStatus status = RunStatus::kInvalid;
  BitString output;
  std::uint64_t steps = 0;

  bool halted() const noexcept { return status == RunStatus::kHalted; }
};

/// Pure function of (p, cfg). Programs longer than cfg.max_program_len are
/// rejected with ConfigInvalid.
RunResult run_program(const Program& p, const UtmConfig& cfg);

/// Elias-gamma code of k >= 1.
BitString elias_gamma(std::uint64_t k);

/// Width in bits of the INDEX field for a High set of the given size.
unsigned index_width(std::uint64_t high_size);

}  // namespace mclab
