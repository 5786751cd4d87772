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

#include "mclab/utm/machine.hpp"

#include <map>

#include "mclab/core/error.hpp"

namespace mclab {

void UtmConfig::validate() const {
  if (step_cap < 1) fail(ErrorCode::kConfigInvalid, "step_cap must be >= 1");
  if (max_program_len < 1 || max_program_len > kMaxProgramLen)
    fail(ErrorCode::kConfigInvalid, "max_program_len must be in [1, 24]");
  if (max_output_len < 1 || max_output_len > BitString::kMaxLen)
    fail(ErrorCode::kConfigInvalid, "max_output_len must be in [1, 64]");
}

Program Program::from_bits(const BitString& bits) {
  if (bits.empty()) fail(ErrorCode::kConfigInvalid, "programs have length >= 1");
  return Program{bits};
}

BitString elias_gamma(std::uint64_t k) {
  if (k == 0) fail(ErrorCode::kConfigInvalid, "Elias-gamma needs k >= 1");
  const unsigned bits = 64 - static_cast<unsigned>(__builtin_clzll(k));
  if (2 * bits - 1 > BitString::kMaxLen) fail(ErrorCode::kConfigInvalid, "Elias-gamma code above 64 bits");
  return BitString::zeros(bits - 1).concat(BitString(k, bits));
}

unsigned index_width(std::uint64_t high_size) {
  if (high_size <= 1) return 0;
  return 64 - static_cast<unsigned>(__builtin_clzll(high_size - 1));
}

namespace {

class Reader {
 public:
  explicit Reader(const BitString& bits) : bits_(bits) {}
  bool done() const { return pos_ >= bits_.size(); }
  void restart() { pos_ = 0; }
  unsigned pos() const { return pos_; }
  std::optional<bool> bit() {
    if (done()) return std::nullopt;
    return bits_[pos_++];
  }
  std::optional<std::uint64_t> fixed(unsigned width) {
    if (pos_ + width > bits_.size()) return std::nullopt;
    std::uint64_t v = 0;
    for (unsigned k = 0; k < width; ++k) v = (v << 1) | bits_[pos_++];
    return v;
  }
  std::optional<std::uint64_t> gamma() {
    unsigned zeros = 0;
    for (;;) {
      auto b = bit();
      if (!b) return std::nullopt;
      if (*b) break;
      if (++zeros > 62) return std::nullopt;
    }
    std::uint64_t v = 1;
    for (unsigned k = 0; k < zeros; ++k) {
      auto b = bit();
      if (!b) return std::nullopt;
      v = (v << 1) | *b;
    }
    return v;
  }
  BitString rest() { auto r = bits_.suffix_from(pos_); pos_ = bits_.size(); return r; }

 private:
  const BitString& bits_;
  unsigned pos_ = 0;
};

}  // namespace

RunResult run_program(const Program& p, const UtmConfig& cfg) {
  if (p.length() > cfg.max_program_len) fail(ErrorCode::kConfigInvalid, "program longer than max_program_len");
  RunResult r;
  if (cfg.step_cap == 0) {
    r.status = RunStatus::kTimeout;
    return r;
  }
  Reader in(p.bits);
  BitString out;
  std::map<unsigned, std::uint64_t> loop_left;  // by instruction offset

  auto invalid = [&] { r.status = RunStatus::kInvalid; r.output = BitString(); return r; };
  // Charges `cost` steps; false on exhaustion.
  auto charge = [&](std::uint64_t cost) {
    if (cost > cfg.step_cap || r.steps > cfg.step_cap - cost) {
      r.steps = cfg.step_cap;
      return false;
    }
    r.steps += cost;
    return true;
  };
  auto timeout = [&] { r.status = RunStatus::kTimeout; r.output = BitString(); return r; };

  while (!in.done()) {
    const unsigned at = in.pos();
    auto op = in.fixed(3);
    if (!op) return invalid();
    if (!charge(1)) return timeout();
    switch (static_cast<Opcode>(*op)) {
      case Opcode::kLit: {
        BitString payload = in.rest();
        if (out.size() + payload.size() > cfg.max_output_len) return invalid();
        if (!charge(payload.size())) return timeout();
        out = out.concat(payload);
        r.status = RunStatus::kHalted;
        r.output = out;
        return r;
      }
      case Opcode::kBit: {
        auto b = in.bit();
        if (!b) return invalid();
        if (out.size() + 1 > cfg.max_output_len) return invalid();
        if (!charge(1)) return timeout();
        out = out.append(*b);
        break;
      }
      case Opcode::kDup:
      case Opcode::kCmp: {
        if (2 * out.size() > cfg.max_output_len) return invalid();
        if (!charge(out.size())) return timeout();
        out = out.concat(static_cast<Opcode>(*op) == Opcode::kDup ? out : out.complement());
        break;
      }
      case Opcode::kNot:
        if (!charge(out.size())) return timeout();
        out = out.complement();
        break;
      case Opcode::kRep: {
        auto k = in.gamma();
        if (!k || out.empty()) return invalid();
        if (out.size() + *k > cfg.max_output_len) return invalid();
        if (!charge(*k)) return timeout();
        const bool last = out[out.size() - 1];
        for (std::uint64_t j = 0; j < *k; ++j) out = out.append(last);
        break;
      }
      case Opcode::kLoop: {
        auto k = in.gamma();
        if (!k) return invalid();
        auto [it, fresh] = loop_left.emplace(at, *k);
        if (it->second > 0) {
          --it->second;
          in.restart();
        }
        break;
      }
      case Opcode::kIndex: {
        auto id = in.gamma();
        auto n = id ? in.gamma() : std::nullopt;
        auto s1 = n ? in.gamma() : std::nullopt;
        auto d1 = s1 ? in.gamma() : std::nullopt;
        if (!d1 || cfg.registry == nullptr) return invalid();
        if (*n > BitStringDist::kDenseCap || *s1 > 64 || *d1 > 128) return invalid();
        if (out.size() + *n > cfg.max_output_len) return invalid();
        if (!charge(std::uint64_t{1} << *n)) return timeout();
        const auto* high = cfg.registry->high(*id, static_cast<unsigned>(*n), static_cast<unsigned>(*s1 - 1),
                                              static_cast<unsigned>(*d1 - 1));
        if (high == nullptr || high->empty()) return invalid();
        auto idx = in.fixed(index_width(high->size()));
        if (!idx || *idx >= high->size()) return invalid();
        if (!charge(*n)) return timeout();
        r.status = RunStatus::kHalted;
        r.output = out.concat((*high)[*idx]);
        return r;
      }
    }
  }
  r.status = RunStatus::kHalted;
  r.output = out;
  return r;
}

}  // namespace mclab
