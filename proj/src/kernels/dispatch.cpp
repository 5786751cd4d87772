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

#include <atomic>
#include <cstdlib>
#include <string>

#include "mclab/core/error.hpp"
#include "mclab/kernels/kernels.hpp"

namespace mclab::kernels {

std::string_view to_string(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
  if (isa == Isa::kScalar) return true;
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

Isa detect() {
  if (const char* env = std::getenv("MCLAB_ISA"); env != nullptr && std::string(env) == "scalar") return Isa::kScalar;
  return isa_supported(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> s{&table_for(detect())};
  return s;
}

std::atomic<Isa>& isa_slot() {
  static std::atomic<Isa> s{detect()};
  return s;
}

}  // namespace

const KernelTable& table_for(Isa isa) {
  if (isa == Isa::kAvx2) {
    if (!isa_supported(Isa::kAvx2)) fail(ErrorCode::kConfigInvalid, "AVX2 not supported on this CPU");
    return avx2_table();
  }
  return scalar_table();
}

Isa active_isa() { return isa_slot().load(std::memory_order_relaxed); }

const KernelTable& active() { return *slot().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  const KernelTable& t = table_for(isa);
  slot().store(&t);
  isa_slot().store(isa);
}

}  // namespace mclab::kernels
