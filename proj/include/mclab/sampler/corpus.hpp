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

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mclab/dist/registry.hpp"

namespace mclab {

// Stable corpus codes. Codes are part of program encodings, so never renumber.
enum CorpusId : std::uint64_t {
  kCorpusUniform = 1,
  kCorpusBernoulli34 = 2,
  kCorpusBernoulli910 = 3,
  kCorpusPointZero = 4,
  kCorpusSticky = 5,
  kCorpusPopcount = 6,
  kCorpusCircuit = 7,
  kCorpusSpiky = 8,
  kCorpusAndBlocks = 9,
};

struct CorpusEntry {
  std::uint64_t id;
  std::string name;
  BitStringDist dist;
};

/// Builds corpus distribution `id` at length n; nullopt when the id is unknown
/// or the backend cannot produce length n (the circuit entry stops at 12).
std::optional<BitStringDist> make_corpus_dist(std::uint64_t id, unsigned n);
std::string corpus_name(std::uint64_t id);
std::vector<std::uint64_t> corpus_ids();

/// Every corpus distribution available at length n, in id order.
std::vector<CorpusEntry> corpus(unsigned n);

/// Thread-safe memoizing registry over the corpus.
class CorpusRegistry final : public DistributionRegistry {
 public:
  const BitStringDist* find(std::uint64_t id, unsigned n) const override;

  /// Registers an extra distribution under a non-corpus id (>= 1000); bindings
  /// are permanent.
  void add(std::uint64_t id, const BitStringDist& d);

 private:
  mutable std::mutex mu_;
  mutable std::map<std::pair<std::uint64_t, unsigned>, std::unique_ptr<BitStringDist>> cache_;
};

}  // namespace mclab
