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

#include "mclab/sampler/corpus.hpp"

#include <algorithm>

#include "mclab/core/error.hpp"
#include "mclab/sampler/circuit.hpp"
#include "mclab/sampler/sampler.hpp"

namespace mclab {

namespace {

// x_1 fair; each later bit repeats its predecessor with probability 7/8.
BitStringDist sticky(unsigned n) {
  std::vector<Rational> p(std::size_t{1} << n);
  const Rational stay(7, 8), flip(1, 8);
  for (std::uint64_t v = 0; v < p.size(); ++v) {
    Rational q(1, 2);
    for (unsigned i = 1; i < n; ++i) q *= (((v >> (n - i)) & 1u) == ((v >> (n - 1 - i)) & 1u)) ? stay : flip;
    p[v] = q;
  }
  return BitStringDist::from_dense(n, std::move(p));
}

// Half uniform, half spread over the four patterns 0^n, 1^n, (01)^*, (10)^*.
BitStringDist spiky(unsigned n) {
  std::vector<Rational> p(std::size_t{1} << n, pow2(-static_cast<long>(n) - 1));
  std::uint64_t alt = 0;
  for (unsigned i = 0; i < n; ++i) alt = (alt << 1) | (i & 1u);
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> spikes = {0, mask, alt, alt ^ mask};
  std::sort(spikes.begin(), spikes.end());
  spikes.erase(std::unique(spikes.begin(), spikes.end()), spikes.end());
  const Rational share = Rational(1, 2) / static_cast<long>(spikes.size());
  for (auto s : spikes) p[s] += share;
  return BitStringDist::from_dense(n, std::move(p));
}

// Layered H / T / CNOT / RZ circuit on n qubits, measured in qubit order.
QuantumCircuit corpus_circuit(unsigned n) {
  QuantumCircuit c;
  c.qubits = n;
  for (unsigned q = 0; q < n; ++q) c.gates.push_back({GateKind::kH, {q}, 0.0});
  for (unsigned q = 0; q < n; q += 2) c.gates.push_back({GateKind::kT, {q}, 0.0});
  for (unsigned q = 0; q + 1 < n; ++q) c.gates.push_back({GateKind::kCnot, {q, q + 1}, 0.0});
  for (unsigned q = 1; q < n; q += 2) c.gates.push_back({GateKind::kH, {q}, 0.0});
  c.gates.push_back({GateKind::kRz, {0}, 0.7});
  for (unsigned q = 0; q + 1 < n; q += 3) c.gates.push_back({GateKind::kCz, {q, q + 1}, 0.0});
  for (unsigned q = 0; q < n; q += 3) c.gates.push_back({GateKind::kH, {q}, 0.0});
  c.gates.push_back({GateKind::kT, {n - 1}, 0.0});
  c.gates.push_back({GateKind::kH, {n - 1}, 0.0});
  for (unsigned q = 0; q < n; ++q) c.measured.push_back(q);
  return c;
}

}  // namespace

std::string corpus_name(std::uint64_t id) {
  switch (id) {
    case kCorpusUniform: return "uniform";
    case kCorpusBernoulli34: return "bernoulli_3_4";
    case kCorpusBernoulli910: return "bernoulli_9_10";
    case kCorpusPointZero: return "point_zero";
    case kCorpusSticky: return "sticky_7_8";
    case kCorpusPopcount: return "popcount_t12";
    case kCorpusCircuit: return "circuit_layered";
    case kCorpusSpiky: return "spiky_half";
    case kCorpusAndBlocks: return "and_blocks";
    default: return "unknown";
  }
}

std::vector<std::uint64_t> corpus_ids() {
  return {kCorpusUniform, kCorpusBernoulli34, kCorpusBernoulli910, kCorpusPointZero, kCorpusSticky,
          kCorpusPopcount, kCorpusCircuit, kCorpusSpiky, kCorpusAndBlocks};
}

std::optional<BitStringDist> make_corpus_dist(std::uint64_t id, unsigned n) {
  if (n == 0 || n > BitStringDist::kDenseCap) return std::nullopt;
  switch (id) {
    case kCorpusUniform: return BitStringDist::uniform(n);
    case kCorpusBernoulli34: return BitStringDist::bernoulli_product(n, Rational(3, 4));
    case kCorpusBernoulli910: return BitStringDist::bernoulli_product(n, Rational(9, 10));
    case kCorpusPointZero: return BitStringDist::point_mass(BitString::zeros(n));
    case kCorpusSticky: return sticky(n);
    case kCorpusPopcount: return SeededSampler::popcount(12, n).seeded_exact_dist();
    case kCorpusCircuit:
      if (n > QuantumCircuit::kMaxQubits) return std::nullopt;
      return circuit_exact_dist(corpus_circuit(n));
    case kCorpusSpiky: return spiky(n);
    case kCorpusAndBlocks: {
      const unsigned t = std::min(2 * n, SeededSampler::kMaxEnumeratedSeed);
      if (t < n) return std::nullopt;
      return SeededSampler::and_blocks(t, n).seeded_exact_dist();
    }
    default: return std::nullopt;
  }
}

std::vector<CorpusEntry> corpus(unsigned n) {
  std::vector<CorpusEntry> out;
  for (auto id : corpus_ids())
    if (auto d = make_corpus_dist(id, n)) out.push_back({id, corpus_name(id), std::move(*d)});
  return out;
}

const BitStringDist* CorpusRegistry::find(std::uint64_t id, unsigned n) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(id, n);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second.get();
  auto d = make_corpus_dist(id, n);
  if (!d) return nullptr;
  auto [it, _] = cache_.emplace(key, std::make_unique<BitStringDist>(std::move(*d)));
  return it->second.get();
}

void CorpusRegistry::add(std::uint64_t id, const BitStringDist& d) {
  if (id < 1000) fail(ErrorCode::kConfigInvalid, "extra registry ids start at 1000");
  std::lock_guard<std::mutex> lock(mu_);
  if (!cache_.emplace(std::make_pair(id, d.n()), std::make_unique<BitStringDist>(d)).second)
    fail(ErrorCode::kConfigInvalid, "registry id already bound at this length");
}

}  // namespace mclab
