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

#include <string>
#include <vector>

#include "mclab/kernels/kernels.hpp"
#include "mclab/sampler/sampler.hpp"

namespace mclab {

enum class GateKind { kH, kX, kCnot, kT, kCz, kRz };

struct Gate {
  GateKind kind;
  std::vector<unsigned> targets;  // CNOT: {control, target}
  double angle = 0.0;             // RZ only, radians
};

/// Qubit q is bit q of the basis-state index. Output bit j is the measured
/// value of qubit measured[j].
struct QuantumCircuit {
  static constexpr unsigned kMaxQubits = 12;
  static constexpr double kNormTolerance = 1e-10;

  unsigned qubits = 0;
  std::vector<Gate> gates;
  std::vector<unsigned> measured;

  void validate() const;
};

using StateVector = std::vector<kernels::Complex>;

StateVector circuit_statevector(const QuantumCircuit& c);

/// Born distribution over measured bits, renormalized exactly.
BitStringDist circuit_exact_dist(const QuantumCircuit& c);

QuantumCircuit circuit_from_json(const std::string& text);
std::string circuit_to_json(const QuantumCircuit& c);

/// Random circuit over {H, T, CNOT, CZ, X} measuring every qubit.
QuantumCircuit random_clifford_t(unsigned qubits, unsigned depth, RandomStream& rng);

class CircuitSampler final : public Sampler {
 public:
  explicit CircuitSampler(QuantumCircuit c, std::string name = "circuit");

  unsigned n() const override { return table_.n(); }
  BitString sample(RandomStream& rng) const override { return table_.sample(rng); }
  std::optional<BitStringDist> exact_dist() const override { return table_.exact_dist(); }
  std::string name() const override { return name_; }
  const QuantumCircuit& circuit() const noexcept { return circuit_; }

 private:
  QuantumCircuit circuit_;
  std::string name_;
  TableSampler table_;
};

}  // namespace mclab
