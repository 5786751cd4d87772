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

#include "mclab/sampler/circuit.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <set>

#include "mclab/core/error.hpp"

namespace mclab {

namespace {

using kernels::Complex;

GateKind parse_kind(const std::string& s) {
  if (s == "H") return GateKind::kH;
  if (s == "X") return GateKind::kX;
  if (s == "CNOT") return GateKind::kCnot;
  if (s == "T") return GateKind::kT;
  if (s == "CZ") return GateKind::kCz;
  if (s == "RZ") return GateKind::kRz;
  fail(ErrorCode::kConfigInvalid, "unknown gate '" + s + "'");
}

const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::kH: return "H";
    case GateKind::kX: return "X";
    case GateKind::kCnot: return "CNOT";
    case GateKind::kT: return "T";
    case GateKind::kCz: return "CZ";
    case GateKind::kRz: return "RZ";
  }
  return "?";
}

unsigned arity(GateKind k) { return (k == GateKind::kCnot || k == GateKind::kCz) ? 2 : 1; }

kernels::Mat2 matrix(const Gate& g) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::kH: return {Complex{h, 0}, {h, 0}, {h, 0}, {-h, 0}};
    case GateKind::kX: return {Complex{0, 0}, {1, 0}, {1, 0}, {0, 0}};
    case GateKind::kT: return {Complex{1, 0}, {0, 0}, {0, 0}, std::polar(1.0, M_PI / 4)};
    case GateKind::kRz: return {std::polar(1.0, -g.angle / 2), {0, 0}, {0, 0}, std::polar(1.0, g.angle / 2)};
    default: fail(ErrorCode::kConfigInvalid, "not a single-qubit gate");
  }
}

void apply_cnot(StateVector& s, unsigned control, unsigned target) {
  const std::size_t cm = std::size_t{1} << control, tm = std::size_t{1} << target;
  for (std::size_t i = 0; i < s.size(); ++i)
    if ((i & cm) && !(i & tm)) std::swap(s[i], s[i | tm]);
}

void apply_cz(StateVector& s, unsigned a, unsigned b) {
  const std::size_t m = (std::size_t{1} << a) | (std::size_t{1} << b);
  for (std::size_t i = 0; i < s.size(); ++i)
    if ((i & m) == m) s[i] = -s[i];
}

}  // namespace

void QuantumCircuit::validate() const {
  if (qubits == 0) fail(ErrorCode::kConfigInvalid, "circuit with zero qubits");
  if (qubits > kMaxQubits) fail(ErrorCode::kTooManyQubits, std::to_string(qubits) + " qubits > 12");
  for (const auto& g : gates) {
    if (g.targets.size() != arity(g.kind)) fail(ErrorCode::kConfigInvalid, std::string(kind_name(g.kind)) + " arity");
    for (auto t : g.targets)
      if (t >= qubits) fail(ErrorCode::kConfigInvalid, "gate target out of range");
    if (g.targets.size() == 2 && g.targets[0] == g.targets[1]) fail(ErrorCode::kConfigInvalid, "repeated gate target");
  }
  if (measured.empty()) fail(ErrorCode::kConfigInvalid, "no measured qubits");
  std::set<unsigned> seen;
  for (auto q : measured)
    if (q >= qubits || !seen.insert(q).second) fail(ErrorCode::kConfigInvalid, "measured qubits must be distinct and in range");
}

StateVector circuit_statevector(const QuantumCircuit& c) {
  c.validate();
  StateVector s(std::size_t{1} << c.qubits, Complex{0, 0});
  s[0] = 1;
  std::vector<double> p(s.size());
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case GateKind::kCnot: apply_cnot(s, g.targets[0], g.targets[1]); break;
      case GateKind::kCz: apply_cz(s, g.targets[0], g.targets[1]); break;
      default: kernels::apply_1q(s, g.targets[0], matrix(g)); break;
    }
    kernels::norm_sq(s, p);
    if (std::fabs(kernels::sum(p) - 1.0) > QuantumCircuit::kNormTolerance)
      fail(ErrorCode::kConfigInvalid, "statevector norm drifted beyond 1e-10");
  }
  return s;
}

BitStringDist circuit_exact_dist(const QuantumCircuit& c) {
  const StateVector s = circuit_statevector(c);
  std::vector<double> p(s.size());
  kernels::norm_sq(s, p);
  const unsigned k = static_cast<unsigned>(c.measured.size());
  std::vector<Rational> out(std::size_t{1} << k, Rational(0));
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::uint64_t v = 0;
    for (unsigned j = 0; j < k; ++j) v = (v << 1) | ((i >> c.measured[j]) & 1u);
    out[v] += from_double(p[i]);
  }
  Rational total(0);
  for (const auto& q : out) total += q;
  if (std::fabs(total.get_d() - 1.0) > QuantumCircuit::kNormTolerance)
    fail(ErrorCode::kConfigInvalid, "Born probabilities off unit mass by more than 1e-10");
  for (auto& q : out) q /= total;
  return BitStringDist::from_dense(k, std::move(out));
}

QuantumCircuit circuit_from_json(const std::string& text) {
  QuantumCircuit c;
  try {
    auto j = nlohmann::json::parse(text);
    c.qubits = j.at("qubits").get<unsigned>();
    for (const auto& g : j.at("gates")) {
      Gate gate{parse_kind(g.at(0).get<std::string>()), g.at(1).get<std::vector<unsigned>>(), 0.0};
      if (gate.kind == GateKind::kRz) {
        if (g.size() < 3) fail(ErrorCode::kConfigInvalid, "RZ needs an angle");
        gate.angle = g.at(2).get<double>();
      }
      c.gates.push_back(std::move(gate));
    }
    c.measured = j.at("measured").get<std::vector<unsigned>>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("circuit JSON: ") + e.what());
  }
  c.validate();
  return c;
}

std::string circuit_to_json(const QuantumCircuit& c) {
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : c.gates) {
    nlohmann::json e = {kind_name(g.kind), g.targets};
    if (g.kind == GateKind::kRz) e.push_back(g.angle);
    gates.push_back(e);
  }
  return nlohmann::json{{"qubits", c.qubits}, {"gates", gates}, {"measured", c.measured}}.dump();
}

QuantumCircuit random_clifford_t(unsigned qubits, unsigned depth, RandomStream& rng) {
  QuantumCircuit c;
  c.qubits = qubits;
  const GateKind kinds[] = {GateKind::kH, GateKind::kT, GateKind::kX, GateKind::kCnot, GateKind::kCz};
  for (unsigned d = 0; d < depth; ++d) {
    GateKind k = kinds[rng.uniform_below(qubits >= 2 ? 5 : 3)];
    Gate g{k, {}, 0.0};
    unsigned a = static_cast<unsigned>(rng.uniform_below(qubits));
    g.targets.push_back(a);
    if (arity(k) == 2) {
      unsigned b = static_cast<unsigned>(rng.uniform_below(qubits - 1));
      g.targets.push_back(b >= a ? b + 1 : b);
    }
    c.gates.push_back(std::move(g));
  }
  for (unsigned q = 0; q < qubits; ++q) c.measured.push_back(q);
  return c;
}

CircuitSampler::CircuitSampler(QuantumCircuit c, std::string name)
    : circuit_(std::move(c)), name_(std::move(name)), table_(circuit_exact_dist(circuit_), name_) {}

}  // namespace mclab
