// Copyright 2026 The sunvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sunvqe/circuit_sim.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sunvqe {

namespace {

constexpr cplx kI{0.0, 1.0};

// Inserts a zero bit at position `pos` of `k`.
inline std::uint64_t insert_zero(std::uint64_t k, int pos) {
  const std::uint64_t low = k & ((std::uint64_t{1} << pos) - 1);
  return ((k ^ low) << 1) | low;
}

template <typename F>
void for_each_pair_base(std::size_t dim, int qa, int qb, F&& f) {
  const int lo = std::min(qa, qb), hi = std::max(qa, qb);
  const std::uint64_t quarter = dim >> 2;
  for (std::uint64_t k = 0; k < quarter; ++k) f(insert_zero(insert_zero(k, lo), hi));
}

// 2x2 update on the {x_q0=1,x_q1=0}, {x_q0=0,x_q1=1} pair of amplitudes.
void apply_exchange_block(Statevector& state, int q0, int q1, cplx m11, cplx m12, cplx m21, cplx m22) {
  const std::uint64_t b0 = std::uint64_t{1} << q0, b1 = std::uint64_t{1} << q1;
  auto amps = state.amplitudes();
  for_each_pair_base(amps.size(), q0, q1, [&](std::uint64_t base) {
    cplx& a1 = amps[base | b0];
    cplx& a2 = amps[base | b1];
    const cplx x = a1, y = a2;
    a1 = m11 * x + m12 * y;
    a2 = m21 * x + m22 * y;
  });
}

// <lambda| G |phi> for the generator G of a trainable gate, U = exp(-i theta G).
cplx generator_overlap(const Statevector& lambda, const Statevector& phi, const Gate& g) {
  const std::uint64_t b0 = std::uint64_t{1} << g.q0;
  cplx acc{0.0, 0.0};
  switch (g.kind) {
    case GateKind::kRZ:
      for (std::uint64_t w = 0; w < phi.dimension(); ++w) {
        const cplx v = std::conj(lambda[w]) * phi[w];
        acc += (w & b0) ? -v : v;
      }
      break;
    case GateKind::kIswapLike: {
      const std::uint64_t b1 = std::uint64_t{1} << g.q1;
      for_each_pair_base(phi.dimension(), g.q0, g.q1, [&](std::uint64_t base) {
        acc += std::conj(lambda[base | b0]) * phi[base | b1] + std::conj(lambda[base | b1]) * phi[base | b0];
      });
      break;
    }
    case GateKind::kCRZ: {
      const std::uint64_t b1 = std::uint64_t{1} << g.q1;
      for_each_pair_base(phi.dimension(), g.q0, g.q1, [&](std::uint64_t base) {
        acc += std::conj(lambda[base | b1]) * phi[base | b1] - std::conj(lambda[base | b1 | b0]) * phi[base | b1 | b0];
      });
      break;
    }
    default:
      throw std::logic_error("generator_overlap: gate has no parameter");
  }
  return acc;
}

void apply_inverse(Statevector& state, const Gate& g, double theta) {
  if (g.kind == GateKind::kHopBasis) {
    const Eigen::Matrix4cd m = gate_matrix(GateKind::kHopBasis, g.angle).adjoint();
    apply_exchange_block(state, g.q0, g.q1, m(1, 1), m(1, 2), m(2, 1), m(2, 2));
    return;
  }
  apply_gate(state, g, -theta);
}

}  // namespace

Statevector::Statevector(int qubits, std::uint64_t word) : qubits_(qubits) {
  if (qubits < 0 || qubits > 30) throw std::invalid_argument("Statevector: qubit count outside [0, 30]");
  if (qubits < 64 && (word >> qubits) != 0) throw std::invalid_argument("Statevector: word wider than the register");
  amps_.assign(std::size_t{1} << qubits, cplx{0.0, 0.0});
  amps_[word] = 1.0;
}

Statevector::Statevector(int qubits, std::vector<cplx> amplitudes) : qubits_(qubits), amps_(std::move(amplitudes)) {
  if (amps_.size() != (std::size_t{1} << qubits)) throw std::invalid_argument("Statevector: wrong amplitude count");
}

double Statevector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void Circuit::check_qubit(int q) const {
  if (q < 0 || q >= qubits_) throw std::out_of_range("Circuit: qubit " + std::to_string(q) + " out of range");
}

void Circuit::add_x(int q) {
  check_qubit(q);
  gates_.push_back({GateKind::kX, q, -1, -1, 0.0});
}

int Circuit::add_rz(int q) {
  check_qubit(q);
  gates_.push_back({GateKind::kRZ, q, -1, params_, 0.0});
  return params_++;
}

int Circuit::add_iswap_like(int q0, int q1) {
  check_qubit(q0);
  check_qubit(q1);
  if (q0 == q1) throw std::invalid_argument("Circuit: two-qubit gate on a single qubit");
  gates_.push_back({GateKind::kIswapLike, q0, q1, params_, 0.0});
  return params_++;
}

int Circuit::add_crz(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw std::invalid_argument("Circuit: two-qubit gate on a single qubit");
  gates_.push_back({GateKind::kCRZ, target, control, params_, 0.0});
  return params_++;
}

void Circuit::add_hop_basis(int q0, int q1, double angle) {
  check_qubit(q0);
  check_qubit(q1);
  if (q0 == q1) throw std::invalid_argument("Circuit: two-qubit gate on a single qubit");
  gates_.push_back({GateKind::kHopBasis, q0, q1, -1, angle});
}

void Circuit::append(const Circuit& other) {
  if (other.qubits_ != qubits_) throw std::invalid_argument("Circuit::append: qubit count mismatch");
  for (Gate g : other.gates_) {
    if (g.slot >= 0) g.slot = params_++;
    gates_.push_back(g);
  }
}

Eigen::Matrix4cd gate_matrix(GateKind kind, double theta) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  switch (kind) {
    case GateKind::kX:
      m.topLeftCorner<2, 2>() << 0, 1, 1, 0;
      break;
    case GateKind::kRZ:
      m(0, 0) = std::exp(-kI * theta);
      m(1, 1) = std::exp(kI * theta);
      break;
    case GateKind::kIswapLike:
      m(1, 1) = m(2, 2) = std::cos(theta);
      m(1, 2) = m(2, 1) = -kI * std::sin(theta);
      break;
    case GateKind::kCRZ:
      m(2, 2) = std::exp(-kI * theta);
      m(3, 3) = std::exp(kI * theta);
      break;
    case GateKind::kHopBasis: {
      const double r = 1.0 / std::numbers::sqrt2;
      const cplx em = std::exp(-kI * (theta / 2.0)), ep = std::exp(kI * (theta / 2.0));
      m(1, 1) = em * r;
      m(1, 2) = ep * r;
      m(2, 1) = -em * r;
      m(2, 2) = ep * r;
      break;
    }
  }
  return m;
}

void apply_gate(Statevector& state, const Gate& gate, double theta) {
  auto amps = state.amplitudes();
  const std::uint64_t b0 = std::uint64_t{1} << gate.q0;
  switch (gate.kind) {
    case GateKind::kX:
      for (std::uint64_t w = 0; w < amps.size(); ++w)
        if (!(w & b0)) std::swap(amps[w], amps[w | b0]);
      break;
    case GateKind::kRZ: {
      const cplx lo = std::exp(-kI * theta), hi = std::exp(kI * theta);
      for (std::uint64_t w = 0; w < amps.size(); ++w) amps[w] *= (w & b0) ? hi : lo;
      break;
    }
    case GateKind::kIswapLike: {
      const cplx c = std::cos(theta), s = -kI * std::sin(theta);
      apply_exchange_block(state, gate.q0, gate.q1, c, s, s, c);
      break;
    }
    case GateKind::kCRZ: {
      const std::uint64_t b1 = std::uint64_t{1} << gate.q1;
      const cplx p10 = std::exp(-kI * theta), p11 = std::exp(kI * theta);
      for_each_pair_base(amps.size(), gate.q0, gate.q1, [&](std::uint64_t base) {
        amps[base | b1] *= p10;
        amps[base | b1 | b0] *= p11;
      });
      break;
    }
    case GateKind::kHopBasis: {
      const Eigen::Matrix4cd m = gate_matrix(GateKind::kHopBasis, gate.angle);
      apply_exchange_block(state, gate.q0, gate.q1, m(1, 1), m(1, 2), m(2, 1), m(2, 2));
      break;
    }
  }
}

void run_on(Statevector& state, const Circuit& circuit, std::span<const double> params) {
  if (static_cast<int>(params.size()) != circuit.parameter_count())
    throw std::invalid_argument("run: expected " + std::to_string(circuit.parameter_count()) + " parameters, got " +
                                std::to_string(params.size()));
  if (state.qubits() != circuit.qubits()) throw std::invalid_argument("run: qubit count mismatch");
  for (const Gate& g : circuit.gates()) apply_gate(state, g, g.slot >= 0 ? params[g.slot] : 0.0);
}

Statevector run(const Circuit& circuit, std::span<const double> params, std::uint64_t initial) {
  Statevector state(circuit.qubits(), initial);
  run_on(state, circuit, params);
  return state;
}

double energy_and_gradient(const Circuit& circuit, std::span<const double> params, std::uint64_t initial,
                           const SparseHermitian& H, std::span<double> gradient) {
  if (gradient.size() != params.size())
    throw std::invalid_argument("energy_and_gradient: gradient length differs from parameter count");
  Statevector phi = run(circuit, params, initial);
  if (H.dimension() != static_cast<std::int64_t>(phi.dimension()))
    throw std::invalid_argument("energy_and_gradient: operator dimension mismatch");
  std::vector<cplx> h_phi(phi.dimension());
  H.apply(phi.amplitudes(), h_phi);
  double energy = 0.0;
  for (std::uint64_t w = 0; w < phi.dimension(); ++w) energy += (std::conj(phi[w]) * h_phi[w]).real();
  std::fill(gradient.begin(), gradient.end(), 0.0);
  Statevector lambda(circuit.qubits(), std::move(h_phi));
  const auto& gates = circuit.gates();
  for (std::size_t k = gates.size(); k-- > 0;) {
    const Gate& g = gates[k];
    const double theta = g.slot >= 0 ? params[g.slot] : 0.0;
    if (g.slot >= 0) gradient[g.slot] += 2.0 * generator_overlap(lambda, phi, g).imag();
    apply_inverse(phi, g, theta);
    apply_inverse(lambda, g, theta);
  }
  return energy;
}

double reduced_entropy(const Statevector& state, std::span<const int> subset) {
  const int n = state.qubits();
  std::vector<char> in_a(n, 0);
  for (int q : subset) {
    if (q < 0 || q >= n) throw RangeError("subset: qubit index out of range");
    in_a[q] = 1;
  }
  const int na = static_cast<int>(std::count(in_a.begin(), in_a.end(), 1));
  if (na == 0 || na == n) throw RangeError("subset: must be a proper nonempty subset");
  // psi(a, b) as a (2^na x 2^nb) matrix
  Eigen::MatrixXcd A(Eigen::Index{1} << na, Eigen::Index{1} << (n - na));
  for (std::uint64_t w = 0; w < state.dimension(); ++w) {
    std::uint64_t a = 0, b = 0;
    int ia = 0, ib = 0;
    for (int q = 0; q < n; ++q) {
      const std::uint64_t bitv = (w >> q) & 1u;
      if (in_a[q]) a |= bitv << ia++;
      else b |= bitv << ib++;
    }
    A(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = state[w];
  }
  const Eigen::MatrixXcd gram = A.rows() <= A.cols() ? Eigen::MatrixXcd(A * A.adjoint())
                                                     : Eigen::MatrixXcd(A.adjoint() * A);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  double entropy = 0.0;
  for (double p : solver.eigenvalues())
    if (p > 1e-15) entropy -= p * std::log(p);
  return entropy;
}

std::vector<int> half_chain(int qubits) {
  std::vector<int> cut(static_cast<std::size_t>(qubits / 2));
  for (int q = 0; q < qubits / 2; ++q) cut[static_cast<std::size_t>(q)] = q;
  return cut;
}

std::map<std::uint64_t, std::int64_t> sample_counts(const Statevector& state, std::span<const int> measured,
                                                    std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("sample_counts: shots must be >= 1");
  for (int q : measured)
    if (q < 0 || q >= state.qubits()) throw std::out_of_range("sample_counts: measured qubit out of range");
  std::vector<double> marginal(std::size_t{1} << measured.size(), 0.0);
  for (std::uint64_t w = 0; w < state.dimension(); ++w) {
    std::uint64_t outcome = 0;
    for (std::size_t k = 0; k < measured.size(); ++k) outcome |= ((w >> measured[k]) & 1u) << k;
    marginal[outcome] += std::norm(state[w]);
  }
  Rng rng(seed);
  const auto counts = sample_multinomial(marginal, shots, rng);
  std::map<std::uint64_t, std::int64_t> histogram;
  for (std::size_t k = 0; k < counts.size(); ++k)
    if (counts[k] > 0) histogram[k] = counts[k];
  return histogram;
}

}  // namespace sunvqe
