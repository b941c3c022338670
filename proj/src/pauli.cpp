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

#include "sunvqe/pauli.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sunvqe {

namespace {

std::uint64_t mask_for(int qubits) { return qubits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << qubits) - 1; }

// i^k
cplx i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

cplx pairwise_sum(std::span<const cplx> v) {
  if (v.empty()) return {0.0, 0.0};
  if (v.size() <= 8) {
    cplx s{0.0, 0.0};
    for (const auto& x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace

PauliString::PauliString(int qubits, std::uint64_t x, std::uint64_t z) : qubits_(qubits), x_(x), z_(z) {
  if (qubits < 0 || qubits > 64) throw std::invalid_argument("PauliString: qubit count outside [0, 64]");
  if ((x | z) & ~mask_for(qubits)) throw std::invalid_argument("PauliString: bits beyond the qubit count");
}

PauliString PauliString::from_letters(std::string_view letters) {
  std::uint64_t x = 0, z = 0;
  for (std::size_t q = 0; q < letters.size(); ++q) {
    const std::uint64_t b = std::uint64_t{1} << q;
    switch (letters[q]) {
      case 'I': break;
      case 'X': x |= b; break;
      case 'Y': x |= b; z |= b; break;
      case 'Z': z |= b; break;
      default: throw std::invalid_argument(std::string("PauliString: bad letter '") + letters[q] + "'");
    }
  }
  return {static_cast<int>(letters.size()), x, z};
}

PauliString PauliString::single(int qubits, int q, char letter) {
  std::string s(static_cast<std::size_t>(qubits), 'I');
  if (q < 0 || q >= qubits) throw std::out_of_range("PauliString::single: qubit out of range");
  s[static_cast<std::size_t>(q)] = letter;
  return from_letters(s);
}

char PauliString::letter(int q) const {
  const bool xb = (x_ >> q) & 1u, zb = (z_ >> q) & 1u;
  return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
}

std::string PauliString::letters() const {
  std::string s;
  s.reserve(static_cast<std::size_t>(qubits_));
  for (int q = 0; q < qubits_; ++q) s.push_back(letter(q));
  return s;
}

int PauliString::weight() const { return std::popcount(x_ | z_); }
int PauliString::y_count() const { return std::popcount(x_ & z_); }

bool PauliString::commutes_with(const PauliString& o) const {
  return ((std::popcount(x_ & o.z_) + std::popcount(z_ & o.x_)) & 1) == 0;
}

cplx PauliString::phase_on(std::uint64_t w) const {
  return i_pow(y_count() + 2 * std::popcount(w & z_));
}

PhasedPauli multiply(const PauliString& a, const PauliString& b) {
  if (a.qubits() != b.qubits()) throw std::invalid_argument("multiply: Pauli strings differ in length");
  // Each factor is i^{xz} X^x Z^z; moving Z^{z_a} past X^{x_b} costs (-1)^{z_a x_b}.
  const std::uint64_t x = a.x() ^ b.x(), z = a.z() ^ b.z();
  const int k = std::popcount(a.x() & a.z()) + std::popcount(b.x() & b.z()) - std::popcount(x & z) +
                2 * std::popcount(a.z() & b.x());
  return {i_pow(k), PauliString(a.qubits(), x, z)};
}

PauliHamiltonian::PauliHamiltonian(int qubits, const std::vector<PauliTerm>& terms) : qubits_(qubits) {
  terms_ = terms;
  normalize();
}

void PauliHamiltonian::normalize() {
  std::map<PauliString, cplx> merged;
  for (const auto& t : terms_) {
    if (t.string.qubits() != qubits_) throw std::invalid_argument("PauliHamiltonian: term length mismatch");
    merged[t.string] += t.coeff;
  }
  terms_.clear();
  for (const auto& [s, c] : merged)
    if (std::abs(c) > kDropTolerance) terms_.push_back({c, s});
}

void PauliHamiltonian::add(cplx coeff, const PauliString& s) {
  terms_.push_back({coeff, s});
  normalize();
}

PauliHamiltonian& PauliHamiltonian::operator+=(const PauliHamiltonian& other) {
  if (other.qubits_ != qubits_) throw std::invalid_argument("PauliHamiltonian: qubit count mismatch");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  normalize();
  return *this;
}

PauliHamiltonian& PauliHamiltonian::operator*=(cplx scale) {
  for (auto& t : terms_) t.coeff *= scale;
  normalize();
  return *this;
}

PauliHamiltonian operator*(const PauliHamiltonian& a, const PauliHamiltonian& b) {
  if (a.qubits() != b.qubits()) throw std::invalid_argument("PauliHamiltonian: qubit count mismatch");
  std::vector<PauliTerm> out;
  out.reserve(a.size() * b.size());
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) {
      auto [phase, s] = multiply(ta.string, tb.string);
      out.push_back({ta.coeff * tb.coeff * phase, s});
    }
  return PauliHamiltonian(a.qubits(), out);
}

PauliHamiltonian PauliHamiltonian::adjoint() const {
  PauliHamiltonian h(qubits_);
  h.terms_ = terms_;
  for (auto& t : h.terms_) t.coeff = std::conj(t.coeff);
  return h;
}

cplx PauliHamiltonian::constant() const { return coefficient(PauliString::identity(qubits_)); }

cplx PauliHamiltonian::coefficient(const PauliString& s) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), s,
                             [](const PauliTerm& t, const PauliString& key) { return t.string < key; });
  return it != terms_.end() && it->string == s ? it->coeff : cplx{0.0, 0.0};
}

double PauliHamiltonian::hermiticity_defect() const {
  double worst = 0.0;
  for (const auto& t : terms_) worst = std::max(worst, 2.0 * std::abs(t.coeff.imag()));
  return worst;
}

cplx string_expectation(std::span<const cplx> state, const PauliString& p) {
  if (state.size() != (std::size_t{1} << p.qubits()))
    throw std::invalid_argument("expectation: state dimension does not match the qubit count");
  const std::uint64_t x = p.x(), z = p.z();
  cplx acc{0.0, 0.0};
  for (std::uint64_t w = 0; w < state.size(); ++w) {
    const double sign = (std::popcount(w & z) & 1) ? -1.0 : 1.0;
    acc += std::conj(state[w ^ x]) * state[w] * sign;
  }
  return acc * i_pow(p.y_count());
}

double expectation(std::span<const cplx> state, const PauliHamiltonian& H) {
  std::vector<cplx> values;
  values.reserve(H.size());
  for (const auto& t : H.terms()) values.push_back(t.coeff * string_expectation(state, t.string));
  const cplx total = pairwise_sum(values);
  if (std::abs(total.imag()) > 1e-9)
    throw std::domain_error("expectation: imaginary residue " + std::to_string(total.imag()) +
                            " (operator is not Hermitian)");
  return total.real();
}

std::vector<cplx> apply(const PauliHamiltonian& H, std::span<const cplx> state) {
  if (state.size() != (std::size_t{1} << H.qubits()))
    throw std::invalid_argument("apply: state dimension does not match the qubit count");
  std::vector<cplx> out(state.size(), cplx{0.0, 0.0});
  for (const auto& t : H.terms()) {
    const std::uint64_t x = t.string.x(), z = t.string.z();
    const cplx c = t.coeff * i_pow(t.string.y_count());
    for (std::uint64_t w = 0; w < state.size(); ++w) {
      const double sign = (std::popcount(w & z) & 1) ? -1.0 : 1.0;
      out[w ^ x] += c * sign * state[w];
    }
  }
  return out;
}

SparseHermitian to_dense(const PauliHamiltonian& H, int qubit_cap) {
  if (H.qubits() > qubit_cap)
    throw RangeError("to_dense: " + std::to_string(H.qubits()) + " qubits exceed the cap of " +
                     std::to_string(qubit_cap));
  const std::int64_t dim = std::int64_t{1} << H.qubits();
  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(dim) * H.size());
  for (std::int64_t w = 0; w < dim; ++w)
    for (const auto& t : H.terms()) {
      const auto uw = static_cast<std::uint64_t>(w);
      entries.push_back({static_cast<std::int64_t>(uw ^ t.string.x()), w, t.coeff * t.string.phase_on(uw)});
    }
  return SparseHermitian(dim, std::move(entries), PauliHamiltonian::kDropTolerance);
}

DenseMatrix restrict_to_words(const PauliHamiltonian& H, std::span<const std::uint64_t> words) {
  std::map<std::uint64_t, Eigen::Index> index;
  for (std::size_t k = 0; k < words.size(); ++k) index[words[k]] = static_cast<Eigen::Index>(k);
  const auto n = static_cast<Eigen::Index>(words.size());
  DenseMatrix m = DenseMatrix::Zero(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const std::uint64_t w = words[static_cast<std::size_t>(c)];
    for (const auto& t : H.terms()) {
      auto it = index.find(w ^ t.string.x());
      if (it != index.end()) m(it->second, c) += t.coeff * t.string.phase_on(w);
    }
  }
  return m;
}

TermCountReport term_count_report(const HubbardModel& model) {
  validate(model);
  TermCountReport r;
  const std::int64_t NL = model.qubits();
  const std::int64_t N = model.N;
  // lambda with unit couplings; doubled so the closed forms stay in integers
  std::int64_t lt2 = 0, lv2 = 0;
  for (int k = 1; k <= model.hopping_range(); ++k) lt2 += 2 * ring_edge_multiplicity(model.L, k);
  for (int k = 1; k <= model.interaction_range(); ++k) lv2 += 2 * ring_edge_multiplicity(model.L, k);
  r.lambda_t = lt2 / 2.0;
  r.lambda_v = lv2 / 2.0;
  r.xx = r.yy = r.xy = r.yx = NL * lt2 / 4;
  r.zz = NL * (N * (2 + lv2) - 2) / 4;
  r.z = NL;
  r.constant = 1;
  r.total = NL * (4 * lt2 + N * (2 + lv2) + 2) / 4;
  return r;
}

std::string serialize(const PauliHamiltonian& H) {
  std::ostringstream out;
  out << "# qubits " << H.qubits() << "\n# terms " << H.size() << "\n";
  char buf[96];
  for (const auto& t : H.terms()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g ", t.coeff.real(), t.coeff.imag());
    out << buf << t.string.letters() << '\n';
  }
  return out.str();
}

PauliHamiltonian parse_hamiltonian(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  int qubits = -1;
  std::vector<PauliTerm> terms;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream h(line.substr(1));
      std::string key;
      int value = 0;
      if (h >> key >> value && key == "qubits") qubits = value;
      continue;
    }
    std::istringstream fields(line);
    double re = 0.0, im = 0.0;
    std::string letters;
    if (!(fields >> re >> im >> letters))
      throw std::invalid_argument("parse_hamiltonian: malformed term on line " + std::to_string(lineno));
    if (qubits < 0) qubits = static_cast<int>(letters.size());
    if (static_cast<int>(letters.size()) != qubits)
      throw std::invalid_argument("parse_hamiltonian: wrong string length on line " + std::to_string(lineno));
    terms.push_back({{re, im}, PauliString::from_letters(letters)});
  }
  if (qubits < 0) throw std::invalid_argument("parse_hamiltonian: no qubit count and no terms");
  return PauliHamiltonian(qubits, terms);
}

}  // namespace sunvqe
