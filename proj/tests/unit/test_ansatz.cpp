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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sunvqe/ansatz.hpp"
#include "sunvqe/rng.hpp"

using namespace sunvqe;

namespace {

std::vector<double> random_params(int count, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  std::vector<double> p(count);
  for (double& x : p) x = u(gen);
  return p;
}

}  // namespace

TEST(Complexity, ReferenceInstances) {
  const ComplexityReport r = complexity_report(3, 3, 1, 3);
  EXPECT_EQ(r.cnot_per_layer, 30);
  EXPECT_EQ(r.depth_per_layer, 10);
  EXPECT_EQ(r.params_per_layer, 21);
  EXPECT_EQ(r.parameter_total, 24);
  const ComplexityReport s = complexity_report(2, 2, 1);
  EXPECT_EQ(s.cnot_per_layer, 10);
  EXPECT_EQ(s.depth_per_layer, 5);
  EXPECT_EQ(s.params_per_layer, 8);
  const ComplexityReport z = complexity_report(3, 3, 0, 3);
  EXPECT_EQ(z.cnot_total, 0);
  EXPECT_EQ(z.depth_total, 0);
  EXPECT_EQ(z.parameter_total, 3);
}

TEST(Complexity, SingleLayerSu3Circuit) {
  const SpinSector sector = SpinSector::one_per_colour(3);
  const Circuit c = build_ansatz({3, sector, 1, default_occupation(3, sector)});
  const CircuitCounts k = count_gates(c);
  EXPECT_EQ(k.parameters, 24);
  EXPECT_EQ(k.cnot, 30);
  EXPECT_EQ(k.cnot_depth, 10);
  EXPECT_EQ(k.x, 3);
  EXPECT_EQ(k.rz, 3 + 9);
  EXPECT_EQ(k.iswap, 6);
  EXPECT_EQ(k.crz, 6);
}

TEST(Complexity, ConstructedCircuitsMatchFormulas) {
  for (int N = 1; N <= 5; ++N)
    for (int L = 2; L <= 6; ++L)
      for (int layers : {1, 2, 3}) {
        const SpinSector sector = SpinSector::one_per_colour(N);
        const CircuitCounts k = count_gates(build_ansatz({L, sector, layers, default_occupation(L, sector)}));
        const ComplexityReport r = complexity_report(N, L, layers, N);
        EXPECT_EQ(k.cnot, r.cnot_total) << N << "x" << L;
        EXPECT_EQ(k.cnot, layers * (5 * N * L - 3 * N - 2 * L));
        // consecutive layers overlap in an as-soon-as-possible schedule
        if (layers == 1) EXPECT_EQ(k.cnot_depth, r.depth_per_layer);
        EXPECT_EQ(r.depth_total, layers * (2 * N + 3 * L - 5));
        EXPECT_LE(k.cnot_depth, r.depth_total);
        EXPECT_EQ(k.parameters, r.parameter_total);
        EXPECT_EQ(k.parameters, layers * (3 * N * L - N - L) + N);
        EXPECT_EQ(k.iswap, layers * N * (L - 1));
        EXPECT_EQ(k.crz, layers * L * (N - 1));
      }
}

TEST(Ansatz, ZeroLayersPreparesOccupation) {
  const SpinSector sector{{2, 1}};
  const std::uint64_t occ = default_occupation(4, sector);
  EXPECT_EQ(occ, 0b0001'0011u);
  const Circuit c = build_ansatz({4, sector, 0, occ});
  EXPECT_EQ(c.parameter_count(), 3);
  std::mt19937_64 gen(1);
  const Statevector s = run(c, random_params(3, gen), 0);
  EXPECT_NEAR(std::abs(s[occ]), 1.0, 1e-14);
}

TEST(Ansatz, RejectsMismatchedOccupation) {
  EXPECT_THROW(build_ansatz({3, SpinSector{{1, 1, 1}}, 1, 0b000'000'011}), std::invalid_argument);
}

TEST(Ansatz, NumberConservingSupport) {
  std::mt19937_64 gen(31);
  for (auto [L, counts] : std::vector<std::pair<int, std::vector<int>>>{
           {3, {1, 1, 1}}, {4, {2, 1}}, {4, {1, 2, 1}}, {3, {1, 1, 1, 1}}, {6, {3, 2}}, {2, {1, 1, 1, 1, 1, 1}}}) {
    const SpinSector sector{counts};
    const Circuit c = build_ansatz({L, sector, 2, default_occupation(L, sector)});
    for (int draw = 0; draw < 20; ++draw) {
      const Statevector s = run(c, random_params(c.parameter_count(), gen), 0);
      for (std::uint64_t w = 0; w < s.dimension(); ++w)
        if (std::norm(s[w]) > 1e-24) ASSERT_TRUE(hamming_check(w, L, sector)) << w;
    }
  }
}

TEST(Ansatz, ParameterContinuity) {
  std::mt19937_64 gen(37);
  const SpinSector sector = SpinSector::one_per_colour(3);
  const Circuit c = build_ansatz({3, sector, 2, default_occupation(3, sector)});
  const std::vector<double> p = random_params(c.parameter_count(), gen);
  const Statevector base = run(c, p, 0);
  for (int k = 0; k < c.parameter_count(); ++k) {
    std::vector<double> q = p;
    q[k] += 1e-6;
    const Statevector s = run(c, q, 0);
    double diff = 0.0;
    for (std::size_t w = 0; w < s.dimension(); ++w) diff += std::norm(s[w] - base[w]);
    EXPECT_LE(std::sqrt(diff), 4e-6);
  }
}

TEST(HammingCheck, Examples) {
  const SpinSector sector{{1, 2}};
  const std::uint64_t prep = default_occupation(3, sector);
  EXPECT_TRUE(hamming_check(prep, 3, sector));
  for (int b = 0; b < 6; ++b) EXPECT_FALSE(hamming_check(prep ^ (std::uint64_t{1} << b), 3, sector));
  EXPECT_TRUE(hamming_check(0b101'100, 3, sector));
  EXPECT_TRUE(hamming_check(0b110'010, 3, sector));
}
