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

#include "sunvqe/optimizers.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace sunvqe {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::span<const double> view(const VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

class CountedObjective {
 public:
  CountedObjective(const CostFunction& f, const GradientFunction& g, double h, std::int64_t budget)
      : f_(f), g_(g), h_(h), budget_(budget) {}

  double value_and_gradient(const VectorXd& x, VectorXd& grad) {
    grad.resize(x.size());
    if (g_) {
      ++evaluations_;
      return g_(view(x), std::span<double>(grad.data(), static_cast<std::size_t>(grad.size())));
    }
    ++evaluations_;
    const double v = f_(view(x));
    VectorXd probe = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      probe[i] = x[i] + h_;
      const double fp = f_(view(probe));
      probe[i] = x[i] - h_;
      const double fm = f_(view(probe));
      probe[i] = x[i];
      grad[i] = (fp - fm) / (2.0 * h_);
    }
    evaluations_ += 2 * x.size();
    return v;
  }

  std::int64_t evaluations() const { return evaluations_; }
  bool exhausted() const { return evaluations_ >= budget_; }

 private:
  const CostFunction& f_;
  const GradientFunction& g_;
  double h_;
  std::int64_t budget_;
  std::int64_t evaluations_ = 0;
};

struct LinePoint {
  double alpha = 0.0;
  double f = 0.0;
  double d = 0.0;  // directional derivative
  VectorXd x, g;
};

struct LineSearch {
  CountedObjective& obj;
  const VectorXd& x0;
  const VectorXd& p;
  double f0, d0;
  static constexpr double c1 = 1e-4, c2 = 0.9;

  LinePoint probe(double alpha) {
    LinePoint pt;
    pt.alpha = alpha;
    pt.x = x0 + alpha * p;
    pt.f = obj.value_and_gradient(pt.x, pt.g);
    pt.d = pt.g.dot(p);
    return pt;
  }

  bool sufficient(const LinePoint& pt) const { return pt.f <= f0 + c1 * pt.alpha * d0; }
  bool curvature(const LinePoint& pt) const { return std::abs(pt.d) <= -c2 * d0; }

  std::optional<LinePoint> zoom(LinePoint lo, LinePoint hi) {
    for (int it = 0; it < 40 && !obj.exhausted(); ++it) {
      const double width = hi.alpha - lo.alpha;
      if (std::abs(width) < 1e-16 * std::max(1.0, std::abs(lo.alpha))) break;
      // quadratic through f(lo), f'(lo), f(hi), kept away from the ends
      const double denom = 2.0 * (hi.f - lo.f - lo.d * width);
      double a = denom > 0.0 ? lo.alpha - lo.d * width * width / denom : lo.alpha + 0.5 * width;
      const double a_min = std::min(lo.alpha, hi.alpha), a_max = std::max(lo.alpha, hi.alpha);
      const double margin = 0.1 * (a_max - a_min);
      if (!(a > a_min + margin && a < a_max - margin)) a = lo.alpha + 0.5 * width;
      LinePoint mid = probe(a);
      if (!sufficient(mid) || mid.f >= lo.f) {
        hi = std::move(mid);
      } else {
        if (curvature(mid)) return mid;
        if (mid.d * width >= 0.0) hi = lo;
        lo = std::move(mid);
      }
    }
    // Accept a point that at least decreases the cost.
    if (lo.alpha != 0.0 && lo.f < f0) return lo;
    return std::nullopt;
  }

  std::optional<LinePoint> run(double alpha) {
    LinePoint prev;
    prev.alpha = 0.0;
    prev.f = f0;
    prev.d = d0;
    prev.x = x0;
    for (int it = 0; it < 40 && !obj.exhausted(); ++it) {
      LinePoint cur = probe(alpha);
      if (!std::isfinite(cur.f)) {
        alpha = 0.5 * (prev.alpha + alpha);
        continue;
      }
      if (!sufficient(cur) || (it > 0 && cur.f >= prev.f)) return zoom(std::move(prev), std::move(cur));
      if (curvature(cur)) return cur;
      if (cur.d >= 0.0) return zoom(std::move(cur), std::move(prev));
      prev = std::move(cur);
      alpha *= 2.0;
    }
    return std::nullopt;
  }
};

// Minimizer of c + sum_k a_k cos(k u) + b_k sin(k u) on [0, 2 pi).
double trig_argmin(const std::vector<double>& a, const std::vector<double>& b) {
  const int K = static_cast<int>(a.size());
  if (K == 1) return std::atan2(b[0], a[0]) + std::numbers::pi;
  auto value = [&](double u) {
    double v = 0.0;
    for (int k = 0; k < K; ++k) v += a[k] * std::cos((k + 1) * u) + b[k] * std::sin((k + 1) * u);
    return v;
  };
  auto derivatives = [&](double u, double& d1, double& d2) {
    d1 = d2 = 0.0;
    for (int k = 0; k < K; ++k) {
      const double m = k + 1, c = std::cos(m * u), s = std::sin(m * u);
      d1 += m * (-a[k] * s + b[k] * c);
      d2 += -m * m * (a[k] * c + b[k] * s);
    }
  };
  constexpr int kGrid = 64;
  double best_u = 0.0, best_v = std::numeric_limits<double>::infinity();
  for (int j = 0; j < kGrid; ++j) {
    double u = 2.0 * std::numbers::pi * j / kGrid;
    for (int it = 0; it < 30; ++it) {
      double d1, d2;
      derivatives(u, d1, d2);
      if (d2 <= 0.0) break;
      const double step = d1 / d2;
      u -= std::clamp(step, -0.1, 0.1);
      if (std::abs(step) < 1e-15) break;
    }
    const double v = value(u);
    if (v < best_v) {
      best_v = v;
      best_u = u;
    }
  }
  return best_u;
}

double wrap_angle(double u) { return std::remainder(u, 2.0 * std::numbers::pi); }

}  // namespace

OptimizeResult minimize_bfgs(const CostFunction& f, std::vector<double> x0, const BfgsOptions& opts,
                             const GradientFunction& gradient) {
  if (!(opts.gradient_tolerance > 0.0)) throw std::invalid_argument("tolerance: must be > 0");
  if (!(opts.fd_step > 0.0)) throw std::invalid_argument("fd_step: must be > 0");
  const Eigen::Index n = static_cast<Eigen::Index>(x0.size());
  CountedObjective obj(f, gradient, opts.fd_step, opts.max_evaluations);
  VectorXd x = Eigen::Map<const VectorXd>(x0.data(), n);
  VectorXd g;
  double fx = obj.value_and_gradient(x, g);
  MatrixXd Hinv = MatrixXd::Identity(n, n);
  bool identity = true;

  OptimizeResult result;
  for (;;) {
    if (g.norm() < opts.gradient_tolerance) {
      result.converged = true;
      break;
    }
    if (obj.exhausted()) break;
    VectorXd p = -Hinv * g;
    double d0 = g.dot(p);
    if (!(d0 < 0.0)) {
      Hinv.setIdentity();
      identity = true;
      p = -g;
      d0 = -g.squaredNorm();
    }
    const double alpha0 = result.iterations == 0 ? std::min(1.0, 1.0 / g.norm()) : 1.0;
    LineSearch ls{obj, x, p, fx, d0};
    auto next = ls.run(alpha0);
    if (!next) {
      if (identity) break;
      Hinv.setIdentity();
      identity = true;
      continue;
    }
    const VectorXd s = next->x - x, y = next->g - g;
    const double sy = s.dot(y);
    if (sy > 1e-14 * s.norm() * y.norm()) {
      if (identity) Hinv *= sy / y.squaredNorm();
      const double rho = 1.0 / sy;
      const VectorXd Hy = Hinv * y;
      Hinv += (rho * rho * y.dot(Hy) + rho) * (s * s.transpose()) - rho * (s * Hy.transpose() + Hy * s.transpose());
      identity = false;
    }
    x = std::move(next->x);
    g = std::move(next->g);
    fx = next->f;
    ++result.iterations;
  }
  result.x.assign(x.data(), x.data() + n);
  result.value = fx;
  result.evaluations = obj.evaluations();
  result.gradient_norm = g.norm();
  return result;
}

OptimizeResult minimize_nft(const CostFunction& f, std::vector<double> x0,
                            const std::vector<CoordinateSpectrum>& spectra, const NftOptions& opts) {
  if (spectra.size() != x0.size()) throw std::invalid_argument("minimize_nft: one spectrum per coordinate required");
  if (opts.max_evaluations < 1) throw std::invalid_argument("max_evaluations: must be >= 1");
  OptimizeResult result;
  result.x = std::move(x0);
  const std::size_t n = result.x.size();
  bool fitted = false;
  if (n > 0) {
    for (std::size_t k = 0;; k = (k + 1) % n) {
      CoordinateSpectrum spec = spectra[k];
      if (opts.fit == NftFit::kSinusoid3) spec.harmonics = 1;
      if (opts.fit == NftFit::kHarmonic5) spec = {1.0, 2};
      if (!(spec.frequency > 0.0) || spec.harmonics < 1) throw std::invalid_argument("minimize_nft: bad spectrum");
      const int points = 2 * spec.harmonics + 1;
      if (result.evaluations + points > opts.max_evaluations) break;
      const double theta0 = result.x[k];
      std::vector<double> values(static_cast<std::size_t>(points));
      for (int j = 0; j < points; ++j) {
        result.x[k] = theta0 + 2.0 * std::numbers::pi * j / (points * spec.frequency);
        values[j] = f(result.x);
      }
      result.evaluations += points;
      std::vector<double> a(spec.harmonics, 0.0), b(spec.harmonics, 0.0);
      double c = 0.0;
      for (int j = 0; j < points; ++j) {
        const double u = 2.0 * std::numbers::pi * j / points;
        c += values[j] / points;
        for (int h = 0; h < spec.harmonics; ++h) {
          a[h] += 2.0 * values[j] * std::cos((h + 1) * u) / points;
          b[h] += 2.0 * values[j] * std::sin((h + 1) * u) / points;
        }
      }
      const double u = trig_argmin(a, b);
      double predicted = c;
      for (int h = 0; h < spec.harmonics; ++h) predicted += a[h] * std::cos((h + 1) * u) + b[h] * std::sin((h + 1) * u);
      result.x[k] = wrap_angle(theta0 + u / spec.frequency);
      result.value = predicted;
      fitted = true;
      if (k + 1 == n) ++result.iterations;
    }
  }
  if (!fitted) {
    result.value = f(result.x);
    ++result.evaluations;
  }
  result.converged = true;
  return result;
}

}  // namespace sunvqe
