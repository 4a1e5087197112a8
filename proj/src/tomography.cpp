// Copyright 2026 The minq authors
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

#include "minq/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "minq/rng.hpp"

namespace minq {

namespace {

constexpr double kPi = 3.14159265358979323846;

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

DensityMatrix::DensityMatrix(const Eigen::Matrix2cd& m) {
  const double herm_err = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > 1e-10) {
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  }
  const Complex trace = m(0, 0) + m(1, 1);
  if (std::abs(trace - Complex(1.0, 0.0)) > 1e-10) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
  m_ = 0.5 * (m + m.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(m_);
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::from_pure(const ProjectivePoint& p) {
  Eigen::Vector2cd psi;
  psi << p.alpha(), p.beta();
  return DensityMatrix((psi * psi.adjoint()).eval());
}

const TomographyBases& TomographyBases::standard() {
  static const TomographyBases bases = [] {
    const Eigen::Matrix2cd ketbra_h = (Eigen::Matrix2cd() << 1, 0, 0, 0).finished();
    auto make = [&](double theta_q, double theta_h) {
      const Eigen::Matrix2cd analyzer = hwp(theta_h) * qwp(theta_q);
      return AnalyzerSetting{theta_q, theta_h,
                             (analyzer.adjoint() * ketbra_h * analyzer).eval()};
    };
    TomographyBases b{{
        make(0.0, 0.0),            // H
        make(0.0, kPi / 4),        // V
        make(kPi / 4, kPi / 8),    // D
        make(kPi / 4, kPi / 4),    // R
    }};
    return b;
  }();
  return bases;
}

std::array<double, 4> measurement_probabilities(const DensityMatrix& rho) {
  const Eigen::Matrix2cd& m = rho.matrix();
  const double trace = m(0, 0).real() + m(1, 1).real();
  const double p_h = clamp01(m(0, 0).real() / trace);
  const double p_v = 1.0 - p_h;
  const double p_d = clamp01(0.5 + m(0, 1).real() / trace);
  const double p_r = clamp01(0.5 + m(0, 1).imag() / trace);
  return {p_h, p_v, p_d, p_r};
}

CountRecord sample_counts(const std::array<double, 4>& probabilities, double nominal_total,
                          std::uint64_t rng_seed) {
  if (!(nominal_total > 0.0)) {
    throw std::invalid_argument("sample_counts: nominal_total must be > 0");
  }
  for (double p : probabilities) {
    if (!(p >= 0.0 && p <= 1.0 + 1e-12)) {
      throw std::invalid_argument("sample_counts: probabilities must lie in [0, 1]");
    }
  }
  RngEngine engine(rng_seed);
  CountRecord record;
  record.nominal_total = nominal_total;
  for (int k = 0; k < 4; ++k) {
    const double mean = nominal_total * probabilities[k];
    if (mean > 0.0) {
      std::poisson_distribution<long long> draw(mean);
      record.counts[k] = static_cast<double>(draw(engine));
    } else {
      record.counts[k] = 0.0;
    }
  }
  return record;
}

namespace {

// Physical states are parameterized by a lower-triangular T = [[t0, 0],
// [cr + i ci, t1]] with rho = T^dagger T / tau, tau = t0^2 + t1^2 + cr^2
// + ci^2. The four setting probabilities are then
//   p_H = (t0^2 + cr^2 + ci^2) / tau      p_V = t1^2 / tau
//   p_D = 1/2 + cr t1 / tau               p_R = 1/2 - ci t1 / tau
// all automatically in [0, 1] with p_H + p_V = 1.
struct CholeskyParams {
  double t0, t1, cr, ci;

  std::array<double, 4> probabilities() const {
    const double tau = t0 * t0 + t1 * t1 + cr * cr + ci * ci;
    return {(t0 * t0 + cr * cr + ci * ci) / tau, (t1 * t1) / tau,
            0.5 + cr * t1 / tau, 0.5 - ci * t1 / tau};
  }
};

double log_likelihood(const CholeskyParams& params, const std::array<double, 4>& counts,
                      double total) {
  const std::array<double, 4> p = params.probabilities();
  double value = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (counts[k] > 0.0) {
      if (p[k] < 1e-300) return -std::numeric_limits<double>::infinity();
      value += counts[k] * std::log(p[k]);
    }
    value -= total * p[k];
  }
  return value;
}

std::array<double, 4> likelihood_gradient(const CholeskyParams& params,
                                          const std::array<double, 4>& counts, double total) {
  const double t0 = params.t0, t1 = params.t1, cr = params.cr, ci = params.ci;
  const double tau = t0 * t0 + t1 * t1 + cr * cr + ci * ci;
  const std::array<double, 4> p = params.probabilities();

  // Numerators A_k of p_k = A_k / tau and their parameter derivatives.
  const std::array<std::array<double, 4>, 4> da{{
      {2 * t0, 0.0, 2 * cr, 2 * ci},            // A_H = t0^2 + cr^2 + ci^2
      {0.0, 2 * t1, 0.0, 0.0},                  // A_V = t1^2
      {t0, t1 + cr, cr + t1, ci},               // A_D = tau/2 + cr t1
      {t0, t1 - ci, cr, ci - t1},               // A_R = tau/2 - ci t1
  }};
  const std::array<double, 4> theta{t0, t1, cr, ci};

  std::array<double, 4> grad{0.0, 0.0, 0.0, 0.0};
  for (int k = 0; k < 4; ++k) {
    double weight = -total;
    if (counts[k] > 0.0) weight += counts[k] / std::max(p[k], 1e-300);
    for (int j = 0; j < 4; ++j) {
      const double dp = (da[k][j] - p[k] * 2.0 * theta[j]) / tau;
      grad[j] += weight * dp;
    }
  }
  return grad;
}

// Linear-inversion estimate projected onto physical states, used to start
// the likelihood ascent close to the optimum.
CholeskyParams initial_params(const std::array<double, 4>& counts, double total) {
  const double n_hv = counts[0] + counts[1];
  double rho00 = n_hv > 0.0 ? counts[0] / n_hv : 0.5;
  rho00 = clamp01(rho00);
  const double rho11 = 1.0 - rho00;
  double re01 = counts[2] / total - 0.5;
  double im01 = counts[3] / total - 0.5;
  // p_R = 1/2 + Im rho01, and the parameterization gives Im rho01 = -ci t1.
  // Keep the off-diagonal inside the positivity disk.
  const double max_off = std::sqrt(rho00 * rho11);
  const double off = std::hypot(re01, im01);
  if (off > max_off && off > 0.0) {
    re01 *= max_off / off;
    im01 *= max_off / off;
  }

  Eigen::Matrix2cd est;
  est << Complex(rho00, 0.0), Complex(re01, im01), Complex(re01, -im01), Complex(rho11, 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(est);
  Eigen::Vector2d evals = solver.eigenvalues().cwiseMax(1e-9);
  evals /= evals.sum();
  const Eigen::Matrix2cd rho = solver.eigenvectors() * evals.asDiagonal() *
                               solver.eigenvectors().adjoint();

  const double t1 = std::sqrt(std::max(rho(1, 1).real(), 1e-18));
  const Complex c = rho(1, 0) / t1;
  const double t0 = std::sqrt(std::max(rho(0, 0).real() - std::norm(c), 0.0));
  return CholeskyParams{t0, t1, c.real(), c.imag()};
}

}  // namespace

DensityMatrix mle_reconstruct(const CountRecord& record) {
  if (!(record.nominal_total > 0.0)) {
    throw std::invalid_argument("mle_reconstruct: nominal_total must be > 0");
  }
  double count_sum = 0.0;
  for (double n : record.counts) {
    if (!(n >= 0.0) || !std::isfinite(n)) {
      throw std::invalid_argument("mle_reconstruct: counts must be finite and non-negative");
    }
    count_sum += n;
  }
  if (count_sum <= 0.0) {
    throw std::invalid_argument("mle_reconstruct: at least one count must be positive");
  }

  const double total = record.nominal_total;
  CholeskyParams params = initial_params(record.counts, total);
  double current = log_likelihood(params, record.counts, total);
  double step = 0.1 / total;

  constexpr int kMaxIterations = 10000;
  bool converged = false;
  for (int iter = 0; iter < kMaxIterations && !converged; ++iter) {
    const std::array<double, 4> grad = likelihood_gradient(params, record.counts, total);
    bool accepted = false;
    for (int halvings = 0; halvings < 120; ++halvings) {
      const CholeskyParams trial{params.t0 + step * grad[0], params.t1 + step * grad[1],
                                 params.cr + step * grad[2], params.ci + step * grad[3]};
      const double value = log_likelihood(trial, record.counts, total);
      if (value > current) {
        const double improvement = value - current;
        params = trial;
        current = value;
        accepted = true;
        if (halvings == 0) step *= 1.3;
        if (improvement < 1e-12) converged = true;
        break;
      }
      step *= 0.5;
    }
    // No uphill step representable in double precision: the ascent is done.
    if (!accepted) converged = true;
  }
  if (!converged) {
    throw std::runtime_error("mle_reconstruct: likelihood ascent did not converge");
  }

  const double tau = params.t0 * params.t0 + params.t1 * params.t1 + params.cr * params.cr +
                     params.ci * params.ci;
  const Complex c(params.cr, params.ci);
  Eigen::Matrix2cd rho;
  rho << Complex((params.t0 * params.t0 + std::norm(c)) / tau, 0.0), std::conj(c) * params.t1 / tau,
      c * params.t1 / tau, Complex(params.t1 * params.t1 / tau, 0.0);
  // Absorb the one-ulp trace drift from reassociating tau.
  const double trace = rho(0, 0).real() + rho(1, 1).real();
  rho /= trace;
  return DensityMatrix(rho);
}

ProjectivePoint nearest_pure_state(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(rho.matrix());
  const Eigen::Vector2d evals = solver.eigenvalues();  // ascending
  if (evals(1) - evals(0) < 1e-12) {
    throw std::runtime_error("nearest_pure_state: spectrum is degenerate (maximally mixed)");
  }
  const Eigen::Vector2cd dominant = solver.eigenvectors().col(1);
  return ProjectivePoint::from_amplitudes(dominant(0), dominant(1));
}

double fidelity(const DensityMatrix& rho, const ProjectivePoint& p) {
  Eigen::Vector2cd psi;
  psi << p.alpha(), p.beta();
  return clamp01((psi.adjoint() * rho.matrix() * psi)(0, 0).real());
}

TomographyResult simulate_tomography(const ProjectivePoint& p, double nominal_total,
                                     std::uint64_t rng_seed) {
  const auto probabilities = measurement_probabilities(DensityMatrix::from_pure(p));
  CountRecord counts = sample_counts(probabilities, nominal_total, rng_seed);
  DensityMatrix rho = mle_reconstruct(counts);
  ProjectivePoint estimate = nearest_pure_state(rho);
  return TomographyResult{counts, std::move(rho), estimate};
}

MonteCarloSummary monte_carlo_error(const ProjectivePoint& state1, const ProjectivePoint& state2,
                                    double nominal_total, int trials, std::uint64_t rng_seed) {
  if (trials < 2) throw std::invalid_argument("monte_carlo_error: trials must be >= 2");
  if (!(nominal_total > 0.0)) {
    throw std::invalid_argument("monte_carlo_error: nominal_total must be > 0");
  }

  std::vector<double> overlaps;
  overlaps.reserve(static_cast<std::size_t>(trials));
  int failed = 0;
  for (int m = 0; m < trials; ++m) {
    const std::uint64_t seed1 = derive_seed(rng_seed, 2 * static_cast<std::uint64_t>(m));
    const std::uint64_t seed2 = derive_seed(rng_seed, 2 * static_cast<std::uint64_t>(m) + 1);
    try {
      const ProjectivePoint est1 = simulate_tomography(state1, nominal_total, seed1).estimate;
      const ProjectivePoint est2 = simulate_tomography(state2, nominal_total, seed2).estimate;
      overlaps.push_back(overlap(est1, est2));
    } catch (const std::runtime_error&) {
      ++failed;
    }
  }
  if (overlaps.size() < 2) {
    throw std::runtime_error("monte_carlo_error: fewer than two trials reconstructed");
  }

  double mean = 0.0;
  for (double v : overlaps) mean += v;
  mean /= static_cast<double>(overlaps.size());
  double variance = 0.0;
  for (double v : overlaps) variance += (v - mean) * (v - mean);
  variance /= static_cast<double>(overlaps.size() - 1);
  return MonteCarloSummary{mean, std::sqrt(variance), static_cast<int>(overlaps.size()), failed};
}

}  // namespace minq
