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

#ifndef MINQ_TOMOGRAPHY_HPP
#define MINQ_TOMOGRAPHY_HPP

#include <array>
#include <cstdint>

#include <Eigen/Dense>

#include "minq/circuit.hpp"
#include "minq/projective.hpp"

namespace minq {

// Single-qubit state tomography as performed in the experiment: projective
// measurements in the four analyzer settings H, V, D = (H+V)/sqrt(2) and
// R = (H - iV)/sqrt(2), Poissonian count statistics, maximum-likelihood
// density-matrix reconstruction, and a pure-state refit.

/// 2x2 density operator; the constructor enforces Hermiticity and unit trace
/// within 1e-10 and eigenvalues >= -1e-10.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Eigen::Matrix2cd& m);

  static DensityMatrix from_pure(const ProjectivePoint& p);

  const Eigen::Matrix2cd& matrix() const { return m_; }

 private:
  Eigen::Matrix2cd m_;
};

/// The four analyzer settings. Each basis is realized by a QWP followed by
/// an HWP in front of an |H> filter, so the projector is A^dagger |H><H| A
/// with A = hwp(theta_h) * qwp(theta_q).
struct AnalyzerSetting {
  double theta_q;
  double theta_h;
  Eigen::Matrix2cd projector;
};

struct TomographyBases {
  std::array<AnalyzerSetting, 4> settings;  // order: H, V, D, R

  static const TomographyBases& standard();
};

/// (p_H, p_V, p_D, p_R) = Tr(Pi_k rho). p_H + p_V = 1 exactly and every
/// value is clamped to [0, 1].
std::array<double, 4> measurement_probabilities(const DensityMatrix& rho);

/// Photon-coincidence counts for the four settings. Counts are held as
/// doubles so that exact expected counts N*p_k (not just integers) can be
/// fed to the reconstruction; sampled counts are always integral.
struct CountRecord {
  std::array<double, 4> counts;
  double nominal_total = 12000.0;
};

/// Independent Poisson(N * p_k) draw per setting; identical seeds give
/// identical records.
CountRecord sample_counts(const std::array<double, 4>& probabilities, double nominal_total,
                          std::uint64_t rng_seed);

/// Maximum-likelihood density matrix for the counts, over physical states
/// (Cholesky-parameterized, so the result is Hermitian, positive
/// semidefinite and unit-trace by construction). Throws std::runtime_error
/// if the likelihood ascent fails to converge within 10,000 iterations.
DensityMatrix mle_reconstruct(const CountRecord& record);

/// Eigenvector of the largest eigenvalue: the Frobenius-nearest pure state.
/// Throws std::runtime_error when the spectrum is degenerate (eigenvalue
/// gap < 1e-12), where no meaningful nearest pure state exists.
ProjectivePoint nearest_pure_state(const DensityMatrix& rho);

/// <psi(p)| rho |psi(p)>, clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const ProjectivePoint& p);

/// One simulated tomography round trip of a pure state.
struct TomographyResult {
  CountRecord counts;
  DensityMatrix rho;
  ProjectivePoint estimate;
};

TomographyResult simulate_tomography(const ProjectivePoint& p, double nominal_total,
                                     std::uint64_t rng_seed);

/// Monte-Carlo distribution of the measured overlap between two states, each
/// tomographed independently in every trial. Trials that fail to reconstruct
/// are discarded and counted. Throws if fewer than two trials survive.
struct MonteCarloSummary {
  double mean;
  double stddev;  // sample standard deviation (n - 1)
  int valid_trials;
  int failed_trials;
};

MonteCarloSummary monte_carlo_error(const ProjectivePoint& state1, const ProjectivePoint& state2,
                                    double nominal_total, int trials, std::uint64_t rng_seed);

}  // namespace minq

#endif  // MINQ_TOMOGRAPHY_HPP
