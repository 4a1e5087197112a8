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

#ifndef MINQ_NONLINEAR_MAP_HPP
#define MINQ_NONLINEAR_MAP_HPP

#include <algorithm>
#include <vector>

#include "minq/projective.hpp"

namespace minq {

// The measurement-induced map f(z) = 2z / (1 + z^2) and its dynamics.
//
// In homogeneous coordinates the map reads (alpha, beta) -> (alpha^2 + beta^2,
// 2 alpha beta), which is total: the pole z = +-i lands on the point at
// infinity and infinity maps to 0. The two superattractive fixed points are
// z = +1 and z = -1; the imaginary axis is the Julia set separating their
// basins.

enum class ClassTag { PlusX, MinusX, NonConvergent };

struct Classification {
  ClassTag tag;
  int iterations;
};

struct Trajectory {
  std::vector<ProjectivePoint> points;           // length n+1
  std::vector<double> step_probabilities;        // length n; P(points[k])
};

inline constexpr double kConvergenceTol = 1e-6;  // chordal distance
inline constexpr int kMaxIterations = 100;

/// One application of f. With alpha purely real and beta purely imaginary
/// (z on the imaginary axis) the zero components stay exactly zero, so the
/// Julia set is preserved bitwise.
inline ProjectivePoint map_step(const ProjectivePoint& p) {
  const Complex a = p.alpha();
  const Complex b = p.beta();
  return ProjectivePoint::from_amplitudes(a * a + b * b, 2.0 * a * b);
}

/// Post-selection success probability 1/2 + 2 (Re z)^2 / (1 + |z|^2)^2.
/// For unit-norm amplitudes this is 1/2 + 2 Re(conj(alpha) beta)^2, which is
/// exactly 1/2 on the imaginary axis and at infinity.
inline double success_probability(const ProjectivePoint& p) {
  const double re = (std::conj(p.alpha()) * p.beta()).real();
  // Rounding near the fixed points can push the value a few ulps past 1.
  return std::min(0.5 + 2.0 * re * re, 1.0);
}

inline ProjectivePoint fixed_point_plus() { return ProjectivePoint::from_z(Complex(1.0, 0.0)); }
inline ProjectivePoint fixed_point_minus() { return ProjectivePoint::from_z(Complex(-1.0, 0.0)); }

/// Trajectory p, f(p), ..., f^n(p) with the per-step success probabilities.
Trajectory iterate(const ProjectivePoint& p, int n);

/// Product of the first n step probabilities along the trajectory from p
/// (the probability that n consecutive post-selections all succeed).
double cumulative_success(const ProjectivePoint& p, int n);

/// Iterates until the orbit enters the tol-disk (chordal distance) around
/// z = 1 or z = -1; iterations is the first entry step, or max_iter when
/// neither disk is reached.
Classification classify(const ProjectivePoint& p, double tol = kConvergenceTol,
                        int max_iter = kMaxIterations);

}  // namespace minq

#endif  // MINQ_NONLINEAR_MAP_HPP
