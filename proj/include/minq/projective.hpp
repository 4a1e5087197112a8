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

#ifndef MINQ_PROJECTIVE_HPP
#define MINQ_PROJECTIVE_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace minq {

using Complex = std::complex<double>;

/// Pure qubit state |psi> = alpha|0> + beta|1> as a point on the Riemann
/// sphere, kept in homogeneous form (alpha, beta) with |alpha|^2 + |beta|^2
/// normalized to 1. The usual complex parameter is z = beta/alpha; the point
/// at infinity is alpha = 0, so the representation has no pole anywhere.
///
/// Points are compared projectively (up to a global phase): p == q iff
/// alpha1*beta2 - alpha2*beta1 vanishes.
class ProjectivePoint {
 public:
  /// Default is z = 0, i.e. |0>.
  ProjectivePoint() : alpha_(1.0, 0.0), beta_(0.0, 0.0) {}

  /// Point from a finite complex parameter z (state |0> + z|1>, normalized).
  static ProjectivePoint from_z(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("ProjectivePoint::from_z: non-finite z; use infinity()");
    }
    return from_amplitudes(Complex(1.0, 0.0), z);
  }

  /// Point from homogeneous amplitudes; normalizes. Throws if both are zero.
  static ProjectivePoint from_amplitudes(Complex alpha, Complex beta) {
    const double scale = std::max(std::abs(alpha), std::abs(beta));
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      throw std::invalid_argument("ProjectivePoint: amplitudes must be finite and not both zero");
    }
    alpha /= scale;
    beta /= scale;
    const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
    return ProjectivePoint(alpha / norm, beta / norm);
  }

  /// The point at infinity, i.e. the state |1>.
  static ProjectivePoint infinity() { return ProjectivePoint(Complex(0.0, 0.0), Complex(1.0, 0.0)); }

  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }

  bool is_infinity() const { return alpha_ == Complex(0.0, 0.0); }

  /// z = beta/alpha; (+inf, 0) for the point at infinity.
  Complex z() const {
    if (is_infinity()) return Complex(std::numeric_limits<double>::infinity(), 0.0);
    return beta_ / alpha_;
  }

  /// The antipodal reflection z -> -z (state with flipped |1> amplitude).
  ProjectivePoint negated() const { return ProjectivePoint(alpha_, -beta_); }

  /// Complex conjugate point z -> conj(z).
  ProjectivePoint conjugated() const { return ProjectivePoint(std::conj(alpha_), std::conj(beta_)); }

 private:
  ProjectivePoint(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {}

  Complex alpha_;
  Complex beta_;
};

/// |alpha1*beta2 - alpha2*beta1| for unit representatives. Zero iff the
/// points are projectively equal; equals half the chordal distance.
inline double projective_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
  return std::abs(p.alpha() * q.beta() - q.alpha() * p.beta());
}

/// Chordal (Riemann sphere) distance, range [0, 2].
inline double chordal_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
  return 2.0 * projective_distance(p, q);
}

inline constexpr double kProjectiveEqualityTol = 1e-9;

inline bool approx_equal(const ProjectivePoint& p, const ProjectivePoint& q,
                         double tol = kProjectiveEqualityTol) {
  return projective_distance(p, q) <= tol;
}

/// |<psi1|psi2>|, the inner-product amplitude (not squared). 1 for equal
/// points, 0 for antipodal ones.
inline double overlap(const ProjectivePoint& p, const ProjectivePoint& q) {
  return std::abs(std::conj(p.alpha()) * q.alpha() + std::conj(p.beta()) * q.beta());
}

struct BlochVector {
  double x;
  double y;
  double z;
};

/// Bloch-sphere coordinates (2 Re a*b, 2 Im a*b, |a|^2 - |b|^2); unit norm.
inline BlochVector bloch_coords(const ProjectivePoint& p) {
  const Complex cross = std::conj(p.alpha()) * p.beta();
  return BlochVector{2.0 * cross.real(), 2.0 * cross.imag(),
                     std::norm(p.alpha()) - std::norm(p.beta())};
}

}  // namespace minq

#endif  // MINQ_PROJECTIVE_HPP
