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

#ifndef MINQ_TESTS_HELPERS_HPP
#define MINQ_TESTS_HELPERS_HPP

#include <cmath>
#include <complex>
#include <random>

#include "minq/projective.hpp"
#include "minq/rng.hpp"

namespace minq::test {

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Haar-uniform point on the Riemann sphere: two complex Gaussians, normalized
// implicitly by from_amplitudes.
inline ProjectivePoint random_state(RngEngine& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Complex a(gauss(rng), gauss(rng));
  Complex b(gauss(rng), gauss(rng));
  if (std::abs(a) == 0.0 && std::abs(b) == 0.0) a = Complex(1.0, 0.0);
  return ProjectivePoint::from_amplitudes(a, b);
}

}  // namespace minq::test

#endif  // MINQ_TESTS_HELPERS_HPP
