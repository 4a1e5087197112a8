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

#include "minq/nonlinear_map.hpp"

#include <stdexcept>

namespace minq {

Trajectory iterate(const ProjectivePoint& p, int n) {
  if (n < 0) throw std::invalid_argument("iterate: n must be >= 0");
  Trajectory t;
  t.points.reserve(static_cast<std::size_t>(n) + 1);
  t.step_probabilities.reserve(static_cast<std::size_t>(n));
  t.points.push_back(p);
  for (int k = 0; k < n; ++k) {
    t.step_probabilities.push_back(success_probability(t.points.back()));
    t.points.push_back(map_step(t.points.back()));
  }
  return t;
}

double cumulative_success(const ProjectivePoint& p, int n) {
  if (n < 0) throw std::invalid_argument("cumulative_success: n must be >= 0");
  double product = 1.0;
  ProjectivePoint current = p;
  for (int k = 0; k < n; ++k) {
    product *= success_probability(current);
    current = map_step(current);
  }
  return product;
}

namespace {

// Chordal distances to the fixed points (1, 1)/sqrt(2) and (1, -1)/sqrt(2):
// 2 |alpha/sqrt(2) - beta/sqrt(2)| = sqrt(2) |alpha -+ beta|.
double chordal_to_plus(const ProjectivePoint& p) {
  return std::sqrt(2.0) * std::abs(p.alpha() - p.beta());
}

double chordal_to_minus(const ProjectivePoint& p) {
  return std::sqrt(2.0) * std::abs(p.alpha() + p.beta());
}

}  // namespace

Classification classify(const ProjectivePoint& p, double tol, int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("classify: tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("classify: max_iter must be >= 1");
  ProjectivePoint current = p;
  for (int k = 0;; ++k) {
    if (chordal_to_plus(current) < tol) return Classification{ClassTag::PlusX, k};
    if (chordal_to_minus(current) < tol) return Classification{ClassTag::MinusX, k};
    if (k == max_iter) return Classification{ClassTag::NonConvergent, max_iter};
    current = map_step(current);
  }
}

}  // namespace minq
