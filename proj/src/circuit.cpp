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

#include "minq/circuit.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace minq {

namespace {
constexpr double kPi = 3.14159265358979323846;
const Complex kI{0.0, 1.0};
}  // namespace

JonesMatrix hwp(double theta) {
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);
  JonesMatrix m;
  m << c, s, s, -c;
  return m;
}

JonesMatrix qwp(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex off = (1.0 - kI) * s * c;
  JonesMatrix m;
  m << c * c + kI * s * s, off, off, s * s + kI * c * c;
  return m;
}

TwoQubitUnitary build_u() {
  const double r = 1.0 / std::sqrt(2.0);
  TwoQubitUnitary u;
  u << r, 0, 0, r,
       0, -r, r, 0,
       0, r, r, 0,
       r, 0, 0, -r;
  return u;
}

TwoQubitUnitary cnot_gate() {
  TwoQubitUnitary c;
  c << 1, 0, 0, 0,
       0, 1, 0, 0,
       0, 0, 0, 1,
       0, 0, 1, 0;
  return c;
}

TwoQubitUnitary u_tilde() {
  const double r = 1.0 / std::sqrt(2.0);
  TwoQubitUnitary u;
  u << r, 0, r, 0,
       0, -r, 0, r,
       r, 0, -r, 0,
       0, r, 0, r;
  return u;
}

TwoQubitUnitary build_u_decomposed() {
  const TwoQubitUnitary c = cnot_gate();
  return c.adjoint() * u_tilde() * c;
}

ProjectivePoint prepare_z(double theta_q, double theta_h) {
  const double two_h = 2.0 * theta_h;
  const double diff = 2.0 * theta_h - 2.0 * theta_q;
  const Complex denom = kI * std::cos(two_h) + std::cos(diff);
  const Complex numer = kI * std::sin(two_h) + std::sin(diff);
  return ProjectivePoint::from_amplitudes(denom, numer);
}

namespace {

// Squared projective distance between prepare_z(theta) and the target; the
// homogeneous pair of prepare_z always has norm sqrt(2), so dividing by 2
// normalizes without trig overhead.
double mismatch(const ProjectivePoint& target, double theta_q, double theta_h) {
  const double two_h = 2.0 * theta_h;
  const double diff = 2.0 * theta_h - 2.0 * theta_q;
  const Complex denom = kI * std::cos(two_h) + std::cos(diff);
  const Complex numer = kI * std::sin(two_h) + std::sin(diff);
  const Complex cross = target.alpha() * numer - target.beta() * denom;
  return std::norm(cross) / 2.0;
}

double wrap_angle(double theta) {
  double w = std::fmod(theta, kPi);
  if (w < 0.0) w += kPi;
  if (w >= kPi) w = 0.0;
  return w;
}

struct SearchResult {
  double theta_q;
  double theta_h;
  double value;
};

SearchResult compass_refine(const ProjectivePoint& target, double theta_q, double theta_h,
                            double step) {
  double best = mismatch(target, theta_q, theta_h);
  while (step > 1e-13) {
    bool moved = false;
    static constexpr std::array<std::array<int, 2>, 8> kDirections{
        {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
    for (const auto& d : kDirections) {
      const double q = theta_q + step * d[0];
      const double h = theta_h + step * d[1];
      const double v = mismatch(target, q, h);
      if (v < best) {
        best = v;
        theta_q = q;
        theta_h = h;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return SearchResult{theta_q, theta_h, best};
}

}  // namespace

PreparationAngles invert_preparation(const ProjectivePoint& p) {
  constexpr int kGrid = 360;
  constexpr double kCell = kPi / kGrid;
  constexpr double kTargetSq = 1e-18;  // (1e-9)^2 on projective distance

  // Best grid cell overall plus the best cell of each grid quadrant, so
  // refinement has diverse deterministic starting points.
  std::array<SearchResult, 5> starts;
  starts.fill(SearchResult{0.0, 0.0, std::numeric_limits<double>::infinity()});
  for (int iq = 0; iq < kGrid; ++iq) {
    for (int ih = 0; ih < kGrid; ++ih) {
      const double q = (iq + 0.5) * kCell;
      const double h = (ih + 0.5) * kCell;
      const double v = mismatch(p, q, h);
      const int quadrant = 1 + 2 * (iq >= kGrid / 2) + (ih >= kGrid / 2);
      if (v < starts[0].value) starts[0] = SearchResult{q, h, v};
      if (v < starts[quadrant].value) starts[quadrant] = SearchResult{q, h, v};
    }
  }

  SearchResult best{0.0, 0.0, std::numeric_limits<double>::infinity()};
  for (const auto& start : starts) {
    const SearchResult r = compass_refine(p, start.theta_q, start.theta_h, kCell);
    if (r.value < best.value) best = r;
    if (best.value <= kTargetSq) break;
  }
  if (best.value > kTargetSq) {
    throw std::runtime_error("invert_preparation: search did not converge");
  }
  return PreparationAngles{wrap_angle(best.theta_q), wrap_angle(best.theta_h)};
}

StepOutcome apply_protocol_step(const ProjectivePoint& p) {
  const Complex a = p.alpha();
  const Complex b = p.beta();
  TwoQubitState in;
  in << a * a, a * b, b * a, b * b;
  const TwoQubitState out = build_u() * in;

  const double p_selected = std::norm(out[0]) + std::norm(out[2]);
  const double p_rejected = std::norm(out[1]) + std::norm(out[3]);

  StepOutcome result;
  result.selected_probability = p_selected;
  result.rejected_probability = p_rejected;

  // Selection can never fail completely: |out0|^2 + |out2|^2 >= 1/2.
  const double sel_norm = std::sqrt(p_selected);
  result.selected_state = QubitState{out[0] / sel_norm, out[2] / sel_norm};

  if (p_rejected < 1e-30) {
    // At the fixed points the rejected branch has probability 0; its limit
    // state is |1>, which is also the exact rejected state everywhere else.
    result.rejected_state = QubitState{Complex(0.0, 0.0), Complex(1.0, 0.0)};
  } else {
    const double rej_norm = std::sqrt(p_rejected);
    result.rejected_state = QubitState{out[1] / rej_norm, out[3] / rej_norm};
  }
  return result;
}

}  // namespace minq
