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

#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "minq/projective.hpp"
#include "minq/rng.hpp"

using minq::Complex;
using minq::ProjectivePoint;
using minq::test::near;
using minq::test::random_state;

namespace {

// z_k for z_0 = 0.2, computed with 50-digit arithmetic and rounded to double.
constexpr double kTraj02[] = {
    0.2,
    0.38461538461538462,
    0.67010309278350515,
    0.92489364823236028,
    0.9969597509126001,
    0.99999536437069936,
    0.99999999998925542,
};

// Success probability evaluated at each z_k above.
constexpr double kProb02[] = {
    0.57396449704142012, 0.72451907747900946, 0.9277141302702825,
    0.99696437246985682, 0.99999536438144389, 0.99999999998925542,
    1.0,
};

}  // namespace

TEST_CASE("map_step reproduces known values") {
  auto p = minq::map_step(ProjectivePoint::from_z(0.2));
  CHECK(near(p.z().real(), 0.38461538461538462, 1e-15));
  CHECK(near(p.z().imag(), 0.0, 1e-15));

  // z = 0 is a fixed point.
  auto zero = minq::map_step(ProjectivePoint::from_z(0.0));
  CHECK(minq::projective_distance(zero, ProjectivePoint::from_z(0.0)) <= 1e-14);
}

TEST_CASE("map_step fixes +1 and -1") {
  for (double z0 : {1.0, -1.0}) {
    auto p = ProjectivePoint::from_z(z0);
    CHECK(minq::projective_distance(minq::map_step(p), p) <= 1e-14);
  }
}

TEST_CASE("map_step sends the poles to infinity and infinity to zero") {
  auto at_pole = minq::map_step(ProjectivePoint::from_z(Complex(0.0, 1.0)));
  CHECK(at_pole.is_infinity());
  auto other_pole = minq::map_step(ProjectivePoint::from_z(Complex(0.0, -1.0)));
  CHECK(other_pole.is_infinity());

  auto back = minq::map_step(ProjectivePoint::infinity());
  CHECK(minq::projective_distance(back, ProjectivePoint::from_z(0.0)) <= 1e-15);
}

TEST_CASE("map_step never produces an invalid representative") {
  minq::RngEngine rng(11);
  std::uniform_real_distribution<double> jitter(-1e-8, 1e-8);
  for (int i = 0; i < 10000; ++i) {
    auto p = random_state(rng);
    auto q = minq::map_step(p);
    double norm = std::norm(q.alpha()) + std::norm(q.beta());
    CHECK(near(norm, 1.0, 1e-12));
  }
  // Points crowded around the poles are the stress case: alpha^2 + beta^2
  // nearly cancels there.
  for (int i = 0; i < 1000; ++i) {
    Complex z(jitter(rng), (i % 2 ? 1.0 : -1.0) + jitter(rng));
    auto q = minq::map_step(ProjectivePoint::from_z(z));
    double norm = std::norm(q.alpha()) + std::norm(q.beta());
    CHECK(near(norm, 1.0, 1e-12));
  }
}

TEST_CASE("iterate returns the full orbit with per-step probabilities") {
  auto traj = minq::iterate(ProjectivePoint::from_z(0.2), 6);
  REQUIRE(traj.points.size() == 7);
  REQUIRE(traj.step_probabilities.size() == 6);
  for (int k = 0; k < 7; ++k) {
    CHECK(near(traj.points[k].z().real(), kTraj02[k], 1e-14));
    CHECK(near(traj.points[k].z().imag(), 0.0, 1e-14));
  }
  // Entry k is the success probability of the step leaving point k.
  for (int k = 0; k < 6; ++k) {
    CHECK(near(traj.step_probabilities[k], kProb02[k], 1e-14));
  }
  CHECK(near(minq::success_probability(traj.points[6]), kProb02[6], 1e-14));
}

TEST_CASE("iterate with zero steps yields just the initial point") {
  auto traj = minq::iterate(ProjectivePoint::from_z(0.2), 0);
  REQUIRE(traj.points.size() == 1);
  CHECK(traj.step_probabilities.empty());
  CHECK(near(traj.points[0].z().real(), 0.2, 1e-15));
}

TEST_CASE("iterate rejects negative step counts") {
  CHECK_THROWS_AS(minq::iterate(ProjectivePoint::from_z(0.2), -1),
                  std::invalid_argument);
}

TEST_CASE("iterate passes through infinity cleanly") {
  auto traj = minq::iterate(ProjectivePoint::from_z(Complex(0.0, 1.0)), 2);
  REQUIRE(traj.points.size() == 3);
  CHECK(traj.points[1].is_infinity());
  CHECK(minq::projective_distance(traj.points[2],
                                  ProjectivePoint::from_z(0.0)) <= 1e-15);
  // Both i and infinity sit where the success probability is exactly 1/2.
  CHECK(traj.step_probabilities[0] == 0.5);
  CHECK(traj.step_probabilities[1] == 0.5);
}

TEST_CASE("success_probability matches hand-computed values") {
  CHECK(near(minq::success_probability(ProjectivePoint::from_z(0.2)),
             0.57396449704142012, 1e-15));
  CHECK(near(minq::success_probability(ProjectivePoint::from_z(1.0)), 1.0,
             1e-15));
  CHECK(near(minq::success_probability(ProjectivePoint::from_z(-1.0)), 1.0,
             1e-15));
}

TEST_CASE("success_probability is exactly one half on the imaginary axis") {
  minq::RngEngine rng(23);
  std::normal_distribution<double> gauss(0.0, 2.0);
  CHECK(minq::success_probability(ProjectivePoint::from_z(0.0)) == 0.5);
  CHECK(minq::success_probability(ProjectivePoint::infinity()) == 0.5);
  for (int i = 0; i < 1000; ++i) {
    auto p = ProjectivePoint::from_z(Complex(0.0, gauss(rng)));
    CHECK(minq::success_probability(p) == 0.5);
  }
}

TEST_CASE("success_probability stays within one half and one") {
  minq::RngEngine rng(31);
  for (int i = 0; i < 10000; ++i) {
    double p = minq::success_probability(random_state(rng));
    CHECK(p >= 0.5);
    CHECK(p <= 1.0);
  }
}

TEST_CASE("cumulative_success multiplies the first n step probabilities") {
  CHECK(near(minq::cumulative_success(ProjectivePoint::from_z(1.0), 10), 1.0,
             1e-12));

  // Every step on the imaginary axis costs exactly a factor 1/2.
  auto axis = ProjectivePoint::from_z(Complex(0.0, 0.3));
  CHECK(minq::cumulative_success(axis, 2) == 0.25);

  auto seed = ProjectivePoint::from_z(0.2);
  CHECK(near(minq::cumulative_success(seed, 1), 0.57396449704142012, 1e-15));
  CHECK(near(minq::cumulative_success(seed, 2), 0.41584822790215336, 1e-15));
  CHECK(near(minq::cumulative_success(seed, 3), 0.38578827707268442, 1e-15));
  CHECK(minq::cumulative_success(seed, 0) == 1.0);
}

TEST_CASE("cumulative_success validates its arguments") {
  CHECK_THROWS_AS(minq::cumulative_success(ProjectivePoint::from_z(0.2), -1),
                  std::invalid_argument);
}

TEST_CASE("classify sorts seeds into the expected basins") {
  auto right = minq::classify(ProjectivePoint::from_z(0.2));
  CHECK(right.tag == minq::ClassTag::PlusX);
  CHECK(right.iterations > 0);
  CHECK(right.iterations <= minq::kMaxIterations);

  auto left = minq::classify(ProjectivePoint::from_z(Complex(-0.2, -0.1)));
  CHECK(left.tag == minq::ClassTag::MinusX);

  auto axis = minq::classify(ProjectivePoint::from_z(Complex(0.0, 0.05)));
  CHECK(axis.tag == minq::ClassTag::NonConvergent);
  CHECK(axis.iterations == minq::kMaxIterations);
}

TEST_CASE("classify counts zero iterations when already converged") {
  auto c = minq::classify(ProjectivePoint::from_z(1.0));
  CHECK(c.tag == minq::ClassTag::PlusX);
  CHECK(c.iterations == 0);

  auto d = minq::classify(ProjectivePoint::from_z(-1.0));
  CHECK(d.tag == minq::ClassTag::MinusX);
  CHECK(d.iterations == 0);
}

TEST_CASE("classify respects a custom iteration budget") {
  auto p = ProjectivePoint::from_z(Complex(0.001, 5.0));
  auto tight = minq::classify(p, minq::kConvergenceTol, 2);
  CHECK(tight.tag == minq::ClassTag::NonConvergent);
  CHECK(tight.iterations == 2);
  auto roomy = minq::classify(p, minq::kConvergenceTol, 100);
  CHECK(roomy.tag == minq::ClassTag::PlusX);
}

TEST_CASE("classify rejects bad tolerances and budgets") {
  auto p = ProjectivePoint::from_z(0.2);
  CHECK_THROWS_AS(minq::classify(p, 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(minq::classify(p, -1e-6, 10), std::invalid_argument);
  CHECK_THROWS_AS(minq::classify(p, 1e-6, -1), std::invalid_argument);
}

TEST_CASE("convergence near the attractors is quadratic") {
  // |f(s + eps) - s| <= |eps|^2 for s = +-1 and |eps| <= 1/2. The worst
  // ratio over the disk is 0.8, reached at eps = -1/2, so the floating-point
  // check has real margin.
  minq::RngEngine rng(47);
  std::uniform_real_distribution<double> radius(0.0, 0.5);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  for (int i = 0; i < 1000; ++i) {
    Complex eps = std::polar(i == 0 ? 0.5 : radius(rng), angle(rng));
    for (double s : {1.0, -1.0}) {
      auto image = minq::map_step(ProjectivePoint::from_z(s + eps));
      double err = std::abs(image.z() - s);
      CHECK(err <= std::norm(eps));
    }
  }
}

TEST_CASE("the map is odd and commutes with conjugation") {
  minq::RngEngine rng(59);
  for (int i = 0; i < 10000; ++i) {
    auto p = random_state(rng);
    auto fp = minq::map_step(p);
    CHECK(minq::projective_distance(minq::map_step(p.negated()),
                                    fp.negated()) <= 1e-12);
    CHECK(minq::projective_distance(minq::map_step(p.conjugated()),
                                    fp.conjugated()) <= 1e-12);
  }
}

TEST_CASE("the imaginary axis is invariant bit for bit") {
  // With a representative (real, purely imaginary), both components of the
  // image keep that form exactly in IEEE arithmetic, so iterates never leak
  // off the axis.
  minq::RngEngine rng(61);
  std::normal_distribution<double> gauss(0.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    auto p = ProjectivePoint::from_z(Complex(0.0, gauss(rng)));
    for (int k = 0; k < 25 && !p.is_infinity(); ++k) {
      p = minq::map_step(p);
      CHECK(p.alpha().imag() == 0.0);
      CHECK(p.beta().real() == 0.0);
    }
  }
}

TEST_CASE("imaginary-axis seeds never converge") {
  minq::RngEngine rng(67);
  std::normal_distribution<double> gauss(0.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    auto c = minq::classify(ProjectivePoint::from_z(Complex(0.0, gauss(rng))));
    CHECK(c.tag == minq::ClassTag::NonConvergent);
  }
  CHECK(minq::classify(ProjectivePoint::infinity()).tag ==
        minq::ClassTag::NonConvergent);
}

TEST_CASE("the sign of the real part decides the basin") {
  minq::RngEngine rng(71);
  std::normal_distribution<double> gauss(0.0, 1.5);
  int checked = 0;
  while (checked < 10000) {
    Complex z(gauss(rng), gauss(rng));
    if (std::abs(z.real()) <= 1e-3) continue;
    auto c = minq::classify(ProjectivePoint::from_z(z));
    auto want = z.real() > 0 ? minq::ClassTag::PlusX : minq::ClassTag::MinusX;
    CHECK(c.tag == want);
    ++checked;
  }
}

TEST_CASE("overlap agrees with direct amplitude arithmetic") {
  auto a = ProjectivePoint::from_z(0.2);
  auto b = ProjectivePoint::from_z(-0.2);
  CHECK(near(minq::overlap(a, b), 0.92307692307692308, 1e-15));
  CHECK(near(minq::overlap(a, b), minq::overlap(b, a), 1e-15));
}

TEST_CASE("overlap is one on equal states and zero on antipodes") {
  minq::RngEngine rng(73);
  for (int i = 0; i < 1000; ++i) {
    auto p = random_state(rng);
    CHECK(near(minq::overlap(p, p), 1.0, 1e-15));
    // The antipode of (alpha, beta) is (-conj(beta), conj(alpha)).
    auto q = ProjectivePoint::from_amplitudes(-std::conj(p.beta()),
                                              std::conj(p.alpha()));
    CHECK(near(minq::overlap(p, q), 0.0, 1e-15));
    CHECK(near(minq::chordal_distance(p, q), 2.0, 1e-12));
  }
}

TEST_CASE("overlap and projective distance are complementary") {
  // Lagrange's identity: |<a|b>|^2 + |a1 b2 - a2 b1|^2 = 1 for unit vectors.
  minq::RngEngine rng(79);
  for (int i = 0; i < 1000; ++i) {
    auto p = random_state(rng);
    auto q = random_state(rng);
    double o = minq::overlap(p, q);
    double d = minq::projective_distance(p, q);
    CHECK(near(o * o + d * d, 1.0, 1e-12));
  }
}

TEST_CASE("projective equality ignores the representative phase") {
  minq::RngEngine rng(83);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  for (int i = 0; i < 1000; ++i) {
    auto p = random_state(rng);
    Complex phase = std::polar(1.0, angle(rng));
    auto q = ProjectivePoint::from_amplitudes(p.alpha() * phase,
                                              p.beta() * phase);
    CHECK(minq::projective_distance(p, q) <= 1e-15);
    CHECK(minq::approx_equal(p, q));
  }
}

TEST_CASE("bloch_coords places familiar states correctly") {
  auto b0 = minq::bloch_coords(ProjectivePoint::from_z(0.0));
  CHECK(b0.x == 0.0);
  CHECK(b0.y == 0.0);
  CHECK(b0.z == 1.0);

  auto b1 = minq::bloch_coords(ProjectivePoint::from_z(1.0));
  CHECK(near(b1.x, 1.0, 1e-15));
  CHECK(near(b1.y, 0.0, 1e-15));
  CHECK(near(b1.z, 0.0, 1e-15));

  auto b = minq::bloch_coords(ProjectivePoint::from_z(0.2));
  CHECK(near(b.x, 0.38461538461538462, 1e-15));
  CHECK(near(b.y, 0.0, 1e-15));
  CHECK(near(b.z, 0.92307692307692308, 1e-15));

  auto binf = minq::bloch_coords(ProjectivePoint::infinity());
  CHECK(near(binf.z, -1.0, 1e-15));
}

TEST_CASE("bloch_coords lands on the unit sphere") {
  minq::RngEngine rng(89);
  for (int i = 0; i < 1000; ++i) {
    auto v = minq::bloch_coords(random_state(rng));
    CHECK(near(v.x * v.x + v.y * v.y + v.z * v.z, 1.0, 1e-12));
  }
}

TEST_CASE("from_z rejects non-finite input") {
  CHECK_THROWS_AS(
      ProjectivePoint::from_z(Complex(std::nan(""), 0.0)),
      std::invalid_argument);
  CHECK_THROWS_AS(ProjectivePoint::from_z(
                      Complex(std::numeric_limits<double>::infinity(), 0.0)),
                  std::invalid_argument);
}

TEST_CASE("from_amplitudes rejects the zero vector and non-finite input") {
  CHECK_THROWS_AS(ProjectivePoint::from_amplitudes(Complex(0, 0), Complex(0, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(ProjectivePoint::from_amplitudes(
                      Complex(std::nan(""), 0.0), Complex(1, 0)),
                  std::invalid_argument);
}

TEST_CASE("from_amplitudes survives extreme scales") {
  auto tiny = ProjectivePoint::from_amplitudes(Complex(1e-300, 0),
                                               Complex(2e-300, 0));
  CHECK(near(tiny.z().real(), 2.0, 1e-12));
  auto huge = ProjectivePoint::from_amplitudes(Complex(1e300, 0),
                                               Complex(-3e300, 0));
  CHECK(near(huge.z().real(), -3.0, 1e-12));
}

TEST_CASE("infinity is representable and round-trips") {
  auto inf = ProjectivePoint::infinity();
  CHECK(inf.is_infinity());
  CHECK(std::isinf(inf.z().real()));
  CHECK(!ProjectivePoint::from_z(1e15).is_infinity());
}
