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

#ifndef MINQ_CIRCUIT_HPP
#define MINQ_CIRCUIT_HPP

#include <Eigen/Dense>

#include "minq/projective.hpp"

namespace minq {

// Matrix-level realization of one protocol step: waveplate Jones matrices,
// the entangling unitary U together with its CNOT decomposition, the
// preparation-angle map, and the post-selected two-qubit step. Everything
// here is an independent cross-check of the closed-form map in
// nonlinear_map.hpp.
//
// Two-qubit basis order is (|00>, |01>, |10>, |11>) with the polarization
// qubit first: amplitude index = 2*pol + spatial.

using JonesMatrix = Eigen::Matrix2cd;
using TwoQubitUnitary = Eigen::Matrix4cd;
using TwoQubitState = Eigen::Vector4cd;

struct QubitState {
  Complex a0;
  Complex a1;

  static QubitState from_point(const ProjectivePoint& p) { return QubitState{p.alpha(), p.beta()}; }
  ProjectivePoint to_point() const { return ProjectivePoint::from_amplitudes(a0, a1); }
};

struct StepOutcome {
  QubitState selected_state;
  double selected_probability;
  QubitState rejected_state;
  double rejected_probability;
};

struct PreparationAngles {
  double theta_q;  // quarter-wave plate, radians, in [0, pi)
  double theta_h;  // half-wave plate, radians, in [0, pi)
};

/// Half-wave plate at angle theta: [[cos2t, sin2t], [sin2t, -cos2t]].
JonesMatrix hwp(double theta);

/// Quarter-wave plate at angle theta:
/// [[cos^2 t + i sin^2 t, (1-i) sin t cos t], [(1-i) sin t cos t, sin^2 t + i cos^2 t]].
JonesMatrix qwp(double theta);

/// The entangling two-qubit unitary, written out as a single matrix.
TwoQubitUnitary build_u();

/// CNOT with the polarization qubit as control.
TwoQubitUnitary cnot_gate();

/// The single-qubit-core unitary appearing between the two CNOTs.
TwoQubitUnitary u_tilde();

/// Same unitary assembled as cnot^dagger * u_tilde * cnot; must agree with
/// build_u() entry-wise.
TwoQubitUnitary build_u_decomposed();

/// State prepared by the waveplate pair, in homogeneous form
/// (i cos2t_H + cos(2t_H - 2t_Q), i sin2t_H + sin(2t_H - 2t_Q)),
/// so a vanishing denominator is simply the point at infinity.
ProjectivePoint prepare_z(double theta_q, double theta_h);

/// Waveplate angles in [0, pi)^2 whose prepared state equals p within
/// projective distance 1e-9. Grid search plus compass refinement; throws
/// std::runtime_error if the search fails to converge (it should not: every
/// qubit state is reachable).
PreparationAngles invert_preparation(const ProjectivePoint& p);

/// One full protocol step: form |psi>|psi>, apply U, then read out the
/// spatial qubit. Selecting |0>_s yields map_step(p) with probability
/// success_probability(p); the rejected |1>_s branch always leaves the
/// polarization qubit in |1>.
StepOutcome apply_protocol_step(const ProjectivePoint& p);

}  // namespace minq

#endif  // MINQ_CIRCUIT_HPP
