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

#ifndef MINQ_EXPERIMENT_HPP
#define MINQ_EXPERIMENT_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minq/projective.hpp"

namespace minq {

// State-discrimination experiment driver: iterate the protocol on a pair of
// initial states and record how their overlap decays, either with exact
// arithmetic (ideal) or through the full simulated measurement chain with
// shot noise and feed-forward repreparation (noisy).

enum class RunMode { Ideal, Noisy };
enum class ReportFormat { Json, Csv };

struct ExperimentConfig {
  ProjectivePoint z1;
  ProjectivePoint z2;
  int iterations = 3;
  RunMode mode = RunMode::Ideal;
  double shots_per_setting = 12000.0;  // noisy mode
  int monte_carlo_trials = 100;        // noisy mode
  std::uint64_t seed = 0;              // noisy mode
};

/// One data row. Row 0 describes the initial pair; row k the states after k
/// protocol steps. step_success is the probability of the next step from
/// this row's (re)prepared states; cumulative_success is the probability of
/// having reached this row at all, so it is 1 at row 0.
struct IterationRow {
  int iteration;
  double overlap_theory;
  std::optional<double> overlap_sim;  // noisy mode: overlap of the reconstructions
  std::optional<double> error_bar;    // noisy mode: Monte-Carlo std of overlap_sim
  std::array<double, 2> step_success;
  std::array<double, 2> cumulative_success;
  std::array<ProjectivePoint, 2> states;  // exact states (ideal) or reconstructions (noisy)
};

struct DiscriminationRecord {
  ExperimentConfig config;
  std::vector<IterationRow> rows;
};

/// Runs the discrimination experiment described by the config.
///
/// Ideal mode records the exact trajectories. Noisy mode tomographs the pair
/// at every row (Poisson counts, maximum-likelihood reconstruction, pure
/// refit) and feeds each reconstructed state forward as the input of the
/// next step, mirroring the experimental feed-forward repreparation; the
/// first step still consumes the exactly prepared initial states. Error bars
/// come from monte_carlo_error around the true pre-tomography states.
/// Tomography failures are rethrown with the iteration index.
DiscriminationRecord run_discrimination(const ExperimentConfig& config);

/// Complex-number literals: cartesian `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`,
/// polar `r@deg` (degrees; r may be negative), and `inf` for the point at
/// infinity. Throws std::invalid_argument naming the offending token.
ProjectivePoint parse_complex(const std::string& text);

/// Report body in the requested format. JSON is a single object (schema in
/// the README); CSV has the column header
/// iteration,overlap_theory,overlap_sim,error_bar,p_success_1,p_success_2,
/// cum_success_1,cum_success_2,z1_re,z1_im,z2_re,z2_im.
/// All numbers are serialized with 9 significant digits.
std::string format_report(const DiscriminationRecord& record, ReportFormat format);

/// Writes format_report output to a file; reports I/O failures with the path.
void emit_report(const DiscriminationRecord& record, ReportFormat format,
                 const std::string& path);

/// Parses a JSON report back into a record (inverse of the JSON emitter up
/// to the 9-significant-digit rounding, which is idempotent).
DiscriminationRecord load_report_json(const std::string& path);

}  // namespace minq

#endif  // MINQ_EXPERIMENT_HPP
