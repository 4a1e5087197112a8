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

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "minq/basin.hpp"
#include "minq/circuit.hpp"
#include "minq/experiment.hpp"
#include "minq/format.hpp"
#include "minq/nonlinear_map.hpp"
#include "minq/tomography.hpp"

namespace {

using Json = nlohmann::ordered_json;

std::string trim_copy(const std::string& s) {
  const char* ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

double parse_double_strict(const std::string& text, const std::string& what) {
  const std::string t = trim_copy(text);
  std::size_t pos = 0;
  bool negative = false;
  if (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) {
    negative = t[pos] == '-';
    ++pos;
  }
  double value = 0.0;
  const auto res = std::from_chars(t.data() + pos, t.data() + t.size(), value);
  if (pos >= t.size() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw std::invalid_argument(what + ": expected a number, got '" + text + "'");
  }
  return negative ? -value : value;
}

Json complex_json(const minq::ProjectivePoint& p) {
  Json j;
  const minq::Complex z = p.z();
  if (std::isinf(z.real())) {
    j["re"] = "inf";
    j["im"] = 0.0;
  } else {
    j["re"] = minq::round_sig9(z.real());
    j["im"] = minq::round_sig9(z.imag());
  }
  return j;
}

void write_text(const std::string& body, const std::string& out_path, const std::string& what) {
  if (out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error(what + ": cannot open " + out_path);
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw std::runtime_error(what + ": write failed for " + out_path);
}

void run_step(const std::string& z_text, const std::string& out_path) {
  const minq::ProjectivePoint z = minq::parse_complex(z_text);
  const minq::StepOutcome outcome = minq::apply_protocol_step(z);
  Json j;
  j["z"] = complex_json(z);
  j["selected"]["z"] = complex_json(outcome.selected_state.to_point());
  j["selected"]["probability"] = minq::round_sig9(outcome.selected_probability);
  j["rejected"]["z"] = complex_json(outcome.rejected_state.to_point());
  j["rejected"]["probability"] = minq::round_sig9(outcome.rejected_probability);
  write_text(j.dump(2) + "\n", out_path, "step");
}

void run_tomo(const std::string& z_text, double shots, std::uint64_t seed,
              const std::string& out_path) {
  const minq::ProjectivePoint z = minq::parse_complex(z_text);
  const auto probabilities =
      minq::measurement_probabilities(minq::DensityMatrix::from_pure(z));
  const minq::TomographyResult result = minq::simulate_tomography(z, shots, seed);
  const Eigen::Matrix2cd& rho = result.rho.matrix();

  Json j;
  j["z"] = complex_json(z);
  j["shots_per_setting"] = minq::round_sig9(shots);
  j["seed"] = seed;
  const char* names[4] = {"h", "v", "d", "r"};
  for (int k = 0; k < 4; ++k) {
    j["probabilities"][names[k]] = minq::round_sig9(probabilities[k]);
    j["counts"][names[k]] = result.counts.counts[k];
  }
  j["rho"]["rho00"] = minq::round_sig9(rho(0, 0).real());
  j["rho"]["rho01_re"] = minq::round_sig9(rho(0, 1).real());
  j["rho"]["rho01_im"] = minq::round_sig9(rho(0, 1).imag());
  j["rho"]["rho11"] = minq::round_sig9(rho(1, 1).real());
  j["estimate"] = complex_json(result.estimate);
  j["fidelity_with_input"] = minq::round_sig9(minq::fidelity(result.rho, z));
  write_text(j.dump(2) + "\n", out_path, "tomo");
}

struct BasinArgs {
  std::vector<std::string> window_texts;
  std::string resolution = "1000x1000";
  int max_iter = minq::kDefaultBasinMaxIter;
  double tol = minq::kConvergenceTol;
  int workers = 0;
  std::string out_path;
};

void run_basin(const BasinArgs& args) {
  minq::Window window = minq::default_window();
  if (!args.window_texts.empty()) {
    window.re_min = parse_double_strict(args.window_texts[0], "--window RMIN");
    window.re_max = parse_double_strict(args.window_texts[1], "--window RMAX");
    window.im_min = parse_double_strict(args.window_texts[2], "--window IMIN");
    window.im_max = parse_double_strict(args.window_texts[3], "--window IMAX");
  }
  const auto x = args.resolution.find('x');
  bool resolution_ok = x != std::string::npos;
  if (resolution_ok) {
    const std::string w_text = args.resolution.substr(0, x);
    const std::string h_text = args.resolution.substr(x + 1);
    auto parse_dim = [&](const std::string& t, int& out) {
      const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
      return !t.empty() && res.ec == std::errc() && res.ptr == t.data() + t.size();
    };
    resolution_ok = parse_dim(w_text, window.width) && parse_dim(h_text, window.height);
  }
  if (!resolution_ok) {
    throw std::invalid_argument("--resolution: expected WxH, got '" + args.resolution + "'");
  }

  const minq::BasinRaster raster =
      minq::render_basin(window, args.tol, args.max_iter, args.workers);
  if (args.out_path.size() >= 4 &&
      args.out_path.compare(args.out_path.size() - 4, 4, ".ppm") == 0) {
    minq::write_ppm(raster, args.out_path);
  } else if (args.out_path.size() >= 4 &&
             args.out_path.compare(args.out_path.size() - 4, 4, ".csv") == 0) {
    minq::write_csv(raster, args.out_path);
  } else {
    throw std::invalid_argument("basin --out must end in .ppm or .csv, got '" + args.out_path +
                                "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  // Values like "-0.2-0.1i" or "-2" would be taken for option names; a
  // leading space turns them back into plain values (all parsers here trim).
  std::vector<std::string> args_storage;
  std::vector<const char*> args;
  args_storage.reserve(static_cast<std::size_t>(argc));
  args.reserve(static_cast<std::size_t>(argc));
  for (int i = 0; i < argc; ++i) {
    std::string token = argv[i];
    if (i > 0 && token.size() >= 2 && token[0] == '-' &&
        (std::isdigit(static_cast<unsigned char>(token[1])) || token[1] == '.' ||
         token == "-i" || token == "-inf")) {
      token.insert(token.begin(), ' ');
    }
    args_storage.push_back(std::move(token));
  }
  for (const std::string& token : args_storage) args.push_back(token.c_str());

  CLI::App app{"Measurement-induced nonlinear qubit protocol simulator"};
  app.require_subcommand(1);

  CLI::App* step = app.add_subcommand("step", "Apply one post-selected protocol step to a state");
  std::string step_z;
  std::string step_out;
  step->add_option("--z", step_z, "input state parameter (e.g. 0.2, -0.2-0.1i, 0.2@45, inf)")
      ->required();
  step->add_option("--out", step_out, "output path (default: stdout)");

  CLI::App* disc =
      app.add_subcommand("discriminate", "Iterate the protocol on a pair of states");
  std::vector<std::string> pair_texts;
  int iterations = 3;
  std::string mode = "ideal";
  double shots = 12000.0;
  int trials = 100;
  std::uint64_t seed = 0;
  std::string disc_out;
  std::string format = "json";
  disc->add_option("--pair", pair_texts, "the two initial state parameters")
      ->expected(2)
      ->required();
  disc->add_option("--iterations", iterations, "number of protocol steps (default 3)");
  disc->add_option("--mode", mode, "ideal or noisy (default ideal)")
      ->check(CLI::IsMember({"ideal", "noisy"}));
  disc->add_option("--shots", shots, "expected counts per tomography setting (default 12000)");
  disc->add_option("--trials", trials, "Monte-Carlo trials for error bars (default 100)");
  disc->add_option("--seed", seed, "RNG seed (required in noisy mode)");
  disc->add_option("--out", disc_out, "report path (default: stdout)");
  disc->add_option("--format", format, "json or csv (default json)")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* basin = app.add_subcommand("basin", "Render the basins of attraction of the map");
  BasinArgs basin_args;
  basin->add_option("--window", basin_args.window_texts,
                    "RMIN RMAX IMIN IMAX (default -2 2 -2 2)")
      ->expected(4);
  basin->add_option("--resolution", basin_args.resolution, "WxH pixels (default 1000x1000)");
  basin->add_option("--max-iter", basin_args.max_iter, "iteration cap per pixel (default 50)");
  basin->add_option("--tol", basin_args.tol, "convergence tolerance (default 1e-6)");
  basin->add_option("--workers", basin_args.workers,
                    "render threads, 0 = hardware concurrency (default 0)");
  basin->add_option("--out", basin_args.out_path, "output path, .ppm or .csv")->required();

  CLI::App* tomo = app.add_subcommand("tomo", "One simulated tomography of a pure state");
  std::string tomo_z;
  double tomo_shots = 12000.0;
  std::uint64_t tomo_seed = 0;
  std::string tomo_out;
  tomo->add_option("--z", tomo_z, "state parameter to tomograph")->required();
  tomo->add_option("--shots", tomo_shots, "expected counts per setting (default 12000)");
  tomo->add_option("--seed", tomo_seed, "RNG seed")->required();
  tomo->add_option("--out", tomo_out, "output path (default: stdout)");

  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (step->parsed()) {
      run_step(trim_copy(step_z), step_out);
    } else if (disc->parsed()) {
      minq::ExperimentConfig config;
      config.z1 = minq::parse_complex(pair_texts[0]);
      config.z2 = minq::parse_complex(pair_texts[1]);
      config.iterations = iterations;
      config.mode = mode == "noisy" ? minq::RunMode::Noisy : minq::RunMode::Ideal;
      config.shots_per_setting = shots;
      config.monte_carlo_trials = trials;
      config.seed = seed;
      if (config.mode == minq::RunMode::Noisy && disc->count("--seed") == 0) {
        throw std::invalid_argument("discriminate: --seed is required in noisy mode");
      }
      const minq::DiscriminationRecord record = minq::run_discrimination(config);
      const minq::ReportFormat fmt =
          format == "csv" ? minq::ReportFormat::Csv : minq::ReportFormat::Json;
      if (disc_out.empty()) {
        std::cout << minq::format_report(record, fmt);
      } else {
        minq::emit_report(record, fmt, disc_out);
      }
    } else if (basin->parsed()) {
      run_basin(basin_args);
    } else if (tomo->parsed()) {
      run_tomo(trim_copy(tomo_z), tomo_shots, tomo_seed, tomo_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
