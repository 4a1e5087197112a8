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

#include "minq/experiment.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "minq/circuit.hpp"
#include "minq/format.hpp"
#include "minq/nonlinear_map.hpp"
#include "minq/rng.hpp"
#include "minq/tomography.hpp"

namespace minq {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kPi = 3.14159265358979323846;

std::uint64_t tomo_seed(std::uint64_t master, int row, int state_index) {
  return derive_seed(derive_seed(derive_seed(master, 1), static_cast<std::uint64_t>(row)),
                     static_cast<std::uint64_t>(state_index));
}

std::uint64_t mc_seed(std::uint64_t master, int row) {
  return derive_seed(derive_seed(master, 2), static_cast<std::uint64_t>(row));
}

}  // namespace

DiscriminationRecord run_discrimination(const ExperimentConfig& config) {
  if (config.iterations < 0) {
    throw std::invalid_argument("run_discrimination: iterations must be >= 0");
  }
  const bool noisy = config.mode == RunMode::Noisy;
  if (noisy) {
    if (!(config.shots_per_setting >= 1.0)) {
      throw std::invalid_argument("run_discrimination: noisy mode needs shots_per_setting >= 1");
    }
    if (config.monte_carlo_trials < 2) {
      throw std::invalid_argument(
          "run_discrimination: noisy mode needs monte_carlo_trials >= 2 for error bars");
    }
  }

  const int n = config.iterations;
  const std::array<ProjectivePoint, 2> initial{config.z1, config.z2};
  const std::array<Trajectory, 2> exact{iterate(initial[0], n), iterate(initial[1], n)};

  DiscriminationRecord record;
  record.config = config;
  record.rows.reserve(static_cast<std::size_t>(n) + 1);

  if (!noisy) {
    std::array<double, 2> cum{1.0, 1.0};
    for (int k = 0; k <= n; ++k) {
      IterationRow row;
      row.iteration = k;
      row.overlap_theory = overlap(exact[0].points[k], exact[1].points[k]);
      for (int i = 0; i < 2; ++i) {
        row.step_success[i] = success_probability(exact[i].points[k]);
        row.cumulative_success[i] = cum[i];
        row.states[i] = exact[i].points[k];
        cum[i] *= row.step_success[i];
      }
      record.rows.push_back(std::move(row));
    }
    return record;
  }

  // prepared: what the next protocol step will consume. The initial states
  // are prepared exactly; afterwards each step consumes the reconstruction
  // of the previous row (feed-forward repreparation).
  std::array<ProjectivePoint, 2> prepared = initial;
  std::array<ProjectivePoint, 2> true_states = initial;
  std::array<double, 2> cum{1.0, 1.0};
  for (int k = 0; k <= n; ++k) {
    try {
      if (k > 0) {
        for (int i = 0; i < 2; ++i) {
          true_states[i] = apply_protocol_step(prepared[i]).selected_state.to_point();
        }
      }
      std::array<ProjectivePoint, 2> estimates;
      for (int i = 0; i < 2; ++i) {
        estimates[i] =
            simulate_tomography(true_states[i], config.shots_per_setting,
                                tomo_seed(config.seed, k, i))
                .estimate;
      }
      const MonteCarloSummary mc =
          monte_carlo_error(true_states[0], true_states[1], config.shots_per_setting,
                            config.monte_carlo_trials, mc_seed(config.seed, k));

      if (k > 0) prepared = estimates;

      IterationRow row;
      row.iteration = k;
      row.overlap_theory = overlap(exact[0].points[k], exact[1].points[k]);
      row.overlap_sim = overlap(estimates[0], estimates[1]);
      row.error_bar = mc.stddev;
      for (int i = 0; i < 2; ++i) {
        row.step_success[i] = success_probability(prepared[i]);
        row.cumulative_success[i] = cum[i];
        row.states[i] = estimates[i];
        cum[i] *= row.step_success[i];
      }
      record.rows.push_back(std::move(row));
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("iteration " + std::to_string(k) + ": " + e.what());
    }
  }
  return record;
}

namespace {

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

bool is_inf_token(std::string t) {
  if (!t.empty() && (t[0] == '+' || t[0] == '-')) t.erase(0, 1);
  if (t.size() != 3) return false;
  return std::tolower(static_cast<unsigned char>(t[0])) == 'i' &&
         std::tolower(static_cast<unsigned char>(t[1])) == 'n' &&
         std::tolower(static_cast<unsigned char>(t[2])) == 'f';
}

// Reads an optionally signed decimal literal starting at pos; the character
// after the sign must open a digit sequence, so "inf", "nan" and doubled
// signs are rejected here.
bool parse_number(const std::string& s, std::size_t& pos, double& out) {
  std::size_t p = pos;
  bool negative = false;
  if (p < s.size() && (s[p] == '+' || s[p] == '-')) {
    negative = s[p] == '-';
    ++p;
  }
  if (p >= s.size() || !(std::isdigit(static_cast<unsigned char>(s[p])) || s[p] == '.')) {
    return false;
  }
  double value = 0.0;
  const auto res = std::from_chars(s.data() + p, s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr == s.data() + p) return false;
  pos = static_cast<std::size_t>(res.ptr - s.data());
  out = negative ? -value : value;
  return true;
}

[[noreturn]] void parse_fail(const std::string& token, const std::string& text) {
  throw std::invalid_argument("parse_complex: unexpected token '" + token + "' in \"" + text +
                              "\"");
}

}  // namespace

ProjectivePoint parse_complex(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("parse_complex: empty input");

  if (is_inf_token(s)) return ProjectivePoint::infinity();

  const auto at = s.find('@');
  if (at != std::string::npos) {
    const std::string r_text = trim(s.substr(0, at));
    const std::string deg_text = trim(s.substr(at + 1));
    double r = 0.0, deg = 0.0;
    std::size_t pos = 0;
    if (r_text.empty() || !parse_number(r_text, pos, r) || pos != r_text.size()) {
      parse_fail(r_text, text);
    }
    pos = 0;
    if (deg_text.empty() || !parse_number(deg_text, pos, deg) || pos != deg_text.size()) {
      parse_fail(deg_text, text);
    }
    // Not std::polar: that is undefined for negative r, which is a handy
    // way to write antipodal directions (-0.2@-45).
    const double rad = deg * kPi / 180.0;
    return ProjectivePoint::from_z(Complex(r * std::cos(rad), r * std::sin(rad)));
  }

  // Bare imaginary unit: i, +i, -i.
  if (s == "i" || s == "+i") return ProjectivePoint::from_z(Complex(0.0, 1.0));
  if (s == "-i") return ProjectivePoint::from_z(Complex(0.0, -1.0));

  std::size_t pos = 0;
  double first = 0.0;
  if (!parse_number(s, pos, first)) parse_fail(s, text);

  double re = 0.0, im = 0.0;
  if (pos == s.size()) {
    re = first;
  } else if (s[pos] == 'i' && pos + 1 == s.size()) {
    im = first;
  } else if (s[pos] == '+' || s[pos] == '-') {
    re = first;
    if (pos + 2 == s.size() && s[pos + 1] == 'i') {
      im = s[pos] == '-' ? -1.0 : 1.0;
    } else {
      double second = 0.0;
      if (!parse_number(s, pos, second)) parse_fail(s.substr(pos), text);
      if (!(pos + 1 == s.size() && s[pos] == 'i')) parse_fail(s.substr(pos), text);
      im = second;
    }
  } else {
    parse_fail(s.substr(pos), text);
  }
  return ProjectivePoint::from_z(Complex(re, im));
}

namespace {

Json complex_to_json(const ProjectivePoint& p) {
  Json j;
  const Complex z = p.z();
  if (std::isinf(z.real())) {
    j["re"] = "inf";
    j["im"] = 0.0;
  } else {
    j["re"] = round_sig9(z.real());
    j["im"] = round_sig9(z.imag());
  }
  return j;
}

ProjectivePoint complex_from_json(const Json& j) {
  if (j.at("re").is_string()) {
    if (j["re"].get<std::string>() != "inf") {
      throw std::runtime_error("unrecognized coordinate " + j["re"].dump());
    }
    return ProjectivePoint::infinity();
  }
  return ProjectivePoint::from_z(Complex(j.at("re").get<double>(), j.at("im").get<double>()));
}

}  // namespace

std::string format_report(const DiscriminationRecord& record, ReportFormat format) {
  if (format == ReportFormat::Json) {
    Json j;
    j["mode"] = record.config.mode == RunMode::Noisy ? "noisy" : "ideal";
    j["iterations"] = record.config.iterations;
    j["initial"]["z1"] = complex_to_json(record.config.z1);
    j["initial"]["z2"] = complex_to_json(record.config.z2);
    if (record.config.mode == RunMode::Noisy) {
      j["shots_per_setting"] = round_sig9(record.config.shots_per_setting);
      j["monte_carlo_trials"] = record.config.monte_carlo_trials;
      j["seed"] = record.config.seed;
    }
    Json rows = Json::array();
    for (const IterationRow& row : record.rows) {
      Json r;
      r["iteration"] = row.iteration;
      r["overlap_theory"] = round_sig9(row.overlap_theory);
      if (row.overlap_sim) r["overlap_sim"] = round_sig9(*row.overlap_sim);
      if (row.error_bar) r["error_bar"] = round_sig9(*row.error_bar);
      r["p_success"] =
          Json::array({round_sig9(row.step_success[0]), round_sig9(row.step_success[1])});
      r["cum_success"] = Json::array(
          {round_sig9(row.cumulative_success[0]), round_sig9(row.cumulative_success[1])});
      r["z1"] = complex_to_json(row.states[0]);
      r["z2"] = complex_to_json(row.states[1]);
      rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
  }

  std::string out =
      "iteration,overlap_theory,overlap_sim,error_bar,p_success_1,p_success_2,"
      "cum_success_1,cum_success_2,z1_re,z1_im,z2_re,z2_im\n";
  for (const IterationRow& row : record.rows) {
    out += std::to_string(row.iteration);
    out += ',';
    out += format_double_sig9(row.overlap_theory);
    out += ',';
    if (row.overlap_sim) out += format_double_sig9(*row.overlap_sim);
    out += ',';
    if (row.error_bar) out += format_double_sig9(*row.error_bar);
    for (int i = 0; i < 2; ++i) {
      out += ',';
      out += format_double_sig9(row.step_success[i]);
    }
    for (int i = 0; i < 2; ++i) {
      out += ',';
      out += format_double_sig9(row.cumulative_success[i]);
    }
    for (int i = 0; i < 2; ++i) {
      const Complex z = row.states[i].z();
      out += ',';
      out += format_double_sig9(z.real());
      out += ',';
      out += format_double_sig9(z.imag());
    }
    out += '\n';
  }
  return out;
}

void emit_report(const DiscriminationRecord& record, ReportFormat format,
                 const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_report: cannot open " + path);
  const std::string body = format_report(record, format);
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw std::runtime_error("emit_report: write failed for " + path);
}

DiscriminationRecord load_report_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_report_json: cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error("load_report_json: " + path + ": " + e.what());
  }

  DiscriminationRecord record;
  try {
    const std::string mode = j.at("mode").get<std::string>();
    if (mode != "ideal" && mode != "noisy") {
      throw std::runtime_error("load_report_json: unknown mode '" + mode + "' in " + path);
    }
    record.config.mode = mode == "noisy" ? RunMode::Noisy : RunMode::Ideal;
    record.config.iterations = j.at("iterations").get<int>();
    record.config.z1 = complex_from_json(j.at("initial").at("z1"));
    record.config.z2 = complex_from_json(j.at("initial").at("z2"));
    if (j.contains("shots_per_setting")) {
      record.config.shots_per_setting = j["shots_per_setting"].get<double>();
    }
    if (j.contains("monte_carlo_trials")) {
      record.config.monte_carlo_trials = j["monte_carlo_trials"].get<int>();
    }
    if (j.contains("seed")) record.config.seed = j["seed"].get<std::uint64_t>();

    for (const Json& r : j.at("rows")) {
      IterationRow row;
      row.iteration = r.at("iteration").get<int>();
      row.overlap_theory = r.at("overlap_theory").get<double>();
      if (r.contains("overlap_sim")) row.overlap_sim = r["overlap_sim"].get<double>();
      if (r.contains("error_bar")) row.error_bar = r["error_bar"].get<double>();
      row.step_success = {r.at("p_success").at(0).get<double>(),
                          r.at("p_success").at(1).get<double>()};
      row.cumulative_success = {r.at("cum_success").at(0).get<double>(),
                                r.at("cum_success").at(1).get<double>()};
      row.states = {complex_from_json(r.at("z1")), complex_from_json(r.at("z2"))};
      record.rows.push_back(std::move(row));
    }
  } catch (const Json::exception& e) {
    throw std::runtime_error("load_report_json: malformed report " + path + ": " + e.what());
  }
  return record;
}

}  // namespace minq
