// Copyright 2026 The catforge Authors
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

#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "catforge/closed_form.hpp"
#include "catforge/coherent.hpp"
#include "catforge/designer.hpp"
#include "catforge/dyad.hpp"
#include "catforge/errors.hpp"
#include "catforge/fock_oracle.hpp"
#include "catforge/xpm_engine.hpp"

namespace catforge::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 2,
  kNoSolution = 3,
  kEngineFailure = 4,
  kVerificationFailure = 5,
};

using Json = nlohmann::ordered_json;

/// Floats are written with 9 significant digits in scientific notation.
inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

namespace detail {

inline void write_json(std::ostream& os, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        break;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(it.key()).dump() << ": ";
        write_json(os, it.value(), indent, depth + 1);
      }
      os << "\n" << close << "}";
      break;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        break;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write_json(os, j[i], indent, depth + 1);
      }
      os << "\n" << close << "]";
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      // JSON has no NaN/Inf literals.
      if (std::isfinite(v)) {
        os << format_real(v);
      } else {
        os << "null";
      }
      break;
    }
    default:
      os << j.dump();
  }
}

}  // namespace detail

inline std::string dump_json(const Json& j) {
  std::ostringstream os;
  detail::write_json(os, j, 2, 0);
  os << "\n";
  return os.str();
}

inline Json complex_json(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

/// Parses "re", "re,im" into a complex number.
inline std::optional<Complex> parse_complex(const std::string& text) {
  std::istringstream is(text);
  double re = 0.0;
  double im = 0.0;
  if (!(is >> re)) return std::nullopt;
  char comma = 0;
  if (is >> comma) {
    if (comma != ',' || !(is >> im)) return std::nullopt;
  }
  is >> std::ws;
  if (!is.eof() || !std::isfinite(re) || !std::isfinite(im)) return std::nullopt;
  return Complex{re, im};
}

inline std::string curve_csv(const std::vector<CurveRow>& rows) {
  std::string out = "tau,value,gamma_ratio\n";
  for (const auto& r : rows) {
    out += format_real(r.tau) + "," + (r.value ? format_real(*r.value) : std::string{}) + "," +
           format_real(r.big_gamma) + "\n";
  }
  return out;
}

/// Minimal line chart: one polyline per Gamma, gaps split a polyline.
inline std::string curve_svg(const std::vector<CurveRow>& rows, const std::string& y_label) {
  constexpr double W = 640, H = 420, L = 70, R = 20, T = 20, B = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& r : rows) {
    xmin = std::min(xmin, r.tau);
    xmax = std::max(xmax, r.tau);
    if (r.value && std::isfinite(*r.value)) {
      ymin = std::min(ymin, *r.value);
      ymax = std::max(ymax, *r.value);
    }
  }
  if (!(ymax > ymin)) {
    ymin -= 1.0;
    ymax += 1.0;
  }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return T + (ymax - y) / (ymax - ymin) * (H - T - B); };
  auto num = [](double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2f", v);
    return std::string(b);
  };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<line x1=\"" + num(L) + "\" y1=\"" + num(H - B) + "\" x2=\"" + num(W - R) + "\" y2=\"" +
       num(H - B) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + num(L) + "\" y1=\"" + num(T) + "\" x2=\"" + num(L) + "\" y2=\"" + num(H - B) +
       "\" stroke=\"black\"/>\n";
  s += "<text x=\"" + num(W / 2) + "\" y=\"" + num(H - 12) + "\" text-anchor=\"middle\">tau</text>\n";
  s += "<text x=\"14\" y=\"" + num(H / 2) + "\">" + y_label + "</text>\n";
  s += "<text x=\"" + num(L - 4) + "\" y=\"" + num(T + 4) + "\" text-anchor=\"end\" font-size=\"10\">" +
       format_real(ymax) + "</text>\n";
  s += "<text x=\"" + num(L - 4) + "\" y=\"" + num(H - B) +
       "\" text-anchor=\"end\" font-size=\"10\">" + format_real(ymin) + "</text>\n";
  s += "<text x=\"" + num(W - R) + "\" y=\"" + num(H - B + 14) +
       "\" text-anchor=\"end\" font-size=\"10\">" + format_real(xmax) + "</text>\n";

  std::size_t series = 0;
  for (std::size_t i = 0; i < rows.size();) {
    const double g = rows[i].big_gamma;
    const char* color = colors[series % 5];
    std::string pts;
    auto flush = [&] {
      if (!pts.empty()) {
        s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" points=\"" + pts +
             "\"/>\n";
      }
      pts.clear();
    };
    for (; i < rows.size() && rows[i].big_gamma == g; ++i) {
      if (rows[i].value && std::isfinite(*rows[i].value)) {
        pts += num(px(rows[i].tau)) + "," + num(py(*rows[i].value)) + " ";
      } else {
        flush();
      }
    }
    flush();
    s += "<text x=\"" + num(W - R - 90) + "\" y=\"" + num(T + 14 + 14 * series) + "\" fill=\"" +
         color + "\" font-size=\"11\">Gamma=" + num(g) + "</text>\n";
    ++series;
  }
  s += "</svg>\n";
  return s;
}

/// Every flag of every subcommand; unused fields keep their defaults.
struct RunConfig {
  std::string subcommand;
  std::string alpha = "1.5";
  bool alpha_given = false;
  double gamma_ratio = 1.0;
  double tau = 0.2;
  double fidelity = 0.99;
  double beta = 1.6;
  bool fidelity_given = false;
  bool beta_given = false;
  int slices = 2000;
  int cutoff = 20;
  double tau_min = 0.0;
  std::optional<double> tau_max;
  std::optional<int> points;
  std::string unit_mode = "radians";
  std::string format = "json";
  std::string output;
  std::string svg;
  bool table = false;
  std::string kind = "c";
  std::vector<double> gammas;
  std::string asymmetry;
  std::string qubit_loss = "neglect";
  bool lossless = false;
  std::optional<double> gamma_rate;
  std::string gamma_a;
  std::string gamma_b;
};

struct UsageError : Error {
  using Error::Error;
};

inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + cfg.output);
  f << text;
}

inline Json design_json(const DesignResult& r) {
  Json j{{"gamma_ratio", r.big_gamma},   {"tau_int", r.tau_int},
         {"alpha_sq", r.alpha_sq},       {"achieved_C", r.achieved_C},
         {"achieved_F", r.achieved_F},   {"identity_residual", r.identity_residual},
         {"unit_mode", std::string(to_string(r.unit_mode))}};
  if (r.t_int_seconds) j["t_int_seconds"] = *r.t_int_seconds;
  return j;
}

inline UnitMode unit_mode_of(const RunConfig& cfg) {
  const auto m = parse_unit_mode(cfg.unit_mode);
  if (!m) throw UsageError("unit mode must be radians or compat-degrees");
  return *m;
}

inline int cmd_design(const RunConfig& cfg, std::ostream& out) {
  const UnitMode mode = unit_mode_of(cfg);
  if (cfg.table) {
    const auto rows = design_table(mode);
    if (cfg.format == "csv") {
      std::string s = "gamma_ratio,tau_int,alpha_sq,achieved_C,achieved_F,unit_mode\n";
      for (const auto& r : rows) {
        s += format_real(r.big_gamma) + "," + format_real(r.tau_int) + "," + format_real(r.alpha_sq) +
             "," + format_real(r.achieved_C) + "," + format_real(r.achieved_F) + "," +
             std::string(to_string(mode)) + "\n";
      }
      emit(cfg, s, out);
    } else {
      Json arr = Json::array();
      for (const auto& r : rows) arr.push_back(design_json(r));
      emit(cfg, dump_json(arr), out);
    }
    return kSuccess;
  }
  const DesignResult r = design({cfg.fidelity, cfg.beta, cfg.gamma_ratio, mode}, cfg.gamma_rate);
  emit(cfg, dump_json(design_json(r)), out);
  return kSuccess;
}

inline int cmd_curve(const RunConfig& cfg, std::ostream& out) {
  CurveRequest req;
  std::string label;
  if (cfg.kind == "c") {
    req = CurveRequest::coherence_defaults();
    if (cfg.alpha_given) {
      const auto a = parse_complex(cfg.alpha);
      if (!a) throw UsageError("cannot parse --alpha");
      req.alpha_sq = std::norm(*a);
    }
    label = "C";
  } else if (cfg.kind == "g") {
    req = CurveRequest::design_function_defaults();
    label = "G";
  } else {
    throw UsageError("--kind must be c or g");
  }
  if (!cfg.gammas.empty()) req.gammas = cfg.gammas;
  req.tau_min = cfg.tau_min;
  if (cfg.tau_max) req.tau_max = *cfg.tau_max;
  if (cfg.points) req.points = *cfg.points;
  const auto rows = sweep_curves(req);
  emit(cfg, curve_csv(rows), out);
  if (!cfg.svg.empty()) {
    std::ofstream f(cfg.svg, std::ios::binary);
    if (!f) throw UsageError("cannot open svg file " + cfg.svg);
    f << curve_svg(rows, label);
  }
  return kSuccess;
}

inline Json scheme_json(const SchemeOutput& s) {
  return Json{{"beta", complex_json(s.beta)},
              {"beta_abs_sq", std::norm(s.beta)},
              {"gamma_out", complex_json(s.gamma_out)},
              {"coherence_C", complex_json(s.coherence_C)},
              {"weights", Json{{"even", s.weight_even}, {"odd", s.weight_odd}}},
              {"herald_probability", s.herald_probability},
              {"herald_probability_d2", s.herald_probability_d2},
              {"success_decay_factor", s.success_decay_factor}};
}

inline QubitLoss qubit_loss_of(const RunConfig& cfg) {
  if (cfg.qubit_loss == "neglect") return QubitLoss::neglect;
  if (cfg.qubit_loss == "common-decay") return QubitLoss::common_decay;
  throw UsageError("--qubit-loss must be neglect or common-decay");
}

inline int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  Complex alpha;
  double tau = cfg.tau;
  Json design_info;
  if (cfg.alpha_given || !(cfg.fidelity_given || cfg.beta_given)) {
    const auto a = parse_complex(cfg.alpha);
    if (!a) throw UsageError("cannot parse --alpha");
    alpha = *a;
  } else {
    const DesignResult r = design({cfg.fidelity, cfg.beta, cfg.gamma_ratio, UnitMode::radians});
    alpha = std::sqrt(r.alpha_sq);
    tau = r.tau_int;
    design_info = design_json(r);
  }
  if (cfg.slices < 1) throw UsageError("--slices must be at least 1");
  if (!(cfg.gamma_ratio >= 0.0) || !(tau >= 0.0)) throw UsageError("Gamma and tau must be non-negative");
  const XpmParams params =
      cfg.lossless ? XpmParams{cfg.gamma_ratio, 0.0, tau} : XpmParams::dimensionless(cfg.gamma_ratio, tau);
  const QubitLoss loss = qubit_loss_of(cfg);

  Json j;
  j["alpha"] = complex_json(alpha);
  j["gamma_ratio"] = cfg.gamma_ratio;
  j["tau"] = tau;
  j["slices"] = cfg.slices;
  j["lossless"] = cfg.lossless;
  if (!design_info.is_null()) j["design"] = design_info;
  if (cfg.asymmetry.empty()) {
    j["output"] = scheme_json(run_double_xpm(alpha, params, cfg.slices, loss));
  } else {
    const auto a = parse_complex(cfg.asymmetry);
    if (!a || !(a->real() >= 0.0)) throw UsageError("--asymmetry expects t2/t1,phi");
    const AsymmetricOutput r =
        run_asymmetric(alpha, params, params.t, a->real() * params.t, a->imag(), cfg.slices, loss);
    j["asymmetry"] = Json{{"t2_over_t1", a->real()}, {"phi_e", a->imag()}};
    j["output"] = scheme_json(r.scheme);
    j["fidelity"] = r.fidelity;
  }
  emit(cfg, dump_json(j), out);
  return kSuccess;
}

inline constexpr double kVerifyCoherenceTolerance = 1e-3;
inline constexpr double kVerifyTraceDistanceTolerance = 1e-5;

struct VerifyReport {
  Complex c_oracle;
  Complex c_engine;
  double c_closed_form = 0.0;
  double oracle_vs_closed_form = 0.0;
  double engine_vs_closed_form = 0.0;
  double oracle_vs_engine = 0.0;
  double trace_distance = 0.0;
  bool passed = false;
};

/// Fock-oracle cross-validation of the dyad engine and the closed form at one point.
inline VerifyReport verify_point(Amplitude alpha, double big_gamma, double tau, int cutoff,
                                 int slices) {
  const XpmParams params = XpmParams::dimensionless(big_gamma, tau);
  const ChannelConfig channels = double_xpm_channels(params, tau, tau, QubitLoss::neglect);
  const std::vector<int> cutoffs{cutoff, cutoff};

  const fock::FockDensity oracle = fock::integrate(fock::xpm_input(alpha, cutoffs), channels, tau);
  const DyadState engine = evolve_sliced(xpm_input(alpha, 2), channels, slices);

  VerifyReport r;
  r.c_oracle = fock::extract_coherence(oracle);
  r.c_engine = extract_coherence(engine);
  r.c_closed_form = coherence_C(std::norm(alpha), big_gamma, tau);
  r.oracle_vs_closed_form = std::abs(r.c_oracle - r.c_closed_form);
  r.engine_vs_closed_form = std::abs(r.c_engine - r.c_closed_form);
  r.oracle_vs_engine = std::abs(r.c_oracle - r.c_engine);
  r.trace_distance = fock::trace_distance(fock::to_fock(engine, cutoffs), oracle);
  r.passed = r.oracle_vs_closed_form < kVerifyCoherenceTolerance &&
             r.engine_vs_closed_form < kVerifyCoherenceTolerance &&
             r.oracle_vs_engine < kVerifyCoherenceTolerance &&
             r.trace_distance < kVerifyTraceDistanceTolerance;
  return r;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto a = parse_complex(cfg.alpha);
  if (!a) throw UsageError("cannot parse --alpha");
  if (std::abs(*a) > 2.0) throw UsageError("verify requires |alpha| <= 2");
  if (cfg.cutoff < 1 || cfg.slices < 1) throw UsageError("--cutoff and --slices must be positive");
  if (!(cfg.gamma_ratio >= 0.0) || !(cfg.tau >= 0.0)) throw UsageError("Gamma and tau must be non-negative");
  VerifyReport r;
  try {
    r = verify_point(*a, cfg.gamma_ratio, cfg.tau, cfg.cutoff, cfg.slices);
  } catch (const CutoffError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerificationFailure;
  }
  auto row = [](const std::string& name, double v, double tol) {
    return name + "," + format_real(v) + "," + format_real(tol) + "," + (v < tol ? "pass" : "FAIL") +
           "\n";
  };
  std::string s = "metric,value,tolerance,status\n";
  s += row("abs(C_oracle-C_closed_form)", r.oracle_vs_closed_form, kVerifyCoherenceTolerance);
  s += row("abs(C_engine-C_closed_form)", r.engine_vs_closed_form, kVerifyCoherenceTolerance);
  s += row("abs(C_oracle-C_engine)", r.oracle_vs_engine, kVerifyCoherenceTolerance);
  s += row("trace_distance(engine,oracle)", r.trace_distance, kVerifyTraceDistanceTolerance);
  emit(cfg, s, out);
  if (!r.passed) {
    const double worst = std::max({r.oracle_vs_closed_form / kVerifyCoherenceTolerance,
                                   r.engine_vs_closed_form / kVerifyCoherenceTolerance,
                                   r.oracle_vs_engine / kVerifyCoherenceTolerance,
                                   r.trace_distance / kVerifyTraceDistanceTolerance});
    err << "verification failed: worst metric at " << format_real(worst) << " x tolerance\n";
    return kVerificationFailure;
  }
  return kSuccess;
}

inline int cmd_discriminate(const RunConfig& cfg, std::ostream& out) {
  const auto a = parse_complex(cfg.gamma_a);
  const auto b = parse_complex(cfg.gamma_b);
  if (!a || !b) throw UsageError("cannot parse --gamma-a/--gamma-b (expected re or re,im)");
  Json j{{"gamma_a", complex_json(*a)},
         {"gamma_b", complex_json(*b)},
         {"efficiency", discrimination_efficiency(*a, *b)}};
  emit(cfg, dump_json(j), out);
  return kSuccess;
}

/// Appends `--key value` pairs from a key=value file for every key not already on the
/// command line.
inline std::vector<std::string> merge_config_file(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read config file " + path);
  std::string line;
  while (std::getline(f, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = "--" + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    bool present = false;
    for (const auto& a : args) present = present || a == key || a.rfind(key + "=", 0) == 0;
    if (present) continue;
    if (value == "true") {
      args.push_back(key);
    } else if (value != "false") {
      args.push_back(key);
      args.push_back(value);
    }
  }
  return args;
}

/// Entry point shared by the executable and the tests; args excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"catforge: double cross-phase-modulation cat-state design and simulation"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto* design_cmd = app.add_subcommand("design", "solve for tau_int and |alpha|^2");
  auto* curve_cmd = app.add_subcommand("curve", "C(tau) or G(tau) curves as CSV / SVG");
  auto* sim_cmd = app.add_subcommand("simulate", "run the double-XPM circuit in the dyad engine");
  auto* verify_cmd = app.add_subcommand("verify", "cross-check engine and closed form with the Fock oracle");
  auto* disc_cmd = app.add_subcommand("discriminate", "symmetry-test efficiency of two pure-port amplitudes");

  auto positive = CLI::PositiveNumber;
  auto non_negative = CLI::NonNegativeNumber;
  for (auto* sub : {design_cmd, curve_cmd, sim_cmd, verify_cmd, disc_cmd}) {
    sub->add_option("--output,-o", cfg.output, "write the result to this file");
  }

  design_cmd->add_option("--fidelity", cfg.fidelity, "target fidelity F in (1/2, 1)");
  design_cmd->add_option("--beta", cfg.beta, "target cat amplitude |beta|")->check(positive);
  design_cmd->add_option("--gamma-ratio", cfg.gamma_ratio, "Gamma = chi/gamma")->check(positive);
  design_cmd->add_option("--unit-mode", cfg.unit_mode, "radians | compat-degrees");
  design_cmd->add_option("--gamma-rate", cfg.gamma_rate, "damping rate gamma in 1/s")->check(positive);
  design_cmd->add_flag("--table", cfg.table, "reproduce the five-column design table");
  design_cmd->add_option("--format", cfg.format, "json | csv (table only)");

  curve_cmd->add_option("--kind", cfg.kind, "c (coherence) | g (design function)");
  curve_cmd->add_option("--alpha", cfg.alpha, "input amplitude for C curves (default 200)");
  curve_cmd->add_option("--gammas", cfg.gammas, "Gamma values")->delimiter(',');
  curve_cmd->add_option("--tau-min", cfg.tau_min)->check(non_negative);
  curve_cmd->add_option("--tau-max", cfg.tau_max)->check(positive);
  curve_cmd->add_option("--points", cfg.points);
  curve_cmd->add_option("--svg", cfg.svg, "also write an SVG line chart");

  sim_cmd->add_option("--alpha", cfg.alpha, "input amplitude (re or re,im)");
  sim_cmd->add_option("--gamma-ratio", cfg.gamma_ratio)->check(non_negative);
  sim_cmd->add_option("--tau", cfg.tau)->check(non_negative);
  sim_cmd->add_option("--fidelity", cfg.fidelity, "design alpha and tau from F and |beta|");
  sim_cmd->add_option("--beta", cfg.beta)->check(positive);
  sim_cmd->add_option("--slices", cfg.slices);
  sim_cmd->add_option("--qubit-loss", cfg.qubit_loss, "neglect | common-decay");
  sim_cmd->add_flag("--lossless", cfg.lossless, "gamma = 0 with the same XPM phase Gamma*tau");
  sim_cmd->add_option("--asymmetry", cfg.asymmetry, "t2/t1,phi_E");

  verify_cmd->add_option("--alpha", cfg.alpha);
  verify_cmd->add_option("--gamma-ratio", cfg.gamma_ratio)->check(non_negative);
  verify_cmd->add_option("--tau", cfg.tau)->check(non_negative);
  verify_cmd->add_option("--cutoff", cfg.cutoff);
  verify_cmd->add_option("--slices", cfg.slices);

  disc_cmd->add_option("--gamma-a", cfg.gamma_a, "first amplitude (re or re,im)")->required();
  disc_cmd->add_option("--gamma-b", cfg.gamma_b, "second amplitude (re or re,im)")->required();

  try {
    args = merge_config_file(std::move(args));
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  for (auto* sub : {sim_cmd, curve_cmd, verify_cmd}) {
    if (sub->parsed() && sub->count("--alpha") > 0) cfg.alpha_given = true;
  }
  cfg.fidelity_given = sim_cmd->count("--fidelity") > 0;
  cfg.beta_given = sim_cmd->count("--beta") > 0;

  try {
    if (design_cmd->parsed()) return cmd_design(cfg, out);
    if (curve_cmd->parsed()) return cmd_curve(cfg, out);
    if (sim_cmd->parsed()) return cmd_simulate(cfg, out);
    if (verify_cmd->parsed()) return cmd_verify(cfg, out, err);
    if (disc_cmd->parsed()) return cmd_discriminate(cfg, out);
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const NoSolution& e) {
    err << e.what() << "\n";
    return kNoSolution;
  } catch (const PoleError& e) {
    err << e.what() << "\n";
    return kNoSolution;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kEngineFailure;
  }
  return kUsage;
}

}  // namespace catforge::cli
