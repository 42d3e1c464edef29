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

// Acceptance criteria 1-11. One PASS/FAIL line per criterion; nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "catforge/cli.hpp"
#include "catforge/closed_form.hpp"
#include "catforge/coherent.hpp"
#include "catforge/designer.hpp"
#include "catforge/fock_oracle.hpp"
#include "catforge/xpm_engine.hpp"
#include "oracles.hpp"

using namespace catforge;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double v) {
  char b[64];
  std::snprintf(b, sizeof b, f, v);
  return b;
}

Outcome table_tau() {
  const std::vector<double> paper = {0.0116846, 0.011685, 0.011652, 0.011555, 0.011196};
  const auto rows = design_table(UnitMode::radians);
  double worst = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) worst = std::max(worst, std::abs(rows[i].tau_int / paper[i] - 1.0));
  return {worst < 0.02, "max rel dev " + fmt("%.4f", worst)};
}

Outcome table_alpha() {
  const std::vector<double> paper = {1.2e12, 1.2e8, 2.0e5, 5.1e4, 1.4e4};
  const auto deg = design_table(UnitMode::compat_degrees);
  double worst = 0.0;
  for (std::size_t i = 0; i < deg.size(); ++i) worst = std::max(worst, std::abs(deg[i].alpha_sq / paper[i] - 1.0));
  double residual = 0.0, round_trip = 0.0;
  for (const auto& r : design_table(UnitMode::radians)) {
    const double lhs = std::log(r.achieved_C);
    const double rhs = cat_size(r.alpha_sq, r.big_gamma, r.tau_int) * big_G(r.big_gamma, r.tau_int);
    residual = std::max(residual, std::abs(lhs / rhs - 1.0));
    round_trip = std::max(round_trip, std::abs(r.achieved_F - 0.99));
  }
  return {worst < 0.05 && residual < 1e-9 && round_trip < 1e-8,
          "degree-mode max rel dev " + fmt("%.4f", worst) + ", identity " + fmt("%.1e", residual) +
              ", |F-0.99| " + fmt("%.1e", round_trip)};
}

Outcome identity_suite() {
  std::mt19937_64 rng(20260);
  std::uniform_real_distribution<double> la(std::log(0.1), std::log(1e6));
  std::uniform_real_distribution<double> lg(std::log(0.01), std::log(100.0));
  std::uniform_real_distribution<double> ph(0.0, 2 * std::numbers::pi);
  double worst = 0.0;
  double worst_quadrature = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double a2 = std::exp(la(rng));
    const double g = std::exp(lg(rng));
    double phase = ph(rng);
    while (phase == 0.0) phase = ph(rng);
    const double tau = phase / g;
    const double rhs = cat_size(a2, g, tau) * big_G(g, tau);
    worst = std::max(worst, std::abs(log_coherence_C(a2, g, tau) / rhs - 1.0));
    // ln C from direct quadrature of the decoherence integral
    const double lhs_quadrature = -2.0 * a2 * oracle::quadrature_exponent(g, tau);
    worst_quadrature = std::max(worst_quadrature, std::abs(lhs_quadrature / rhs - 1.0));
  }
  return {worst < 1e-9 && worst_quadrature < 1e-9,
          "max rel err " + fmt("%.2e", worst) + " (quadrature ln C: " + fmt("%.2e", worst_quadrature) +
              ") over 1000 points"};
}

Outcome oracle_equivalence() {
  const cli::VerifyReport r = cli::verify_point(1.5, 1.0, 0.2, 20, 2000);
  const bool ok = r.oracle_vs_closed_form < 1e-3 && r.engine_vs_closed_form < 1e-3 &&
                  r.oracle_vs_engine < 1e-3 && r.trace_distance < 1e-5;
  return {ok, "C oracle " + fmt("%.10f", r.c_oracle.real()) + ", engine " +
                  fmt("%.10f", r.c_engine.real()) + ", closed form " + fmt("%.10f", r.c_closed_form) +
                  ", trace distance " + fmt("%.2e", r.trace_distance)};
}

Outcome convergence() {
  const XpmParams p = XpmParams::dimensionless(1.0, 0.2);
  const auto cfg = double_xpm_channels(p, p.t, p.t, QubitLoss::neglect);
  const double exact = coherence_C(2.25, 1.0, 0.2);
  std::vector<double> x, y;
  for (int n : {250, 500, 1000, 2000}) {
    const double err = std::abs(extract_coherence(evolve_sliced(xpm_input(1.5, 2), cfg, n)) - exact);
    x.push_back(std::log(n));
    y.push_back(std::log(err));
  }
  const double mx = (x[0] + x[1] + x[2] + x[3]) / 4, my = (y[0] + y[1] + y[2] + y[3]) / 4;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < 4; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double order = -sxy / sxx;
  return {std::abs(order - 1.0) <= 0.2, "fitted order " + fmt("%.4f", order)};
}

Outcome limits() {
  bool exact = true;
  for (double a2 : {0.1, 1.0, 1e4}) {
    for (double g : {0.01, 1.0, 100.0}) {
      exact = exact && coherence_C(a2, g, 0.0) == 1.0 && cat_size(a2, g, 0.0) == 0.0;
    }
    for (double tau : {0.01, 1.0, 10.0}) exact = exact && coherence_C(a2, 0.0, tau) == 1.0;
  }
  double worst = 0.0;
  for (double g : {0.01, 5.0, 10.0}) worst = std::max(worst, std::abs(big_G(g, 1e-3) / 1e-3 / (-2.0 / 3.0) - 1.0));
  return {exact && worst < 0.01,
          std::string(exact ? "exact limits hold" : "exact limits broken") + ", G/tau dev " + fmt("%.2e", worst)};
}

Outcome reality_and_heralding() {
  const SchemeOutput s = run_double_xpm(1.5, XpmParams::dimensionless(1.0, 0.2), 2000);
  const double ratio = std::abs(s.coherence_C.imag() / s.coherence_C.real());
  const double sum = s.herald_probability + s.herald_probability_d2;
  const SchemeOutput lossless = run_double_xpm(1.5, XpmParams{1.0, 0.0, 0.2}, 2000);
  const double f = fidelity_to_cat(lossless.heralded, {lossless.beta, Parity::even});
  return {ratio < 1e-10 && std::abs(sum - 1.0) < 1e-12 && f > 1.0 - 1e-10,
          "Im/Re " + fmt("%.1e", ratio) + ", P(D1)+P(D2)-1 " + fmt("%.1e", sum - 1.0) +
              ", lossless fidelity 1-" + fmt("%.1e", 1.0 - f)};
}

Outcome asymmetry() {
  const DesignResult d = design({0.99, 1.6, 25.0, UnitMode::radians});
  const XpmParams p = XpmParams::dimensionless(25.0, d.tau_int);
  const AsymmetricOutput r = run_asymmetric(std::sqrt(d.alpha_sq), p, p.t, 1.1 * p.t, 0.0, 2000);
  return {r.fidelity > 0.95, "fidelity " + fmt("%.6f", r.fidelity)};
}

Outcome energy() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Amplitude a{u(rng), u(rng)};
    const double g = 10.0 * u(rng), tau = u(rng);
    const double lhs = std::norm(pure_port(a, g, tau)) + cat_size(std::norm(a), g, tau);
    worst = std::max(worst, std::abs(lhs - 2.0 * std::exp(-tau) * std::norm(a)));
  }
  double engine_worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Amplitude a{u(rng), u(rng)};
    const double g = u(rng), tau = u(rng);
    const SchemeOutput s = run_double_xpm(a, XpmParams::dimensionless(g, tau), 50);
    engine_worst = std::max(engine_worst, std::abs(std::norm(s.gamma_out) + std::norm(s.beta) -
                                                   2.0 * std::exp(-tau) * std::norm(a)));
  }
  return {worst < 1e-12 && engine_worst < 1e-12,
          "closed form " + fmt("%.1e", worst) + ", engine " + fmt("%.1e", engine_worst)};
}

std::vector<std::pair<double, std::string>> csv_values(const std::string& csv) {
  std::vector<std::pair<double, std::string>> out;
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    const auto c1 = line.find(','), c2 = line.rfind(',');
    const std::string v = line.substr(c1 + 1, c2 - c1 - 1);
    out.emplace_back(v.empty() ? std::nan("") : std::stod(v), line.substr(0, c1));
  }
  return out;
}

Outcome curves() {
  std::ostringstream c_out, g_out, err;
  const int rc = cli::run({"curve", "--kind", "c", "--alpha", "200", "--gammas", "0.5,1,1.5"}, c_out, err);
  const int rg = cli::run({"curve", "--kind", "g", "--gammas", "0.01,5,10"}, g_out, err);
  if (rc != 0 || rg != 0) return {false, "curve command failed: " + err.str()};
  bool c_ok = true;
  int starts = 0;
  for (const auto& [v, tau] : csv_values(c_out.str())) {
    c_ok = c_ok && v > 0.0 && v <= 1.0;
    if (std::stod(tau) == 0.0) {
      ++starts;
      c_ok = c_ok && v == 1.0;
    }
  }
  bool g_ok = true;
  int positives = 0;
  for (const auto& [v, tau] : csv_values(g_out.str())) {
    if (!std::isnan(v) && v > 0.0) ++positives;
  }
  g_ok = positives == 0;
  return {c_ok && starts == 3 && g_ok,
          "C rows in (0,1] with C(0)=1: " + std::string(c_ok ? "yes" : "no") +
              ", positive G values: " + std::to_string(positives)};
}

Outcome discrimination() {
  const double same = discrimination_efficiency({0.4, -1.2}, {0.4, -1.2});
  const double two = discrimination_efficiency({0.5, 0.5}, {-0.5, -0.5});  // |diff|^2 = 2
  const double expect = 1.0 - std::exp(-1.0);
  return {same == 0.0 && std::abs(two - expect) < 1e-12,
          "eta(g,g) " + fmt("%.1e", same) + ", eta at |dg|^2=2 " + fmt("%.15f", two)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "design table tau column (radians) within 2%", 1.0, table_tau},
      {2, "design table |alpha|^2 column (degree mode 5%, radians identity)", 1.0, table_alpha},
      {3, "ln C = |beta|^2 G on 1000 random points", 1.0, identity_suite},
      {4, "Fock oracle / dyad engine / closed form agreement", 60.0, oracle_equivalence},
      {5, "slice-product convergence order 1.0 +- 0.2", 30.0, convergence},
      {6, "limits of C, cat size and G/tau", 1.0, limits},
      {7, "symmetric reality, herald sum, lossless even cat", 10.0, reality_and_heralding},
      {8, "asymmetry resilience at Gamma=25 design point", 30.0, asymmetry},
      {9, "energy bookkeeping of the output ports", 1.0, energy},
      {10, "C(tau) and G(tau) curve properties", 2.0, curves},
      {11, "symmetry-test discrimination efficiency", 1.0, discrimination},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.ok && in_time;
    if (!pass) ++failures;
    std::printf("[%s] criterion %2d: %s | %s | %.3f s (budget %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), o.detail.c_str(), secs, c.budget_s, in_time ? "" : " OVER BUDGET");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
