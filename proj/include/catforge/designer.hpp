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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "catforge/closed_form.hpp"
#include "catforge/errors.hpp"

namespace catforge {

/// How the sine in the cat-size relation is evaluated. Radians is the correct mode;
/// compat_degrees reads Gamma*tau/2 as degrees, which is what reproduces the published
/// |alpha|^2 column of the design table.
enum class UnitMode { radians, compat_degrees };

inline std::string_view to_string(UnitMode m) {
  return m == UnitMode::radians ? "radians" : "compat-degrees";
}

inline std::optional<UnitMode> parse_unit_mode(std::string_view s) {
  if (s == "radians") return UnitMode::radians;
  if (s == "compat-degrees") return UnitMode::compat_degrees;
  return std::nullopt;
}

struct DesignSpec {
  double fidelity = 0.99;
  double beta_abs = 1.6;
  double big_gamma = 1.0;
  UnitMode unit_mode = UnitMode::radians;

  /// ln(2F - 1), the target value of |beta|^2 G(tau).
  double log_target() const { return std::log(2.0 * fidelity - 1.0); }

  void validate() const {
    if (!(fidelity > 0.5 && fidelity < 1.0)) throw InvalidArgument("fidelity must lie in (1/2, 1)");
    if (!(beta_abs > 0.0) || !std::isfinite(beta_abs)) throw InvalidArgument("|beta| must be positive");
    if (!(big_gamma > 0.0) || !std::isfinite(big_gamma)) throw InvalidArgument("Gamma must be positive");
  }
};

struct DesignResult {
  double big_gamma = 0.0;
  double tau_int = 0.0;
  double alpha_sq = 0.0;
  double achieved_C = 0.0;
  double achieved_F = 0.0;
  /// | |beta|^2 G(tau_int) - ln(2F-1) | / |ln(2F-1)|.
  double identity_residual = 0.0;
  UnitMode unit_mode = UnitMode::radians;
  std::optional<double> t_int_seconds;
};

/// Bisection on a bracketing interval [lo, hi] with f(lo), f(hi) of opposite sign.
template <class F>
double bisect(F&& f, double lo, double hi, double rel_tol) {
  double flo = f(lo);
  for (int it = 0; it < 400 && (hi - lo) > rel_tol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Smallest tau > 0 with G(tau) = ln(2F-1) / |beta|^2, searched before the first pole
/// Gamma*tau = 2*pi.
inline double solve_tau(const DesignSpec& spec) {
  spec.validate();
  const double target = spec.log_target() / (spec.beta_abs * spec.beta_abs);
  const double pole = 2.0 * std::numbers::pi / spec.big_gamma;
  auto residual = [&](double tau) { return big_G(spec.big_gamma, tau) - target; };

  // Start well left of the series estimate G ~ -2 tau / 3 and march geometrically.
  double lo = std::min(-1.5 * target, 0.5 * pole) * 1e-3;
  if (residual(lo) <= 0.0) lo = std::numeric_limits<double>::min();
  double hi = lo;
  while (true) {
    hi = std::min(lo * 1.05, pole * (1.0 - 1e-12));
    if (residual(hi) <= 0.0) break;
    if (hi >= pole * (1.0 - 1e-12)) {
      throw NoSolution("G(tau) does not reach the target before its first pole");
    }
    lo = hi;
  }
  return bisect(residual, lo, hi, 1e-14);
}

/// |beta|^2 / (2 e^{-tau} sin^2(Gamma tau / 2)), with the sine read in degrees in
/// compat_degrees mode.
inline double input_intensity(const DesignSpec& spec, double tau) {
  double half = 0.5 * spec.big_gamma * tau;
  if (spec.unit_mode == UnitMode::compat_degrees) half *= std::numbers::pi / 180.0;
  const double s = std::sin(half);
  if (std::abs(s) < 1e-300 || (half >= 0.5 * std::numbers::pi && std::abs(s) < 1e-12)) {
    throw PoleError("cat size vanishes at Gamma*tau = 2*pi*k");
  }
  return spec.beta_abs * spec.beta_abs / (2.0 * std::exp(-tau) * s * s);
}

/// Interaction time and input intensity for a target fidelity and cat amplitude.
/// gamma_rate (1/s), when given, converts tau_int to seconds.
inline DesignResult design(const DesignSpec& spec, std::optional<double> gamma_rate = {}) {
  DesignResult r;
  r.big_gamma = spec.big_gamma;
  r.unit_mode = spec.unit_mode;
  r.tau_int = solve_tau(spec);
  r.alpha_sq = input_intensity(spec, r.tau_int);
  r.achieved_C = coherence_C(r.alpha_sq, spec.big_gamma, r.tau_int);
  r.achieved_F = 0.5 * (1.0 + r.achieved_C);
  const double target = spec.log_target();
  r.identity_residual = std::abs(spec.beta_abs * spec.beta_abs * big_G(spec.big_gamma, r.tau_int) -
                                 target) /
                        std::abs(target);
  if (gamma_rate && *gamma_rate > 0.0) r.t_int_seconds = r.tau_int / *gamma_rate;
  return r;
}

/// Gamma values of the published design table (F = 0.99, |beta| = 1.6).
inline constexpr std::array<double, 5> kTableGammas = {0.01, 1.0, 25.0, 50.0, 100.0};

inline std::vector<DesignResult> design_table(UnitMode mode) {
  std::vector<DesignResult> out;
  for (double g : kTableGammas) out.push_back(design({0.99, 1.6, g, mode}));
  return out;
}

enum class CurveKind { coherence, design_function };

struct CurveRow {
  double tau;
  /// Empty at a pole of G.
  std::optional<double> value;
  double big_gamma;
};

struct CurveRequest {
  CurveKind kind = CurveKind::coherence;
  std::vector<double> gammas;
  /// |alpha|^2, used by the coherence curves only.
  double alpha_sq = 40000.0;
  double tau_min = 0.0;
  double tau_max = 0.05;
  int points = 201;

  static CurveRequest coherence_defaults() { return {CurveKind::coherence, {0.5, 1.0, 1.5}, 40000.0, 0.0, 0.05, 201}; }
  static CurveRequest design_function_defaults() {
    return {CurveKind::design_function, {0.01, 5.0, 10.0}, 0.0, 0.0, 0.6, 121};
  }

  void validate() const {
    if (gammas.empty()) throw InvalidArgument("at least one Gamma is required");
    if (points < 2) throw InvalidArgument("a curve needs at least two points");
    if (!(tau_min >= 0.0) || !(tau_max > tau_min)) throw InvalidArgument("bad tau grid");
    for (double g : gammas) {
      if (!(g >= 0.0) || !std::isfinite(g)) throw InvalidArgument("Gamma must be non-negative");
    }
    if (!(alpha_sq >= 0.0)) throw InvalidArgument("|alpha|^2 must be non-negative");
  }
};

/// Worker count for sweeps: CATFORGE_THREADS if set, else the hardware concurrency.
inline unsigned sweep_threads() {
  if (const char* env = std::getenv("CATFORGE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Rows ordered by Gamma, then tau, independent of the worker count.
inline std::vector<CurveRow> sweep_curves(const CurveRequest& req) {
  req.validate();
  const std::size_t per = static_cast<std::size_t>(req.points);
  std::vector<CurveRow> rows(req.gammas.size() * per);
  auto fill = [&](std::size_t idx) {
    const double g = req.gammas[idx / per];
    const std::size_t k = idx % per;
    const double tau = req.tau_min + (req.tau_max - req.tau_min) * static_cast<double>(k) /
                                         static_cast<double>(per - 1);
    CurveRow row{tau, std::nullopt, g};
    if (req.kind == CurveKind::coherence) {
      row.value = coherence_C(req.alpha_sq, g, tau);
    } else {
      try {
        row.value = big_G(g, tau);
      } catch (const PoleError&) {
      }
    }
    rows[idx] = row;
  };
  const unsigned workers = std::min<unsigned>(sweep_threads(), static_cast<unsigned>(rows.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) fill(i);
    return rows;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < rows.size(); i += workers) fill(i);
    });
  }
  for (auto& t : pool) t.join();
  return rows;
}

}  // namespace catforge
