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
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "catforge/coherent.hpp"
#include "catforge/errors.hpp"

namespace catforge {

namespace detail {

inline void require_non_negative(double v, const char* name) {
  if (!(v >= 0.0)) throw InvalidArgument(std::string(name) + " must be non-negative");
}

/// Regularized lower incomplete gamma P(a, x) by its positive power series.
inline double regularized_gamma_p(double a, double x) {
  if (x <= 0.0) return 0.0;
  double term = std::exp(a * std::log(x) - x - std::lgamma(a + 1.0));
  double sum = term;
  for (int n = 1; n < 10000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::min(sum, 1.0);
}

}  // namespace detail

/// Decoherence exponent g(Gamma, tau) = int_0^tau e^{-s} (1 - cos(Gamma s)) ds, so that
/// C = exp(-2 |alpha|^2 g). The closed form cancels catastrophically once Gamma*tau is
/// small; there the integral is summed as sum_k (-1)^{k+1} Gamma^{2k} P(2k+1, tau).
inline double decoherence_exponent(double big_gamma, double tau) {
  detail::require_non_negative(big_gamma, "Gamma");
  detail::require_non_negative(tau, "tau");
  if (tau == 0.0 || big_gamma == 0.0) return 0.0;
  const double phase = big_gamma * tau;
  if (phase >= 0.5) {
    const double p = 1.0 / (1.0 + big_gamma * big_gamma);
    const double decay = std::exp(-tau);
    return -std::expm1(-tau) -
           p * (1.0 - decay * std::cos(phase) + big_gamma * decay * std::sin(phase));
  }
  const double g2 = big_gamma * big_gamma;
  double power = 1.0;
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    power *= g2;
    const double term = power * detail::regularized_gamma_p(2.0 * k + 1.0, tau);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

/// ln C(t) for the symmetric double-XPM scheme.
inline double log_coherence_C(double alpha_sq, double big_gamma, double tau) {
  detail::require_non_negative(alpha_sq, "|alpha|^2");
  return -2.0 * alpha_sq * decoherence_exponent(big_gamma, tau);
}

/// Coherence parameter C(t) = exp{-2|alpha|^2 g(Gamma, tau)}.
inline double coherence_C(double alpha_sq, double big_gamma, double tau) {
  return std::exp(log_coherence_C(alpha_sq, big_gamma, tau));
}

/// Cat size |beta|^2 = 2 e^{-tau} sin^2(Gamma tau / 2) |alpha|^2 (radians).
inline double cat_size(double alpha_sq, double big_gamma, double tau) {
  detail::require_non_negative(alpha_sq, "|alpha|^2");
  detail::require_non_negative(big_gamma, "Gamma");
  detail::require_non_negative(tau, "tau");
  const double s = std::sin(0.5 * big_gamma * tau);
  return 2.0 * std::exp(-tau) * s * s * alpha_sq;
}

/// Below this tau, G is evaluated by its Taylor series.
inline double big_G_switch(double big_gamma) { return 1e-4 / std::max(1.0, big_gamma); }

/// Taylor series of G about tau = 0 through tau^4.
inline double big_G_series(double big_gamma, double tau) {
  const double g2 = big_gamma * big_gamma;
  return tau * (-2.0 / 3.0 +
                tau * (-1.0 / 6.0 + tau * (-(g2 / 45.0 + 1.0 / 30.0) -
                                           tau * (g2 / 120.0 + 1.0 / 180.0))));
}

/// G(tau) = -e^tau g(Gamma, tau) / sin^2(Gamma tau / 2), without the small-tau switch.
inline double big_G_direct(double big_gamma, double tau) {
  detail::require_non_negative(big_gamma, "Gamma");
  detail::require_non_negative(tau, "tau");
  if (tau == 0.0) return 0.0;
  if (big_gamma == 0.0) {
    // Gamma -> 0 limit: g ~ Gamma^2 P(3, tau), sin^2 ~ Gamma^2 tau^2 / 4.
    return -4.0 * std::exp(tau) * detail::regularized_gamma_p(3.0, tau) / (tau * tau);
  }
  const double half = 0.5 * big_gamma * tau;
  const double s = std::sin(half);
  if (half >= 0.5 * std::numbers::pi && std::abs(s) < 1e-12) {
    throw PoleError("G has a pole at Gamma*tau = 2*pi*k");
  }
  return -std::exp(tau) * decoherence_exponent(big_gamma, tau) / (s * s);
}

/// The design function G(tau), with ln C = |beta|^2 G.
inline double big_G(double big_gamma, double tau) {
  detail::require_non_negative(big_gamma, "Gamma");
  detail::require_non_negative(tau, "tau");
  if (tau < big_G_switch(big_gamma)) return big_G_series(big_gamma, tau);
  return big_G_direct(big_gamma, tau);
}

/// Amplitude of the pure coherent state leaving the unused port of the coherent-mode
/// beam splitter: (e^{-tau/2 + i Gamma tau} + e^{-tau/2}) alpha / sqrt2.
inline Amplitude pure_port(Amplitude alpha, double big_gamma, double tau) {
  const double a = std::exp(-0.5 * tau);
  return (std::polar(a, big_gamma * tau) + a) * alpha * kInvSqrt2;
}

/// Cat amplitude leaving the (a-b)/sqrt2 port: (e^{-tau/2 + i Gamma tau} - e^{-tau/2}) alpha / sqrt2.
inline Amplitude cat_port(Amplitude alpha, double big_gamma, double tau) {
  const double a = std::exp(-0.5 * tau);
  return (std::polar(a, big_gamma * tau) - a) * alpha * kInvSqrt2;
}

struct ClosedFormPoint {
  double big_gamma;
  double tau;
  double alpha_sq;
  double C;
  double beta_sq;
  double F;
  double G;
  Amplitude gamma_out;
};

inline ClosedFormPoint evaluate_closed_form(Amplitude alpha, double big_gamma, double tau) {
  const double a2 = std::norm(alpha);
  const double c = coherence_C(a2, big_gamma, tau);
  return {big_gamma, tau, a2,    c, cat_size(a2, big_gamma, tau), 0.5 * (1.0 + c),
          big_G(big_gamma, tau), pure_port(alpha, big_gamma, tau)};
}

}  // namespace catforge
