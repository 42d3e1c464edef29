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

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

#include "catforge/errors.hpp"

namespace catforge {

/// Complex field amplitude labelling a coherent state of one optical mode.
using Amplitude = std::complex<double>;
using Complex = std::complex<double>;

inline bool is_finite(Amplitude a) { return std::isfinite(a.real()) && std::isfinite(a.imag()); }

/// Exponent of <a|b>, i.e. -|a|^2/2 - |b|^2/2 + conj(a) b.
inline Complex log_overlap(Amplitude a, Amplitude b) {
  return -0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b;
}

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

/// Inner product <a|b> of two coherent states.
inline Complex overlap(Amplitude a, Amplitude b) { return std::exp(log_overlap(a, b)); }

/// Output amplitudes of a balanced beam splitter: ((a+b)/sqrt2, (a-b)/sqrt2).
inline std::pair<Amplitude, Amplitude> beamsplitter_5050(Amplitude a, Amplitude b) {
  constexpr double r = kInvSqrt2;
  return {(a + b) * r, (a - b) * r};
}

struct Displaced {
  Amplitude amplitude;
  double phase;
};

/// D(x)|a> = exp(i Im(x conj(a))) |a + x>.
inline Displaced displace(Amplitude a, Amplitude x) {
  return {a + x, (x * std::conj(a)).imag()};
}

enum class Parity { even, odd };

inline double parity_sign(Parity p) { return p == Parity::even ? 1.0 : -1.0; }

/// Target cat state N (|beta> +/- |-beta>).
struct CatTarget {
  Amplitude beta;
  Parity parity = Parity::even;
};

/// Normalization N = (2 +/- 2 exp(-2|beta|^2))^(-1/2).
inline double cat_norm(const CatTarget& target) {
  const double b2 = std::norm(target.beta);
  if (target.parity == Parity::odd) {
    if (b2 == 0.0) throw DegenerateCat("odd cat with zero amplitude is the zero vector");
    // 2 - 2 e^{-2x} = -2 expm1(-2x), avoids cancellation at small amplitude.
    return 1.0 / std::sqrt(-2.0 * std::expm1(-2.0 * b2));
  }
  return 1.0 / std::sqrt(2.0 + 2.0 * std::exp(-2.0 * b2));
}

/// Efficiency 1 - exp(-|a - b|^2 / 2) of telling coherent states |a> and |b> apart with a
/// balanced beam splitter and a photodiode.
inline double discrimination_efficiency(Amplitude a, Amplitude b) {
  return -std::expm1(-0.5 * std::norm(a - b));
}

}  // namespace catforge
