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

#include "catforge/closed_form.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"

using namespace catforge;

// Frozen from 40-digit quadrature of int_0^tau e^{-s}(1 - cos(Gamma s)) ds (mpmath).
constexpr double kC_1_1_1 = 0.8577459213168069;
constexpr double kC_225_1_02 = 0.9948552663734285;
constexpr double kG_1_1 = -0.9073640238874967;

TEST(CoherenceC, Limits) {
  for (double a2 : {0.0, 1.0, 1e6}) {
    for (double g : {0.0, 0.5, 30.0}) EXPECT_EQ(coherence_C(a2, g, 0.0), 1.0);
  }
  for (double tau : {0.0, 0.3, 5.0, 100.0}) EXPECT_EQ(coherence_C(1e4, 0.0, tau), 1.0);
}

TEST(CoherenceC, FrozenQuadratureValues) {
  EXPECT_NEAR(coherence_C(1.0, 1.0, 1.0), kC_1_1_1, 1e-13);
  EXPECT_NEAR(coherence_C(2.25, 1.0, 0.2), kC_225_1_02, 1e-13);
}

TEST(CoherenceC, RejectsNegativeInputs) {
  EXPECT_THROW(coherence_C(-1.0, 1.0, 1.0), InvalidArgument);
  EXPECT_THROW(coherence_C(1.0, 1.0, -0.1), InvalidArgument);
  EXPECT_THROW(cat_size(1.0, -1.0, 0.1), InvalidArgument);
}

TEST(CoherenceC, ExponentMatchesQuadratureOverWholeDomain) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> lg(std::log(0.01), std::log(100.0));
  std::uniform_real_distribution<double> lphase(std::log(1e-4), std::log(2 * std::numbers::pi));
  for (int i = 0; i < 300; ++i) {
    const double g = std::exp(lg(rng));
    const double tau = std::exp(lphase(rng)) / g;
    const double expect = oracle::quadrature_exponent(g, tau);
    EXPECT_NEAR(decoherence_exponent(g, tau) / expect, 1.0, 1e-10) << "Gamma=" << g << " tau=" << tau;
  }
}

TEST(CoherenceC, AgreesWithLiteralFormulaAwayFromCancellation) {
  for (double g : {0.5, 1.0, 3.0}) {
    for (double tau : {0.5, 1.0, 2.0}) {
      EXPECT_NEAR(coherence_C(2.0, g, tau), oracle::literal_coherence(2.0, g, tau), 1e-12);
    }
  }
}

TEST(CoherenceC, MonotoneInIntensity) {
  for (double g : {0.1, 1.0, 10.0}) {
    double prev = 1.0;
    for (double a2 = 0.0; a2 < 50.0; a2 += 0.5) {
      const double c = coherence_C(a2, g, 0.3);
      EXPECT_LE(c, prev);
      EXPECT_GT(c, 0.0);
      prev = c;
    }
  }
}

TEST(CatSize, Values) {
  EXPECT_EQ(cat_size(5.0, 1.0, 0.0), 0.0);
  EXPECT_NEAR(cat_size(5.0, 2.0, std::numbers::pi), 0.0, 1e-30);
  const double s = std::sin(0.1);
  EXPECT_NEAR(cat_size(2.25, 1.0, 0.2), 2.0 * std::exp(-0.2) * s * s * 2.25, 1e-15);
}

TEST(BigG, SmallTauLimitIsMinusTwoThirds) {
  for (double g : {0.01, 1.0, 100.0}) {
    for (double tau : {1e-7, 1e-6, 1e-5}) {
      EXPECT_NEAR(big_G(g, tau) / tau, -2.0 / 3.0, 1e-4) << g;
    }
  }
}

TEST(BigG, FrozenValueAndLiteralFormula) {
  EXPECT_NEAR(big_G(1.0, 1.0), kG_1_1, 1e-13);
  for (double g : {0.5, 2.0, 5.0}) {
    for (double tau : {0.3, 0.8}) {
      EXPECT_NEAR(big_G(g, tau), oracle::literal_G(g, tau), 1e-10 * std::abs(big_G(g, tau)));
    }
  }
}

TEST(BigG, NegativeBeforeThePole) {
  for (double g : {0.01, 5.0, 10.0}) {
    const double pole = 2 * std::numbers::pi / g;
    for (int k = 1; k < 1000; ++k) EXPECT_LT(big_G(g, pole * k / 1000.0), 0.0);
  }
}

TEST(BigG, PoleRaises) {
  EXPECT_THROW(big_G(1.0, 2 * std::numbers::pi), PoleError);
  EXPECT_THROW(big_G(4.0, std::numbers::pi), PoleError);
}

TEST(BigG, SeriesMeetsDirectAtSwitch) {
  for (double g : {0.0, 0.01, 1.0, 5.0, 25.0, 100.0}) {
    const double ts = big_G_switch(g);
    EXPECT_LT(std::abs(big_G_series(g, ts) - big_G_direct(g, ts)), 1e-9);
    EXPECT_LT(std::abs(big_G_series(g, ts) - big_G_direct(g, ts)), 1e-9 * std::abs(big_G_direct(g, ts)));
  }
}

TEST(Identity, LogCEqualsBetaSquaredTimesG) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> la(std::log(0.1), std::log(1e6));
  std::uniform_real_distribution<double> lg(std::log(0.01), std::log(100.0));
  std::uniform_real_distribution<double> ph(1e-6, 2 * std::numbers::pi - 1e-6);
  for (int i = 0; i < 10; ++i) {
    const double a2 = std::exp(la(rng));
    for (int j = 0; j < 10; ++j) {
      const double g = std::exp(lg(rng));
      for (int k = 0; k < 10; ++k) {
        const double tau = ph(rng) / g;
        const double lhs = log_coherence_C(a2, g, tau);
        const double rhs = cat_size(a2, g, tau) * big_G(g, tau);
        EXPECT_NEAR(lhs / rhs, 1.0, 1e-9);
      }
    }
  }
}

TEST(PurePort, ValuesAndEnergyBookkeeping) {
  const Amplitude a{1.2, -0.7};
  EXPECT_NEAR(std::abs(pure_port(a, 3.0, 0.0) - std::sqrt(2.0) * a), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(pure_port(a, 2.0, std::numbers::pi / 2)), 0.0, 1e-15);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const Amplitude al{u(rng), u(rng)};
    const double g = u(rng), tau = u(rng);
    const double lhs = std::norm(pure_port(al, g, tau)) + cat_size(std::norm(al), g, tau);
    EXPECT_NEAR(lhs, 2.0 * std::exp(-tau) * std::norm(al), 1e-12 * std::max(1.0, std::norm(al)));
  }
}

TEST(ClosedFormPoint, Invariants) {
  const auto p = evaluate_closed_form({1.5, 0.0}, 1.0, 0.2);
  EXPECT_GT(p.C, 0.0);
  EXPECT_LE(p.C, 1.0);
  EXPECT_DOUBLE_EQ(p.F, 0.5 * (1.0 + p.C));
  EXPECT_LE(p.G, 0.0);
  EXPECT_GE(p.beta_sq, 0.0);
}
