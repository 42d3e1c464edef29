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
#include <limits>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "catforge/closed_form.hpp"
#include "catforge/coherent.hpp"
#include "catforge/dyad.hpp"
#include "catforge/errors.hpp"

namespace catforge {

/// Kerr strength chi (rad/s), photon damping rate gamma (1/s) and interaction time t (s).
/// Dimensionless quantities follow as tau = gamma t and Gamma = chi / gamma.
struct XpmParams {
  double chi = 0.0;
  double gamma = 0.0;
  double t = 0.0;

  /// Units where gamma = 1, so chi = Gamma and t = tau.
  static XpmParams dimensionless(double big_gamma, double tau) { return {big_gamma, 1.0, tau}; }

  double tau() const { return gamma * t; }
  double big_gamma() const {
    return gamma == 0.0 ? std::numeric_limits<double>::infinity() : chi / gamma;
  }
  /// Conditional XPM phase theta = chi t.
  double theta() const { return chi * t; }

  void validate() const {
    if (!(chi >= 0.0) || !(gamma >= 0.0) || !(t >= 0.0) || !std::isfinite(chi) ||
        !std::isfinite(gamma) || !std::isfinite(t)) {
      throw InvalidArgument("XPM parameters must be finite and non-negative");
    }
  }
};

enum class QubitLoss { neglect, common_decay };

/// One cross-Kerr channel: a coherent mode coupled to one qubit rail, with its own loss.
struct Channel {
  std::size_t mode = 0;
  Qubit component = Qubit::H;
  double chi = 0.0;
  double gamma = 0.0;
  double duration = 0.0;
};

struct ChannelConfig {
  std::vector<Channel> channels;
  QubitLoss qubit_loss = QubitLoss::neglect;

  void validate(std::size_t n_modes) const {
    std::set<std::size_t> seen;
    for (const auto& c : channels) {
      if (c.mode >= n_modes) {
        throw InvalidArgument("channel mode " + std::to_string(c.mode) + " out of range");
      }
      if (!seen.insert(c.mode).second) {
        throw InvalidArgument("coherent mode coupled by more than one channel");
      }
      if (!(c.chi >= 0.0) || !(c.gamma >= 0.0) || !(c.duration >= 0.0)) {
        throw InvalidArgument("channel rates and durations must be non-negative");
      }
    }
  }
};

namespace detail {

inline void kerr_in_place(DyadState& state, std::size_t mode, Qubit component, double phase) {
  const Complex rot = std::polar(1.0, phase);
  for (auto& term : state.terms()) {
    if (term.row == component) term.ket[mode] *= rot;
    if (term.col == component) term.bra[mode] *= rot;
  }
}

// Exact amplitude-damping map: |a><b| -> <b|a>^{1-s^2} |a s><b s|, s = e^{-gamma dt / 2}.
inline void loss_in_place(DyadState& state, std::size_t mode, double gamma_dt) {
  const double s = std::exp(-0.5 * gamma_dt);
  const double lost = -std::expm1(-gamma_dt);
  for (auto& term : state.terms()) {
    term.weight *= std::exp(lost * log_overlap(term.bra[mode], term.ket[mode]));
    term.ket[mode] *= s;
    term.bra[mode] *= s;
  }
}

inline void qubit_decay_in_place(DyadState& state, Qubit component, double gamma_dt) {
  const double amp = std::exp(-0.5 * gamma_dt);
  for (auto& term : state.terms()) {
    if (term.row == component) term.weight *= amp;
    if (term.col == component) term.weight *= amp;
  }
}

}  // namespace detail

/// Conditional phase rotation of one mode on the given qubit rail.
inline DyadState slice_kerr(const DyadState& state, std::size_t mode, Qubit component,
                            double phase) {
  detail::check_mode(state, mode);
  DyadState out = state;
  detail::kerr_in_place(out, mode, component, phase);
  return out;
}

/// Exact finite-step photon-loss channel on one mode; trace preserving.
inline DyadState slice_loss(const DyadState& state, std::size_t mode, double gamma_dt) {
  detail::check_mode(state, mode);
  if (!(gamma_dt >= 0.0)) throw InvalidArgument("gamma*dt must be non-negative");
  DyadState out = state;
  detail::loss_in_place(out, mode, gamma_dt);
  return out;
}

/// Amplitude decay e^{-gamma dt / 2} of one qubit rail (photon lost from the dual-rail space).
inline DyadState slice_qubit_decay(const DyadState& state, Qubit component, double gamma_dt) {
  if (!(gamma_dt >= 0.0)) throw InvalidArgument("gamma*dt must be non-negative");
  DyadState out = state;
  detail::qubit_decay_in_place(out, component, gamma_dt);
  return out;
}

/// n_slices alternations of the conditional Kerr rotation and the loss channel per channel.
/// The off-diagonal weights become the product of per-slice decoherence factors, which
/// converges to the continuum result with first-order splitting error.
inline DyadState evolve_sliced(const DyadState& state, const ChannelConfig& cfg, int n_slices) {
  if (n_slices < 1) throw InvalidArgument("n_slices must be at least 1");
  cfg.validate(state.n_modes());
  DyadState out = state;
  for (int k = 0; k < n_slices; ++k) {
    for (const auto& c : cfg.channels) {
      const double dt = c.duration / n_slices;
      detail::kerr_in_place(out, c.mode, c.component, c.chi * dt);
      detail::loss_in_place(out, c.mode, c.gamma * dt);
      if (cfg.qubit_loss == QubitLoss::common_decay) {
        detail::qubit_decay_in_place(out, c.component, c.gamma * dt);
      }
    }
  }
  return out;
}

struct SchemeOutput {
  double weight_even = 0.0;
  double weight_odd = 0.0;
  /// Cat amplitude (mean of the +beta and -(-beta) branch amplitudes).
  Amplitude beta;
  /// Pure-port amplitude (mean over the two qubit branches).
  Amplitude gamma_out;
  Complex coherence_C;
  /// Probability of the D1 click, including the qubit decay factor in common-decay mode.
  double herald_probability = 0.0;
  double herald_probability_d2 = 0.0;
  double success_decay_factor = 1.0;
  /// Normalized single-mode output conditioned on D1.
  DyadState heralded;

  friend bool operator==(const SchemeOutput& a, const SchemeOutput& b) {
    return a.weight_even == b.weight_even && a.weight_odd == b.weight_odd && a.beta == b.beta &&
           a.gamma_out == b.gamma_out && a.coherence_C == b.coherence_C &&
           a.herald_probability == b.herald_probability &&
           a.herald_probability_d2 == b.herald_probability_d2 &&
           a.success_decay_factor == b.success_decay_factor &&
           a.heralded.terms() == b.heralded.terms();
  }
};

/// (|H> + |V>)/sqrt2 (x) |alpha>^{(x) n_modes}.
inline DyadState xpm_input(Amplitude alpha, std::size_t n_modes) {
  const std::vector<Amplitude> amps(n_modes, alpha);
  const std::vector<Branch> branches = {{kInvSqrt2, Qubit::H, amps},
                                        {kInvSqrt2, Qubit::V, amps}};
  return DyadState::pure(n_modes, branches);
}

/// Channel layout of the double-XPM circuit: mode 0 couples to H, mode 1 to V.
inline ChannelConfig double_xpm_channels(const XpmParams& params, double t1, double t2,
                                         QubitLoss qubit_loss) {
  return {{{0, Qubit::H, params.chi, params.gamma, t1}, {1, Qubit::V, params.chi, params.gamma, t2}},
          qubit_loss};
}

namespace detail {

inline SchemeOutput run_double_xpm_pipeline(Amplitude alpha, const XpmParams& params, double t1,
                                            double t2, double phi_e, int n_slices,
                                            QubitLoss qubit_loss) {
  if (!is_finite(alpha)) throw InvalidArgument("alpha must be finite");
  params.validate();
  if (!(t1 >= 0.0) || !(t2 >= 0.0)) throw InvalidArgument("interaction times must be non-negative");

  const DyadState evolved =
      evolve_sliced(xpm_input(alpha, 2), double_xpm_channels(params, t1, t2, qubit_loss), n_slices);

  SchemeOutput out;
  out.coherence_C = extract_coherence(evolved);
  out.success_decay_factor = evolved.trace().real();

  // Phase of the |H><V| coherence once the pure port is traced out. It is zero for equal
  // channels and is removed so that phi_e is the residual relative phase of the output.
  const DyadState split = apply_beamsplitter(evolved, 0, 1);
  Complex coherence{0.0, 0.0};
  for (const auto& term : split.terms()) {
    if (term.row == Qubit::H && term.col == Qubit::V) {
      coherence += term.weight * overlap(term.bra[0], term.ket[0]);
    }
  }
  const double induced = coherence == Complex{} ? 0.0 : std::arg(coherence);
  const DyadState mixed = apply_qubit_phase(split, Qubit::V, induced + phi_e);
  for (const auto& term : mixed.terms()) {
    if (term.row == Qubit::H && term.col == Qubit::H) {
      out.gamma_out += 0.5 * term.ket[0];
      out.beta += 0.5 * term.ket[1];
    } else if (term.row == Qubit::V && term.col == Qubit::V) {
      out.gamma_out += 0.5 * term.ket[0];
      out.beta -= 0.5 * term.ket[1];
    }
  }

  const DyadState d1 = project_qubit(mixed, QubitHerald::d1());
  const DyadState d2 = project_qubit(mixed, QubitHerald::d2());
  out.herald_probability = d1.trace().real();
  out.herald_probability_d2 = d2.trace().real();
  if (!(out.herald_probability > 0.0)) throw EngineError("zero trace after post-selection on D1");

  out.heralded = trace_out_mode(d1, 0).normalized();
  if (std::norm(out.beta) == 0.0) {
    out.weight_even = 1.0;
    out.weight_odd = 0.0;
  } else {
    const double fe = fidelity_to_cat(out.heralded, {out.beta, Parity::even});
    const double fo = fidelity_to_cat(out.heralded, {out.beta, Parity::odd});
    out.weight_even = fe / (fe + fo);
    out.weight_odd = fo / (fe + fo);
  }
  return out;
}

}  // namespace detail

/// Double-XPM circuit: symmetric evolution of both channels, BS2 on the coherent modes,
/// BS3 on the qubit, post-selection on D1.
inline SchemeOutput run_double_xpm(Amplitude alpha, const XpmParams& params, int n_slices,
                                   QubitLoss qubit_loss = QubitLoss::neglect) {
  return detail::run_double_xpm_pipeline(alpha, params, params.t, params.t, 0.0, n_slices,
                                         qubit_loss);
}

/// Ideal even cat of the symmetric design at interaction time params.t.
inline CatTarget symmetric_cat_target(Amplitude alpha, const XpmParams& params) {
  const double a = std::exp(-0.5 * params.tau());
  const Amplitude beta = (std::polar(a, params.theta()) - a) * alpha * kInvSqrt2;
  return {beta, Parity::even};
}

struct AsymmetricOutput {
  SchemeOutput scheme;
  /// Fidelity of the D1 output to the symmetric design's even cat.
  double fidelity = 0.0;
};

/// Channel 1 runs for t1, channel 2 for t2. The relative phase induced by unequal channels is
/// cancelled and phi_e is applied as the remaining relative phase of the V rail.
inline AsymmetricOutput run_asymmetric(Amplitude alpha, const XpmParams& params, double t1,
                                       double t2, double phi_e, int n_slices,
                                       QubitLoss qubit_loss = QubitLoss::neglect) {
  AsymmetricOutput out;
  out.scheme = detail::run_double_xpm_pipeline(alpha, params, t1, t2, phi_e, n_slices, qubit_loss);
  const CatTarget target = symmetric_cat_target(alpha, params);
  out.fidelity = std::norm(target.beta) == 0.0
                     ? expectation(out.scheme.heralded,
                                   std::vector<Branch>{{1.0, Qubit::H, {Amplitude{}}}})
                           .real()
                     : fidelity_to_cat(out.scheme.heralded, target);
  return out;
}

struct SingleXpmOutput {
  Complex coherence_C;
  /// A alpha, with A = e^{-gamma t / 2}.
  Amplitude branch_plain;
  /// A alpha e^{i theta}.
  Amplitude branch_rotated;
  /// x maps the branches to +beta and -beta.
  Amplitude displacement;
  Amplitude beta;
};

/// Single-XPM circuit: one coherent mode coupled to the V rail of (|H> + |V>)/sqrt2.
inline SingleXpmOutput run_single_xpm(Amplitude alpha, const XpmParams& params, int n_slices) {
  if (!is_finite(alpha)) throw InvalidArgument("alpha must be finite");
  params.validate();
  const ChannelConfig cfg{{{0, Qubit::V, params.chi, params.gamma, params.t}}, QubitLoss::neglect};
  const DyadState evolved = evolve_sliced(xpm_input(alpha, 1), cfg, n_slices);

  SingleXpmOutput out;
  out.coherence_C = extract_coherence(evolved);
  for (const auto& term : evolved.terms()) {
    if (term.row == Qubit::H && term.col == Qubit::H) out.branch_plain = term.ket[0];
    if (term.row == Qubit::V && term.col == Qubit::V) out.branch_rotated = term.ket[0];
  }
  out.displacement = -0.5 * (out.branch_plain + out.branch_rotated);
  out.beta = 0.5 * (out.branch_plain - out.branch_rotated);
  return out;
}

}  // namespace catforge
