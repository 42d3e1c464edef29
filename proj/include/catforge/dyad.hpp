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
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "catforge/coherent.hpp"
#include "catforge/errors.hpp"

namespace catforge {

/// Polarization component of the dual-rail single-photon qubit.
enum class Qubit { H, V };

/// weight * |row><col| (x) |ket_1 .. ket_n><bra_1 .. bra_n| over coherent modes.
struct DyadTerm {
  Qubit row = Qubit::H;
  Qubit col = Qubit::H;
  std::vector<Amplitude> ket;
  std::vector<Amplitude> bra;
  Complex weight{1.0, 0.0};

  /// Trace of this term, weight * prod <bra_m|ket_m> on the qubit diagonal.
  Complex trace() const {
    if (row != col) return {0.0, 0.0};
    Complex exponent{0.0, 0.0};
    for (std::size_t m = 0; m < ket.size(); ++m) exponent += log_overlap(bra[m], ket[m]);
    return weight * std::exp(exponent);
  }

  DyadTerm adjoint() const { return {col, row, bra, ket, std::conj(weight)}; }

  bool same_dyad(const DyadTerm& other) const {
    return row == other.row && col == other.col && ket == other.ket && bra == other.bra;
  }

  friend bool operator==(const DyadTerm&, const DyadTerm&) = default;
};

/// One branch c |q> |amps> of a pure superposition.
struct Branch {
  Complex coeff;
  Qubit qubit = Qubit::H;
  std::vector<Amplitude> amps;
};

/// Density operator stored exactly as a finite sum of coherent-state dyads.
class DyadState {
 public:
  DyadState() = default;
  explicit DyadState(std::size_t n_modes) : n_modes_(n_modes) {}

  /// |psi><psi| for psi = sum_k c_k |q_k>|amps_k>.
  static DyadState pure(std::size_t n_modes, std::span<const Branch> branches) {
    DyadState out(n_modes);
    for (const auto& ki : branches) {
      for (const auto& bj : branches) {
        out.add({ki.qubit, bj.qubit, ki.amps, bj.amps, ki.coeff * std::conj(bj.coeff)});
      }
    }
    return out;
  }

  std::size_t n_modes() const { return n_modes_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<DyadTerm>& terms() const { return terms_; }
  std::vector<DyadTerm>& terms() { return terms_; }

  void add(DyadTerm term) {
    if (term.ket.size() != n_modes_ || term.bra.size() != n_modes_) {
      throw InvalidArgument("dyad term has " + std::to_string(term.ket.size()) + "/" +
                            std::to_string(term.bra.size()) + " amplitudes, state has " +
                            std::to_string(n_modes_) + " modes");
    }
    terms_.push_back(std::move(term));
  }

  Complex trace() const {
    Complex t{0.0, 0.0};
    for (const auto& term : terms_) t += term.trace();
    return t;
  }

  DyadState scaled(Complex factor) const {
    DyadState out = *this;
    for (auto& term : out.terms_) term.weight *= factor;
    return out;
  }

  DyadState normalized() const {
    const double tr = trace().real();
    if (!(tr > 0.0)) throw EngineError("cannot normalize a state with non-positive trace");
    return scaled(1.0 / tr);
  }

  /// Merges terms that carry the same dyad.
  DyadState compacted() const {
    DyadState out(n_modes_);
    for (const auto& term : terms_) {
      auto it = std::find_if(out.terms_.begin(), out.terms_.end(),
                             [&](const DyadTerm& t) { return t.same_dyad(term); });
      if (it == out.terms_.end()) {
        out.terms_.push_back(term);
      } else {
        it->weight += term.weight;
      }
    }
    return out;
  }

  /// (rho + rho^dagger) / 2, with duplicates merged.
  DyadState hermitized() const {
    DyadState out(n_modes_);
    out.terms_.reserve(2 * terms_.size());
    for (const auto& term : terms_) {
      DyadTerm half = term;
      half.weight *= 0.5;
      out.terms_.push_back(half.adjoint());
      out.terms_.push_back(std::move(half));
    }
    return out.compacted();
  }

  /// Drops terms whose weight magnitude is below rel_threshold times the largest weight.
  DyadState pruned(double rel_threshold = 1e-15) const {
    double largest = 0.0;
    for (const auto& term : terms_) largest = std::max(largest, std::abs(term.weight));
    DyadState out(n_modes_);
    for (const auto& term : terms_) {
      if (std::abs(term.weight) >= rel_threshold * largest) out.terms_.push_back(term);
    }
    return out;
  }

 private:
  std::size_t n_modes_ = 0;
  std::vector<DyadTerm> terms_;
};

namespace detail {

inline void check_mode(const DyadState& state, std::size_t mode) {
  if (mode >= state.n_modes()) {
    throw InvalidArgument("mode index " + std::to_string(mode) + " out of range for " +
                          std::to_string(state.n_modes()) + "-mode state");
  }
}

inline DyadTerm drop_mode(DyadTerm term, std::size_t mode) {
  term.ket.erase(term.ket.begin() + static_cast<std::ptrdiff_t>(mode));
  term.bra.erase(term.bra.begin() + static_cast<std::ptrdiff_t>(mode));
  return term;
}

}  // namespace detail

/// Balanced beam splitter between two coherent modes; port m1 gets (a+b)/sqrt2.
inline DyadState apply_beamsplitter(const DyadState& state, std::size_t m1, std::size_t m2) {
  detail::check_mode(state, m1);
  detail::check_mode(state, m2);
  if (m1 == m2) throw InvalidArgument("beam splitter needs two distinct modes");
  DyadState out = state;
  for (auto& term : out.terms()) {
    std::tie(term.ket[m1], term.ket[m2]) = beamsplitter_5050(term.ket[m1], term.ket[m2]);
    std::tie(term.bra[m1], term.bra[m2]) = beamsplitter_5050(term.bra[m1], term.bra[m2]);
  }
  return out;
}

/// Partial trace over one coherent mode.
inline DyadState trace_out_mode(const DyadState& state, std::size_t mode) {
  detail::check_mode(state, mode);
  DyadState out(state.n_modes() - 1);
  for (const auto& term : state.terms()) {
    DyadTerm reduced = detail::drop_mode(term, mode);
    reduced.weight *= overlap(term.bra[mode], term.ket[mode]);
    out.add(std::move(reduced));
  }
  return out;
}

/// <c| rho |c> on one mode (unnormalized conditional state).
inline DyadState project_mode(const DyadState& state, std::size_t mode, Amplitude c) {
  detail::check_mode(state, mode);
  DyadState out(state.n_modes() - 1);
  for (const auto& term : state.terms()) {
    DyadTerm reduced = detail::drop_mode(term, mode);
    reduced.weight *= overlap(c, term.ket[mode]) * overlap(term.bra[mode], c);
    out.add(std::move(reduced));
  }
  return out;
}

/// Qubit projector vector h|H> + v|V>.
struct QubitHerald {
  Complex h;
  Complex v;

  /// Detector D1 (convention: (|H> + |V>)/sqrt2).
  static QubitHerald d1() { return {kInvSqrt2, kInvSqrt2}; }
  /// Detector D2 ((|H> - |V>)/sqrt2).
  static QubitHerald d2() { return {kInvSqrt2, -kInvSqrt2}; }

  Complex component(Qubit q) const { return q == Qubit::H ? h : v; }
};

/// <D| rho |D> on the qubit; the result carries a trivial |H><H| qubit.
inline DyadState project_qubit(const DyadState& state, const QubitHerald& herald) {
  DyadState out(state.n_modes());
  for (const auto& term : state.terms()) {
    DyadTerm t = term;
    t.weight *= std::conj(herald.component(term.row)) * herald.component(term.col);
    t.row = Qubit::H;
    t.col = Qubit::H;
    out.add(std::move(t));
  }
  return out.compacted();
}

/// Relative phase e^{i phi} on one qubit component.
inline DyadState apply_qubit_phase(const DyadState& state, Qubit q, double phi) {
  DyadState out = state;
  const Complex phase = std::polar(1.0, phi);
  for (auto& term : out.terms()) {
    if (term.row == q) term.weight *= phase;
    if (term.col == q) term.weight *= std::conj(phase);
  }
  return out;
}

/// <psi| Tr_qubit(rho) |psi> for a single-mode state and psi = sum_k c_k |amp_k>.
inline Complex expectation(const DyadState& state, std::span<const Branch> psi) {
  if (state.n_modes() != 1) throw InvalidArgument("expectation needs a single-mode state");
  Complex acc{0.0, 0.0};
  for (const auto& term : state.terms()) {
    if (term.row != term.col) continue;
    Complex left{0.0, 0.0};
    Complex right{0.0, 0.0};
    for (const auto& b : psi) {
      left += std::conj(b.coeff) * overlap(b.amps[0], term.ket[0]);
      right += b.coeff * overlap(term.bra[0], b.amps[0]);
    }
    acc += term.weight * left * right;
  }
  return acc;
}

inline std::vector<Branch> cat_branches(const CatTarget& target) {
  const double n = cat_norm(target);
  return {{n, Qubit::H, {target.beta}}, {n * parity_sign(target.parity), Qubit::H, {-target.beta}}};
}

/// |CSS><CSS| as a single-mode dyad state.
inline DyadState cat_state(const CatTarget& target) {
  const auto branches = cat_branches(target);
  return DyadState::pure(1, branches);
}

/// <CSS| rho |CSS> / Tr(rho).
inline double fidelity_to_cat(const DyadState& state, const CatTarget& target) {
  if (state.empty()) throw InvalidArgument("fidelity of an empty state");
  const double tr = state.trace().real();
  if (!(tr > 0.0)) throw EngineError("state trace is not positive");
  const auto branches = cat_branches(target);
  return std::clamp(expectation(state, branches).real() / tr, 0.0, 1.0);
}

/// Normalized qubit coherence <psi_H|rho_HV|psi_V> / sqrt(<psi_H|rho_HH|psi_H><psi_V|rho_VV|psi_V>),
/// where psi_H and psi_V are the coherent vectors of the (single-dyad) diagonal blocks.
inline Complex extract_coherence(const DyadState& state) {
  const DyadTerm* hh = nullptr;
  const DyadTerm* vv = nullptr;
  for (const auto& term : state.terms()) {
    if (term.row == Qubit::H && term.col == Qubit::H) {
      if (hh != nullptr) throw InvalidArgument("HH block holds more than one dyad");
      hh = &term;
    }
    if (term.row == Qubit::V && term.col == Qubit::V) {
      if (vv != nullptr) throw InvalidArgument("VV block holds more than one dyad");
      vv = &term;
    }
  }
  if (hh == nullptr || vv == nullptr) throw EngineError("vanishing diagonal qubit block");
  auto sandwich = [](const std::vector<Amplitude>& left, const DyadTerm& t,
                     const std::vector<Amplitude>& right) {
    Complex e{0.0, 0.0};
    for (std::size_t m = 0; m < left.size(); ++m) {
      e += log_overlap(left[m], t.ket[m]) + log_overlap(t.bra[m], right[m]);
    }
    return t.weight * std::exp(e);
  };
  Complex off{0.0, 0.0};
  for (const auto& term : state.terms()) {
    if (term.row == Qubit::H && term.col == Qubit::V) off += sandwich(hh->ket, term, vv->ket);
  }
  const double dh = sandwich(hh->ket, *hh, hh->ket).real();
  const double dv = sandwich(vv->ket, *vv, vv->ket).real();
  if (!(dh > 0.0) || !(dv > 0.0)) throw EngineError("vanishing diagonal qubit block");
  return off / std::sqrt(dh * dv);
}

/// Feeds |beta> + e^{i phi1}|-beta> and |beta> + e^{i phi2}|-beta> into a balanced beam
/// splitter and returns the normalized (a-b)/sqrt2 port conditioned on vacuum in the
/// (a+b)/sqrt2 port. For phi1 + phi2 = pi the vacuum admixture cancels and the output is
/// |sqrt2 beta> + e^{i(phi1-phi2)} |-sqrt2 beta>.
inline DyadState combine_cgs(double phi1, double phi2, Amplitude beta) {
  const Complex e1 = std::polar(1.0, phi1);
  const Complex e2 = std::polar(1.0, phi2);
  const std::vector<Branch> input = {
      {1.0, Qubit::H, {beta, beta}},
      {e2, Qubit::H, {beta, -beta}},
      {e1, Qubit::H, {-beta, beta}},
      {e1 * e2, Qubit::H, {-beta, -beta}},
  };
  DyadState mixed = apply_beamsplitter(DyadState::pure(2, input), 0, 1);
  DyadState conditioned = project_mode(mixed, 0, Amplitude{0.0, 0.0});
  return conditioned.compacted().pruned().normalized();
}

}  // namespace catforge
