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

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "catforge/coherent.hpp"
#include "catforge/dyad.hpp"
#include "catforge/errors.hpp"
#include "catforge/xpm_engine.hpp"

namespace catforge::fock {

using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Largest admissible norm deficit of a truncated coherent state.
inline constexpr double kNormDeficitTolerance = 1e-8;
/// Largest admissible population of the last Fock level of any mode.
inline constexpr double kTrailingPopulationTolerance = 1e-6;

inline int recommended_cutoff(Amplitude alpha) {
  return static_cast<int>(std::ceil(4.0 * std::norm(alpha) + 10.0));
}

/// Truncated coherent-state amplitudes e^{-|a|^2/2} a^n / sqrt(n!), n = 0..cutoff.
inline Vector coherent_coefficients(Amplitude alpha, int cutoff) {
  if (cutoff < 0) throw InvalidArgument("cutoff must be non-negative");
  Vector c(cutoff + 1);
  c[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= cutoff; ++n) c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  return c;
}

/// Normalized truncated coherent state; throws CutoffError when the truncation loses
/// more than kNormDeficitTolerance of the norm.
inline Vector coherent_vector(Amplitude alpha, int cutoff) {
  Vector c = coherent_coefficients(alpha, cutoff);
  const double deficit = 1.0 - c.squaredNorm();
  if (deficit > kNormDeficitTolerance) {
    throw CutoffError("cutoff " + std::to_string(cutoff) + " too small for |alpha|^2 = " +
                      std::to_string(std::norm(alpha)) + " (norm deficit " +
                      std::to_string(deficit) + ")");
  }
  return c / c.norm();
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

/// Dense density matrix over qubit (x) mode_0 (x) ... (x) mode_{k-1}; the qubit index is the
/// most significant digit (H = 0, V = 1) and the last mode varies fastest.
struct FockDensity {
  std::vector<int> cutoffs;
  Matrix data;

  std::size_t n_modes() const { return cutoffs.size(); }

  /// Dimension of the coherent-mode factor.
  Eigen::Index mode_dim() const {
    Eigen::Index d = 1;
    for (int c : cutoffs) d *= c + 1;
    return d;
  }

  /// Photon number of `mode` in basis state `index`.
  int photons(Eigen::Index index, std::size_t mode) const {
    Eigen::Index rest = index % mode_dim();
    for (std::size_t m = cutoffs.size(); m-- > mode + 1;) rest /= cutoffs[m] + 1;
    return static_cast<int>(rest % (cutoffs[mode] + 1));
  }

  Eigen::Index stride(std::size_t mode) const {
    Eigen::Index s = 1;
    for (std::size_t m = mode + 1; m < cutoffs.size(); ++m) s *= cutoffs[m] + 1;
    return s;
  }

  Complex trace() const { return data.trace(); }

  double hermiticity_error() const { return (data - data.adjoint()).cwiseAbs().maxCoeff(); }

  double trailing_population(std::size_t mode) const {
    double p = 0.0;
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
      if (photons(i, mode) == cutoffs[mode]) p += data(i, i).real();
    }
    return p;
  }

  double mean_photons(std::size_t mode) const {
    double n = 0.0;
    for (Eigen::Index i = 0; i < data.rows(); ++i) n += photons(i, mode) * data(i, i).real();
    return n / trace().real();
  }

  double min_eigenvalue() const {
    const Matrix h = 0.5 * (data + data.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  void check_cutoffs() const {
    for (std::size_t m = 0; m < cutoffs.size(); ++m) {
      const double p = trailing_population(m);
      if (p > kTrailingPopulationTolerance) {
        throw CutoffError("mode " + std::to_string(m) + " populates its last Fock level (" +
                          std::to_string(p) + "); raise the cutoff");
      }
    }
  }
};

/// Embeds a dyad state into the truncated Fock space.
inline FockDensity to_fock(const DyadState& state, const std::vector<int>& cutoffs) {
  if (cutoffs.size() != state.n_modes()) throw InvalidArgument("one cutoff per mode required");
  FockDensity rho{cutoffs, {}};
  const Eigen::Index md = rho.mode_dim();
  rho.data = Matrix::Zero(2 * md, 2 * md);
  auto product = [&](const std::vector<Amplitude>& amps) {
    Vector v = Vector::Ones(1);
    for (std::size_t m = 0; m < amps.size(); ++m) v = kron(v, coherent_vector(amps[m], cutoffs[m]));
    return v;
  };
  for (const auto& term : state.terms()) {
    const Vector k = product(term.ket);
    const Vector b = product(term.bra);
    const Eigen::Index r0 = term.row == Qubit::H ? 0 : md;
    const Eigen::Index c0 = term.col == Qubit::H ? 0 : md;
    rho.data.block(r0, c0, md, md).noalias() += term.weight * (k * b.adjoint());
  }
  return rho;
}

/// (|H> + |V>)/sqrt2 (x) |alpha>^{(x) n}, built directly from truncated coherent vectors.
inline FockDensity xpm_input(Amplitude alpha, const std::vector<int>& cutoffs) {
  Vector modes = Vector::Ones(1);
  for (int c : cutoffs) modes = kron(modes, coherent_vector(alpha, c));
  Vector psi(2 * modes.size());
  psi << modes, modes;
  psi /= std::sqrt(2.0);
  return {cutoffs, psi * psi.adjoint()};
}

namespace detail {

/// Elementwise Lindblad generator for cross-Kerr coupling plus photon loss:
/// drho/dt = i[E, rho] + sum_c gamma_c (a rho a^dag - {a^dag a, rho}/2).
/// E and a^dag a are diagonal, so each column of the derivative is a scaled copy of the
/// same column of rho plus one shifted column per lossy channel.
class Generator {
 public:
  Generator(const FockDensity& shape, const ChannelConfig& cfg) {
    const Eigen::Index dim = shape.data.rows();
    diag_.resize(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const Qubit q = i < shape.mode_dim() ? Qubit::H : Qubit::V;
      double energy = 0.0;
      double decay = 0.0;
      for (const auto& c : cfg.channels) {
        const int n = shape.photons(i, c.mode);
        if (q == c.component) energy += c.chi * n;
        decay += 0.5 * c.gamma * n;
      }
      diag_[i] = Complex{-decay, energy};
    }
    double jump_rate = 0.0;
    for (const auto& c : cfg.channels) {
      if (c.gamma == 0.0) continue;
      const Eigen::Index stride = shape.stride(c.mode);
      Eigen::ArrayXd root(dim - stride);
      for (Eigen::Index i = 0; i < root.size(); ++i) {
        const int p = shape.photons(i, c.mode);
        root[i] = p < shape.cutoffs[c.mode] ? std::sqrt(p + 1.0) : 0.0;
      }
      jump_rate = std::max(jump_rate, c.gamma * root.square().maxCoeff());
      jumps_.push_back({c.gamma, stride, std::move(root)});
    }
    max_rate_ = 2.0 * diag_.abs().maxCoeff() + jump_rate;
  }

  void apply(const Matrix& rho, Matrix& out) const {
    const Eigen::Index dim = rho.rows();
    for (Eigen::Index j = 0; j < dim; ++j) {
      out.col(j).array() = (diag_ + std::conj(diag_[j])) * rho.col(j).array();
    }
    for (const auto& jump : jumps_) {
      const Eigen::Index n = jump.root.size();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (jump.root[j] == 0.0) continue;
        out.col(j).head(n).array() += (jump.gamma * jump.root[j]) * jump.root *
                                      rho.col(j + jump.stride).segment(jump.stride, n).array();
      }
    }
  }

  double max_rate() const { return max_rate_; }

 private:
  struct Jump {
    double gamma;
    Eigen::Index stride;
    Eigen::ArrayXd root;
  };
  Eigen::ArrayXcd diag_;
  std::vector<Jump> jumps_;
  double max_rate_ = 0.0;
};

inline Matrix rk4_run(const Generator& gen, const Matrix& rho0, double t, long steps,
                      const FockDensity& shape) {
  const double h = t / static_cast<double>(steps);
  Matrix rho = rho0;
  Matrix k(rho.rows(), rho.cols()), acc = k, tmp = k;
  const long check_every = std::max<long>(1, steps / 10);
  for (long s = 0; s < steps; ++s) {
    gen.apply(rho, k);
    acc = k;
    tmp = rho + (0.5 * h) * k;
    gen.apply(tmp, k);
    acc += 2.0 * k;
    tmp = rho + (0.5 * h) * k;
    gen.apply(tmp, k);
    acc += 2.0 * k;
    tmp = rho + h * k;
    gen.apply(tmp, k);
    acc += k;
    rho += (h / 6.0) * acc;
    if ((s + 1) % check_every == 0) FockDensity{shape.cutoffs, rho}.check_cutoffs();
  }
  return rho;
}

}  // namespace detail

/// Fixed-step RK4 integration of the master equation for time t. A non-positive dt selects
/// a step from the fastest rate of the generator. The step is halved until the trace drift
/// stays below 1e-8. Every channel acts for the full time t; qubit loss is not modelled.
inline FockDensity integrate(const FockDensity& rho, const ChannelConfig& cfg, double t,
                             double dt = 0.0) {
  if (!(t >= 0.0)) throw InvalidArgument("integration time must be non-negative");
  if (cfg.qubit_loss != QubitLoss::neglect) {
    throw InvalidArgument("the Fock oracle does not model qubit loss");
  }
  cfg.validate(rho.n_modes());
  rho.check_cutoffs();
  if (t == 0.0) return rho;

  const detail::Generator gen(rho, cfg);
  if (!(dt > 0.0)) dt = 0.2 / std::max(gen.max_rate(), 1e-12);
  long steps = std::max<long>(1, static_cast<long>(std::ceil(t / dt)));
  const Complex tr0 = rho.trace();
  for (int attempt = 0; attempt < 8; ++attempt, steps *= 2) {
    FockDensity out{rho.cutoffs, detail::rk4_run(gen, rho.data, t, steps, rho)};
    if (std::abs(out.trace() - tr0) < 1e-8) {
      out.check_cutoffs();
      return out;
    }
  }
  throw EngineError("RK4 trace drift did not fall below 1e-8");
}

/// Dominant eigenvector of a Hermitian block with its vacuum component made real positive.
inline Vector dominant_vector(const Matrix& block) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (block + block.adjoint()));
  Vector v = es.eigenvectors().col(es.eigenvalues().size() - 1);
  Eigen::Index pivot = 0;
  if (std::abs(v[0]) < 1e-12) v.cwiseAbs().maxCoeff(&pivot);
  return v * (std::abs(v[pivot]) / v[pivot]);
}

/// Normalized qubit coherence <psi_H|rho_HV|psi_V> / sqrt(<psi_H|rho_HH|psi_H><psi_V|rho_VV|psi_V>),
/// with psi_H, psi_V the dominant vectors of the diagonal blocks.
inline Complex extract_coherence(const FockDensity& rho) {
  const Eigen::Index md = rho.mode_dim();
  const Matrix hh = rho.data.block(0, 0, md, md);
  const Matrix vv = rho.data.block(md, md, md, md);
  if (hh.trace().real() < 1e-14 || vv.trace().real() < 1e-14) {
    throw EngineError("vanishing diagonal qubit block");
  }
  const Vector ph = dominant_vector(hh);
  const Vector pv = dominant_vector(vv);
  const Complex off = ph.dot(rho.data.block(0, md, md, md) * pv);
  const double dh = ph.dot(hh * ph).real();
  const double dv = pv.dot(vv * pv).real();
  return off / std::sqrt(dh * dv);
}

/// Trace distance (1/2) ||a - b||_1.
inline double trace_distance(const FockDensity& a, const FockDensity& b) {
  if (a.data.rows() != b.data.rows()) throw InvalidArgument("dimension mismatch");
  const Matrix d = a.data - b.data;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/// <psi| rho |psi>.
inline double fidelity(const FockDensity& rho, const Vector& psi) {
  return psi.dot(rho.data * psi).real();
}

}  // namespace catforge::fock
