/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>

#include "bicirc/types.hpp"

namespace bicirc {

/// A symbol on the unit circle exposing its Fourier moments
///   w_k = (1/2 pi i) \oint zeta^{-k} w(zeta) dzeta/zeta.
///
/// Four kinds are supported:
///  - exp_linear:    w(zeta) = e^zeta, moments 1/k! (0 for k < 0);
///  - exp_deformed:  w(zeta) = e^{zeta + u zeta^{-2}}, moments g_k(u);
///  - fourier:       band-limited symbol given by its coefficients;
///  - quadrature:    arbitrary evaluator, moments by trapezoid rule up to a band.
///
/// Weight is an immutable value type; copies share the underlying data.
class Weight {
 public:
  enum class Kind { ExpLinear, ExpDeformed, FourierSeries, Quadrature };

  static Weight exp_linear();
  static Weight exp_deformed(cplx u);
  static Weight fourier(std::map<int, cplx> coeffs);
  static Weight quadrature(std::function<cplx(cplx)> symbol, int band_hint);

  /// Parse the CLI grammar: `exp` | `expu:u=<re>[+<im>i]` | `fourier:<path.json>`
  /// where the JSON file is {"coeffs": {"<k>": [re, im], ...}}.
  static Weight parse(const std::string& spec);

  Kind kind() const;
  cplx deformation() const;  // u for ExpDeformed, 0 otherwise

  /// k-th Fourier moment. Throws QuadratureBandExceeded for quadrature
  /// weights queried outside their resolvable band.
  cplx moment(int k) const;

  /// Symbol value w(zeta) on (or near) the unit circle.
  cplx eval(cplx zeta) const;

  /// Largest |k| with a reliably nonzero/resolvable moment. Exponential
  /// kinds report the index past which moments fall below tol.
  int band(double tol = 1e-24) const;

  /// Band-limited snapshot: a fourier(...) weight keeping moments with
  /// |w_k| >= tol, |k| <= band. Restores trapezoid-rule exactness for the
  /// multiple-integral oracle.
  Weight truncated(int band, double tol = 1e-24) const;

  /// Coefficient map for fourier weights (empty for other kinds).
  const std::map<int, cplx>& fourier_coeffs() const;

  std::string describe() const;

 private:
  struct Impl;
  explicit Weight(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Moments g_l(u) of e^{zeta + u zeta^{-2}}: sum_{j>=0} u^j / (j! (l+2j)!),
/// equal to 0F2(; l/2+1, (l+1)/2; u/4)/Gamma(l+1) for l >= 0.
cplx deformed_moment(cplx u, int l);

/// Eagerly computed moment window [kmin, kmax]; immutable after construction.
class MomentTable {
 public:
  MomentTable(const Weight& w, int kmin, int kmax);

  int kmin() const { return kmin_; }
  int kmax() const { return kmax_; }
  bool covers(int lo, int hi) const { return kmin_ <= lo && hi <= kmax_; }
  const std::vector<cplx>& values() const { return values_; }
  const Weight& weight() const { return weight_; }

  /// Pure lookup; throws MomentWindowTooSmall outside the window.
  cplx at(int k) const {
    if (k < kmin_ || k > kmax_)
      throw MomentWindowTooSmall("moment index " + std::to_string(k) + " outside table window [" +
                                 std::to_string(kmin_) + "," + std::to_string(kmax_) + "]");
    return values_[static_cast<size_t>(k - kmin_)];
  }

 private:
  Weight weight_;
  int kmin_, kmax_;
  std::vector<cplx> values_;
};

/// Exact circle integral of a Laurent polynomial against the weight:
///   \oint f(zeta) w(zeta) dzeta/(2 pi i zeta) = sum_e f_e w_{-e}.
cplx circle_pair(const Weight& w, const LaurentPoly& f);

}  // namespace bicirc
