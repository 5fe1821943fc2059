/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace bicirc {

using cplx = std::complex<double>;

/// Error taxonomy shared by the library and the C interface.
enum class errc {
  ok = 0,
  invalid_argument,
  singular_determinant,
  moment_window_too_small,
  series_not_converged,
  quadrature_band_exceeded,
  cost_limit_exceeded,
  region_too_close_to_circle,
  annulus_excluded,
  degenerate_cd_point,
  zero_argument,
  internal
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

struct SingularDeterminant : Error {
  SingularDeterminant(int n, int offset)
      : Error(errc::singular_determinant,
              "singular determinant at degree " + std::to_string(n) + ", offset " +
                  std::to_string(offset)),
        n(n),
        offset(offset) {}
  int n;
  int offset;
};

struct MomentWindowTooSmall : Error {
  explicit MomentWindowTooSmall(const std::string& what)
      : Error(errc::moment_window_too_small, what) {}
};

struct SeriesNotConverged : Error {
  explicit SeriesNotConverged(const std::string& what)
      : Error(errc::series_not_converged, what) {}
};

struct QuadratureBandExceeded : Error {
  explicit QuadratureBandExceeded(const std::string& what)
      : Error(errc::quadrature_band_exceeded, what) {}
};

struct CostLimitExceeded : Error {
  explicit CostLimitExceeded(const std::string& what) : Error(errc::cost_limit_exceeded, what) {}
};

struct RegionTooCloseToCircle : Error {
  explicit RegionTooCloseToCircle(const std::string& what)
      : Error(errc::region_too_close_to_circle, what) {}
};

struct AnnulusExcluded : Error {
  explicit AnnulusExcluded(const std::string& what) : Error(errc::annulus_excluded, what) {}
};

struct DegenerateCDPoint : Error {
  explicit DegenerateCDPoint(const std::string& what) : Error(errc::degenerate_cd_point, what) {}
};

struct ZeroArgument : Error {
  explicit ZeroArgument(const std::string& what) : Error(errc::zero_argument, what) {}
};

/// Dense complex polynomial, coefficients in ascending degree order.
class ComplexPoly {
 public:
  ComplexPoly() : c_(1, cplx(0.0)) {}
  explicit ComplexPoly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(cplx(0.0));
  }
  static ComplexPoly one() { return ComplexPoly(std::vector<cplx>{cplx(1.0)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : cplx(0.0);
  }
  cplx leading() const { return c_.back(); }

  cplx eval(cplx z) const {
    cplx acc(0.0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  /// p*(z) = z^deg p(1/z): coefficient reversal.
  ComplexPoly reciprocal() const {
    std::vector<cplx> r(c_.rbegin(), c_.rend());
    return ComplexPoly(std::move(r));
  }

 private:
  std::vector<cplx> c_;
};

/// Sparse-exponent Laurent polynomial sum_e a[e - lo] z^e. Used to evaluate
/// circle integrals of Laurent-polynomial integrands exactly by pairing
/// exponents with moments.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(int lo, std::vector<cplx> a) : lo_(lo), a_(std::move(a)) {}

  /// p(z^power) * z^shift for a dense polynomial p; power may be negative.
  static LaurentPoly from_poly(const ComplexPoly& p, int power = 1, int shift = 0) {
    const auto& c = p.coeffs();
    int n = static_cast<int>(c.size()) - 1;
    int e0 = (power >= 0) ? shift : shift + power * n;
    std::vector<cplx> a(static_cast<size_t>(std::abs(power) * n) + 1, cplx(0.0));
    for (int i = 0; i <= n; ++i) a[static_cast<size_t>(power * i + shift - e0)] = c[i];
    return LaurentPoly(e0, std::move(a));
  }

  static LaurentPoly monomial(int e, cplx coeff = cplx(1.0)) {
    return LaurentPoly(e, {coeff});
  }

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(a_.size()) - 1; }
  bool empty() const { return a_.empty(); }
  cplx coeff(int e) const {
    int i = e - lo_;
    return (i >= 0 && i < static_cast<int>(a_.size())) ? a_[static_cast<size_t>(i)] : cplx(0.0);
  }

  LaurentPoly& operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  LaurentPoly& add(const LaurentPoly& o, cplx scale = cplx(1.0)) {
    if (o.empty()) return *this;
    if (empty()) {
      lo_ = o.lo_;
      a_ = o.a_;
      for (auto& v : a_) v *= scale;
      return *this;
    }
    int nlo = std::min(lo_, o.lo_);
    int nhi = std::max(hi(), o.hi());
    std::vector<cplx> na(static_cast<size_t>(nhi - nlo + 1), cplx(0.0));
    for (int e = lo_; e <= hi(); ++e) na[static_cast<size_t>(e - nlo)] += coeff(e);
    for (int e = o.lo(); e <= o.hi(); ++e) na[static_cast<size_t>(e - nlo)] += scale * o.coeff(e);
    lo_ = nlo;
    a_ = std::move(na);
    return *this;
  }

  friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) {
    if (x.empty() || y.empty()) return LaurentPoly();
    std::vector<cplx> a(x.a_.size() + y.a_.size() - 1, cplx(0.0));
    for (size_t i = 0; i < x.a_.size(); ++i) {
      if (x.a_[i] == cplx(0.0)) continue;
      for (size_t j = 0; j < y.a_.size(); ++j) a[i + j] += x.a_[i] * y.a_[j];
    }
    return LaurentPoly(x.lo_ + y.lo_, std::move(a));
  }

  cplx eval(cplx z) const {
    cplx acc(0.0);
    cplx zl = std::pow(z, lo_);
    for (const auto& v : a_) {
      acc += v * zl;
      zl *= z;
    }
    return acc;
  }

 private:
  int lo_ = 0;
  std::vector<cplx> a_;
};

}  // namespace bicirc
