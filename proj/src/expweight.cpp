/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "bicirc/expweight.hpp"

#include <cmath>

namespace bicirc {
namespace expweight {

namespace {

void require_r(int r) {
  if (r < 0) throw Error(errc::invalid_argument, "exp-weight closed forms need r >= 0");
}

double binom(int n, int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
  return v;
}

}  // namespace

double pochhammer(double a, int n) {
  double v = 1.0;
  for (int i = 0; i < n; ++i) v *= a + i;
  return v;
}

cplx det_closed(int n, int r) {
  require_r(r);
  if (n == 0) return cplx(1.0);
  double logv = 0.5 * n * (n - 1) * std::log(2.0);
  for (int j = 1; j < n; ++j) logv += std::lgamma(1.0 + j);
  for (int j = 0; j < n; ++j) logv -= std::lgamma(1.0 + r + 2.0 * j);
  return cplx(std::exp(logv));
}

cplx norm_closed(int n, int r) {
  require_r(r);
  double logv = n * std::log(2.0) + std::lgamma(n + 1.0) - std::lgamma(2.0 * n + r + 1.0);
  return cplx(std::exp(logv));
}

cplx reccoeff_closed(char which, int n, int r) {
  require_r(r);
  double m = 2.0 * n + r;
  switch (which) {
    case 'd':
      return cplx(-m);
    case 'e':
      return cplx(static_cast<double>(r));
    case 'b':
      return cplx(-1.0 / ((m + 1.0) * (m + 2.0)));
    case 'a':
      // r = 0 is the removable 0/0 of the formula: the determinant ratio
      // gives w_2/w_0 = 1/2 at n = 0 and 0 for n >= 1.
      if (r == 0) return cplx(n == 0 ? 0.5 : 0.0);
      return cplx(r / (m * (m + 1.0) * (m + 2.0)));
    default:
      throw Error(errc::invalid_argument, "closed coefficient selector must be d, e, b or a");
  }
}

CoeffFn closed_coeffs() {
  // The formulas continue analytically to negative offsets, where the
  // determinant ratios degenerate to 0/0; only zero denominators bail out.
  return [](char which, int n, int offset) -> std::optional<cplx> {
    double m = 2.0 * n + offset;
    switch (which) {
      case 'd':
        return cplx(-m);
      case 'e':
        return cplx(static_cast<double>(offset));
      case 'b':
        if ((m + 1.0) * (m + 2.0) == 0.0) return std::nullopt;
        return cplx(-1.0 / ((m + 1.0) * (m + 2.0)));
      case 'a':
        if (offset == 0) return cplx(n == 0 ? 0.5 : 0.0);
        if (m * (m + 1.0) * (m + 2.0) == 0.0) return std::nullopt;
        return cplx(offset / (m * (m + 1.0) * (m + 2.0)));
      default:
        return std::nullopt;  // no closed JTwoK coefficients here
    }
  };
}

cplx q_coeff_closed(int n, int r, int l) {
  require_r(r);
  if (l < 0 || l > n) return cplx(0.0);
  double num = pochhammer(-static_cast<double>(n), l) * pochhammer((r + 1) / 2.0, l) *
               pochhammer((r + 2) / 2.0, l);
  double v = std::pow(4.0, l - n) * num /
             (std::tgamma(l + 1.0) * pochhammer((r + 1) / 2.0, n) * pochhammer((r + 2) / 2.0, n));
  return cplx(((n % 2 == 0) ? 1.0 : -1.0) * v);
}

cplx Q_closed(int n, int r, cplx z) {
  require_r(r);
  cplx acc(0.0);
  for (int l = 0; l <= n; ++l) acc += q_coeff_closed(n, r, l) * std::pow(z, l);
  return acc;
}

cplx P_coeff_closed(int n, int l, int r) {
  require_r(r);
  if (l < 0 || l > n) return cplx(0.0);
  double acc = 0.0;
  for (int m = 0; m <= l; ++m) {
    double sign = ((m + n + l) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binom(l, m) * pochhammer((r - m) / 2.0, n);
  }
  return cplx(std::pow(2.0, n) / std::tgamma(l + 1.0) * acc);
}

cplx P_coeff_nabla(int n, int l, int r) {
  require_r(r);
  if (l < 0 || l > n) return cplx(0.0);
  // l-fold backward difference of f(t) = (t/2)_n along t = r, r-1, ...
  std::vector<double> f(static_cast<size_t>(l) + 1);
  for (int i = 0; i <= l; ++i) f[static_cast<size_t>(i)] = pochhammer((r - i) / 2.0, n);
  for (int pass = 0; pass < l; ++pass)
    for (int i = 0; i < l - pass; ++i)
      f[static_cast<size_t>(i)] -= f[static_cast<size_t>(i) + 1];
  double sign = ((n + l) % 2 == 0) ? 1.0 : -1.0;
  return cplx(std::pow(2.0, n) / std::tgamma(l + 1.0) * sign * f[0]);
}

cplx F2_closed(int r, cplx z) {
  require_r(r);
  double az = std::abs(z);
  if (std::abs(az - 1.0) < 1e-3) throw AnnulusExcluded("F2 closed form excluded near |z| = 1");
  double invr = std::exp(-std::lgamma(r + 1.0));
  if (z == cplx(0.0)) return cplx(invr);  // inside-branch limit at the origin
  cplx zr = std::pow(z, -r);
  cplx partial(0.0);
  double fac = 1.0;
  for (int m = 0; m < r; ++m) {
    partial += std::pow(z, m) / fac;
    fac *= (m + 1.0);
  }
  if (az < 1.0) return 2.0 * zr * (std::exp(z) - partial) - invr;
  return -2.0 * zr * partial - invr;
}

}  // namespace expweight
}  // namespace bicirc
