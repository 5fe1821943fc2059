/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "bicirc/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bicirc {

CMatrix CMatrix::transpose() const {
  CMatrix t(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

CMatrix CMatrix::antitranspose() const {
  CMatrix t(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) t(c_ - 1 - j, r_ - 1 - i) = (*this)(i, j);
  return t;
}

CMatrix CMatrix::minor_removed(const std::vector<int>& rows, const std::vector<int>& cols) const {
  std::vector<int> keep_r, keep_c;
  for (int i = 0; i < r_; ++i)
    if (std::find(rows.begin(), rows.end(), i) == rows.end()) keep_r.push_back(i);
  for (int j = 0; j < c_; ++j)
    if (std::find(cols.begin(), cols.end(), j) == cols.end()) keep_c.push_back(j);
  CMatrix m(static_cast<int>(keep_r.size()), static_cast<int>(keep_c.size()));
  for (size_t i = 0; i < keep_r.size(); ++i)
    for (size_t j = 0; j < keep_c.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = (*this)(keep_r[i], keep_c[j]);
  return m;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  CMatrix m(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      cplx v = (*this)(i, k);
      if (v == cplx(0.0)) continue;
      for (int j = 0; j < o.c_; ++j) m(i, j) += v * o(k, j);
    }
  return m;
}

LuFactor::LuFactor(const CMatrix& a) : n_(a.rows()), lu_(a), perm_(static_cast<size_t>(n_)) {
  // The elimination runs in extended precision: determinant ratios of the
  // graded moment matrices must stay accurate to ~1e-12 relative up to
  // n = 12, which plain double LU misses by a factor of a few.
  using xplx = std::complex<long double>;
  std::iota(perm_.begin(), perm_.end(), 0);
  std::vector<xplx> w(static_cast<size_t>(n_) * static_cast<size_t>(std::max(n_, 1)));
  auto at = [&](int i, int j) -> xplx& { return w[static_cast<size_t>(i) * n_ + j]; };
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) at(i, j) = xplx(lu_(i, j).real(), lu_(i, j).imag());
  // mag(i, j): the largest magnitude that ever contributed to entry (i, j).
  std::vector<long double> magm(w.size());
  for (size_t i = 0; i < w.size(); ++i) magm[i] = std::abs(w[i]);
  auto mag = [&](int i, int j) -> long double& { return magm[static_cast<size_t>(i) * n_ + j]; };
  xplx det(1.0L);
  for (int k = 0; k < n_; ++k) {
    int piv = k;
    long double best = std::abs(at(k, k));
    for (int i = k + 1; i < n_; ++i) {
      long double v = std::abs(at(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0L) {
      exact_zero_ = true;
      collapse_ = 0.0;
      det_ = cplx(0.0);
      return;
    }
    if (piv != k) {
      for (int j = 0; j < n_; ++j) {
        std::swap(at(k, j), at(piv, j));
        std::swap(mag(k, j), mag(piv, j));
      }
      std::swap(perm_[static_cast<size_t>(k)], perm_[static_cast<size_t>(piv)]);
      det = -det;
    }
    long double input_scale = 0.0L;
    for (int i = k; i < n_; ++i) input_scale = std::max(input_scale, mag(i, k));
    if (input_scale > 0.0L)
      collapse_ = std::min(collapse_, static_cast<double>(best / input_scale));
    det *= at(k, k);
    for (int i = k + 1; i < n_; ++i) {
      xplx f = at(i, k) / at(k, k);
      at(i, k) = f;
      for (int j = k + 1; j < n_; ++j) {
        xplx upd = f * at(k, j);
        mag(i, j) = std::max(mag(i, j), std::abs(upd));
        at(i, j) -= upd;
      }
    }
  }
  det_ = cplx(static_cast<double>(det.real()), static_cast<double>(det.imag()));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      lu_(i, j) = cplx(static_cast<double>(at(i, j).real()), static_cast<double>(at(i, j).imag()));
}

std::vector<cplx> LuFactor::solve(const std::vector<cplx>& b) const {
  std::vector<cplx> x(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) x[static_cast<size_t>(i)] = b[static_cast<size_t>(perm_[static_cast<size_t>(i)])];
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < i; ++j) x[static_cast<size_t>(i)] -= lu_(i, j) * x[static_cast<size_t>(j)];
  for (int i = n_ - 1; i >= 0; --i) {
    for (int j = i + 1; j < n_; ++j) x[static_cast<size_t>(i)] -= lu_(i, j) * x[static_cast<size_t>(j)];
    x[static_cast<size_t>(i)] /= lu_(i, i);
  }
  return x;
}

std::vector<cplx> LuFactor::solve_transpose(const std::vector<cplx>& b) const {
  // A^T = U^T L^T P, so solve U^T y = b, L^T z = y, then undo the permutation.
  std::vector<cplx> y(b);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < i; ++j) y[static_cast<size_t>(i)] -= lu_(j, i) * y[static_cast<size_t>(j)];
    y[static_cast<size_t>(i)] /= lu_(i, i);
  }
  for (int i = n_ - 1; i >= 0; --i)
    for (int j = i + 1; j < n_; ++j) y[static_cast<size_t>(i)] -= lu_(j, i) * y[static_cast<size_t>(j)];
  std::vector<cplx> x(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) x[static_cast<size_t>(perm_[static_cast<size_t>(i)])] = y[static_cast<size_t>(i)];
  return x;
}

}  // namespace bicirc
