/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "bicirc/determinants.hpp"

#include <algorithm>
#include <cmath>

namespace bicirc {

namespace {

int entry_index(StructKind kind, int offset, int j, int k) {
  return kind == StructKind::TwoJK ? offset + 2 * j - k : offset + j - 2 * k;
}

void check_spec(const MinorSpec& spec, int size) {
  if (spec.removed_rows.size() != spec.removed_cols.size())
    throw Error(errc::invalid_argument, "minor spec row/col counts differ");
  auto check = [size](const std::vector<int>& v, const char* what) {
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i] < 0 || v[i] >= size)
        throw Error(errc::invalid_argument, std::string(what) + " index out of range");
      if (i > 0 && v[i] <= v[i - 1])
        throw Error(errc::invalid_argument, std::string(what) + " indices not strictly increasing");
    }
  };
  check(spec.removed_rows, "minor row");
  check(spec.removed_cols, "minor col");
}

}  // namespace

std::pair<int, int> required_window(StructKind kind, int offset, int n) {
  if (n <= 0) return {offset, offset};
  if (kind == StructKind::TwoJK) return {offset - n + 1, offset + 2 * n - 2};
  return {offset - 2 * n + 2, offset + n - 1};
}

StructuredMatrix build(StructKind kind, int offset, int n, const MomentTable& moments) {
  auto [lo, hi] = required_window(kind, offset, n);
  if (n > 0 && !moments.covers(lo, hi))
    throw MomentWindowTooSmall("structured matrix needs moments [" + std::to_string(lo) + "," +
                               std::to_string(hi) + "]");
  StructuredMatrix m{kind, offset, n, CMatrix(n, n)};
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m.a(j, k) = moments.at(entry_index(kind, offset, j, k));
  return m;
}

cplx det(const StructuredMatrix& m) { return LuFactor(m.a).det(); }

CMatrix master_matrix(StructKind kind, int offset, int n, cplx z, cplx zeta,
                      const MomentTable& moments) {
  if (n < 0) throw Error(errc::invalid_argument, "master matrix needs n >= 0");
  CMatrix m(n + 3, n + 3);
  for (int j = 0; j <= n + 1; ++j) {
    for (int k = 0; k <= n + 1; ++k) m(j, k) = moments.at(entry_index(kind, offset, j, k));
    m(j, n + 2) = std::pow(z, n + 1 - j);
  }
  for (int k = 0; k <= n + 1; ++k) m(n + 2, k) = std::pow(zeta, k);
  m(n + 2, n + 2) = cplx(0.0);  // never read by any minor used here
  return m;
}

cplx master_minor(StructKind kind, int offset, int n, cplx z, cplx zeta, const MinorSpec& spec,
                  const MomentTable& moments) {
  CMatrix m = master_matrix(kind, offset, n, z, zeta, moments);
  check_spec(spec, m.rows());
  return LuFactor(m.minor_removed(spec.removed_rows, spec.removed_cols)).det();
}

std::optional<double> dodgson_residual(StructKind kind, int offset, int n, cplx z, cplx zeta,
                                       std::pair<int, int> rows, std::pair<int, int> cols,
                                       const MomentTable& moments) {
  auto [j1, j2] = rows;
  auto [k1, k2] = cols;
  if (!(j1 < j2 && k1 < k2)) throw Error(errc::invalid_argument, "dodgson indices must increase");
  CMatrix m = master_matrix(kind, offset, n, z, zeta, moments);
  if (j2 >= m.rows() || k2 >= m.cols())
    throw Error(errc::invalid_argument, "dodgson indices out of range");
  bool admissible = true;
  auto dval = [&](const CMatrix& sub) {
    LuFactor f(sub);
    // a collapsed-but-inexact determinant is cancellation noise: the
    // identity carries no testable information through it
    if (f.vanishing() && !f.exactly_singular()) admissible = false;
    return f.exactly_singular() ? cplx(0.0) : f.det();
  };
  cplx full = dval(m);
  auto md = [&](std::vector<int> rr, std::vector<int> cc) {
    return dval(m.minor_removed(rr, cc));
  };
  cplx t0 = full * md({j1, j2}, {k1, k2});
  cplx t1 = md({j1}, {k1}) * md({j2}, {k2});
  cplx t2 = md({j1}, {k2}) * md({j2}, {k1});
  if (!admissible) return std::nullopt;
  double scale = std::max({std::abs(t0), std::abs(t1), std::abs(t2), 1e-300});
  return std::abs(t0 - t1 + t2) / scale;
}

double duality_check(int r, int n, const Weight& w) {
  auto [dlo, dhi] = required_window(StructKind::TwoJK, r, n);
  auto [elo, ehi] = required_window(StructKind::JTwoK, r + n - 1, n);
  MomentTable t(w, std::min(dlo, elo), std::max(dhi, ehi));
  cplx d = det(build(StructKind::TwoJK, r, n, t));
  cplx e = det(build(StructKind::JTwoK, r + n - 1, n, t));
  return std::abs(d - e) / std::max(1.0, std::abs(d));
}

cplx tau(int n, int ell, cplx u) {
  if (n < 0) throw Error(errc::invalid_argument, "tau needs n >= 0");
  CMatrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = deformed_moment(u, 2 * j - k + ell);
  return LuFactor(m).det();
}

}  // namespace bicirc
