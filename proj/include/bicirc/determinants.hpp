/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bicirc/matrix.hpp"
#include "bicirc/weights.hpp"

namespace bicirc {

/// Moment-matrix structure: TwoJK has entries w_{r+2j-k}, JTwoK has w_{s+j-2k}.
enum class StructKind { TwoJK, JTwoK };

struct StructuredMatrix {
  StructKind kind;
  int offset;
  int n;
  CMatrix a;
};

/// Moment window [lo, hi] needed to build the n x n structured matrix.
std::pair<int, int> required_window(StructKind kind, int offset, int n);

/// n = 0 yields the empty matrix (determinant 1 by convention).
StructuredMatrix build(StructKind kind, int offset, int n, const MomentTable& moments);

cplx det(const StructuredMatrix& m);

/// The (n+3) x (n+3) bordered master matrix. Rows 0..n+1 hold moments
/// (structure above) with last column z^{n+1-j}; the final row is
/// 1, zeta, ..., zeta^{n+1} with corner entry fixed to 0.
CMatrix master_matrix(StructKind kind, int offset, int n, cplx z, cplx zeta,
                      const MomentTable& moments);

struct MinorSpec {
  std::vector<int> removed_rows;
  std::vector<int> removed_cols;
};

/// Determinant of the master-matrix minor; removed index lists must be
/// strictly increasing, in range, and of equal length.
cplx master_minor(StructKind kind, int offset, int n, cplx z, cplx zeta, const MinorSpec& spec,
                  const MomentTable& moments);

/// Relative residual of the Dodgson condensation identity
///   M * M{j1,j2;k1,k2} = M{j1;k1} M{j2;k2} - M{j1;k2} M{j2;k1}
/// on the master matrix, normalized by the largest participating product.
/// A quadruple is admissible when every participating determinant is either
/// exactly zero or free of pivot collapse; inadmissible instances (pure
/// cancellation noise on every term) return nullopt.
std::optional<double> dodgson_residual(StructKind kind, int offset, int n, cplx z, cplx zeta,
                                       std::pair<int, int> rows, std::pair<int, int> cols,
                                       const MomentTable& moments);

/// |D_n^(r) - E_n^(r+n-1)| / max(1, |D_n^(r)|).
double duality_check(int r, int n, const Weight& w);

/// det(g_{2j-k+ell}(u))_{0<=j,k<=n-1} built from deformed moments.
cplx tau(int n, int ell, cplx u);

}  // namespace bicirc
