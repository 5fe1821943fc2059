/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <vector>

#include "bicirc/types.hpp"

namespace bicirc {

/// Dense row-major complex matrix, sized for desk-scale work (n <= ~16).
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}

  int rows() const { return r_; }
  int cols() const { return c_; }
  cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  CMatrix transpose() const;
  /// Reflection across the main anti-diagonal (square only).
  CMatrix antitranspose() const;
  CMatrix minor_removed(const std::vector<int>& rows, const std::vector<int>& cols) const;

  CMatrix operator*(const CMatrix& o) const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<cplx> a_;
};

/// LU factorization with partial pivoting; empty matrices have det 1.
/// Alongside the factorization it tracks, per entry, the largest magnitude
/// that ever fed it, so a pivot produced by catastrophic cancellation is
/// detectable: collapse_ratio() is the smallest pivot relative to the
/// magnitudes participating in it. Graded matrices with honestly tiny
/// determinants keep a healthy ratio; identically-vanishing determinants
/// (banded weights) collapse to zero.
class LuFactor {
 public:
  explicit LuFactor(const CMatrix& a);

  cplx det() const { return det_; }
  /// Solve A x = b.
  std::vector<cplx> solve(const std::vector<cplx>& b) const;
  /// Solve A^T x = b using the same factorization.
  std::vector<cplx> solve_transpose(const std::vector<cplx>& b) const;
  bool exactly_singular() const { return exact_zero_; }
  double collapse_ratio() const { return collapse_; }
  /// The vanishing test every existence check downstream uses.
  bool vanishing(double tol = 1e-13) const { return exact_zero_ || collapse_ <= tol; }

 private:
  int n_ = 0;
  CMatrix lu_;
  std::vector<int> perm_;
  cplx det_{1.0};
  bool exact_zero_ = false;
  double collapse_ = 1.0;
};

inline cplx det(const CMatrix& a) { return LuFactor(a).det(); }

}  // namespace bicirc
