/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <functional>

#include "bicirc/polynomials.hpp"

namespace bicirc {

/// Brute-force evaluation of the n-fold torus integrals by tensor-product
/// trapezoid quadrature (exact on band-limited integrands). Ground-truth
/// oracle for determinants, polynomials, kernels and associated functions
/// at small n: every result is normalized by oracle-computed determinants,
/// never by the modules under test.
class MultiIntOracle {
 public:
  /// Weights that are not already band-limited are truncated to a fourier
  /// snapshot of the given band before use.
  MultiIntOracle(const Weight& w, int grid_points = 64, int truncate_band = 24);

  int grid_points() const { return m_; }
  const Weight& weight() const { return banded_; }

  using Extra = std::function<cplx(cplx)>;

  /// (1/n!) M^{-n} sum over the grid of prod f(zeta_j) times the
  /// product-of-differences kernel (zeta_k - zeta_j)(zeta_k^-2 - zeta_j^-2).
  /// Throws CostLimitExceeded past M^n = 2^24 and requires n <= 4.
  cplx d_multi(int r, int n, const Extra& extra = nullptr) const;
  /// The (zeta_k^2 - zeta_j^2)(zeta_k^-1 - zeta_j^-1) counterpart.
  cplx e_multi(int s, int n, const Extra& extra = nullptr) const;

  /// family 'P','Q','R','S'; n <= 3. Normalized by the oracle determinant.
  cplx poly(char family, int n, int offset, cplx z) const;

  /// Kernel values K_n(z2, z1; r) (TwoJK) or L_n(z2, z1; s) (JTwoK); n <= 3.
  cplx kernel(StructKind kind, int n, int offset, cplx z1, cplx z2) const;

  /// Hat associated functions via Cauchy factors expanded as truncated
  /// geometric series (64 terms); the tail bound must stay below 1e-10 or
  /// RegionTooCloseToCircle is thrown. family 'P','Q','R','S'; n <= 3.
  cplx assoc(char family, int n, int offset, cplx z) const;

  /// Relative difference of D_n[w zeta^-r f] and E_n[w zeta^{-n-r+1} f]
  /// for f in {1, zeta, z0 - zeta}; fidx selects the factor.
  double transfer_check(int n, int r, int fidx, cplx z0 = cplx(0.7)) const;

  /// Residual of the integration-over-the-last-variable identity for the
  /// m x m kernel determinant; kernels come from a system built on the
  /// banded weight. m <= n+1 <= 4.
  double gaudin_check(StructKind kind, int n, int m, int offset) const;

  /// Pointwise residual of the two joint-density factorizations on sample
  /// points drawn from the given seed.
  static double joint_density_residual(int npts, unsigned long long seed);

 private:
  cplx multi(bool dside, int offset, int n, const Extra& extra) const;

  Weight banded_;
  int m_;
  std::vector<cplx> grid_;
  std::vector<cplx> weight_samples_;
};

}  // namespace bicirc
