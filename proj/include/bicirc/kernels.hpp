/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <span>

#include "bicirc/polynomials.hpp"

namespace bicirc {

/// Reproducing kernel by its defining sum: for a TwoJK system
///   K_n(z, zz) = sum_{j<=n} Q_j(z) P_j(zz) / h_j,
/// and for a JTwoK system the (S, R, g) analog L_n(z, zz).
cplx kernel_sum(BiorthSystem& sys, int n, cplx z, cplx zz);

/// Same value through the bordered master determinant of size n+2.
/// Needs n >= 1 and z != 0 (ZeroArgument).
cplx kernel_master(BiorthSystem& sys, int n, cplx z, cplx zz);

/// Christoffel-Darboux evaluation: for TwoJK returns K_n(z2^2, z1; r) from
/// the 3x3 determinant of first-kind polynomials at offset r+2; for JTwoK
/// returns L_n(z2, z1^2; s) from second-kind polynomials at offset s-2.
/// Throws DegenerateCDPoint within 1e-12 of the vanishing denominator;
/// callers fall back to kernel_sum there.
cplx kernel_cd(SystemFamily& fam, int n, int offset, cplx z1, cplx z2);

/// |circle integral of K_n(zeta^-2, zeta) - (n+1)|, by exact pairing.
double kernel_normalization_residual(BiorthSystem& sys, int n);

/// Reproducing (ell <= n) or annihilation (ell > n) residuals of both kernel
/// arguments against the degree-ell polynomials, max over the z values.
struct ReproducingResiduals {
  double second_side;  // kernel paired with Q (or S)
  double first_side;   // kernel paired with P (or R)
};
ReproducingResiduals reproducing_residuals(BiorthSystem& sys, int n, int ell,
                                           std::span<const cplx> zs);

/// | <K_n(z1, .), K_n(., z2)> - K_n(z1, z2) | scaled.
double projection_residual(BiorthSystem& sys, int n, cplx z1, cplx z2);

/// L_n(a, b; s) = (a b)^n K_n(b^{-1}, a^{-1}; s-n) cross-structure identity.
double cross_kernel_residual(SystemFamily& twojk, SystemFamily& jtwok, int n, int s, cplx a,
                             cplx b);

/// |K_n(big, zeta) h_n / big^n - P_n(zeta)| / max(1, |P_n(zeta)|).
double leading_behavior_residual(BiorthSystem& sys, int n, cplx big, cplx zeta);

}  // namespace bicirc
