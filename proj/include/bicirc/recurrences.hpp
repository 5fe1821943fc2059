/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <array>
#include <functional>
#include <optional>

#include "bicirc/polynomials.hpp"

namespace bicirc {

/// Recurrence coefficient lookup. `which` selects the coefficient:
///   'd' delta   'e' eta    'b' beta   'a' alpha   (TwoJK side)
///   'k' kappa   'r' rho    'g' gamma  't' theta   (JTwoK side)
/// Returns nullopt when the coefficient is not computable for the weight at
/// hand (a required determinant vanishes), which residual checks report as
/// not-applicable rather than failure.
using CoeffFn = std::function<std::optional<cplx>(char which, int n, int offset)>;

/// Determinant-ratio coefficients over a pair of system families sharing a
/// weight. Either family reference may be null if only one side is used.
CoeffFn generic_coeffs(SystemFamily* twojk, SystemFamily* jtwok);

/// All four coefficients of one structure kind at (n, offset); throws
/// SingularDeterminant when any is unavailable.
struct RecCoeffs {
  cplx c0, c1, c2, c3;  // delta,eta,beta,alpha or kappa,rho,gamma,theta
};
RecCoeffs coeffs(SystemFamily& fam, int n, int offset);

/// Relative redundancy residuals delta*alpha - beta*eta = 0,
/// beta = -1/(delta'delta''), alpha = -eta/(delta delta' delta'') and the
/// JTwoK analogs; nullopt when a participating coefficient is unavailable.
std::optional<double> coeff_redundancy_residual(SystemFamily& fam, int n, int offset);

/// Third-order pure-degree recurrence residual at z for family
/// 'P','Q' (starred), 'R', 'S' (starred); normalized by the largest term.
std::optional<double> degree_residual(SystemFamily& fam, char family, int n, int offset, cplx z,
                                      const CoeffFn& cf);

/// Third-order pure-offset recurrence residual at z.
std::optional<double> offset_residual(SystemFamily& fam, char family, int n, int offset, cplx z,
                                      const CoeffFn& cf);

/// The eight two-term offset-shift relations (P, P, Q*, Q*, R, R, S*, S*).
std::array<std::optional<double>, 8> first_order_residuals(SystemFamily& twojk,
                                                           SystemFamily& jtwok, int n, int offset,
                                                           cplx z, const CoeffFn& cf);

/// The sixteen mixed identities that swap one polynomial across structures
/// through the duality factors.
std::array<std::optional<double>, 16> mixed_residuals(SystemFamily& twojk, SystemFamily& jtwok,
                                                      int n, int offset, cplx z);

/// Residual of Q_n(z^2;r) against the antisymmetrized product of P's at
/// offset r+2, and the R/S analog at offset s-2.
std::optional<double> bilinear_Q_from_P(SystemFamily& twojk, int n, int r, cplx z);
std::optional<double> bilinear_R_from_S(SystemFamily& jtwok, int n, int s, cplx z);

/// D_n^(r) rebuilt from first-kind tails at offsets {r, r+1, r+2}
/// (E_n^(s) from second-kind tails at {s, s-1, s-2}); cross-checked by the
/// caller against the direct determinant.
cplx reconstruct_det_from_tails(SystemFamily& fam, int offset, int n);

/// Exact reconstruction of the offset+3 polynomial from three consecutive
/// offsets through the pure-offset recurrence; max-coefficient residual.
std::optional<double> offset_shift_reconstruction(SystemFamily& fam, char family, int n,
                                                  int offset, const CoeffFn& cf);

/// Tail-product residuals: F_n(0) vs the product of recurrence
/// coefficients, all four families.
std::array<std::optional<double>, 4> tail_product_residuals(SystemFamily& twojk,
                                                            SystemFamily& jtwok, int n, int offset,
                                                            const CoeffFn& cf);

/// Pure-offset tail relations, e.g. P_n(0;r+2) = -delta/eta * P_n(0;r).
std::array<std::optional<double>, 4> tail_offset_residuals(SystemFamily& twojk,
                                                           SystemFamily& jtwok, int n, int offset,
                                                           const CoeffFn& cf);

}  // namespace bicirc
