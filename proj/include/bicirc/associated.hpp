/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <functional>
#include <optional>

#include "bicirc/recurrences.hpp"

namespace bicirc {

/// Caratheodory transform F_2(z;r) = <(zeta+z)/(zeta-z)> by the regionwise
/// geometric series: the annulus 1 +/- 1e-3 is excluded (AnnulusExcluded);
/// SeriesNotConverged after 10^4 terms.
cplx F2(const Weight& w, int offset, cplx z);
/// F_1(z;r) = (F_2(z;r) + F_2(-z;r))/2; a function of z^2.
cplx F1(const Weight& w, int offset, cplx z);

/// Cauchy-transformed polynomials. Families:
///   'P' Phat   'Q' Qhat   'R' Rhat   'S' Shat   'p' Pdagger   's' Sdagger
/// evaluated by pairing polynomial coefficients with regionwise moment
/// series (shifted F transforms).
cplx assoc_hat(BiorthSystem& sys, char family, int n, cplx z);

/// The subtracted variants, e.g. Pcheck = Phat - F1 * P_n; all vanish
/// identically at n = 0. Families 'P','Q','R','S'.
cplx assoc_check(BiorthSystem& sys, char family, int n, cplx z);

/// Third-order difference operators applied to an arbitrary sequence
/// n -> f_n. which = 1..4; coefficients from cf (nullopt -> not applicable).
std::optional<cplx> apply_L(int which, const std::function<cplx(int)>& seq, int n, int offset,
                            cplx z, const CoeffFn& cf);
/// Same, normalized by the largest participating term.
std::optional<double> apply_L_residual(int which, const std::function<cplx(int)>& seq, int n,
                                       int offset, cplx z, const CoeffFn& cf);

/// 3x3 Casorati matrix of the fundamental solution set at degrees
/// n, n+1, n+2. Families 'P','Q','R','S' select the solution triple
/// matching operators L1..L4.
CMatrix casorati(BiorthSystem& sys, char family, int n, cplx z);

/// Abel ratio residual: det F_n / det F_1 against the closed coefficient
/// product, valid for n >= 1 (the hat column satisfies the recurrence only
/// from index 1 on; the n = 0 step is excluded). n = 1 is trivially 0.
std::optional<double> casoratian_ratio(BiorthSystem& sys, char family, int n, cplx z,
                                       const CoeffFn& cf);

/// Closed form of the degree-0 Casoratian: moment expressions for 'P'/'S',
/// 3x3 F_2-matrix determinants for 'Q'/'R'.
cplx casorati_zero_closed(BiorthSystem& sys, char family, cplx z);

/// ||F_{n+1} - T_n F_n||_max / ||F_{n+1}||_max for the companion transfer
/// matrix T_n; needs n >= 1.
std::optional<double> first_order_casorati_step(BiorthSystem& sys, char family, int n, cplx z,
                                                const CoeffFn& cf);

}  // namespace bicirc
