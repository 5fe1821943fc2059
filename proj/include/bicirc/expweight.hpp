/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "bicirc/recurrences.hpp"
#include "bicirc/types.hpp"

namespace bicirc {

/// Closed forms for the weight w(z) = e^z; the exact baseline layer used by
/// the acceptance checks. All take r >= 0.
namespace expweight {

/// Rising factorial (a)_n by direct n-term product.
double pochhammer(double a, int n);

/// D_n^(r) = 2^{n(n-1)/2} prod_{j=1}^{n-1} Gamma(1+j) / prod_{j=0}^{n-1} Gamma(1+r+2j),
/// accumulated in log space.
cplx det_closed(int n, int r);

/// h_n^(r) = 2^n n! / (2n+r)!.
cplx norm_closed(int n, int r);

/// which: 'd' delta = -2n-r, 'e' eta = r,
///        'b' beta  = -1/((2n+r+1)(2n+r+2)),
///        'a' alpha = r/((2n+r)(2n+r+1)(2n+r+2)).
cplx reccoeff_closed(char which, int n, int r);

/// Coefficient lookup in the CoeffFn shape; JTwoK selectors are unavailable.
CoeffFn closed_coeffs();

/// Coefficient of z^l in Q_n(z;r): the terminating hypergeometric form.
cplx q_coeff_closed(int n, int r, int l);
/// Q_n(z;r) summed from the terminating series (n+1 terms).
cplx Q_closed(int n, int r, cplx z);

/// Coefficient of z^l in P_n(z;r): the alternating binomial sum of
/// half-integer rising factorials.
cplx P_coeff_closed(int n, int l, int r);
/// The same coefficient through l-fold backward differencing of (r/2)_n in r.
cplx P_coeff_nabla(int n, int l, int r);

/// Two-region closed form of the Caratheodory transform F_2(z;r) for e^z.
/// Throws AnnulusExcluded near |z| = 1.
cplx F2_closed(int r, cplx z);

}  // namespace expweight
}  // namespace bicirc
