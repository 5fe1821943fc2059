/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "bicirc/kernels.hpp"

#include <cmath>

namespace bicirc {

namespace {

cplx norm_checked(BiorthSystem& sys, int j) {
  cplx h = sys.norm(j);
  if (std::abs(h) == 0.0) throw SingularDeterminant(j + 1, sys.offset());
  return h;
}

// K_n(z, .) as a Laurent polynomial in the circle variable (first-kind side):
// TwoJK pairs P_j(zeta), JTwoK pairs R_j(zeta^2).
LaurentPoly kernel_in_first(BiorthSystem& sys, int n, cplx z) {
  int pw = sys.kind() == StructKind::TwoJK ? 1 : 2;
  LaurentPoly acc;
  for (int j = 0; j <= n; ++j) {
    cplx c = sys.poly_second(j).eval(z) / norm_checked(sys, j);
    acc.add(LaurentPoly::from_poly(sys.poly_first(j), pw), c);
  }
  return acc;
}

// K_n(., zz) as a Laurent polynomial in the circle variable (second-kind
// side): TwoJK pairs Q_j(zeta^-2), JTwoK pairs S_j(zeta^-1).
LaurentPoly kernel_in_second(BiorthSystem& sys, int n, cplx zz) {
  int pw = sys.kind() == StructKind::TwoJK ? -2 : -1;
  LaurentPoly acc;
  for (int j = 0; j <= n; ++j) {
    cplx c = sys.poly_first(j).eval(zz) / norm_checked(sys, j);
    acc.add(LaurentPoly::from_poly(sys.poly_second(j), pw), c);
  }
  return acc;
}

}  // namespace

cplx kernel_sum(BiorthSystem& sys, int n, cplx z, cplx zz) {
  cplx acc(0.0);
  for (int j = 0; j <= n; ++j)
    acc += sys.poly_second(j).eval(z) * sys.poly_first(j).eval(zz) / norm_checked(sys, j);
  return acc;
}

cplx kernel_master(BiorthSystem& sys, int n, cplx z, cplx zz) {
  if (n < 1) throw Error(errc::invalid_argument, "master-determinant kernel needs n >= 1");
  if (z == cplx(0.0)) throw ZeroArgument("master-determinant kernel needs z != 0");
  if (!sys.degree_ok(n + 1)) throw SingularDeterminant(n + 1, sys.offset());
  int m = n - 1;  // master matrix parameter: size m+3 = n+2
  int lo, hi;
  if (sys.kind() == StructKind::TwoJK) {
    lo = sys.offset() - (m + 1);
    hi = sys.offset() + 2 * (m + 1);
  } else {
    lo = sys.offset() - 2 * (m + 1);
    hi = sys.offset() + (m + 1);
  }
  MomentTable table(sys.weight(), lo, hi);
  cplx zp = cplx(1.0) / z;
  CMatrix master = master_matrix(sys.kind(), sys.offset(), m, zp, zz, table);
  return -LuFactor(master).det() / (std::pow(zp, n) * sys.det(n + 1));
}

cplx kernel_cd(SystemFamily& fam, int n, int offset, cplx z1, cplx z2) {
  bool two = fam.kind() == StructKind::TwoJK;
  BiorthSystem& base = fam.at(offset);
  BiorthSystem& shifted = fam.at(two ? offset + 2 : offset - 2);
  if (base.det_vanishing(n + 1)) throw SingularDeterminant(n + 1, offset);
  if (!shifted.degree_ok(n + 2)) throw SingularDeterminant(n + 2, shifted.offset());
  cplx denom = two ? z1 * z1 - cplx(1.0) / (z2 * z2) : cplx(1.0) / (z1 * z1) - z2 * z2;
  if (std::abs(denom) < 1e-12)
    throw DegenerateCDPoint("Christoffel-Darboux denominator vanishes; use kernel_sum");
  cplx zc = two ? z2 : z1;  // the variable carrying the +/- reciprocal pair
  if (zc == cplx(0.0)) throw ZeroArgument("Christoffel-Darboux point needs a nonzero argument");
  cplx zi = cplx(1.0) / zc;
  CMatrix m3(3, 3);
  for (int c = 0; c < 3; ++c) {
    const ComplexPoly& p =
        two ? shifted.poly_first(n + c) : shifted.poly_second(n + c);
    if (two) {
      m3(0, c) = p.eval(-zi);
      m3(1, c) = p.eval(zi);
      m3(2, c) = p.eval(z1);
    } else {
      m3(0, c) = p.eval(zi);
      m3(1, c) = p.eval(-zi);
      m3(2, c) = p.eval(z2);
    }
  }
  cplx factor = 0.5 * shifted.det(n) / base.det(n + 1) * std::pow(zc, 2 * n + 1) / denom;
  return factor * LuFactor(m3).det();
}

double kernel_normalization_residual(BiorthSystem& sys, int n) {
  int r = sys.offset();
  LaurentPoly acc;
  int pw_first = sys.kind() == StructKind::TwoJK ? 1 : 2;
  int pw_second = sys.kind() == StructKind::TwoJK ? -2 : -1;
  for (int j = 0; j <= n; ++j) {
    LaurentPoly t = LaurentPoly::from_poly(sys.poly_second(j), pw_second) *
                    LaurentPoly::from_poly(sys.poly_first(j), pw_first);
    acc.add(t, cplx(1.0) / norm_checked(sys, j));
  }
  cplx v = sys.pair(acc * LaurentPoly::monomial(-r));
  return std::abs(v - cplx(static_cast<double>(n + 1)));
}

ReproducingResiduals reproducing_residuals(BiorthSystem& sys, int n, int ell,
                                           std::span<const cplx> zs) {
  int r = sys.offset();
  int pw_second = sys.kind() == StructKind::TwoJK ? -2 : -1;
  int pw_first = sys.kind() == StructKind::TwoJK ? 1 : 2;
  ReproducingResiduals out{0.0, 0.0};
  for (cplx z : zs) {
    // second-kind side: <K_n(z, .), G_ell> = G_ell(z) for ell <= n else 0
    LaurentPoly k1 = kernel_in_first(sys, n, z);
    LaurentPoly integrand =
        k1 * LaurentPoly::from_poly(sys.poly_second(ell), pw_second) * LaurentPoly::monomial(-r);
    cplx got = sys.pair(integrand);
    cplx want = ell <= n ? sys.poly_second(ell).eval(z) : cplx(0.0);
    out.second_side = std::max(out.second_side,
                               std::abs(got - want) / std::max(1.0, std::abs(want)));
    // first-kind side
    LaurentPoly k2 = kernel_in_second(sys, n, z);
    integrand =
        k2 * LaurentPoly::from_poly(sys.poly_first(ell), pw_first) * LaurentPoly::monomial(-r);
    got = sys.pair(integrand);
    want = ell <= n ? sys.poly_first(ell).eval(z) : cplx(0.0);
    out.first_side =
        std::max(out.first_side, std::abs(got - want) / std::max(1.0, std::abs(want)));
  }
  return out;
}

double projection_residual(BiorthSystem& sys, int n, cplx z1, cplx z2) {
  int r = sys.offset();
  LaurentPoly k1 = kernel_in_first(sys, n, z1);
  LaurentPoly k2 = kernel_in_second(sys, n, z2);
  cplx got = sys.pair(k1 * k2 * LaurentPoly::monomial(-r));
  cplx want = kernel_sum(sys, n, z1, z2);
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

double cross_kernel_residual(SystemFamily& twojk, SystemFamily& jtwok, int n, int s, cplx a,
                             cplx b) {
  if (a == cplx(0.0) || b == cplx(0.0)) throw ZeroArgument("cross-kernel identity needs a, b != 0");
  cplx lhs = kernel_sum(jtwok.at(s), n, a, b);
  cplx rhs = std::pow(a * b, n) * kernel_sum(twojk.at(s - n), n, cplx(1.0) / b, cplx(1.0) / a);
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

double leading_behavior_residual(BiorthSystem& sys, int n, cplx big, cplx zeta) {
  cplx lead = kernel_sum(sys, n, big, zeta) * sys.norm(n) / std::pow(big, n);
  cplx want = sys.poly_first(n).eval(zeta);
  return std::abs(lead - want) / std::max(1.0, std::abs(want));
}

}  // namespace bicirc
