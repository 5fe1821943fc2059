/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "bicirc/recurrences.hpp"

#include <cmath>

namespace bicirc {

namespace {

// Ratio helpers returning nullopt when a denominator determinant vanishes.
std::optional<cplx> norm_of(SystemFamily& fam, int n, int offset) {
  BiorthSystem& s = fam.at(offset);
  if (s.det_vanishing(n)) return std::nullopt;
  return s.det(n + 1) / s.det(n);
}

std::optional<cplx> coeff_generic(SystemFamily* twojk, SystemFamily* jtwok, char which, int n,
                                  int offset) {
  auto ratio4 = [](SystemFamily& f, int n, int onum1, int onum2, int oden1, int oden2)
      -> std::optional<cplx> {
    // f.det: [onum1]_n * [onum2]_{n+1} / ([oden1]_{n+1} * [oden2]_n)
    if (f.at(oden1).det_vanishing(n + 1) || f.at(oden2).det_vanishing(n)) return std::nullopt;
    return f.at(onum1).det(n) * f.at(onum2).det(n + 1) /
           (f.at(oden1).det(n + 1) * f.at(oden2).det(n));
  };
  switch (which) {
    case 'd': {
      if (!twojk) return std::nullopt;
      auto num = norm_of(*twojk, n, offset - 1);
      auto den = norm_of(*twojk, n, offset);
      if (!num || !den || *den == cplx(0.0)) return std::nullopt;
      return -*num / *den;
    }
    case 'e':
      return twojk ? ratio4(*twojk, n, offset + 2, offset - 1, offset, offset + 1) : std::nullopt;
    case 'b': {
      if (!twojk) return std::nullopt;
      auto num = norm_of(*twojk, n, offset + 2);
      auto den = norm_of(*twojk, n, offset);
      if (!num || !den || *den == cplx(0.0)) return std::nullopt;
      return -*num / *den;
    }
    case 'a':
      return twojk ? ratio4(*twojk, n, offset - 1, offset + 2, offset, offset + 1) : std::nullopt;
    case 'k': {
      if (!jtwok) return std::nullopt;
      auto num = norm_of(*jtwok, n, offset - 2);
      auto den = norm_of(*jtwok, n, offset);
      if (!num || !den || *den == cplx(0.0)) return std::nullopt;
      return -*num / *den;
    }
    case 'r':
      return jtwok ? ratio4(*jtwok, n, offset + 1, offset - 2, offset, offset - 1) : std::nullopt;
    case 'g': {
      if (!jtwok) return std::nullopt;
      auto num = norm_of(*jtwok, n, offset + 1);
      auto den = norm_of(*jtwok, n, offset);
      if (!num || !den || *den == cplx(0.0)) return std::nullopt;
      return -*num / *den;
    }
    case 't':
      return jtwok ? ratio4(*jtwok, n, offset - 2, offset + 1, offset, offset - 1) : std::nullopt;
    default:
      throw Error(errc::invalid_argument, "unknown recurrence coefficient selector");
  }
}

// Polynomial evaluations; nullopt when the degree is not constructible.
std::optional<cplx> evalP(SystemFamily& f, int n, int offset, cplx z) {
  BiorthSystem& s = f.at(offset);
  if (!s.degree_ok(n)) return std::nullopt;
  return s.poly_first(n).eval(z);
}
std::optional<cplx> evalQstar(SystemFamily& f, int n, int offset, cplx z) {
  BiorthSystem& s = f.at(offset);
  if (!s.degree_ok(n)) return std::nullopt;
  return s.poly_second(n).reciprocal().eval(z);
}
std::optional<cplx> evalR(SystemFamily& f, int n, int offset, cplx z) {
  return evalP(f, n, offset, z);
}
std::optional<cplx> evalSstar(SystemFamily& f, int n, int offset, cplx z) {
  return evalQstar(f, n, offset, z);
}

double scaled(const std::vector<cplx>& terms) {
  cplx sum(0.0);
  double scale = 0.0;
  for (cplx t : terms) {
    sum += t;
    scale = std::max(scale, std::abs(t));
  }
  return std::abs(sum) / std::max(scale, 1e-300);
}

}  // namespace

CoeffFn generic_coeffs(SystemFamily* twojk, SystemFamily* jtwok) {
  return [twojk, jtwok](char which, int n, int offset) {
    return coeff_generic(twojk, jtwok, which, n, offset);
  };
}

RecCoeffs coeffs(SystemFamily& fam, int n, int offset) {
  bool two = fam.kind() == StructKind::TwoJK;
  CoeffFn cf = two ? generic_coeffs(&fam, nullptr) : generic_coeffs(nullptr, &fam);
  const char* sel = two ? "deba" : "krgt";
  std::array<cplx, 4> v;
  for (int i = 0; i < 4; ++i) {
    auto c = cf(sel[i], n, offset);
    if (!c) throw SingularDeterminant(n, offset);
    v[static_cast<size_t>(i)] = *c;
  }
  return RecCoeffs{v[0], v[1], v[2], v[3]};
}

std::optional<double> coeff_redundancy_residual(SystemFamily& fam, int n, int offset) {
  bool two = fam.kind() == StructKind::TwoJK;
  CoeffFn cf = two ? generic_coeffs(&fam, nullptr) : generic_coeffs(nullptr, &fam);
  double worst = 0.0;
  if (two) {
    auto d = cf('d', n, offset), e = cf('e', n, offset), b = cf('b', n, offset),
         a = cf('a', n, offset);
    auto d1 = cf('d', n, offset + 1), d2 = cf('d', n, offset + 2);
    if (!d || !e || !b || !a || !d1 || !d2) return std::nullopt;
    worst = std::max(worst, std::abs(*d * *a - *b * *e));
    worst = std::max(worst, std::abs(*b + cplx(1.0) / (*d1 * *d2)));
    worst = std::max(worst, std::abs(*a + *e / (*d * *d1 * *d2)));
  } else {
    auto k = cf('k', n, offset), r = cf('r', n, offset), g = cf('g', n, offset),
         t = cf('t', n, offset);
    auto g1 = cf('g', n, offset - 1), g2 = cf('g', n, offset - 2);
    if (!k || !r || !g || !t || !g1 || !g2) return std::nullopt;
    worst = std::max(worst, std::abs(*k * *t - *g * *r));
    worst = std::max(worst, std::abs(*k + cplx(1.0) / (*g1 * *g2)));
    worst = std::max(worst, std::abs(*r + *t / (*g * *g1 * *g2)));
  }
  return worst;
}

std::optional<double> degree_residual(SystemFamily& fam, char family, int n, int offset, cplx z,
                                      const CoeffFn& cf) {
  cplx z2 = z * z;
  switch (family) {
    case 'P': {
      auto d2 = cf('d', n + 2, offset), d1m = cf('d', n + 1, offset - 1),
           d1 = cf('d', n + 1, offset), d0 = cf('d', n, offset), e0 = cf('e', n, offset - 2);
      if (!d2 || !d1m || !d1 || !d0 || !e0) return std::nullopt;
      std::array<std::optional<cplx>, 4> p;
      for (int i = 0; i < 4; ++i) p[static_cast<size_t>(i)] = evalP(fam, n + i, offset, z);
      if (!p[0] || !p[1] || !p[2] || !p[3]) return std::nullopt;
      return scaled({*p[3], -(*d2 + *d1m) * *p[2], (*d1m * *d1 - z2) * *p[1],
                     (*d0 + *e0) * z2 * *p[0]});
    }
    case 'Q': {
      auto b2 = cf('b', n + 2, offset), b1 = cf('b', n + 1, offset),
           a11 = cf('a', n + 1, offset + 1), b11 = cf('b', n + 1, offset + 1),
           a12 = cf('a', n + 1, offset + 2), b0 = cf('b', n, offset), a01 = cf('a', n, offset + 1);
      if (!b2 || !b1 || !a11 || !b11 || !a12 || !b0 || !a01) return std::nullopt;
      std::array<std::optional<cplx>, 4> q;
      for (int i = 0; i < 4; ++i) q[static_cast<size_t>(i)] = evalQstar(fam, n + i, offset, z);
      if (!q[0] || !q[1] || !q[2] || !q[3]) return std::nullopt;
      return scaled({*q[3], -(cplx(1.0) + *b2 * z) * *q[2], (*b1 + *a11 + *b11 + *a12) * z * *q[1],
                     -(*b11 + *a12) * (*b0 + *a01) * z2 * *q[0]});
    }
    case 'R': {
      auto k2 = cf('k', n + 2, offset), k1 = cf('k', n + 1, offset),
           r1m = cf('r', n + 1, offset - 1), r2 = cf('r', n + 2, offset), k0 = cf('k', n, offset),
           r0m = cf('r', n, offset - 1);
      if (!k2 || !k1 || !r1m || !r2 || !k0 || !r0m) return std::nullopt;
      std::array<std::optional<cplx>, 4> p;
      for (int i = 0; i < 4; ++i) p[static_cast<size_t>(i)] = evalR(fam, n + i, offset, z);
      if (!p[0] || !p[1] || !p[2] || !p[3]) return std::nullopt;
      return scaled({*p[3], -(z + *k2) * *p[2], (*k1 + *r1m + *r2 + *k2) * z * *p[1],
                     -(*r2 + *k2) * (*k0 + *r0m) * z * *p[0]});
    }
    case 'S': {
      auto g2 = cf('g', n + 2, offset), g11 = cf('g', n + 1, offset + 1),
           g1 = cf('g', n + 1, offset), t11 = cf('t', n + 1, offset + 1);
      if (!g2 || !g11 || !g1 || !t11) return std::nullopt;
      std::array<std::optional<cplx>, 4> q;
      for (int i = 0; i < 4; ++i) q[static_cast<size_t>(i)] = evalSstar(fam, n + i, offset, z);
      if (!q[0] || !q[1] || !q[2] || !q[3]) return std::nullopt;
      return scaled({*q[3], -(*g2 + *g11) * z * *q[2], -(cplx(1.0) - *g11 * *g1 * z2) * *q[1],
                     (*t11 + *g11) * z * *q[0]});
    }
    default:
      throw Error(errc::invalid_argument, "degree_residual family must be P,Q,R,S");
  }
}

std::optional<double> offset_residual(SystemFamily& fam, char family, int n, int offset, cplx z,
                                      const CoeffFn& cf) {
  switch (family) {
    case 'P': {
      auto e1 = cf('e', n, offset + 1), d1 = cf('d', n, offset + 1);
      if (!e1 || !d1) return std::nullopt;
      std::array<std::optional<cplx>, 4> p;
      for (int i = 0; i < 4; ++i) p[static_cast<size_t>(i)] = evalP(fam, n, offset + i, z);
      if (!p[0] || !p[1] || !p[2] || !p[3]) return std::nullopt;
      return scaled({*e1 * *p[3], -z * *p[2], *d1 * *p[1], z * *p[0]});
    }
    case 'Q': {
      auto b1 = cf('b', n, offset + 1), a1 = cf('a', n, offset + 1);
      if (!b1 || !a1) return std::nullopt;
      std::array<std::optional<cplx>, 4> q;
      for (int i = 0; i < 4; ++i) q[static_cast<size_t>(i)] = evalQstar(fam, n, offset + i, z);
      if (!q[0] || !q[1] || !q[2] || !q[3]) return std::nullopt;
      return scaled({*q[3], -*q[2], *b1 * z * *q[1], *a1 * z * *q[0]});
    }
    case 'R': {
      auto r2 = cf('r', n, offset + 2), k2 = cf('k', n, offset + 2);
      if (!r2 || !k2) return std::nullopt;
      std::array<std::optional<cplx>, 4> p;
      for (int i = 0; i < 4; ++i) p[static_cast<size_t>(i)] = evalR(fam, n, offset + i, z);
      if (!p[0] || !p[1] || !p[2] || !p[3]) return std::nullopt;
      return scaled({*r2 * *p[3], *k2 * *p[2], -z * *p[1], z * *p[0]});
    }
    case 'S': {
      auto g2 = cf('g', n, offset + 2), t2 = cf('t', n, offset + 2);
      if (!g2 || !t2) return std::nullopt;
      std::array<std::optional<cplx>, 4> q;
      for (int i = 0; i < 4; ++i) q[static_cast<size_t>(i)] = evalSstar(fam, n, offset + i, z);
      if (!q[0] || !q[1] || !q[2] || !q[3]) return std::nullopt;
      return scaled({*q[3], *g2 * z * *q[2], -*q[1], *t2 * z * *q[0]});
    }
    default:
      throw Error(errc::invalid_argument, "offset_residual family must be P,Q,R,S");
  }
}

std::array<std::optional<double>, 8> first_order_residuals(SystemFamily& twojk,
                                                           SystemFamily& jtwok, int n, int offset,
                                                           cplx z, const CoeffFn& cf) {
  std::array<std::optional<double>, 8> out;
  {
    auto d = cf('d', n, offset);
    auto l = evalP(twojk, n + 1, offset, z);
    auto a = evalP(twojk, n, offset - 1, z);
    auto b = evalP(twojk, n, offset, z);
    if (d && l && a && b) out[0] = scaled({*l, -z * *a, -*d * *b});
  }
  {
    auto e = cf('e', n, offset);
    auto l = evalP(twojk, n + 1, offset, z);
    auto a = evalP(twojk, n, offset + 1, z);
    auto b = evalP(twojk, n, offset + 2, z);
    if (e && l && a && b) out[1] = scaled({*l, -z * *a, *e * *b});
  }
  {
    auto bcoef = cf('b', n, offset);
    auto l = evalQstar(twojk, n + 1, offset, z);
    auto a = evalQstar(twojk, n, offset + 2, z);
    auto b = evalQstar(twojk, n, offset, z);
    if (bcoef && l && a && b) out[2] = scaled({*l, -*a, -*bcoef * z * *b});
  }
  {
    auto acoef = cf('a', n, offset);
    auto l = evalQstar(twojk, n + 1, offset, z);
    auto a = evalQstar(twojk, n, offset + 1, z);
    auto b = evalQstar(twojk, n, offset - 1, z);
    if (acoef && l && a && b) out[3] = scaled({*l, -*a, *acoef * z * *b});
  }
  {
    auto k = cf('k', n, offset);
    auto l = evalR(jtwok, n + 1, offset, z);
    auto a = evalR(jtwok, n, offset - 2, z);
    auto b = evalR(jtwok, n, offset, z);
    if (k && l && a && b) out[4] = scaled({*l, -z * *a, -*k * *b});
  }
  {
    auto r = cf('r', n, offset);
    auto l = evalR(jtwok, n + 1, offset, z);
    auto a = evalR(jtwok, n, offset - 1, z);
    auto b = evalR(jtwok, n, offset + 1, z);
    if (r && l && a && b) out[5] = scaled({*l, -z * *a, *r * *b});
  }
  {
    auto g = cf('g', n, offset);
    auto l = evalSstar(jtwok, n + 1, offset, z);
    auto a = evalSstar(jtwok, n, offset + 1, z);
    auto b = evalSstar(jtwok, n, offset, z);
    if (g && l && a && b) out[6] = scaled({*l, -*a, -*g * z * *b});
  }
  {
    auto t = cf('t', n, offset);
    auto l = evalSstar(jtwok, n + 1, offset, z);
    auto a = evalSstar(jtwok, n, offset - 1, z);
    auto b = evalSstar(jtwok, n, offset - 2, z);
    if (t && l && a && b) out[7] = scaled({*l, -*a, *t * z * *b});
  }
  return out;
}

std::array<std::optional<double>, 16> mixed_residuals(SystemFamily& twojk, SystemFamily& jtwok,
                                                      int n, int offset, cplx z) {
  std::array<std::optional<double>, 16> out;
  CoeffFn cf = generic_coeffs(&twojk, &jtwok);
  double sgn = (n % 2 == 0) ? 1.0 : -1.0;
  // Each substitution swaps one polynomial across structures through the
  // duality factor (-1)^n E_n/D_n; nullopt when a determinant vanishes.
  auto Ssub = [&](int s, int dofs) -> std::optional<cplx> {
    // (-1)^n E_n^(s)/D_n^(dofs) * S*_n(z;s): the replacement for P_n(z;dofs).
    BiorthSystem& es = jtwok.at(s);
    BiorthSystem& ds = twojk.at(dofs);
    if (ds.det_vanishing(n) || !es.degree_ok(n)) return std::nullopt;
    return sgn * es.det(n) / ds.det(n) * es.poly_second(n).reciprocal().eval(z);
  };
  auto Rsub = [&](int s, int dofs) -> std::optional<cplx> {
    // (-1)^n E_n^(s)/D_n^(dofs) * R_n(z;s): the replacement for Q*_n(z;dofs).
    BiorthSystem& es = jtwok.at(s);
    BiorthSystem& ds = twojk.at(dofs);
    if (ds.det_vanishing(n) || !es.degree_ok(n)) return std::nullopt;
    return sgn * es.det(n) / ds.det(n) * es.poly_first(n).eval(z);
  };
  auto Qsub = [&](int dofs, int s) -> std::optional<cplx> {
    // (-1)^n D_n^(dofs)/E_n^(s) * Q*_n(z;dofs): the replacement for R_n(z;s).
    BiorthSystem& es = jtwok.at(s);
    BiorthSystem& ds = twojk.at(dofs);
    if (es.det_vanishing(n) || !ds.degree_ok(n)) return std::nullopt;
    return sgn * ds.det(n) / es.det(n) * ds.poly_second(n).reciprocal().eval(z);
  };
  auto Psub = [&](int dofs, int s) -> std::optional<cplx> {
    // (-1)^n D_n^(dofs)/E_n^(s) * P_n(z;dofs): the replacement for S*_n(z;s).
    BiorthSystem& es = jtwok.at(s);
    BiorthSystem& ds = twojk.at(dofs);
    if (es.det_vanishing(n) || !ds.degree_ok(n)) return std::nullopt;
    return sgn * ds.det(n) / es.det(n) * ds.poly_first(n).eval(z);
  };
  int r = offset, s = offset;
  auto put = [&](size_t i, std::optional<cplx> l, std::optional<cplx> t1, std::optional<cplx> t2) {
    if (l && t1 && t2) out[i] = scaled({*l, *t1, *t2});
  };
  // P-side: substitutions into the two first-order P relations.
  {
    auto d = cf('d', n, r), e = cf('e', n, r);
    auto l = evalP(twojk, n + 1, r, z);
    auto sub1 = Ssub(r + n - 3, r - 1);  // P_n(z;r-1)
    auto sub2 = Ssub(r + n - 1, r + 1);  // P_n(z;r+1)
    auto sub3 = Ssub(r + n, r + 2);      // P_n(z;r+2)
    auto p0 = evalP(twojk, n, r, z);
    auto p2 = evalP(twojk, n, r + 2, z);
    auto p1 = evalP(twojk, n, r + 1, z);
    if (d) put(0, l, sub1 ? std::optional<cplx>(-z * *sub1) : std::nullopt,
               p0 ? std::optional<cplx>(-*d * *p0) : std::nullopt);
    if (e) {
      put(1, l, sub2 ? std::optional<cplx>(-z * *sub2) : std::nullopt,
          p2 ? std::optional<cplx>(*e * *p2) : std::nullopt);
      put(2, l, p1 ? std::optional<cplx>(-z * *p1) : std::nullopt,
          sub3 ? std::optional<cplx>(*e * *sub3) : std::nullopt);
      put(3, l, sub2 ? std::optional<cplx>(-z * *sub2) : std::nullopt,
          sub3 ? std::optional<cplx>(*e * *sub3) : std::nullopt);
    }
  }
  // Q*-side.
  {
    auto b = cf('b', n, r), a = cf('a', n, r);
    auto l = evalQstar(twojk, n + 1, r, z);
    auto sub2 = Rsub(r + n + 3, r + 2);  // Q*_n(z;r+2)
    auto sub1 = Rsub(r + n + 2, r + 1);  // Q*_n(z;r+1)
    auto sub0 = Rsub(r + n, r - 1);      // Q*_n(z;r-1)
    auto q0 = evalQstar(twojk, n, r, z);
    auto q1 = evalQstar(twojk, n, r + 1, z);
    auto qm = evalQstar(twojk, n, r - 1, z);
    if (b) put(4, l, sub2 ? std::optional<cplx>(-*sub2) : std::nullopt,
               q0 ? std::optional<cplx>(-*b * z * *q0) : std::nullopt);
    if (a) {
      put(5, l, sub1 ? std::optional<cplx>(-*sub1) : std::nullopt,
          qm ? std::optional<cplx>(*a * z * *qm) : std::nullopt);
      put(6, l, q1 ? std::optional<cplx>(-*q1) : std::nullopt,
          sub0 ? std::optional<cplx>(*a * z * *sub0) : std::nullopt);
      put(7, l, sub1 ? std::optional<cplx>(-*sub1) : std::nullopt,
          sub0 ? std::optional<cplx>(*a * z * *sub0) : std::nullopt);
    }
  }
  // R-side.
  {
    auto k = cf('k', n, s), rr = cf('r', n, s);
    auto l = evalR(jtwok, n + 1, s, z);
    auto qs3 = Qsub(s - n - 3, s - 2);  // R_n(z;s-2)
    auto qs2 = Qsub(s - n - 2, s - 1);  // R_n(z;s-1)
    auto qs0 = Qsub(s - n, s + 1);      // R_n(z;s+1)
    auto r0 = evalR(jtwok, n, s, z);
    auto rm1 = evalR(jtwok, n, s - 1, z);
    auto rp1 = evalR(jtwok, n, s + 1, z);
    if (k) put(8, l, qs3 ? std::optional<cplx>(-z * *qs3) : std::nullopt,
               r0 ? std::optional<cplx>(-*k * *r0) : std::nullopt);
    if (rr) {
      put(9, l, qs2 ? std::optional<cplx>(-z * *qs2) : std::nullopt,
          rp1 ? std::optional<cplx>(*rr * *rp1) : std::nullopt);
      put(10, l, rm1 ? std::optional<cplx>(-z * *rm1) : std::nullopt,
          qs0 ? std::optional<cplx>(*rr * *qs0) : std::nullopt);
      put(11, l, qs2 ? std::optional<cplx>(-z * *qs2) : std::nullopt,
          qs0 ? std::optional<cplx>(*rr * *qs0) : std::nullopt);
    }
  }
  // S*-side.
  {
    auto g = cf('g', n, s), t = cf('t', n, s);
    auto l = evalSstar(jtwok, n + 1, s, z);
    auto ps3 = Psub(s - n + 3, s + 1);  // S*_n(z;s+1)
    auto ps1 = Psub(s - n + 1, s - 1);  // S*_n(z;s-1)
    auto ps0 = Psub(s - n, s - 2);      // S*_n(z;s-2)
    auto s0 = evalSstar(jtwok, n, s, z);
    auto sm1 = evalSstar(jtwok, n, s - 1, z);
    auto sm2 = evalSstar(jtwok, n, s - 2, z);
    if (g) put(12, l, ps3 ? std::optional<cplx>(-*ps3) : std::nullopt,
               s0 ? std::optional<cplx>(-*g * z * *s0) : std::nullopt);
    if (t) {
      put(13, l, ps1 ? std::optional<cplx>(-*ps1) : std::nullopt,
          sm2 ? std::optional<cplx>(*t * z * *sm2) : std::nullopt);
      put(14, l, sm1 ? std::optional<cplx>(-*sm1) : std::nullopt,
          ps0 ? std::optional<cplx>(*t * z * *ps0) : std::nullopt);
      put(15, l, ps1 ? std::optional<cplx>(-*ps1) : std::nullopt,
          ps0 ? std::optional<cplx>(*t * z * *ps0) : std::nullopt);
    }
  }
  return out;
}

std::optional<double> bilinear_Q_from_P(SystemFamily& twojk, int n, int r, cplx z) {
  if (z == cplx(0.0)) throw ZeroArgument("bilinear formula needs z != 0");
  BiorthSystem& base = twojk.at(r);
  BiorthSystem& up = twojk.at(r + 2);
  if (base.det_vanishing(n) || !up.degree_ok(n + 1)) return std::nullopt;
  cplx lhs = base.poly_second(n).eval(z * z);
  cplx zi = cplx(1.0) / z;
  cplx br = up.poly_first(n + 1).eval(zi) * up.poly_first(n).eval(-zi) -
            up.poly_first(n + 1).eval(-zi) * up.poly_first(n).eval(zi);
  cplx rhs = up.det(n) / base.det(n) * std::pow(z, 2 * n + 1) * 0.5 * br;
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

std::optional<double> bilinear_R_from_S(SystemFamily& jtwok, int n, int s, cplx z) {
  if (z == cplx(0.0)) throw ZeroArgument("bilinear formula needs z != 0");
  BiorthSystem& base = jtwok.at(s);
  BiorthSystem& down = jtwok.at(s - 2);
  if (base.det_vanishing(n) || !down.degree_ok(n + 1)) return std::nullopt;
  cplx lhs = base.poly_first(n).eval(z * z);
  cplx zi = cplx(1.0) / z;
  cplx br = down.poly_second(n + 1).eval(zi) * down.poly_second(n).eval(-zi) -
            down.poly_second(n + 1).eval(-zi) * down.poly_second(n).eval(zi);
  cplx rhs = down.det(n) / base.det(n) * std::pow(z, 2 * n + 1) * 0.5 * br;
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

cplx reconstruct_det_from_tails(SystemFamily& fam, int offset, int n) {
  bool two = fam.kind() == StructKind::TwoJK;
  int o1 = two ? offset + 1 : offset - 1;
  int o2 = two ? offset + 2 : offset - 2;
  cplx w0 = fam.at(offset).moment(offset);
  auto tail_at = [&](int off, int deg) -> cplx {
    BiorthSystem& s = fam.at(off);
    if (!s.degree_ok(deg)) throw SingularDeterminant(deg, off);
    return two ? s.poly_first(deg).coeff(0) : s.poly_second(deg).coeff(0);
  };
  cplx acc(1.0);
  for (int l = 0; l < n; ++l) {
    cplx t = w0 / tail_at(o1, l);
    for (int nu = 1; nu <= l; ++nu) t *= tail_at(offset, nu) / tail_at(o2, nu) - cplx(1.0);
    acc *= t;
  }
  return acc;
}

std::optional<double> offset_shift_reconstruction(SystemFamily& fam, char family, int n,
                                                  int offset, const CoeffFn& cf) {
  // Solve the pure-offset recurrence for the offset+3 member and compare
  // with the directly constructed polynomial, coefficientwise.
  bool two = fam.kind() == StructKind::TwoJK;
  if ((two && (family != 'P')) || (!two && (family != 'R')))
    throw Error(errc::invalid_argument, "offset reconstruction covers P (TwoJK) and R (JTwoK)");
  for (int i = 0; i < 4; ++i)
    if (!fam.at(offset + i).degree_ok(n)) return std::nullopt;
  std::array<const ComplexPoly*, 4> p;
  for (int i = 0; i < 4; ++i) p[static_cast<size_t>(i)] = &fam.at(offset + i).poly_first(n);
  double worst = 0.0;
  if (two) {
    auto e1 = cf('e', n, offset + 1), d1 = cf('d', n, offset + 1);
    if (!e1 || !d1 || std::abs(*e1) < 1e-300) return std::nullopt;
    // eta P(r+3) = z P(r+2) - delta P(r+1) - z P(r)
    for (int l = 0; l <= n; ++l) {
      cplx zterm = (l >= 1 ? p[2]->coeff(l - 1) - p[0]->coeff(l - 1) : cplx(0.0));
      cplx want = (zterm - *d1 * p[1]->coeff(l)) / *e1;
      worst = std::max(worst, std::abs(want - p[3]->coeff(l)) /
                                  std::max(1.0, std::abs(p[3]->coeff(l))));
    }
  } else {
    auto r2 = cf('r', n, offset + 2), k2 = cf('k', n, offset + 2);
    if (!r2 || !k2 || std::abs(*r2) < 1e-300) return std::nullopt;
    // rho R(s+3) = z R(s+1) - z R(s) - kappa R(s+2)
    for (int l = 0; l <= n; ++l) {
      cplx zterm = (l >= 1 ? p[1]->coeff(l - 1) - p[0]->coeff(l - 1) : cplx(0.0));
      cplx want = (zterm - *k2 * p[2]->coeff(l)) / *r2;
      worst = std::max(worst, std::abs(want - p[3]->coeff(l)) /
                                  std::max(1.0, std::abs(p[3]->coeff(l))));
    }
  }
  return worst;
}

std::array<std::optional<double>, 4> tail_product_residuals(SystemFamily& twojk,
                                                            SystemFamily& jtwok, int n, int offset,
                                                            const CoeffFn& cf) {
  std::array<std::optional<double>, 4> out;
  struct Row {
    SystemFamily* fam;
    bool second;
    char coef;
  };
  const Row rows[4] = {{&twojk, false, 'd'},
                       {&twojk, true, 'b'},
                       {&jtwok, false, 'k'},
                       {&jtwok, true, 'g'}};
  for (size_t i = 0; i < 4; ++i) {
    BiorthSystem& s = rows[i].fam->at(offset);
    if (!s.degree_ok(n)) continue;
    cplx value = (rows[i].second ? s.poly_second(n) : s.poly_first(n)).coeff(0);
    cplx prod(1.0);
    bool ok = true;
    for (int l = 0; l < n && ok; ++l) {
      auto c = cf(rows[i].coef, l, offset);
      if (!c)
        ok = false;
      else
        prod *= *c;
    }
    if (ok) out[i] = std::abs(value - prod) / std::max(1.0, std::abs(value));
  }
  return out;
}

std::array<std::optional<double>, 4> tail_offset_residuals(SystemFamily& twojk,
                                                           SystemFamily& jtwok, int n, int offset,
                                                           const CoeffFn& cf) {
  std::array<std::optional<double>, 4> out;
  auto tail0 = [&](SystemFamily& f, bool second, int off) -> std::optional<cplx> {
    BiorthSystem& s = f.at(off);
    if (!s.degree_ok(n)) return std::nullopt;
    return (second ? s.poly_second(n) : s.poly_first(n)).coeff(0);
  };
  {
    auto d = cf('d', n, offset), e = cf('e', n, offset);
    auto a = tail0(twojk, false, offset + 2), b = tail0(twojk, false, offset);
    if (d && e && a && b && std::abs(*e) > 1e-300)
      out[0] = std::abs(*a + *d / *e * *b) / std::max(1.0, std::abs(*a));
  }
  {
    auto bb = cf('b', n, offset), aa = cf('a', n, offset);
    auto a = tail0(twojk, true, offset - 1), b = tail0(twojk, true, offset);
    if (bb && aa && a && b && std::abs(*aa) > 1e-300)
      out[1] = std::abs(*a + *bb / *aa * *b) / std::max(1.0, std::abs(*a));
  }
  {
    auto k = cf('k', n, offset), r = cf('r', n, offset);
    auto a = tail0(jtwok, false, offset + 1), b = tail0(jtwok, false, offset);
    if (k && r && a && b && std::abs(*r) > 1e-300)
      out[2] = std::abs(*a + *k / *r * *b) / std::max(1.0, std::abs(*a));
  }
  {
    auto g = cf('g', n, offset), t = cf('t', n, offset);
    auto a = tail0(jtwok, true, offset - 2), b = tail0(jtwok, true, offset);
    if (g && t && a && b && std::abs(*t) > 1e-300)
      out[3] = std::abs(*a + *g / *t * *b) / std::max(1.0, std::abs(*a));
  }
  return out;
}

}  // namespace bicirc
