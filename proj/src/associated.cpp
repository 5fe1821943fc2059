/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "bicirc/associated.hpp"

#include <cmath>

namespace bicirc {

namespace {

constexpr double kAnnulusHalfWidth = 1e-3;
constexpr int kMaxTerms = 10000;

void check_region(cplx z) {
  if (std::abs(std::abs(z) - 1.0) < kAnnulusHalfWidth)
    throw AnnulusExcluded("evaluation point inside the excluded annulus around |z| = 1");
}

}  // namespace

cplx F2(const Weight& w, int offset, cplx z) {
  check_region(z);
  if (std::abs(z) < 1.0) {
    cplx sum = w.moment(offset);
    cplx zp(1.0);
    int quiet = 0;
    for (int m = 1; m <= kMaxTerms; ++m) {
      zp *= z;
      cplx term = 2.0 * w.moment(offset + m) * zp;
      sum += term;
      quiet = (std::abs(term) < 1e-16 * std::max(1.0, std::abs(sum))) ? quiet + 1 : 0;
      if (quiet >= 3 && m > 4) return sum;
    }
    throw SeriesNotConverged("F2 inside series exceeded term limit");
  }
  cplx sum = -w.moment(offset);
  cplx zp(1.0);
  int quiet = 0;
  for (int m = 1; m <= kMaxTerms; ++m) {
    zp /= z;
    cplx term = -2.0 * w.moment(offset - m) * zp;
    sum += term;
    quiet = (std::abs(term) < 1e-16 * std::max(1.0, std::abs(sum))) ? quiet + 1 : 0;
    if (quiet >= 3 && m > 4) return sum;
  }
  throw SeriesNotConverged("F2 outside series exceeded term limit");
}

cplx F1(const Weight& w, int offset, cplx z) {
  return 0.5 * (F2(w, offset, z) + F2(w, offset, -z));
}

cplx assoc_hat(BiorthSystem& sys, char family, int n, cplx z) {
  check_region(z);
  int r = sys.offset();
  const Weight& w = sys.weight();
  bool two = sys.kind() == StructKind::TwoJK;
  cplx acc(0.0);
  switch (family) {
    case 'P': {
      if (!two) throw Error(errc::invalid_argument, "Phat lives in a TwoJK system");
      const auto& c = sys.poly_first(n).coeffs();
      for (int l = 0; l <= n; ++l) acc += c[static_cast<size_t>(l)] * F1(w, r - l, z);
      return acc;
    }
    case 'p': {
      if (!two) throw Error(errc::invalid_argument, "Pdagger lives in a TwoJK system");
      const auto& c = sys.poly_first(n).coeffs();
      for (int l = 0; l <= n; ++l) acc += c[static_cast<size_t>(l)] * F2(w, r - l, z);
      return acc;
    }
    case 'Q': {
      if (!two) throw Error(errc::invalid_argument, "Qhat lives in a TwoJK system");
      const auto& c = sys.poly_second(n).coeffs();
      for (int l = 0; l <= n; ++l) acc += c[static_cast<size_t>(l)] * F2(w, r + 2 * l, z);
      return acc;
    }
    case 'R': {
      if (two) throw Error(errc::invalid_argument, "Rhat lives in a JTwoK system");
      const auto& c = sys.poly_first(n).coeffs();
      for (int l = 0; l <= n; ++l) acc += c[static_cast<size_t>(l)] * F2(w, r - 2 * l, z);
      return acc;
    }
    case 'S': {
      if (two) throw Error(errc::invalid_argument, "Shat lives in a JTwoK system");
      const auto& c = sys.poly_second(n).coeffs();
      for (int l = 0; l <= n; ++l) acc += c[static_cast<size_t>(l)] * F1(w, r + l, z);
      return acc;
    }
    case 's': {
      if (two) throw Error(errc::invalid_argument, "Sdagger lives in a JTwoK system");
      const auto& c = sys.poly_second(n).coeffs();
      for (int l = 0; l <= n; ++l) acc += c[static_cast<size_t>(l)] * F2(w, r + l, z);
      return acc;
    }
    default:
      throw Error(errc::invalid_argument, "assoc_hat family must be P,Q,R,S,p,s");
  }
}

cplx assoc_check(BiorthSystem& sys, char family, int n, cplx z) {
  int r = sys.offset();
  const Weight& w = sys.weight();
  switch (family) {
    case 'P':
      return assoc_hat(sys, 'P', n, z) - F1(w, r, z) * sys.poly_first(n).eval(z);
    case 'Q':
      return assoc_hat(sys, 'Q', n, z) -
             F2(w, r, z) * sys.poly_second(n).eval(cplx(1.0) / (z * z));
    case 'R':
      return assoc_hat(sys, 'R', n, z) - F2(w, r, z) * sys.poly_first(n).eval(z * z);
    case 'S':
      return assoc_hat(sys, 'S', n, z) - F1(w, r, z) * sys.poly_second(n).eval(cplx(1.0) / z);
    default:
      throw Error(errc::invalid_argument, "assoc_check family must be P,Q,R,S");
  }
}

namespace {

struct LTerms {
  bool ok = false;
  std::array<cplx, 4> c;  // multipliers of f_{n+3}, f_{n+2}, f_{n+1}, f_n
};

LTerms l_terms(int which, int n, int offset, cplx z, const CoeffFn& cf) {
  LTerms t;
  cplx z2 = z * z;
  switch (which) {
    case 1: {
      auto d2 = cf('d', n + 2, offset), d1m = cf('d', n + 1, offset - 1),
           d1 = cf('d', n + 1, offset), d0 = cf('d', n, offset), e0 = cf('e', n, offset - 2);
      if (!d2 || !d1m || !d1 || !d0 || !e0) return t;
      t.c = {cplx(1.0), -(*d2 + *d1m), *d1m * *d1 - z2, (*d0 + *e0) * z2};
      break;
    }
    case 2: {
      auto b2 = cf('b', n + 2, offset), b1 = cf('b', n + 1, offset),
           a11 = cf('a', n + 1, offset + 1), b11 = cf('b', n + 1, offset + 1),
           a12 = cf('a', n + 1, offset + 2), b0 = cf('b', n, offset), a01 = cf('a', n, offset + 1);
      if (!b2 || !b1 || !a11 || !b11 || !a12 || !b0 || !a01) return t;
      t.c = {z2, -(cplx(1.0) + *b2 * z2), *b1 + *a11 + *b11 + *a12,
             -(*b11 + *a12) * (*b0 + *a01)};
      break;
    }
    case 3: {
      auto k2 = cf('k', n + 2, offset), k1 = cf('k', n + 1, offset),
           r1m = cf('r', n + 1, offset - 1), r2 = cf('r', n + 2, offset), k0 = cf('k', n, offset),
           r0m = cf('r', n, offset - 1);
      if (!k2 || !k1 || !r1m || !r2 || !k0 || !r0m) return t;
      t.c = {cplx(1.0), -(z2 + *k2), (*k1 + *r1m + *r2 + *k2) * z2,
             -(*r2 + *k2) * (*k0 + *r0m) * z2};
      break;
    }
    case 4: {
      auto g2 = cf('g', n + 2, offset), g11 = cf('g', n + 1, offset + 1),
           g1 = cf('g', n + 1, offset), t11 = cf('t', n + 1, offset + 1);
      if (!g2 || !g11 || !g1 || !t11) return t;
      cplx zi2 = cplx(1.0) / z2;
      t.c = {cplx(1.0), -(*g2 + *g11), -(zi2 - *g11 * *g1), (*t11 + *g11) * zi2};
      break;
    }
    default:
      throw Error(errc::invalid_argument, "difference operator index must be 1..4");
  }
  t.ok = true;
  return t;
}

}  // namespace

std::optional<cplx> apply_L(int which, const std::function<cplx(int)>& seq, int n, int offset,
                            cplx z, const CoeffFn& cf) {
  LTerms t = l_terms(which, n, offset, z, cf);
  if (!t.ok) return std::nullopt;
  return t.c[0] * seq(n + 3) + t.c[1] * seq(n + 2) + t.c[2] * seq(n + 1) + t.c[3] * seq(n);
}

std::optional<double> apply_L_residual(int which, const std::function<cplx(int)>& seq, int n,
                                       int offset, cplx z, const CoeffFn& cf) {
  LTerms t = l_terms(which, n, offset, z, cf);
  if (!t.ok) return std::nullopt;
  std::array<cplx, 4> f = {seq(n + 3), seq(n + 2), seq(n + 1), seq(n)};
  cplx sum(0.0);
  double scale = 0.0;
  for (int i = 0; i < 4; ++i) {
    cplx term = t.c[static_cast<size_t>(i)] * f[static_cast<size_t>(i)];
    sum += term;
    scale = std::max(scale, std::abs(term));
  }
  return std::abs(sum) / std::max(scale, 1e-300);
}

CMatrix casorati(BiorthSystem& sys, char family, int n, cplx z) {
  CMatrix m(3, 3);
  for (int i = 0; i < 3; ++i) {
    int deg = n + i;
    switch (family) {
      case 'P':
        m(i, 0) = sys.poly_first(deg).eval(z);
        m(i, 1) = sys.poly_first(deg).eval(-z);
        m(i, 2) = assoc_hat(sys, 'P', deg, z);
        break;
      case 'Q':
        m(i, 0) = sys.poly_second(deg).eval(cplx(1.0) / (z * z));
        m(i, 1) = assoc_hat(sys, 'Q', deg, z);
        m(i, 2) = assoc_hat(sys, 'Q', deg, -z);
        break;
      case 'R':
        m(i, 0) = sys.poly_first(deg).eval(z * z);
        m(i, 1) = assoc_hat(sys, 'R', deg, z);
        m(i, 2) = assoc_hat(sys, 'R', deg, -z);
        break;
      case 'S':
        m(i, 0) = sys.poly_second(deg).eval(cplx(1.0) / z);
        m(i, 1) = sys.poly_second(deg).eval(-cplx(1.0) / z);
        m(i, 2) = assoc_hat(sys, 'S', deg, z);
        break;
      default:
        throw Error(errc::invalid_argument, "casorati family must be P,Q,R,S");
    }
  }
  return m;
}

std::optional<double> casoratian_ratio(BiorthSystem& sys, char family, int n, cplx z,
                                       const CoeffFn& cf) {
  if (n < 1) throw Error(errc::invalid_argument, "casoratian ratio anchors at degree 1");
  if (!sys.degree_ok(n + 2)) return std::nullopt;
  int offset = sys.offset();
  cplx z2 = z * z;
  cplx prod(1.0);
  for (int l = 1; l < n; ++l) {
    std::optional<cplx> step;
    switch (family) {
      case 'P': {
        auto d = cf('d', l, offset), e = cf('e', l, offset - 2);
        if (d && e) step = -(*d + *e) * z2;
        break;
      }
      case 'Q': {
        auto b1 = cf('b', l + 1, offset + 1), a1 = cf('a', l + 1, offset + 2),
             b0 = cf('b', l, offset), a0 = cf('a', l, offset + 1);
        if (b1 && a1 && b0 && a0) step = (*b1 + *a1) * (*b0 + *a0) / z2;
        break;
      }
      case 'R': {
        auto r2 = cf('r', l + 2, offset), k2 = cf('k', l + 2, offset), k0 = cf('k', l, offset),
             r0 = cf('r', l, offset - 1);
        if (r2 && k2 && k0 && r0) step = (*r2 + *k2) * (*k0 + *r0) * z2;
        break;
      }
      case 'S': {
        auto t1 = cf('t', l + 1, offset + 1), g1 = cf('g', l + 1, offset + 1);
        if (t1 && g1) step = -(*t1 + *g1) / z2;
        break;
      }
      default:
        throw Error(errc::invalid_argument, "casoratian family must be P,Q,R,S");
    }
    if (!step) return std::nullopt;
    prod *= *step;
  }
  CMatrix m1 = casorati(sys, family, 1, z);
  CMatrix mn = casorati(sys, family, n, z);
  cplx d1 = LuFactor(m1).det();
  cplx dn = LuFactor(mn).det();
  // Scale by the largest term participating in either determinant
  // expansion (Hadamard row product): the polynomial columns grow fast at
  // large offsets and the raw determinants cancel accordingly.
  auto hadamard = [](const CMatrix& m) {
    double p = 1.0;
    for (int i = 0; i < m.rows(); ++i) {
      double s = 0.0;
      for (int j = 0; j < m.cols(); ++j) s += std::norm(m(i, j));
      p *= std::sqrt(s);
    }
    return p;
  };
  double scale = std::max({1.0, std::abs(dn), std::abs(prod * d1), hadamard(mn),
                           std::abs(prod) * hadamard(m1)});
  return std::abs(dn - prod * d1) / scale;
}

cplx casorati_zero_closed(BiorthSystem& sys, char family, cplx z) {
  int r = sys.offset();
  const Weight& w = sys.weight();
  switch (family) {
    case 'P':
      return -2.0 * z * (w.moment(r - 2) + w.moment(r) * z * z);
    case 'S':
      return 2.0 / (z * z * z) * (w.moment(r) + z * z * w.moment(r + 2));
    case 'Q': {
      CMatrix m(3, 3);
      for (int c = 0; c < 3; ++c) {
        m(0, c) = std::pow(z, -2 * c);
        m(1, c) = F2(w, r + 2 * c, z);
        m(2, c) = F2(w, r + 2 * c, -z);
      }
      return LuFactor(m).det();
    }
    case 'R': {
      CMatrix m(3, 3);
      for (int c = 0; c < 3; ++c) {
        m(0, c) = std::pow(z, 2 * c);
        m(1, c) = F2(w, r - 2 * c, z);
        m(2, c) = F2(w, r - 2 * c, -z);
      }
      return LuFactor(m).det();
    }
    default:
      throw Error(errc::invalid_argument, "closed Casoratian family must be P,Q,R,S");
  }
}

std::optional<double> first_order_casorati_step(BiorthSystem& sys, char family, int n, cplx z,
                                                const CoeffFn& cf) {
  if (n < 1) throw Error(errc::invalid_argument, "Casorati transfer step needs n >= 1");
  if (!sys.degree_ok(n + 3)) return std::nullopt;
  int which = family == 'P' ? 1 : family == 'Q' ? 2 : family == 'R' ? 3 : 4;
  LTerms t = l_terms(which, n, sys.offset(), z, cf);
  if (!t.ok) return std::nullopt;
  // Companion form: last row moves f_{n+3} to the right-hand side.
  CMatrix transfer(3, 3);
  transfer(0, 1) = cplx(1.0);
  transfer(1, 2) = cplx(1.0);
  transfer(2, 0) = -t.c[3] / t.c[0];
  transfer(2, 1) = -t.c[2] / t.c[0];
  transfer(2, 2) = -t.c[1] / t.c[0];
  CMatrix lhs = casorati(sys, family, n + 1, z);
  CMatrix rhs = transfer * casorati(sys, family, n, z);
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      worst = std::max(worst, std::abs(lhs(i, j) - rhs(i, j)));
      scale = std::max(scale, std::abs(lhs(i, j)));
    }
  return worst / std::max(scale, 1e-300);
}

}  // namespace bicirc
