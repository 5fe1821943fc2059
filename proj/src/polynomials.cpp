/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "bicirc/polynomials.hpp"

#include <cmath>

namespace bicirc {

namespace {

int entry_index(StructKind kind, int offset, int j, int k) {
  return kind == StructKind::TwoJK ? offset + 2 * j - k : offset + j - 2 * k;
}

}  // namespace

BiorthSystem::BiorthSystem(Weight w, StructKind kind, int offset)
    : weight_(std::move(w)), kind_(kind), offset_(offset) {}

cplx BiorthSystem::moment(int k) {
  auto it = moments_.find(k);
  if (it != moments_.end()) return it->second;
  cplx v = weight_.moment(k);
  moments_.emplace(k, v);
  return v;
}

cplx BiorthSystem::det(int n) {
  if (n < 0) throw Error(errc::invalid_argument, "determinant degree must be >= 0");
  if (static_cast<size_t>(n) < dets_.size() && dets_[static_cast<size_t>(n)])
    return *dets_[static_cast<size_t>(n)];
  if (dets_.size() <= static_cast<size_t>(n)) {
    dets_.resize(static_cast<size_t>(n) + 1);
    lu_.resize(static_cast<size_t>(n) + 1);
  }
  if (n == 0) {
    dets_[0] = cplx(1.0);
    return cplx(1.0);
  }
  CMatrix a(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) a(j, k) = moment(entry_index(kind_, offset_, j, k));
  lu_[static_cast<size_t>(n)] = std::make_unique<LuFactor>(a);
  dets_[static_cast<size_t>(n)] = lu_[static_cast<size_t>(n)]->det();
  return *dets_[static_cast<size_t>(n)];
}

bool BiorthSystem::det_vanishing(int n) {
  det(n);
  if (n == 0) return false;
  return lu_[static_cast<size_t>(n)]->vanishing();
}

bool BiorthSystem::degree_ok(int n) {
  for (int m = 1; m <= n; ++m)
    if (det_vanishing(m)) return false;
  return true;
}

cplx BiorthSystem::norm(int n) {
  if (det_vanishing(n)) throw SingularDeterminant(n, offset_);
  return det(n + 1) / det(n);
}

const ComplexPoly& BiorthSystem::poly(int n, bool second) {
  auto& cache = second ? second_ : first_;
  if (static_cast<size_t>(n) < cache.size() && cache[static_cast<size_t>(n)])
    return *cache[static_cast<size_t>(n)];
  if (cache.size() <= static_cast<size_t>(n)) cache.resize(static_cast<size_t>(n) + 1);
  if (n == 0) {
    cache[0] = ComplexPoly::one();
    return *cache[0];
  }
  if (det_vanishing(n)) throw SingularDeterminant(n, offset_);
  std::vector<cplx> rhs(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    int idx;
    if (kind_ == StructKind::TwoJK)
      idx = second ? offset_ + 2 * n - m : offset_ + 2 * m - n;
    else
      idx = second ? offset_ + n - 2 * m : offset_ + m - 2 * n;
    rhs[static_cast<size_t>(m)] = -moment(idx);
  }
  const LuFactor& f = *lu_[static_cast<size_t>(n)];
  std::vector<cplx> c = second ? f.solve_transpose(rhs) : f.solve(rhs);
  c.push_back(cplx(1.0));  // monic
  cache[static_cast<size_t>(n)] = ComplexPoly(std::move(c));
  return *cache[static_cast<size_t>(n)];
}

const ComplexPoly& BiorthSystem::poly_first(int n) { return poly(n, false); }
const ComplexPoly& BiorthSystem::poly_second(int n) { return poly(n, true); }

cplx BiorthSystem::pair(const LaurentPoly& f) {
  cplx acc(0.0);
  for (int e = f.lo(); e <= f.hi(); ++e) {
    cplx c = f.coeff(e);
    if (c != cplx(0.0)) acc += c * moment(-e);
  }
  return acc;
}

const ComplexPoly& polyP(BiorthSystem& sys, int n) {
  if (sys.kind() != StructKind::TwoJK)
    throw Error(errc::invalid_argument, "P lives in a TwoJK system");
  return sys.poly_first(n);
}
const ComplexPoly& polyQ(BiorthSystem& sys, int n) {
  if (sys.kind() != StructKind::TwoJK)
    throw Error(errc::invalid_argument, "Q lives in a TwoJK system");
  return sys.poly_second(n);
}
const ComplexPoly& polyR(BiorthSystem& sys, int n) {
  if (sys.kind() != StructKind::JTwoK)
    throw Error(errc::invalid_argument, "R lives in a JTwoK system");
  return sys.poly_first(n);
}
const ComplexPoly& polyS(BiorthSystem& sys, int n) {
  if (sys.kind() != StructKind::JTwoK)
    throw Error(errc::invalid_argument, "S lives in a JTwoK system");
  return sys.poly_second(n);
}

BiorthSystem& SystemFamily::at(int offset) {
  auto it = systems_.find(offset);
  if (it == systems_.end())
    it = systems_.emplace(offset, std::make_unique<BiorthSystem>(weight_, kind_, offset)).first;
  return *it->second;
}

double biorth_residual(BiorthSystem& sys, int m, int n) {
  int r = sys.offset();
  LaurentPoly integrand;
  if (sys.kind() == StructKind::TwoJK) {
    integrand = LaurentPoly::from_poly(sys.poly_first(m)) *
                LaurentPoly::from_poly(sys.poly_second(n), -2, -r);
  } else {
    integrand = LaurentPoly::from_poly(sys.poly_first(m), 2) *
                LaurentPoly::from_poly(sys.poly_second(n), -1, -r);
  }
  cplx v = sys.pair(integrand);
  cplx target = (m == n) ? sys.norm(n) : cplx(0.0);
  return std::abs(v - target) / std::max(1.0, std::abs(sys.norm(std::min(m, n))));
}

cplx tail(SystemFamily& fam, char family, int n, int offset) {
  BiorthSystem& sys = fam.at(offset);
  cplx value;
  int sibling;
  bool second;
  switch (family) {
    case 'P':
      second = false;
      sibling = offset - 1;
      break;
    case 'Q':
      second = true;
      sibling = offset + 2;
      break;
    case 'R':
      second = false;
      sibling = offset - 2;
      break;
    case 'S':
      second = true;
      sibling = offset + 1;
      break;
    default:
      throw Error(errc::invalid_argument, "tail family must be P, Q, R or S");
  }
  value = (second ? sys.poly_second(n) : sys.poly_first(n)).coeff(0);
  cplx ratio = fam.at(sibling).det(n) / sys.det(n);
  cplx via_det = std::pow(-1.0, n) * ratio;
  if (std::abs(value - via_det) > 1e-10 * std::max(1.0, std::abs(value)))
    throw Error(errc::internal, "tail determinant-ratio cross-check failed");
  return value;
}

LduResult ldu(BiorthSystem& sys, int n) {
  if (!sys.degree_ok(n)) throw SingularDeterminant(n, sys.offset());
  LduResult out{CMatrix(n + 1, n + 1), {}, CMatrix(n + 1, n + 1), 0.0};
  for (int m = 0; m <= n; ++m) {
    const auto& qc = sys.poly_second(m).coeffs();
    const auto& pc = sys.poly_first(m).coeffs();
    for (int l = 0; l <= m; ++l) {
      out.lower(m, l) = qc[static_cast<size_t>(l)];
      out.upper_t(l, m) = pc[static_cast<size_t>(l)];
    }
    out.norms.push_back(sys.norm(m));
  }
  CMatrix mm(n + 1, n + 1);
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= n; ++k)
      mm(j, k) = sys.moment(sys.kind() == StructKind::TwoJK ? sys.offset() + 2 * j - k
                                                            : sys.offset() + j - 2 * k);
  CMatrix prod = out.lower * mm * out.upper_t;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      cplx want = (i == j) ? out.norms[static_cast<size_t>(i)] : cplx(0.0);
      out.residual = std::max(out.residual, std::abs(prod(i, j) - want));
    }
  return out;
}

namespace {

double grid_residual_scaled(const std::vector<cplx>& lhs, const std::vector<cplx>& rhs) {
  double worst = 0.0;
  for (size_t i = 0; i < lhs.size(); ++i) {
    double scale = std::max({1.0, std::abs(lhs[i]), std::abs(rhs[i])});
    worst = std::max(worst, std::abs(lhs[i] - rhs[i]) / scale);
  }
  return worst;
}

}  // namespace

double duality_S_P(SystemFamily& twojk, SystemFamily& jtwok, int n, int s,
                   std::span<const cplx> grid) {
  BiorthSystem& esys = jtwok.at(s);
  BiorthSystem& dsys = twojk.at(s - n + 2);
  if (esys.det_vanishing(n)) throw SingularDeterminant(n, s);
  cplx factor = std::pow(-1.0, n) * dsys.det(n) / esys.det(n);
  ComplexPoly sstar = esys.poly_second(n).reciprocal();
  const ComplexPoly& p = dsys.poly_first(n);
  std::vector<cplx> lhs, rhs;
  for (cplx z : grid) {
    lhs.push_back(sstar.eval(z));
    rhs.push_back(factor * p.eval(z));
  }
  return grid_residual_scaled(lhs, rhs);
}

double duality_R_Q(SystemFamily& twojk, SystemFamily& jtwok, int n, int s,
                   std::span<const cplx> grid) {
  BiorthSystem& esys = jtwok.at(s);
  BiorthSystem& dsys = twojk.at(s - n - 1);
  if (esys.det_vanishing(n)) throw SingularDeterminant(n, s);
  cplx factor = std::pow(-1.0, n) * dsys.det(n) / esys.det(n);
  const ComplexPoly& rpol = esys.poly_first(n);
  ComplexPoly qstar = dsys.poly_second(n).reciprocal();
  std::vector<cplx> lhs, rhs;
  for (cplx z : grid) {
    lhs.push_back(rpol.eval(z));
    rhs.push_back(factor * qstar.eval(z));
  }
  return grid_residual_scaled(lhs, rhs);
}

std::vector<cplx> test_grid(bool with_zero) {
  // Moduli 0.5 and 1.5, four phases off the axes.
  static const double phases[4] = {0.35, 1.85, 3.45, 5.05};
  std::vector<cplx> g;
  for (double rho : {0.5, 1.5})
    for (double th : phases) g.push_back(std::polar(rho, th));
  if (with_zero) g.push_back(cplx(0.0));
  return g;
}

}  // namespace bicirc
