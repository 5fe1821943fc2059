/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "bicirc/determinants.hpp"
#include "bicirc/weights.hpp"

namespace bicirc {

/// One bi-orthogonal system: a weight, a structure kind and an offset.
/// TwoJK systems carry the pair (P, Q) with norms h_n; JTwoK systems carry
/// (R, S) with norms g_n. Degrees are cached monotonically; a vanishing
/// determinant at degree n makes that degree (and the ones above) fail
/// with SingularDeterminant while lower degrees stay valid.
class BiorthSystem {
 public:
  BiorthSystem(Weight w, StructKind kind, int offset);

  const Weight& weight() const { return weight_; }
  StructKind kind() const { return kind_; }
  int offset() const { return offset_; }

  cplx moment(int k);

  /// D_n^(r) (TwoJK) or E_n^(s) (JTwoK); n = 0 gives 1.
  cplx det(int n);
  /// True when the degree-n determinant is numerically vanishing: its LU
  /// hit an exact zero or a pivot collapsed by cancellation (<= 1e-13 of
  /// the magnitudes feeding it). Honest sub-eps determinants of graded
  /// moment matrices stay non-vanishing.
  bool det_vanishing(int n);
  /// All determinants up to degree n pass the vanishing threshold.
  bool degree_ok(int n);

  /// h_n = D_{n+1}/D_n (or the g analog). Throws SingularDeterminant when
  /// the denominator vanishes; a vanishing numerator is a legal zero norm.
  cplx norm(int n);

  /// Monic first-kind polynomial (P or R) of degree n, by LU solve of the
  /// orthogonality system. Throws SingularDeterminant if det(n) vanishes.
  const ComplexPoly& poly_first(int n);
  /// Monic second-kind polynomial (Q or S) of degree n.
  const ComplexPoly& poly_second(int n);

  /// Exact circle integral of a Laurent polynomial against this weight.
  cplx pair(const LaurentPoly& f);

 private:
  const ComplexPoly& poly(int n, bool second);

  Weight weight_;
  StructKind kind_;
  int offset_;
  std::map<int, cplx> moments_;
  std::vector<std::optional<cplx>> dets_;
  std::vector<std::optional<ComplexPoly>> first_, second_;
  std::vector<std::unique_ptr<LuFactor>> lu_;
};

/// Named accessors matching the four families.
const ComplexPoly& polyP(BiorthSystem& sys, int n);
const ComplexPoly& polyQ(BiorthSystem& sys, int n);
const ComplexPoly& polyR(BiorthSystem& sys, int n);
const ComplexPoly& polyS(BiorthSystem& sys, int n);

/// Lazily grown collection of systems sharing a weight and kind, indexed by
/// offset. The recurrence and duality checks walk offsets through this.
class SystemFamily {
 public:
  SystemFamily(Weight w, StructKind kind) : weight_(std::move(w)), kind_(kind) {}
  BiorthSystem& at(int offset);
  const Weight& weight() const { return weight_; }
  StructKind kind() const { return kind_; }

 private:
  Weight weight_;
  StructKind kind_;
  std::map<int, std::unique_ptr<BiorthSystem>> systems_;
};

/// Bi-orthogonality residual |<F_m, G_n> - norm_n delta_mn| scaled by
/// max(1, |norm_n|), evaluated by exact moment pairing.
double biorth_residual(BiorthSystem& sys, int m, int n);

/// Tail F_n(0); computed from the polynomial and cross-checked against the
/// determinant-ratio form (relative 1e-10) using the sibling offset.
cplx tail(SystemFamily& fam, char family, int n, int offset);

/// LDU data for the (n+1)x(n+1) moment matrix: rows of `lower` are the
/// second-kind coefficient rows, `upper_t` is the transposed first-kind
/// coefficient matrix, and lower * moments * upper_t should equal
/// diag(norms). `residual` is the max entrywise defect of that product.
struct LduResult {
  CMatrix lower;
  std::vector<cplx> norms;
  CMatrix upper_t;
  double residual;
};
LduResult ldu(BiorthSystem& sys, int n);

/// Max-over-grid residuals of the cross-structure dualities
///   S*_n(z;s) = (-1)^n D_n^(s-n+2)/E_n^(s) P_n(z;s-n+2)
///   R_n(z;s)  = (-1)^n D_n^(s-n-1)/E_n^(s) Q*_n(z;s-n-1).
double duality_S_P(SystemFamily& twojk, SystemFamily& jtwok, int n, int s,
                   std::span<const cplx> grid);
double duality_R_Q(SystemFamily& twojk, SystemFamily& jtwok, int n, int s,
                   std::span<const cplx> grid);

/// The standard off-circle test grid: moduli 0.5 and 1.5, four phases each,
/// plus z = 0 when `with_zero` is set (nine points).
std::vector<cplx> test_grid(bool with_zero = true);

}  // namespace bicirc
