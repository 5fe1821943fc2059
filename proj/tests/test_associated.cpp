/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <cmath>

#include "bicirc/associated.hpp"
#include "bicirc/expweight.hpp"
#include "test_helpers.hpp"

using namespace bicirc;
using bicirc_test::cdist;

namespace {
constexpr double kPi = 3.14159265358979323846;

cplx f2_quadrature(const Weight& w, int r, cplx z, int m = 2048) {
  cplx acc(0.0);
  for (int j = 0; j < m; ++j) {
    cplx zeta = std::polar(1.0, 2.0 * kPi * j / m);
    acc += w.eval(zeta) * std::pow(zeta, -r) * (zeta + z) / (zeta - z);
  }
  return acc / static_cast<double>(m);
}
}  // namespace

TEST_CASE("F2 series examples for the exp weight") {
  Weight w = Weight::exp_linear();
  CHECK(cdist(F2(w, 0, std::polar(1.6, 0.5)), cplx(-1.0)) <= 1e-14);
  // inside branch at small z approaches 2 e^z - 1
  cplx z(0.01, 0.0);
  CHECK(cdist(F2(w, 0, z), 2.0 * std::exp(z) - 1.0) <= 1e-14);
  Weight one = Weight::fourier({{0, cplx(1.0)}});
  CHECK(cdist(F2(one, 0, cplx(0.3)), cplx(1.0)) == 0.0);
  CHECK(cdist(F2(one, 0, cplx(1.7)), cplx(-1.0)) == 0.0);
  CHECK_THROWS_AS(F2(w, 0, std::polar(1.0005, 0.3)), AnnulusExcluded);
}

TEST_CASE("F2 against direct quadrature") {
  for (auto w : {Weight::exp_linear(), bicirc_test::rand_weight()})
    for (int r = 0; r <= 2; ++r)
      for (cplx z : test_grid(false)) {
        cplx got = F2(w, r, z);
        cplx want = f2_quadrature(w, r, z);
        CHECK(cdist(got, want) <= 1e-10 * std::max(1.0, std::abs(want)));
      }
}

TEST_CASE("hat functions at degree zero reduce to the transforms") {
  Weight w = bicirc_test::rand_weight();
  BiorthSystem d(w, StructKind::TwoJK, 1);
  BiorthSystem e(w, StructKind::JTwoK, 1);
  for (cplx z : {std::polar(1.5, 0.8), std::polar(0.5, 2.1)}) {
    CHECK(cdist(assoc_hat(d, 'Q', 0, z), F2(w, 1, z)) <= 1e-13);
    CHECK(cdist(assoc_hat(d, 'P', 0, z), F1(w, 1, z)) <= 1e-13);
    CHECK(cdist(assoc_hat(e, 'R', 0, z), F2(w, 1, z)) <= 1e-13);
    CHECK(cdist(assoc_hat(e, 'S', 0, z), F1(w, 1, z)) <= 1e-13);
  }
}

TEST_CASE("even symmetrization identities") {
  Weight w = bicirc_test::rand_weight();
  BiorthSystem d(w, StructKind::TwoJK, 2);
  BiorthSystem e(w, StructKind::JTwoK, 1);
  cplx z = std::polar(1.5, 0.8);
  CHECK(cdist(assoc_hat(d, 'P', 2, z),
              0.5 * (assoc_hat(d, 'p', 2, z) + assoc_hat(d, 'p', 2, -z))) <= 1e-12);
  CHECK(cdist(assoc_hat(e, 'S', 2, z),
              0.5 * (assoc_hat(e, 's', 2, z) + assoc_hat(e, 's', 2, -z))) <= 1e-12);
  CHECK(cdist(assoc_hat(d, 'P', 2, z), assoc_hat(d, 'P', 2, -z)) <= 1e-12);
  CHECK(cdist(F1(w, 1, z), F1(w, 1, -z)) <= 1e-13);
}

TEST_CASE("check functions vanish at degree zero") {
  Weight w = bicirc_test::rand_weight();
  BiorthSystem d(w, StructKind::TwoJK, 1);
  BiorthSystem e(w, StructKind::JTwoK, 1);
  for (cplx z : {std::polar(1.5, 0.8), std::polar(0.5, 2.1)}) {
    CHECK(std::abs(assoc_check(d, 'P', 0, z)) <= 1e-13);
    CHECK(std::abs(assoc_check(d, 'Q', 0, z)) <= 1e-13);
    CHECK(std::abs(assoc_check(e, 'R', 0, z)) <= 1e-13);
    CHECK(std::abs(assoc_check(e, 'S', 0, z)) <= 1e-13);
  }
  // degree 1 decomposition: the check is exactly hat minus transform * poly
  cplx z = std::polar(1.5, 0.8);
  cplx lhs = assoc_check(d, 'P', 1, z);
  cplx rhs = assoc_hat(d, 'P', 1, z) - F1(w, 1, z) * d.poly_first(1).eval(z);
  CHECK(cdist(lhs, rhs) == 0.0);
}

TEST_CASE("difference operators annihilate the solution sets for n >= 1") {
  Weight wf = bicirc_test::rand_weight();
  SystemFamily d(wf, StructKind::TwoJK), e(wf, StructKind::JTwoK);
  CoeffFn cf = generic_coeffs(&d, &e);
  int offset = 2;
  BiorthSystem& ds = d.at(offset);
  BiorthSystem& es = e.at(offset);
  for (int n : {1, 2})
    for (cplx z : {std::polar(1.5, 0.8), std::polar(0.5, 2.3)}) {
      auto p = apply_L_residual(1, [&](int m) { return ds.poly_first(m).eval(z); }, n, offset, z, cf);
      auto pm = apply_L_residual(1, [&](int m) { return ds.poly_first(m).eval(-z); }, n, offset, z, cf);
      auto ph = apply_L_residual(1, [&](int m) { return assoc_hat(ds, 'P', m, z); }, n, offset, z, cf);
      REQUIRE(p.has_value());
      CHECK(*p <= 1e-9);
      CHECK(*pm <= 1e-9);
      CHECK(*ph <= 1e-9);
      auto q = apply_L_residual(
          2, [&](int m) { return ds.poly_second(m).eval(cplx(1.0) / (z * z)); }, n, offset, z, cf);
      auto qh = apply_L_residual(2, [&](int m) { return assoc_hat(ds, 'Q', m, z); }, n, offset, z, cf);
      CHECK(*q <= 1e-9);
      CHECK(*qh <= 1e-9);
      auto rr = apply_L_residual(3, [&](int m) { return es.poly_first(m).eval(z * z); }, n, offset, z, cf);
      auto rh = apply_L_residual(3, [&](int m) { return assoc_hat(es, 'R', m, z); }, n, offset, z, cf);
      CHECK(*rr <= 1e-9);
      CHECK(*rh <= 1e-9);
      auto ss = apply_L_residual(
          4, [&](int m) { return es.poly_second(m).eval(cplx(1.0) / z); }, n, offset, z, cf);
      auto sh = apply_L_residual(4, [&](int m) { return assoc_hat(es, 'S', m, z); }, n, offset, z, cf);
      CHECK(*ss <= 1e-9);
      CHECK(*sh <= 1e-9);
    }
  // negative control: the constant sequence is not a solution
  cplx z = std::polar(1.5, 0.8);
  auto nc = apply_L_residual(1, [](int) { return cplx(1.0); }, 1, offset, z, cf);
  REQUIRE(nc.has_value());
  CHECK(*nc > 1e-3);
  // exp weight through the closed coefficients, including offsets the
  // determinant ratios cannot reach
  Weight we = Weight::exp_linear();
  BiorthSystem dx(we, StructKind::TwoJK, 1);
  CoeffFn ccf = expweight::closed_coeffs();
  auto hx = apply_L_residual(1, [&](int m) { return assoc_hat(dx, 'P', m, z); }, 1, 1, z, ccf);
  REQUIRE(hx.has_value());
  CHECK(*hx <= 1e-9);
}

TEST_CASE("Casorati matrices, closed degree-0 forms") {
  Weight we = Weight::exp_linear();
  BiorthSystem d0(we, StructKind::TwoJK, 0);
  cplx z = std::polar(1.5, 0.8);
  // det P_0 = -2z(w_{r-2} + w_r z^2) = -2z^3 at r=0 for e^z
  cplx got = LuFactor(casorati(d0, 'P', 0, z)).det();
  CHECK(cdist(got, -2.0 * z * z * z) <= 1e-12 * std::abs(got));
  CHECK(cdist(got, casorati_zero_closed(d0, 'P', z)) <= 1e-12 * std::abs(got));
  Weight wf = bicirc_test::rand_weight();
  BiorthSystem d(wf, StructKind::TwoJK, 1);
  BiorthSystem e(wf, StructKind::JTwoK, 1);
  for (char fam : {'P', 'Q'}) {
    cplx a = LuFactor(casorati(d, fam, 0, z)).det();
    cplx b = casorati_zero_closed(d, fam, z);
    CHECK(cdist(a, b) <= 1e-10 * std::max(1.0, std::abs(b)));
  }
  for (char fam : {'R', 'S'}) {
    cplx a = LuFactor(casorati(e, fam, 0, z)).det();
    cplx b = casorati_zero_closed(e, fam, z);
    CHECK(cdist(a, b) <= 1e-10 * std::max(1.0, std::abs(b)));
  }
}

TEST_CASE("Abel ratios anchored at degree one") {
  Weight wf = bicirc_test::rand_weight();
  SystemFamily d(wf, StructKind::TwoJK), e(wf, StructKind::JTwoK);
  CoeffFn cf = generic_coeffs(&d, &e);
  cplx z = std::polar(1.5, 0.8);
  for (char fam : {'P', 'Q'})
    for (int n : {1, 2, 3}) {
      auto r = casoratian_ratio(d.at(2), fam, n, z, cf);
      REQUIRE(r.has_value());
      CHECK(*r <= 1e-8);
    }
  for (char fam : {'R', 'S'})
    for (int n : {1, 2, 3}) {
      auto r = casoratian_ratio(e.at(2), fam, n, z, cf);
      REQUIRE(r.has_value());
      CHECK(*r <= 1e-8);
    }
  // exp weight, closed coefficients reach r = 1 (spec example point |z|=1.4)
  Weight we = Weight::exp_linear();
  BiorthSystem dx(we, StructKind::TwoJK, 1);
  auto r = casoratian_ratio(dx, 'P', 2, std::polar(1.4, 0.6), expweight::closed_coeffs());
  REQUIRE(r.has_value());
  CHECK(*r <= 1e-8);
}

TEST_CASE("first-order Casorati transfer step") {
  Weight wf = bicirc_test::rand_weight();
  SystemFamily d(wf, StructKind::TwoJK), e(wf, StructKind::JTwoK);
  CoeffFn cf = generic_coeffs(&d, &e);
  cplx z = std::polar(1.5, 0.85);
  for (char fam : {'P', 'Q'})
    for (int n : {1, 2}) {
      auto r = first_order_casorati_step(d.at(1), fam, n, z, cf);
      REQUIRE(r.has_value());
      CHECK(*r <= 1e-9);
    }
  for (char fam : {'R', 'S'})
    for (int n : {1, 2}) {
      auto r = first_order_casorati_step(e.at(2), fam, n, z, cf);
      REQUIRE(r.has_value());
      CHECK(*r <= 1e-9);
    }
  // exp weight at r=0 through the closed coefficients
  Weight we = Weight::exp_linear();
  BiorthSystem dx(we, StructKind::TwoJK, 0);
  auto r = first_order_casorati_step(dx, 'P', 1, std::polar(1.5, 0.5),
                                     expweight::closed_coeffs());
  REQUIRE(r.has_value());
  CHECK(*r <= 1e-9);
}
