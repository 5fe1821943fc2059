/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <cmath>

#include "bicirc/expweight.hpp"
#include "bicirc/recurrences.hpp"
#include "test_helpers.hpp"

using namespace bicirc;
using bicirc_test::cdist;

TEST_CASE("exp-weight recurrence coefficients") {
  SystemFamily fam(Weight::exp_linear(), StructKind::TwoJK);
  CoeffFn cf = generic_coeffs(&fam, nullptr);
  CHECK(cdist(*cf('d', 2, 1), cplx(-5.0)) <= 1e-12);
  CHECK(cdist(*cf('e', 3, 0), cplx(0.0)) <= 1e-12);
  CHECK(cdist(*cf('b', 0, 0), cplx(-0.5)) <= 1e-14);
  CHECK(cdist(*cf('a', 1, 2), cplx(1.0 / 60.0)) <= 1e-14);
  // delta at r=0 is a 0/0 determinant ratio on e^z for n >= 1
  CHECK(!cf('d', 1, 0).has_value());
  CHECK(cf('d', 0, 0).has_value());
  RecCoeffs c = coeffs(fam, 2, 1);
  CHECK(cdist(c.c0, cplx(-5.0)) <= 1e-12);
  CHECK(cdist(c.c1, cplx(1.0)) <= 1e-12);
  CHECK_THROWS_AS(coeffs(fam, 2, 0), SingularDeterminant);
}

TEST_CASE("coefficient redundancies") {
  Weight wf = bicirc_test::rand_weight();
  SystemFamily d(wf, StructKind::TwoJK), e(wf, StructKind::JTwoK);
  for (int n = 0; n <= 5; ++n)
    for (int offset = 0; offset <= 4; ++offset) {
      auto r1 = coeff_redundancy_residual(d, n, offset);
      auto r2 = coeff_redundancy_residual(e, n, offset);
      REQUIRE(r1.has_value());
      REQUIRE(r2.has_value());
      CHECK(*r1 <= 1e-10);
      CHECK(*r2 <= 1e-10);
    }
}

TEST_CASE("pure-degree recurrences") {
  Weight wf = bicirc_test::rand_weight();
  SystemFamily d(wf, StructKind::TwoJK), e(wf, StructKind::JTwoK);
  CoeffFn cfd = generic_coeffs(&d, nullptr), cfe = generic_coeffs(nullptr, &e);
  auto grid = test_grid(true);
  for (char fam : {'P', 'Q'})
    for (int n = 0; n <= 2; ++n)
      for (cplx z : grid) {
        auto r = degree_residual(d, fam, n, 2, z, cfd);
        REQUIRE(r.has_value());
        CHECK(*r <= 1e-9);
      }
  for (char fam : {'R', 'S'})
    for (int n = 0; n <= 2; ++n)
      for (cplx z : grid) {
        auto r = degree_residual(e, fam, n, 2, z, cfe);
        REQUIRE(r.has_value());
        CHECK(*r <= 1e-9);
      }
  // exp weight where the determinant ratios exist
  SystemFamily de(Weight::exp_linear(), StructKind::TwoJK);
  CoeffFn cfx = generic_coeffs(&de, nullptr);
  auto rx = degree_residual(de, 'P', 1, 3, cplx(0.7, 0.2), cfx);
  REQUIRE(rx.has_value());
  CHECK(*rx <= 1e-10);
  // not applicable at r=0 through determinant ratios (vanishing dets)
  CHECK(!degree_residual(de, 'P', 1, 0, cplx(0.7, 0.2), cfx).has_value());
  // ... but the closed-coefficient route covers r=0, matching the
  // specialized coefficients (4n+2r+5), (2n+r+1)(2n+r+2), (2n+2)
  auto rc = degree_residual(de, 'P', 1, 0, cplx(0.7, 0.2), expweight::closed_coeffs());
  REQUIRE(rc.has_value());
  CHECK(*rc <= 1e-10);
}

TEST_CASE("pure-offset recurrences") {
  Weight wf = bicirc_test::rand_weight();
  SystemFamily d(wf, StructKind::TwoJK), e(wf, StructKind::JTwoK);
  CoeffFn cfd = generic_coeffs(&d, nullptr), cfe = generic_coeffs(nullptr, &e);
  auto grid = test_grid(true);
  for (int n = 0; n <= 3; ++n)
    for (cplx z : grid) {
      for (char fam : {'P', 'Q'}) {
        auto r = offset_residual(d, fam, n, 1, z, cfd);
        REQUIRE(r.has_value());
        CHECK(*r <= 1e-9);
      }
      for (char fam : {'R', 'S'}) {
        auto r = offset_residual(e, fam, n, 1, z, cfe);
        REQUIRE(r.has_value());
        CHECK(*r <= 1e-9);
      }
    }
  SystemFamily de(Weight::exp_linear(), StructKind::TwoJK);
  CoeffFn cfx = generic_coeffs(&de, nullptr);
  auto r = offset_residual(de, 'P', 2, 0, cplx(1.1), cfx);
  REQUIRE(r.has_value());
  CHECK(*r <= 1e-10);
  // n = 0: all four terms cancel analytically
  auto r0 = offset_residual(de, 'P', 0, 1, cplx(0.8, 0.4), cfx);
  REQUIRE(r0.has_value());
  CHECK(*r0 <= 1e-12);
  // the exp-weight specialized Q* offset recurrence via closed coefficients
  auto rq = offset_residual(de, 'Q', 2, 0, cplx(0.8, 0.4), expweight::closed_coeffs());
  REQUIRE(rq.has_value());
  CHECK(*rq <= 1e-10);
}

TEST_CASE("first-order shift relations") {
  Weight we = Weight::exp_linear();
  SystemFamily d(we, StructKind::TwoJK), e(we, StructKind::JTwoK);
  CoeffFn cf = generic_coeffs(&d, &e);
  auto rs = first_order_residuals(d, e, 1, 1, cplx(0.5), cf);
  // on e^z at offset 1 the P/Q relations apply; check each applicable one
  int applicable = 0;
  for (auto& r : rs)
    if (r) {
      ++applicable;
      CHECK(*r <= 1e-10);
    }
  CHECK(applicable >= 2);
  Weight wf = bicirc_test::rand_weight();
  SystemFamily df(wf, StructKind::TwoJK), ef(wf, StructKind::JTwoK);
  CoeffFn cff = generic_coeffs(&df, &ef);
  for (int n = 0; n <= 2; ++n) {
    auto rr = first_order_residuals(df, ef, n, 2, cplx(0.5, 0.3), cff);
    for (auto& r : rr) {
      REQUIRE(r.has_value());
      CHECK(*r <= 1e-9);
    }
  }
  // z = 0 reduces the first relation to the tail recurrence
  auto r0 = first_order_residuals(df, ef, 2, 2, cplx(0.0), cff);
  REQUIRE(r0[0].has_value());
  CHECK(*r0[0] <= 1e-10);
}

TEST_CASE("mixed recurrences across the two structures") {
  Weight wf = bicirc_test::rand_weight();
  SystemFamily d(wf, StructKind::TwoJK), e(wf, StructKind::JTwoK);
  for (int n = 0; n <= 3; ++n)
    for (cplx z : test_grid(true)) {
      auto rs = mixed_residuals(d, e, n, 2, z);
      for (auto& r : rs) {
        REQUIRE(r.has_value());
        CHECK(*r <= 1e-9);
      }
    }
  // exp weight at an applicable offset
  Weight we = Weight::exp_linear();
  SystemFamily dx(we, StructKind::TwoJK), ex(we, StructKind::JTwoK);
  auto rs = mixed_residuals(dx, ex, 1, 2, cplx(0.6, 0.3));
  int applicable = 0;
  for (auto& r : rs)
    if (r) {
      ++applicable;
      CHECK(*r <= 1e-10);
    }
  CHECK(applicable >= 4);
}

TEST_CASE("bilinear kernels-of-P and kernels-of-S") {
  Weight we = Weight::exp_linear();
  SystemFamily d(we, StructKind::TwoJK), e(we, StructKind::JTwoK);
  auto r0 = bilinear_Q_from_P(d, 0, 0, cplx(0.9, 0.1));
  REQUIRE(r0.has_value());
  CHECK(*r0 <= 1e-12);
  auto r1 = bilinear_Q_from_P(d, 1, 0, cplx(0.8));
  REQUIRE(r1.has_value());
  CHECK(*r1 <= 1e-10);
  auto r2 = bilinear_Q_from_P(d, 2, 1, cplx(1.3, 0.1));
  REQUIRE(r2.has_value());
  CHECK(*r2 <= 1e-10);
  // the S-side needs offsets with nonvanishing E determinants on e^z
  auto r3 = bilinear_R_from_S(e, 2, 6, cplx(0.8));
  REQUIRE(r3.has_value());
  CHECK(*r3 <= 1e-10);
  CHECK(!bilinear_R_from_S(e, 2, 0, cplx(0.8)).has_value());
  Weight wf = bicirc_test::rand_weight();
  SystemFamily df(wf, StructKind::TwoJK), ef(wf, StructKind::JTwoK);
  for (int n = 0; n <= 3; ++n) {
    auto a = bilinear_Q_from_P(df, n, 2, cplx(0.8));
    auto b = bilinear_R_from_S(ef, n, 2, cplx(0.8));
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(*a <= 1e-10);
    CHECK(*b <= 1e-10);
  }
  CHECK_THROWS_AS(bilinear_Q_from_P(df, 1, 0, cplx(0.0)), ZeroArgument);
}

TEST_CASE("determinants reconstructed from polynomial tails") {
  Weight we = Weight::exp_linear();
  SystemFamily d(we, StructKind::TwoJK);
  CHECK(cdist(reconstruct_det_from_tails(d, 0, 1), cplx(1.0)) < 1e-14);  // w_0
  cplx rec3 = reconstruct_det_from_tails(d, 0, 3);
  CHECK(cdist(rec3, d.at(0).det(3)) <= 1e-9 * std::abs(d.at(0).det(3)));
  CHECK(cdist(rec3, cplx(1.0 / 3.0)) < 1e-12);
  // E side on e^z at a viable offset, and both sides on a random weight
  SystemFamily e(we, StructKind::JTwoK);
  cplx rece = reconstruct_det_from_tails(e, 8, 2);
  CHECK(cdist(rece, e.at(8).det(2)) <= 1e-9 * std::abs(e.at(8).det(2)));
  Weight wf = bicirc_test::rand_weight();
  SystemFamily df(wf, StructKind::TwoJK), ef(wf, StructKind::JTwoK);
  for (int n = 1; n <= 6; ++n) {
    CHECK(cdist(reconstruct_det_from_tails(df, 1, n), df.at(1).det(n)) <=
          1e-9 * std::abs(df.at(1).det(n)));
    CHECK(cdist(reconstruct_det_from_tails(ef, 2, n), ef.at(2).det(n)) <=
          1e-9 * std::abs(ef.at(2).det(n)));
  }
}

TEST_CASE("tail products and offset tail relations") {
  Weight wf = bicirc_test::rand_weight();
  SystemFamily d(wf, StructKind::TwoJK), e(wf, StructKind::JTwoK);
  CoeffFn cf = generic_coeffs(&d, &e);
  for (int n = 0; n <= 4; ++n)
    for (int offset = 0; offset <= 3; ++offset) {
      for (auto& r : tail_product_residuals(d, e, n, offset, cf)) {
        REQUIRE(r.has_value());
        CHECK(*r <= 1e-10);
      }
      for (auto& r : tail_offset_residuals(d, e, n, offset, cf)) {
        REQUIRE(r.has_value());
        CHECK(*r <= 1e-10);
      }
    }
}

TEST_CASE("only offsets distinct mod 3 are independent") {
  Weight wf = bicirc_test::rand_weight();
  SystemFamily d(wf, StructKind::TwoJK), e(wf, StructKind::JTwoK);
  CoeffFn cfd = generic_coeffs(&d, nullptr), cfe = generic_coeffs(nullptr, &e);
  for (int n = 1; n <= 4; ++n)
    for (int offset = 0; offset <= 3; ++offset) {
      auto rp = offset_shift_reconstruction(d, 'P', n, offset, cfd);
      REQUIRE(rp.has_value());
      CHECK(*rp <= 1e-10);
      auto rr = offset_shift_reconstruction(e, 'R', n, offset, cfe);
      REQUIRE(rr.has_value());
      CHECK(*rr <= 1e-10);
    }
}
