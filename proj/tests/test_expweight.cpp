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

TEST_CASE("closed determinants") {
  CHECK(cdist(expweight::det_closed(0, 3), cplx(1.0)) == 0.0);
  CHECK(cdist(expweight::det_closed(2, 0), cplx(1.0)) < 1e-14);
  CHECK(cdist(expweight::det_closed(3, 1), cplx(1.0 / 45.0)) < 1e-15);
  CHECK(cdist(expweight::det_closed(3, 0), cplx(1.0 / 3.0)) < 1e-15);
  BiorthSystem sys(Weight::exp_linear(), StructKind::TwoJK, 4);
  for (int n = 0; n <= 10; ++n) {
    cplx want = expweight::det_closed(n, 4);
    CHECK(cdist(sys.det(n), want) <= 1e-10 * std::abs(want));
  }
}

TEST_CASE("closed norms") {
  CHECK(cdist(expweight::norm_closed(2, 0), cplx(1.0 / 3.0)) < 1e-15);
  CHECK(cdist(expweight::norm_closed(0, 3), cplx(1.0 / 6.0)) < 1e-15);  // w_r
  CHECK(cdist(expweight::norm_closed(1, 2), cplx(1.0 / 12.0)) < 1e-15);
  BiorthSystem sys(Weight::exp_linear(), StructKind::TwoJK, 2);
  for (int n = 0; n <= 10; ++n) {
    cplx want = expweight::norm_closed(n, 2);
    CHECK(cdist(sys.norm(n), want) <= 1e-10 * std::abs(want));
  }
}

TEST_CASE("closed recurrence coefficients") {
  CHECK(cdist(expweight::reccoeff_closed('d', 2, 1), cplx(-5.0)) == 0.0);
  CHECK(cdist(expweight::reccoeff_closed('e', 3, 0), cplx(0.0)) == 0.0);
  CHECK(cdist(expweight::reccoeff_closed('b', 0, 0), cplx(-0.5)) == 0.0);
  CHECK(cdist(expweight::reccoeff_closed('a', 1, 2), cplx(1.0 / 60.0)) < 1e-17);
  SystemFamily fam(Weight::exp_linear(), StructKind::TwoJK);
  CoeffFn generic = generic_coeffs(&fam, nullptr);
  for (char which : {'d', 'e', 'b', 'a'})
    for (int r = 0; r <= 4; ++r)
      for (int n = 0; n <= 10; ++n) {
        auto got = generic(which, n, r);
        if (!got) {
          CHECK(which == 'd');
          CHECK(r == 0);
          CHECK(n >= 1);
          continue;
        }
        cplx want = expweight::reccoeff_closed(which, n, r);
        CHECK(cdist(*got, want) <= 1e-10 * std::max(1.0, std::abs(want)));
      }
}

TEST_CASE("Q as a terminating hypergeometric sum") {
  CHECK(cdist(expweight::Q_closed(0, 2, cplx(0.4)), cplx(1.0)) == 0.0);
  CHECK(cdist(expweight::Q_closed(1, 0, cplx(0.4)), cplx(0.4 - 0.5)) < 1e-15);
  for (int r = 0; r <= 4; ++r) {
    BiorthSystem sys(Weight::exp_linear(), StructKind::TwoJK, r);
    for (int n = 0; n <= 8; ++n) {
      const ComplexPoly& q = sys.poly_second(n);
      for (int l = 0; l <= n; ++l) {
        cplx want = expweight::q_coeff_closed(n, r, l);
        CHECK(cdist(q.coeff(l), want) <= 1e-10 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST_CASE("P coefficients: sum form, nabla form, tail specializations") {
  for (int r = 0; r <= 4; ++r) {
    BiorthSystem sys(Weight::exp_linear(), StructKind::TwoJK, r);
    for (int n = 0; n <= 8; ++n) {
      const ComplexPoly& p = sys.poly_first(n);
      for (int l = 0; l <= n; ++l) {
        cplx want = expweight::P_coeff_closed(n, l, r);
        double scale = std::max(1.0, std::abs(want));
        CHECK(cdist(p.coeff(l), want) <= 1e-10 * scale);
        CHECK(cdist(expweight::P_coeff_nabla(n, l, r), want) <= 1e-12 * scale);
      }
      // monic head and the first two tails
      CHECK(cdist(expweight::P_coeff_closed(n, n, r), cplx(1.0)) < 1e-12);
      cplx p0 = std::pow(-2.0, n) * expweight::pochhammer(r / 2.0, n);
      CHECK(cdist(expweight::P_coeff_closed(n, 0, r), p0) <=
            1e-12 * std::max(1.0, std::abs(p0)));
      if (n >= 1) {
        cplx p1 = std::pow(-2.0, n) *
                  (expweight::pochhammer((r - 1) / 2.0, n) - expweight::pochhammer(r / 2.0, n));
        CHECK(cdist(expweight::P_coeff_closed(n, 1, r), p1) <=
              1e-11 * std::max(1.0, std::abs(p1)));
      }
    }
  }
}

TEST_CASE("P coefficient recurrence and its reduction") {
  for (int r = 0; r <= 4; ++r)
    for (int n = 0; n <= 6; ++n)
      for (int l = 0; l <= 3; ++l) {
        cplx lhs = expweight::P_coeff_closed(n + 1, l, r) +
                   (2.0 * n + 2.0) * expweight::P_coeff_closed(n, l, r);
        cplx rhs = expweight::P_coeff_closed(n + 3, l + 2, r) +
                   (4.0 * n + 2.0 * r + 5.0) * expweight::P_coeff_closed(n + 2, l + 2, r) +
                   (2.0 * n + r + 1.0) * (2.0 * n + r + 2.0) *
                       expweight::P_coeff_closed(n + 1, l + 2, r);
        double scale = std::max(1.0, std::abs(lhs));
        CHECK(cdist(lhs, rhs) <= 1e-10 * scale);
        if (r >= 2) CHECK(cdist(lhs, expweight::P_coeff_closed(n + 1, l, r - 2)) <= 1e-10 * scale);
      }
}

TEST_CASE("closed Caratheodory transform") {
  CHECK(cdist(expweight::F2_closed(0, std::polar(1.3, 0.4)), cplx(-1.0)) == 0.0);
  cplx z(0.4, -0.2);
  CHECK(cdist(expweight::F2_closed(1, z), 2.0 / z * (std::exp(z) - 1.0) - 1.0) < 1e-14);
  CHECK(cdist(expweight::F2_closed(0, cplx(0.0)), cplx(1.0)) == 0.0);
  Weight w = Weight::exp_linear();
  for (int r = 0; r <= 4; ++r)
    for (cplx p : test_grid(false)) CHECK(cdist(expweight::F2_closed(r, p), F2(w, r, p)) <= 1e-12);
  CHECK_THROWS_AS(expweight::F2_closed(0, std::polar(0.9995, 0.1)), AnnulusExcluded);
  CHECK_THROWS_AS(expweight::det_closed(2, -1), Error);
}

TEST_CASE("closed coefficient provider continues past vanishing determinants") {
  CoeffFn cf = expweight::closed_coeffs();
  CHECK(cdist(*cf('d', 1, 0), cplx(-2.0)) == 0.0);
  CHECK(cdist(*cf('e', 1, -2), cplx(-2.0)) == 0.0);
  CHECK(!cf('k', 1, 1).has_value());  // no closed JTwoK coefficients
  // delta + eta at (r, r-2) collapses to -2n-2 regardless of offset
  for (int r = 0; r <= 4; ++r)
    for (int n = 0; n <= 4; ++n)
      CHECK(cdist(*cf('d', n, r) + *cf('e', n, r - 2), cplx(-2.0 * n - 2.0)) == 0.0);
}
