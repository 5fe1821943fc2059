/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <cmath>

#include "bicirc/associated.hpp"
#include "bicirc/kernels.hpp"
#include "bicirc/multiint.hpp"
#include "test_helpers.hpp"

using namespace bicirc;
using bicirc_test::cdist;

TEST_CASE("multiple integrals reproduce the structured determinants") {
  Weight we = Weight::exp_linear();
  MultiIntOracle oracle(we, 64, 20);  // band-20 truncation, M = 64
  BiorthSystem d(oracle.weight(), StructKind::TwoJK, 0);
  BiorthSystem e(oracle.weight(), StructKind::JTwoK, 1);
  CHECK(cdist(oracle.d_multi(0, 1), d.moment(0)) <= 1e-12);  // n=1 is just w_r
  for (int n = 0; n <= 3; ++n) {
    CHECK(cdist(oracle.d_multi(0, n), d.det(n)) <= 1e-10);
    CHECK(cdist(oracle.e_multi(1, n), e.det(n)) <= 1e-10);
  }
  CHECK(cdist(oracle.d_multi(0, 2), cplx(1.0)) <= 1e-10);
  CHECK(cdist(oracle.e_multi(1, 2), cplx(1.0)) <= 1e-10);
}

TEST_CASE("exactness on band-limited weights") {
  Weight wf = bicirc_test::rand_weight();
  MultiIntOracle oracle(wf, 64);
  BiorthSystem d(wf, StructKind::TwoJK, 2);
  for (int n = 0; n <= 3; ++n) CHECK(cdist(oracle.d_multi(2, n), d.det(n)) <= 1e-12);
}

TEST_CASE("budget cap") {
  Weight wf = bicirc_test::rand_weight();
  MultiIntOracle big(wf, 256);
  CHECK_THROWS_AS(big.d_multi(0, 4), CostLimitExceeded);  // 256^4 > 2^24
  CHECK_THROWS_AS(big.d_multi(0, 5), Error);
}

TEST_CASE("oracle polynomials match the linear-solve route") {
  Weight we = Weight::exp_linear();
  MultiIntOracle oracle(we, 64);
  BiorthSystem d(oracle.weight(), StructKind::TwoJK, 0);
  BiorthSystem e(oracle.weight(), StructKind::JTwoK, 2);
  cplx z(0.7, 0.0);
  CHECK(cdist(oracle.poly('P', 0, 0, z), cplx(1.0)) == 0.0);
  for (int n = 1; n <= 2; ++n) {
    CHECK(cdist(oracle.poly('P', n, 0, z), d.poly_first(n).eval(z)) <= 1e-8);
    CHECK(cdist(oracle.poly('Q', n, 0, z), d.poly_second(n).eval(z)) <= 1e-8);
    CHECK(cdist(oracle.poly('R', n, 2, z), e.poly_first(n).eval(z)) <= 1e-8);
    CHECK(cdist(oracle.poly('S', n, 2, z), e.poly_second(n).eval(z)) <= 1e-8);
  }
  CHECK(cdist(oracle.poly('S', 2, 1, z),
              BiorthSystem(oracle.weight(), StructKind::JTwoK, 1).poly_second(2).eval(z)) <= 1e-8);
}

TEST_CASE("oracle kernels match the spectral sum") {
  Weight we = Weight::exp_linear();
  MultiIntOracle oracle(we, 64);
  BiorthSystem d(oracle.weight(), StructKind::TwoJK, 0);
  cplx z1(0.6), z2(0.9, 0.2);
  for (int n = 0; n <= 2; ++n)
    CHECK(cdist(oracle.kernel(StructKind::TwoJK, n, 0, z1, z2), kernel_sum(d, n, z2, z1)) <= 1e-8);
  BiorthSystem e(oracle.weight(), StructKind::JTwoK, 2);
  for (int n = 0; n <= 2; ++n)
    CHECK(cdist(oracle.kernel(StructKind::JTwoK, n, 2, z1, z2), kernel_sum(e, n, z2, z1)) <= 1e-8);
}

TEST_CASE("oracle associated functions match the series route") {
  Weight we = Weight::exp_linear();
  MultiIntOracle oracle(we, 64);
  BiorthSystem d(oracle.weight(), StructKind::TwoJK, 0);
  BiorthSystem e(oracle.weight(), StructKind::JTwoK, 3);
  for (double rho : {1.5, 0.5})
    for (int n = 0; n <= 1; ++n) {
      cplx z = std::polar(rho, 0.85);
      CHECK(cdist(oracle.assoc('Q', n, 0, z), assoc_hat(d, 'Q', n, z)) <= 1e-7);
      CHECK(cdist(oracle.assoc('P', n, 0, z), assoc_hat(d, 'P', n, z)) <= 1e-7);
      CHECK(cdist(oracle.assoc('R', n, 3, z), assoc_hat(e, 'R', n, z)) <= 1e-7);
      CHECK(cdist(oracle.assoc('S', n, 3, z), assoc_hat(e, 'S', n, z)) <= 1e-7);
    }
  CHECK_THROWS_AS(oracle.assoc('Q', 1, 0, std::polar(1.05, 0.3)), RegionTooCloseToCircle);
}

TEST_CASE("transfer identity between the two integral structures") {
  Weight we = Weight::exp_linear();
  MultiIntOracle oracle(we, 48);
  CHECK(oracle.transfer_check(1, 0, 0) == 0.0);  // both sides are w_r
  for (int n = 1; n <= 3; ++n)
    for (int r = 0; r <= 1; ++r)
      for (int f = 0; f <= 2; ++f) CHECK(oracle.transfer_check(n, r, f) <= 1e-9);
}

TEST_CASE("gaudin integration over the last variable") {
  Weight we = Weight::exp_linear();
  MultiIntOracle oracle(we, 64);
  // m=1 is the normalization relation
  CHECK(oracle.gaudin_check(StructKind::TwoJK, 2, 1, 0) <= 1e-8);
  CHECK(oracle.gaudin_check(StructKind::TwoJK, 2, 2, 0) <= 1e-8);
  CHECK(oracle.gaudin_check(StructKind::TwoJK, 2, 3, 0) <= 1e-8);
  CHECK(oracle.gaudin_check(StructKind::JTwoK, 1, 2, 2) <= 1e-8);
  Weight wf = bicirc_test::rand_weight();
  MultiIntOracle of(wf, 64);
  CHECK(of.gaudin_check(StructKind::JTwoK, 2, 2, 0) <= 1e-8);
}

TEST_CASE("joint density factorization") {
  for (unsigned long long seed : {1ULL, 2ULL, 3ULL})
    CHECK(MultiIntOracle::joint_density_residual(4, seed) <= 1e-12);
}

TEST_CASE("bilinear formulas re-derived through the oracle") {
  Weight we = Weight::exp_linear();
  MultiIntOracle oracle(we, 64);
  for (int n = 0; n <= 2; ++n) {
    cplx z(0.8, 0.1);
    cplx lhs = oracle.poly('Q', n, 0, z * z);
    cplx zi = cplx(1.0) / z;
    cplx ratio = oracle.d_multi(2, n) / oracle.d_multi(0, n);
    cplx br = oracle.poly('P', n + 1, 2, zi) * oracle.poly('P', n, 2, -zi) -
              oracle.poly('P', n + 1, 2, -zi) * oracle.poly('P', n, 2, zi);
    cplx rhs = ratio * std::pow(z, 2 * n + 1) * 0.5 * br;
    CHECK(cdist(lhs, rhs) <= 1e-8 * std::max(1.0, std::abs(lhs)));
  }
}
