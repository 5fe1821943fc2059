/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "bicirc/verify.hpp"

#include "bicirc/types.hpp"
#include "test_helpers.hpp"

using namespace bicirc;

TEST_CASE("suite names") {
  const auto& names = suite_names();
  CHECK(names.size() == 11);
  CHECK(names.front() == "dodgson");
  CHECK_THROWS_AS(run_suite(Weight::exp_linear(), "nope", {}), Error);
}

TEST_CASE("small suites pass on both reference weights") {
  VerifyOptions opt;
  opt.n_max = 3;
  for (auto w : {Weight::exp_linear(), random_fourier_weight(7)}) {
    for (const char* s : {"dodgson", "duality"}) {
      Report r = run_suite(w, s, opt);
      CHECK(r.failed == 0);
      CHECK(r.passed > 0);
    }
  }
}

TEST_CASE("reports count applicable checks") {
  VerifyOptions opt;
  opt.n_max = 3;
  Report r = run_suite(Weight::exp_linear(), "duality", opt);
  int counted = 0;
  for (const auto& c : r.checks) {
    CHECK(!c.name.empty());
    CHECK(c.tol > 0.0);
    if (c.status != CheckStatus::NotApplicable) ++counted;
  }
  CHECK(counted == r.passed + r.failed);
}

TEST_CASE("tolerance scaling can force failures") {
  VerifyOptions opt;
  opt.n_max = 2;
  opt.tol_scale = 1e-300;  // nothing numerical survives this
  Report r = run_suite(random_fourier_weight(7), "duality", opt);
  CHECK(r.failed > 0);
  CHECK(!r.ok());
}

TEST_CASE("constant weight fails the existence gate with SingularDeterminant") {
  Weight w = Weight::fourier({{0, cplx(1.0)}});
  CHECK_THROWS_AS(run_suite(w, "biorth", {}), SingularDeterminant);
}

TEST_CASE("closed-forms suite rejects non-exp weights") {
  CHECK_THROWS_AS(run_suite(random_fourier_weight(7), "closed-forms", {}), Error);
}

TEST_CASE("random weights are reproducible and band-limited") {
  Weight a = random_fourier_weight(42), b = random_fourier_weight(42);
  for (int k = -16; k <= 16; ++k) CHECK(a.moment(k) == b.moment(k));
  CHECK(a.moment(17) == cplx(0.0));
  Weight c = random_fourier_weight(43);
  CHECK(a.moment(1) != c.moment(1));
}
