/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <string>

#include "bicirc.h"
#include "doctest.h"
#include "json.hpp"

namespace {
double dist(bicirc_complex a, double re, double im = 0.0) {
  return std::hypot(a.re - re, a.im - im);
}
}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::string(bicirc_version()).find("bicirc") == 0);
  CHECK(std::string(bicirc_status_name(BICIRC_OK)) == "ok");
  CHECK(std::string(bicirc_status_name(BICIRC_E_SINGULAR)) == "singular determinant");
}

TEST_CASE("weights through the C interface") {
  bicirc_weight* w = nullptr;
  REQUIRE(bicirc_weight_parse("exp", &w) == BICIRC_OK);
  bicirc_complex v;
  CHECK(bicirc_moment(w, 3, &v) == BICIRC_OK);
  CHECK(dist(v, 1.0 / 6.0) < 1e-16);
  CHECK(bicirc_moment(w, -1, &v) == BICIRC_OK);
  CHECK(dist(v, 0.0) == 0.0);
  bicirc_weight_free(w);

  CHECK(bicirc_weight_parse("bogus", &w) == BICIRC_E_INVALID);
  CHECK(std::strlen(bicirc_last_error()) > 0);

  int idx[2] = {0, 2};
  bicirc_complex cs[2] = {{1.0, 0.0}, {0.25, -0.5}};
  REQUIRE(bicirc_weight_fourier(idx, cs, 2, &w) == BICIRC_OK);
  CHECK(bicirc_moment(w, 2, &v) == BICIRC_OK);
  CHECK(dist(v, 0.25, -0.5) == 0.0);
  bicirc_weight_free(w);

  bicirc_complex u{0.0, 0.0};
  CHECK(bicirc_deformed_moment(u, 2, &v) == BICIRC_OK);
  CHECK(dist(v, 0.5) < 1e-16);
  CHECK(bicirc_tau(2, 0, u, &v) == BICIRC_OK);
  CHECK(dist(v, 1.0) < 1e-14);
}

TEST_CASE("systems, determinants, polynomials, norms") {
  bicirc_weight* w = nullptr;
  REQUIRE(bicirc_weight_exp(&w) == BICIRC_OK);
  bicirc_system* sys = nullptr;
  REQUIRE(bicirc_system_new(w, BICIRC_KIND_2JK, 0, &sys) == BICIRC_OK);
  bicirc_complex v;
  CHECK(bicirc_system_det(sys, 2, &v) == BICIRC_OK);
  CHECK(dist(v, 1.0) < 1e-14);
  CHECK(bicirc_system_norm(sys, 2, &v) == BICIRC_OK);
  CHECK(dist(v, 1.0 / 3.0) < 1e-13);
  bicirc_complex coeffs[2];
  CHECK(bicirc_system_poly(sys, 'Q', 1, coeffs) == BICIRC_OK);
  CHECK(dist(coeffs[0], -0.5) < 1e-15);
  CHECK(dist(coeffs[1], 1.0) == 0.0);
  CHECK(bicirc_system_poly(sys, 'R', 1, coeffs) == BICIRC_E_INVALID);
  CHECK(bicirc_system_tail(sys, 'P', 1, &v) == BICIRC_OK);
  bicirc_system_free(sys);

  // singular propagation for the constant weight
  bicirc_weight* cw = nullptr;
  int idx[1] = {0};
  bicirc_complex one[1] = {{1.0, 0.0}};
  REQUIRE(bicirc_weight_fourier(idx, one, 1, &cw) == BICIRC_OK);
  bicirc_system* csys = nullptr;
  REQUIRE(bicirc_system_new(cw, BICIRC_KIND_2JK, 0, &csys) == BICIRC_OK);
  CHECK(bicirc_system_poly(csys, 'P', 2, coeffs) == BICIRC_E_SINGULAR);
  bicirc_system_free(csys);
  bicirc_weight_free(cw);
  bicirc_weight_free(w);
}

TEST_CASE("recurrence coefficients and kernels") {
  bicirc_weight* w = nullptr;
  REQUIRE(bicirc_weight_exp(&w) == BICIRC_OK);
  bicirc_complex v;
  CHECK(bicirc_recurrence_coeff(w, BICIRC_KIND_2JK, "delta", 2, 1, &v) == BICIRC_OK);
  CHECK(dist(v, -5.0) < 1e-12);
  CHECK(bicirc_recurrence_coeff(w, BICIRC_KIND_2JK, "delta", 1, 0, &v) == BICIRC_E_SINGULAR);
  CHECK(bicirc_recurrence_coeff(w, BICIRC_KIND_2JK, "nope", 1, 1, &v) == BICIRC_E_INVALID);

  bicirc_complex z1{0.3, 0.0}, z2{0.4, 0.0};
  CHECK(bicirc_kernel(w, BICIRC_KIND_2JK, 1, 0, BICIRC_KERNEL_SUM, z1, z2, &v) == BICIRC_OK);
  CHECK(dist(v, 0.92) < 1e-15);
  bicirc_complex vm, vc;
  CHECK(bicirc_kernel(w, BICIRC_KIND_2JK, 1, 0, BICIRC_KERNEL_MASTER, z1, z2, &vm) == BICIRC_OK);
  CHECK(dist(vm, v.re, v.im) < 1e-10);
  CHECK(bicirc_kernel(w, BICIRC_KIND_2JK, 1, 0, BICIRC_KERNEL_CD, z1, z2, &vc) == BICIRC_OK);
  CHECK(dist(vc, v.re, v.im) < 1e-10);
  bicirc_weight_free(w);
}

TEST_CASE("associated functions and transforms") {
  bicirc_weight* w = nullptr;
  REQUIRE(bicirc_weight_exp(&w) == BICIRC_OK);
  bicirc_complex z{1.6, 0.3}, v, f2;
  CHECK(bicirc_caratheodory(w, 2, 0, z, &f2) == BICIRC_OK);
  CHECK(bicirc_assoc(w, "Qhat", 0, 0, z, &v) == BICIRC_OK);
  CHECK(dist(v, f2.re, f2.im) < 1e-14);
  CHECK(bicirc_assoc(w, "Pcheck", 0, 0, z, &v) == BICIRC_OK);
  CHECK(dist(v, 0.0) < 1e-13);
  CHECK(bicirc_assoc(w, "Xhat", 0, 0, z, &v) == BICIRC_E_INVALID);
  bicirc_complex bad{1.0, 0.0};
  CHECK(bicirc_caratheodory(w, 2, 0, bad, &v) == BICIRC_E_ANNULUS);
  bicirc_weight_free(w);
}

TEST_CASE("verify through the C interface") {
  bicirc_weight* w = nullptr;
  REQUIRE(bicirc_weight_exp(&w) == BICIRC_OK);
  char* report = nullptr;
  REQUIRE(bicirc_verify(w, "duality", R"({"n_max": 3})", &report) == BICIRC_OK);
  auto j = nlohmann::json::parse(report);
  CHECK(j["ok"].get<bool>());
  CHECK(j["failed"].get<int>() == 0);
  CHECK(j["checks"].is_array());
  CHECK(j["config"]["weight"].get<std::string>() == "exp");
  bicirc_string_free(report);
  CHECK(bicirc_verify(w, "made-up-suite", nullptr, &report) == BICIRC_E_INVALID);
  bicirc_weight_free(w);
}
