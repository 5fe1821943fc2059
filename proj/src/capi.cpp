/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "bicirc.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "bicirc/associated.hpp"
#include "bicirc/determinants.hpp"
#include "bicirc/kernels.hpp"
#include "bicirc/polynomials.hpp"
#include "bicirc/recurrences.hpp"
#include "bicirc/verify.hpp"
#include "bicirc/weights.hpp"
#include "json.hpp"

using bicirc::cplx;

struct bicirc_weight {
  bicirc::Weight w;
};

struct bicirc_system {
  bicirc::BiorthSystem sys;
};

namespace {

thread_local std::string g_last_error;

bicirc_status map_code(bicirc::errc code) {
  switch (code) {
    case bicirc::errc::ok:
      return BICIRC_OK;
    case bicirc::errc::invalid_argument:
      return BICIRC_E_INVALID;
    case bicirc::errc::singular_determinant:
      return BICIRC_E_SINGULAR;
    case bicirc::errc::moment_window_too_small:
      return BICIRC_E_WINDOW;
    case bicirc::errc::series_not_converged:
      return BICIRC_E_SERIES;
    case bicirc::errc::quadrature_band_exceeded:
      return BICIRC_E_BAND;
    case bicirc::errc::cost_limit_exceeded:
      return BICIRC_E_BUDGET;
    case bicirc::errc::region_too_close_to_circle:
      return BICIRC_E_REGION;
    case bicirc::errc::annulus_excluded:
      return BICIRC_E_ANNULUS;
    case bicirc::errc::degenerate_cd_point:
      return BICIRC_E_DEGENERATE;
    case bicirc::errc::zero_argument:
      return BICIRC_E_ZERO_ARG;
    default:
      return BICIRC_E_INTERNAL;
  }
}

template <typename Fn>
bicirc_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return BICIRC_OK;
  } catch (const bicirc::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BICIRC_E_INTERNAL;
  }
}

cplx in(bicirc_complex c) { return cplx(c.re, c.im); }

void out_c(bicirc_complex* dst, cplx v) {
  dst->re = v.real();
  dst->im = v.imag();
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

const char* bicirc_version(void) { return "bicirc 1.0.0"; }

const char* bicirc_status_name(bicirc_status status) {
  switch (status) {
    case BICIRC_OK:
      return "ok";
    case BICIRC_E_INVALID:
      return "invalid argument";
    case BICIRC_E_SINGULAR:
      return "singular determinant";
    case BICIRC_E_WINDOW:
      return "moment window too small";
    case BICIRC_E_SERIES:
      return "series not converged";
    case BICIRC_E_BAND:
      return "quadrature band exceeded";
    case BICIRC_E_BUDGET:
      return "cost limit exceeded";
    case BICIRC_E_REGION:
      return "region too close to circle";
    case BICIRC_E_ANNULUS:
      return "annulus excluded";
    case BICIRC_E_DEGENERATE:
      return "degenerate Christoffel-Darboux point";
    case BICIRC_E_ZERO_ARG:
      return "zero argument";
    default:
      return "internal error";
  }
}

const char* bicirc_last_error(void) { return g_last_error.c_str(); }

bicirc_status bicirc_weight_parse(const char* spec, bicirc_weight** out) {
  if (!spec || !out) return BICIRC_E_INVALID;
  return guarded([&]() { *out = new bicirc_weight{bicirc::Weight::parse(spec)}; });
}

bicirc_status bicirc_weight_exp(bicirc_weight** out) {
  if (!out) return BICIRC_E_INVALID;
  return guarded([&]() { *out = new bicirc_weight{bicirc::Weight::exp_linear()}; });
}

bicirc_status bicirc_weight_exp_deformed(bicirc_complex u, bicirc_weight** out) {
  if (!out) return BICIRC_E_INVALID;
  return guarded([&]() { *out = new bicirc_weight{bicirc::Weight::exp_deformed(in(u))}; });
}

bicirc_status bicirc_weight_fourier(const int* indices, const bicirc_complex* coeffs,
                                    size_t count, bicirc_weight** out) {
  if (!out || (count > 0 && (!indices || !coeffs))) return BICIRC_E_INVALID;
  return guarded([&]() {
    std::map<int, cplx> c;
    for (size_t i = 0; i < count; ++i) c[indices[i]] = in(coeffs[i]);
    *out = new bicirc_weight{bicirc::Weight::fourier(std::move(c))};
  });
}

void bicirc_weight_free(bicirc_weight* w) { delete w; }

bicirc_status bicirc_moment(const bicirc_weight* w, int k, bicirc_complex* out) {
  if (!w || !out) return BICIRC_E_INVALID;
  return guarded([&]() { out_c(out, w->w.moment(k)); });
}

bicirc_status bicirc_deformed_moment(bicirc_complex u, int l, bicirc_complex* out) {
  if (!out) return BICIRC_E_INVALID;
  return guarded([&]() { out_c(out, bicirc::deformed_moment(in(u), l)); });
}

bicirc_status bicirc_tau(int n, int ell, bicirc_complex u, bicirc_complex* out) {
  if (!out) return BICIRC_E_INVALID;
  return guarded([&]() { out_c(out, bicirc::tau(n, ell, in(u))); });
}

bicirc_status bicirc_system_new(const bicirc_weight* w, bicirc_kind kind, int offset,
                                bicirc_system** out) {
  if (!w || !out) return BICIRC_E_INVALID;
  return guarded([&]() {
    auto k = kind == BICIRC_KIND_2JK ? bicirc::StructKind::TwoJK : bicirc::StructKind::JTwoK;
    *out = new bicirc_system{bicirc::BiorthSystem(w->w, k, offset)};
  });
}

void bicirc_system_free(bicirc_system* sys) { delete sys; }

bicirc_status bicirc_system_det(bicirc_system* sys, int n, bicirc_complex* out) {
  if (!sys || !out) return BICIRC_E_INVALID;
  return guarded([&]() { out_c(out, sys->sys.det(n)); });
}

bicirc_status bicirc_system_norm(bicirc_system* sys, int n, bicirc_complex* out) {
  if (!sys || !out) return BICIRC_E_INVALID;
  return guarded([&]() { out_c(out, sys->sys.norm(n)); });
}

bicirc_status bicirc_system_poly(bicirc_system* sys, char family, int n, bicirc_complex* coeffs) {
  if (!sys || !coeffs || n < 0) return BICIRC_E_INVALID;
  return guarded([&]() {
    const bicirc::ComplexPoly* p = nullptr;
    switch (family) {
      case 'P':
        p = &bicirc::polyP(sys->sys, n);
        break;
      case 'Q':
        p = &bicirc::polyQ(sys->sys, n);
        break;
      case 'R':
        p = &bicirc::polyR(sys->sys, n);
        break;
      case 'S':
        p = &bicirc::polyS(sys->sys, n);
        break;
      default:
        throw bicirc::Error(bicirc::errc::invalid_argument, "family must be P, Q, R or S");
    }
    for (int i = 0; i <= n; ++i) out_c(&coeffs[i], p->coeff(i));
  });
}

bicirc_status bicirc_system_tail(bicirc_system* sys, char family, int n, bicirc_complex* out) {
  if (!sys || !out) return BICIRC_E_INVALID;
  return guarded([&]() {
    bicirc::SystemFamily fam(sys->sys.weight(), sys->sys.kind());
    out_c(out, bicirc::tail(fam, family, n, sys->sys.offset()));
  });
}

bicirc_status bicirc_recurrence_coeff(const bicirc_weight* w, bicirc_kind kind, const char* which,
                                      int n, int offset, bicirc_complex* out) {
  if (!w || !which || !out) return BICIRC_E_INVALID;
  return guarded([&]() {
    auto k = kind == BICIRC_KIND_2JK ? bicirc::StructKind::TwoJK : bicirc::StructKind::JTwoK;
    std::string name(which);
    char sel = 0;
    if (name == "delta") sel = 'd';
    else if (name == "eta") sel = 'e';
    else if (name == "beta") sel = 'b';
    else if (name == "alpha") sel = 'a';
    else if (name == "kappa") sel = 'k';
    else if (name == "rho") sel = 'r';
    else if (name == "gamma") sel = 'g';
    else if (name == "theta") sel = 't';
    else
      throw bicirc::Error(bicirc::errc::invalid_argument,
                          "unknown recurrence coefficient '" + name + "'");
    bicirc::SystemFamily fam(w->w, k);
    bicirc::CoeffFn cf = k == bicirc::StructKind::TwoJK
                             ? bicirc::generic_coeffs(&fam, nullptr)
                             : bicirc::generic_coeffs(nullptr, &fam);
    auto v = cf(sel, n, offset);
    if (!v) throw bicirc::SingularDeterminant(n, offset);
    out_c(out, *v);
  });
}

bicirc_status bicirc_kernel(const bicirc_weight* w, bicirc_kind kind, int n, int offset,
                            bicirc_kernel_method method, bicirc_complex z1, bicirc_complex z2,
                            bicirc_complex* out) {
  if (!w || !out) return BICIRC_E_INVALID;
  return guarded([&]() {
    auto k = kind == BICIRC_KIND_2JK ? bicirc::StructKind::TwoJK : bicirc::StructKind::JTwoK;
    cplx a = in(z1), b = in(z2);
    switch (method) {
      case BICIRC_KERNEL_SUM: {
        bicirc::BiorthSystem sys(w->w, k, offset);
        out_c(out, bicirc::kernel_sum(sys, n, a, b));
        return;
      }
      case BICIRC_KERNEL_MASTER: {
        bicirc::BiorthSystem sys(w->w, k, offset);
        out_c(out, bicirc::kernel_master(sys, n, a, b));
        return;
      }
      case BICIRC_KERNEL_CD: {
        bicirc::SystemFamily fam(w->w, k);
        // K_n(z1, z2) = K_n(z2cd^2, z1cd;.): map the plain arguments onto
        // the Christoffel-Darboux parameterization.
        if (k == bicirc::StructKind::TwoJK) {
          cplx z2cd = std::sqrt(a);
          out_c(out, bicirc::kernel_cd(fam, n, offset, b, z2cd));
        } else {
          cplx z1cd = std::sqrt(b);
          out_c(out, bicirc::kernel_cd(fam, n, offset, z1cd, a));
        }
        return;
      }
    }
    throw bicirc::Error(bicirc::errc::invalid_argument, "unknown kernel method");
  });
}

bicirc_status bicirc_caratheodory(const bicirc_weight* w, int which, int offset, bicirc_complex z,
                                  bicirc_complex* out) {
  if (!w || !out) return BICIRC_E_INVALID;
  return guarded([&]() {
    if (which == 1)
      out_c(out, bicirc::F1(w->w, offset, in(z)));
    else if (which == 2)
      out_c(out, bicirc::F2(w->w, offset, in(z)));
    else
      throw bicirc::Error(bicirc::errc::invalid_argument, "Caratheodory index must be 1 or 2");
  });
}

bicirc_status bicirc_assoc(const bicirc_weight* w, const char* family, int n, int offset,
                           bicirc_complex z, bicirc_complex* out) {
  if (!w || !family || !out) return BICIRC_E_INVALID;
  return guarded([&]() {
    std::string name(family);
    bool check = name.size() > 5 && name.substr(1) == "check";
    char fam = name.empty() ? '?' : name[0];
    bool dagger = name == "Pdagger" || name == "Sdagger";
    bool two = fam == 'P' || fam == 'Q';
    bicirc::BiorthSystem sys(w->w, two ? bicirc::StructKind::TwoJK : bicirc::StructKind::JTwoK,
                             offset);
    if (check)
      out_c(out, bicirc::assoc_check(sys, fam, n, in(z)));
    else if (dagger)
      out_c(out, bicirc::assoc_hat(sys, fam == 'P' ? 'p' : 's', n, in(z)));
    else if (name == "Phat" || name == "Qhat" || name == "Rhat" || name == "Shat")
      out_c(out, bicirc::assoc_hat(sys, fam, n, in(z)));
    else
      throw bicirc::Error(bicirc::errc::invalid_argument,
                          "unknown associated family '" + name + "'");
  });
}

bicirc_status bicirc_verify(const bicirc_weight* w, const char* suite, const char* options_json,
                            char** report_json) {
  if (!w || !suite || !report_json) return BICIRC_E_INVALID;
  return guarded([&]() {
    bicirc::VerifyOptions opt;
    if (options_json && *options_json) {
      nlohmann::json j = nlohmann::json::parse(options_json);
      if (j.contains("n_max")) opt.n_max = j["n_max"].get<int>();
      if (j.contains("seed")) opt.seed = j["seed"].get<unsigned long long>();
      if (j.contains("m")) opt.oracle_m = j["m"].get<int>();
      if (j.contains("tol_scale")) opt.tol_scale = j["tol_scale"].get<double>();
      if (j.contains("threads")) opt.threads = j["threads"].get<int>();
    }
    bicirc::Report rep = bicirc::run_suite(w->w, suite, opt);
    nlohmann::json out;
    out["suite"] = rep.suite;
    out["config"] = {{"weight", w->w.describe()},
                     {"n_max", opt.n_max},
                     {"seed", opt.seed},
                     {"m", opt.oracle_m},
                     {"tol_scale", opt.tol_scale}};
    out["ok"] = rep.ok();
    out["passed"] = rep.passed;
    out["failed"] = rep.failed;
    out["not_applicable"] = rep.not_applicable;
    out["max_residual"] = rep.max_residual;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : rep.checks) {
      checks.push_back({{"suite", c.suite},
                        {"name", c.name},
                        {"n", c.n},
                        {"offset", c.offset},
                        {"residual", c.residual},
                        {"tol", c.tol},
                        {"status", c.status == bicirc::CheckStatus::Pass
                                       ? "pass"
                                       : (c.status == bicirc::CheckStatus::Fail ? "fail" : "na")}});
    }
    out["checks"] = std::move(checks);
    *report_json = dup_string(out.dump());
    if (!*report_json)
      throw bicirc::Error(bicirc::errc::internal, "report allocation failed");
  });
}

void bicirc_string_free(char* s) { std::free(s); }

}  // extern "C"
