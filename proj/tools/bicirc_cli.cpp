/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 *
 * Command-line front end. Talks to the library exclusively through the C
 * interface in bicirc.h.
 */
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bicirc.h"
#include "json.hpp"

namespace {

using nlohmann::json;

// Exit codes: 0 ok, 1 failed checks / other math errors, 2 singular
// determinant, 3 configuration error, 4 oracle budget/region errors.
int exit_code_for(bicirc_status st) {
  switch (st) {
    case BICIRC_OK:
      return 0;
    case BICIRC_E_SINGULAR:
      return 2;
    case BICIRC_E_INVALID:
      return 3;
    case BICIRC_E_BUDGET:
    case BICIRC_E_REGION:
      return 4;
    default:
      return 1;
  }
}

[[noreturn]] void fail(bicirc_status st, const std::string& where) {
  std::fprintf(stderr, "bicirc: %s: %s (%s)\n", where.c_str(), bicirc_status_name(st),
               bicirc_last_error());
  std::exit(exit_code_for(st));
}

struct WeightHandle {
  bicirc_weight* w = nullptr;
  ~WeightHandle() { bicirc_weight_free(w); }
};

struct SystemHandle {
  bicirc_system* s = nullptr;
  ~SystemHandle() { bicirc_system_free(s); }
};

void open_weight(const std::string& spec, WeightHandle& h) {
  bicirc_status st = bicirc_weight_parse(spec.c_str(), &h.w);
  if (st != BICIRC_OK) fail(st, "weight '" + spec + "'");
}

bicirc_complex parse_point(const std::string& s) {
  // "re" or "re,im"
  bicirc_complex c{0.0, 0.0};
  auto comma = s.find(',');
  try {
    if (comma == std::string::npos) {
      c.re = std::stod(s);
    } else {
      c.re = std::stod(s.substr(0, comma));
      c.im = std::stod(s.substr(comma + 1));
    }
  } catch (const std::exception&) {
    std::fprintf(stderr, "bicirc: bad complex literal '%s' (use re or re,im)\n", s.c_str());
    std::exit(3);
  }
  return c;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json cjson(bicirc_complex v) { return json::array({v.re, v.im}); }

struct Output {
  std::string format = "json";

  // rows: (quantity, n, offset, value)
  void emit_table(const json& config, const std::string& quantity,
                  const std::vector<std::tuple<int, int, bicirc_complex>>& rows) const {
    if (format == "json") {
      json out;
      out["config"] = config;
      json arr = json::array();
      for (const auto& [n, offset, v] : rows)
        arr.push_back({{"quantity", quantity}, {"n", n}, {"offset", offset}, {"value", cjson(v)}});
      out["values"] = std::move(arr);
      std::printf("%s\n", out.dump(2).c_str());
    } else if (format == "csv") {
      std::printf("quantity,n,offset,re,im\n");
      for (const auto& [n, offset, v] : rows)
        std::printf("%s,%d,%d,%s,%s\n", quantity.c_str(), n, offset, fmt17(v.re).c_str(),
                    fmt17(v.im).c_str());
    } else {
      for (const auto& [n, offset, v] : rows)
        std::printf("%s n=%d offset=%d value=%s%s%si\n", quantity.c_str(), n, offset,
                    fmt17(v.re).c_str(), v.im < 0 ? "" : "+", fmt17(v.im).c_str());
    }
  }

  void emit_coeff_table(const json& config,
                        const std::vector<std::tuple<std::string, int, int, bicirc_complex>>& rows)
      const {
    if (format == "json") {
      json out;
      out["config"] = config;
      json arr = json::array();
      for (const auto& [q, n, offset, v] : rows)
        arr.push_back({{"quantity", q}, {"n", n}, {"offset", offset}, {"value", cjson(v)}});
      out["values"] = std::move(arr);
      std::printf("%s\n", out.dump(2).c_str());
    } else if (format == "csv") {
      std::printf("quantity,n,offset,re,im\n");
      for (const auto& [q, n, offset, v] : rows)
        std::printf("%s,%d,%d,%s,%s\n", q.c_str(), n, offset, fmt17(v.re).c_str(),
                    fmt17(v.im).c_str());
    } else {
      for (const auto& [q, n, offset, v] : rows)
        std::printf("%s n=%d offset=%d value=%s%s%si\n", q.c_str(), n, offset, fmt17(v.re).c_str(),
                    v.im < 0 ? "" : "+", fmt17(v.im).c_str());
    }
  }

  void emit_polys(const json& config, const std::string& family, int offset,
                  const std::vector<std::vector<bicirc_complex>>& polys) const {
    if (format == "json") {
      json out;
      out["config"] = config;
      json arr = json::array();
      for (size_t n = 0; n < polys.size(); ++n) {
        json coeffs = json::array();
        for (auto c : polys[n]) coeffs.push_back(cjson(c));
        arr.push_back({{"family", family},
                       {"n", static_cast<int>(n)},
                       {"offset", offset},
                       {"coeffs", std::move(coeffs)}});
      }
      out["polynomials"] = std::move(arr);
      std::printf("%s\n", out.dump(2).c_str());
    } else if (format == "csv") {
      std::printf("family,n,offset,degree,re,im\n");
      for (size_t n = 0; n < polys.size(); ++n)
        for (size_t d = 0; d < polys[n].size(); ++d)
          std::printf("%s,%zu,%d,%zu,%s,%s\n", family.c_str(), n, offset, d,
                      fmt17(polys[n][d].re).c_str(), fmt17(polys[n][d].im).c_str());
    } else {
      for (size_t n = 0; n < polys.size(); ++n) {
        std::printf("%s_%zu(z; %d):", family.c_str(), n, offset);
        for (size_t d = 0; d < polys[n].size(); ++d)
          std::printf(" %s%s%si z^%zu", fmt17(polys[n][d].re).c_str(),
                      polys[n][d].im < 0 ? "" : "+", fmt17(polys[n][d].im).c_str(), d);
        std::printf("\n");
      }
    }
  }
};

int run_verify(const std::string& weight_spec, const std::string& suite, int n_max,
               unsigned long long seed, int oracle_m, double tol_scale, int threads,
               const Output& out) {
  WeightHandle w;
  open_weight(weight_spec, w);
  json opts = {{"seed", seed}, {"m", oracle_m}, {"tol_scale", tol_scale}, {"threads", threads}};
  if (n_max >= 0) opts["n_max"] = n_max;
  char* report_cstr = nullptr;
  bicirc_status st = bicirc_verify(w.w, suite.c_str(), opts.dump().c_str(), &report_cstr);
  if (st != BICIRC_OK) fail(st, "verify " + suite);
  std::unique_ptr<char, decltype(&bicirc_string_free)> guard(report_cstr, &bicirc_string_free);
  json report = json::parse(report_cstr);
  if (out.format == "json") {
    std::printf("%s\n", report.dump(2).c_str());
  } else if (out.format == "csv") {
    std::printf("suite,name,n,offset,residual,tol,status\n");
    for (const auto& c : report["checks"])
      std::printf("%s,\"%s\",%d,%d,%s,%s,%s\n", c["suite"].get<std::string>().c_str(),
                  c["name"].get<std::string>().c_str(), c["n"].get<int>(), c["offset"].get<int>(),
                  fmt17(c["residual"].get<double>()).c_str(),
                  fmt17(c["tol"].get<double>()).c_str(), c["status"].get<std::string>().c_str());
  } else {
    for (const auto& c : report["checks"])
      std::printf("[%s] %-45s n=%-3d offset=%-3d residual=%-12.3e tol=%-8.1e\n",
                  c["status"].get<std::string>().c_str(), c["name"].get<std::string>().c_str(),
                  c["n"].get<int>(), c["offset"].get<int>(), c["residual"].get<double>(),
                  c["tol"].get<double>());
    std::printf("suite %s: %d passed, %d failed, %d not applicable, max residual %s\n",
                report["suite"].get<std::string>().c_str(), report["passed"].get<int>(),
                report["failed"].get<int>(), report["not_applicable"].get<int>(),
                fmt17(report["max_residual"].get<double>()).c_str());
  }
  return report["ok"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bi-orthogonal polynomial systems on the unit circle (2j-k / j-2k structure)"};
  app.require_subcommand(1);

  std::string weight_spec = "exp";
  std::string format = "json";
  app.add_option("--format", format, "output format: json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));

  // moments
  auto* cmd_moments = app.add_subcommand("moments", "Fourier moments over an index window");
  int kmin = -4, kmax = 8;
  cmd_moments->add_option("--weight", weight_spec, "weight spec");
  cmd_moments->add_option("--kmin", kmin, "lowest index");
  cmd_moments->add_option("--kmax", kmax, "highest index");

  // det
  auto* cmd_det = app.add_subcommand("det", "structured moment determinants D_n / E_n");
  std::string kind_str = "2jk";
  int offset = 0, nmax = 4;
  cmd_det->add_option("--weight", weight_spec, "weight spec");
  cmd_det->add_option("--kind", kind_str, "2jk or j2k")->check(CLI::IsMember({"2jk", "j2k"}));
  cmd_det->add_option("--offset", offset, "offset r or s");
  cmd_det->add_option("--n", nmax, "table upper degree");

  // poly
  auto* cmd_poly = app.add_subcommand("poly", "bi-orthogonal polynomial coefficients");
  std::string family = "P";
  cmd_poly->add_option("--weight", weight_spec, "weight spec");
  cmd_poly->add_option("--family", family, "P, Q, R or S")
      ->check(CLI::IsMember({"P", "Q", "R", "S"}));
  cmd_poly->add_option("--offset", offset, "offset");
  cmd_poly->add_option("--n", nmax, "table upper degree");

  // norm
  auto* cmd_norm = app.add_subcommand("norm", "norms h_n / g_n");
  cmd_norm->add_option("--weight", weight_spec, "weight spec");
  cmd_norm->add_option("--kind", kind_str, "2jk or j2k")->check(CLI::IsMember({"2jk", "j2k"}));
  cmd_norm->add_option("--offset", offset, "offset");
  cmd_norm->add_option("--n", nmax, "table upper degree");

  // recur
  auto* cmd_recur = app.add_subcommand("recur", "recurrence coefficients");
  cmd_recur->add_option("--weight", weight_spec, "weight spec");
  cmd_recur->add_option("--kind", kind_str, "2jk or j2k")->check(CLI::IsMember({"2jk", "j2k"}));
  cmd_recur->add_option("--offset", offset, "offset");
  cmd_recur->add_option("--n", nmax, "table upper index");

  // kernel
  auto* cmd_kernel = app.add_subcommand("kernel", "reproducing kernel values");
  std::string method = "sum", z1s = "0.3", z2s = "0.4";
  int kn = 1;
  cmd_kernel->add_option("--weight", weight_spec, "weight spec");
  cmd_kernel->add_option("--kind", kind_str, "2jk or j2k")->check(CLI::IsMember({"2jk", "j2k"}));
  cmd_kernel->add_option("--offset", offset, "offset");
  cmd_kernel->add_option("--n", kn, "kernel degree");
  cmd_kernel->add_option("--method", method, "sum, master or cd")
      ->check(CLI::IsMember({"sum", "master", "cd"}));
  cmd_kernel->add_option("--z1", z1s, "first argument (re or re,im)");
  cmd_kernel->add_option("--z2", z2s, "second argument (re or re,im)");

  // assoc
  auto* cmd_assoc = app.add_subcommand("assoc", "associated functions and Caratheodory transforms");
  std::string afam = "Qhat", zs = "1.5,0.2";
  cmd_assoc->add_option("--weight", weight_spec, "weight spec");
  cmd_assoc->add_option("--family", afam,
                        "F1, F2, Phat, Qhat, Rhat, Shat, Pdagger, Sdagger, Pcheck, Qcheck, "
                        "Rcheck, Scheck");
  cmd_assoc->add_option("--offset", offset, "offset");
  cmd_assoc->add_option("--n", kn, "degree");
  cmd_assoc->add_option("--z", zs, "evaluation point (re or re,im)");

  // tau
  auto* cmd_tau = app.add_subcommand("tau", "deformed-weight moment determinants");
  std::string us = "0";
  int ell = 0;
  cmd_tau->add_option("--u", us, "deformation parameter (re or re,im)");
  cmd_tau->add_option("--ell", ell, "offset");
  cmd_tau->add_option("--n", nmax, "table upper size");

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "run identity suites");
  std::string suite = "all";
  int n_max_opt = -1, oracle_m = 64, threads = 0;
  unsigned long long seed = 7;
  double tol_scale = 1.0;
  cmd_verify->add_option("--weight", weight_spec, "weight spec");
  cmd_verify->add_option("--suite", suite,
                         "dodgson|duality|biorth|recur|mixed|kernels|cd|oracle|assoc|casorati|"
                         "closed-forms|all");
  cmd_verify->add_option("--n-max", n_max_opt, "override suite degree caps");
  cmd_verify->add_option("--seed", seed, "seed for randomized identity tests");
  cmd_verify->add_option("--m", oracle_m, "oracle quadrature points per circle");
  cmd_verify->add_option("--tol-scale", tol_scale, "scale all tolerances");
  cmd_verify->add_option("--threads", threads, "thread cap (default: BIOCIRC_THREADS)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  Output out{format};
  json config = {{"weight", weight_spec}, {"format", format}};

  if (*cmd_verify)
    return run_verify(weight_spec, suite, n_max_opt, seed, oracle_m, tol_scale, threads, out);

  if (*cmd_tau) {
    bicirc_complex u = parse_point(us);
    std::vector<std::tuple<int, int, bicirc_complex>> rows;
    for (int n = 0; n <= nmax; ++n) {
      bicirc_complex v;
      bicirc_status st = bicirc_tau(n, ell, u, &v);
      if (st != BICIRC_OK) fail(st, "tau");
      rows.emplace_back(n, ell, v);
    }
    config["u"] = json::array({u.re, u.im});
    config["ell"] = ell;
    out.emit_table(config, "tau", rows);
    return 0;
  }

  WeightHandle w;
  open_weight(weight_spec, w);
  bicirc_kind kind = kind_str == "2jk" ? BICIRC_KIND_2JK : BICIRC_KIND_J2K;
  config["kind"] = kind_str;
  config["offset"] = offset;

  if (*cmd_moments) {
    if (kmin > kmax) {
      std::fprintf(stderr, "bicirc: --kmin must not exceed --kmax\n");
      return 3;
    }
    std::vector<std::tuple<int, int, bicirc_complex>> rows;
    for (int k = kmin; k <= kmax; ++k) {
      bicirc_complex v;
      bicirc_status st = bicirc_moment(w.w, k, &v);
      if (st != BICIRC_OK) fail(st, "moment");
      rows.emplace_back(k, 0, v);
    }
    config.erase("kind");
    config.erase("offset");
    out.emit_table(config, "moment", rows);
    return 0;
  }

  if (*cmd_det || *cmd_norm) {
    SystemHandle sys;
    bicirc_status st = bicirc_system_new(w.w, kind, offset, &sys.s);
    if (st != BICIRC_OK) fail(st, "system");
    std::vector<std::tuple<int, int, bicirc_complex>> rows;
    for (int n = 0; n <= nmax; ++n) {
      bicirc_complex v;
      st = *cmd_det ? bicirc_system_det(sys.s, n, &v) : bicirc_system_norm(sys.s, n, &v);
      if (st != BICIRC_OK) fail(st, *cmd_det ? "det" : "norm");
      rows.emplace_back(n, offset, v);
    }
    out.emit_table(config, *cmd_det ? (kind == BICIRC_KIND_2JK ? "D" : "E")
                                    : (kind == BICIRC_KIND_2JK ? "h" : "g"),
                   rows);
    return 0;
  }

  if (*cmd_poly) {
    bicirc_kind pkind = (family == "P" || family == "Q") ? BICIRC_KIND_2JK : BICIRC_KIND_J2K;
    SystemHandle sys;
    bicirc_status st = bicirc_system_new(w.w, pkind, offset, &sys.s);
    if (st != BICIRC_OK) fail(st, "system");
    std::vector<std::vector<bicirc_complex>> polys;
    for (int n = 0; n <= nmax; ++n) {
      std::vector<bicirc_complex> coeffs(static_cast<size_t>(n) + 1);
      st = bicirc_system_poly(sys.s, family[0], n, coeffs.data());
      if (st != BICIRC_OK) fail(st, "poly");
      polys.push_back(std::move(coeffs));
    }
    config["kind"] = pkind == BICIRC_KIND_2JK ? "2jk" : "j2k";
    out.emit_polys(config, family, offset, polys);
    return 0;
  }

  if (*cmd_recur) {
    const char* names2[4] = {"delta", "eta", "beta", "alpha"};
    const char* namesE[4] = {"kappa", "rho", "gamma", "theta"};
    const char** names = kind == BICIRC_KIND_2JK ? names2 : namesE;
    std::vector<std::tuple<std::string, int, int, bicirc_complex>> rows;
    for (int n = 0; n <= nmax; ++n)
      for (int i = 0; i < 4; ++i) {
        bicirc_complex v;
        bicirc_status st = bicirc_recurrence_coeff(w.w, kind, names[i], n, offset, &v);
        if (st == BICIRC_E_SINGULAR) continue;  // not applicable at this offset
        if (st != BICIRC_OK) fail(st, "recur");
        rows.emplace_back(names[i], n, offset, v);
      }
    out.emit_coeff_table(config, rows);
    return 0;
  }

  if (*cmd_kernel) {
    bicirc_kernel_method m = method == "sum" ? BICIRC_KERNEL_SUM
                             : method == "master" ? BICIRC_KERNEL_MASTER
                                                  : BICIRC_KERNEL_CD;
    bicirc_complex z1 = parse_point(z1s), z2 = parse_point(z2s), v;
    bicirc_status st = bicirc_kernel(w.w, kind, kn, offset, m, z1, z2, &v);
    if (st != BICIRC_OK) fail(st, "kernel");
    config["method"] = method;
    config["z1"] = json::array({z1.re, z1.im});
    config["z2"] = json::array({z2.re, z2.im});
    out.emit_table(config, kind == BICIRC_KIND_2JK ? "K" : "L", {{kn, offset, v}});
    return 0;
  }

  if (*cmd_assoc) {
    bicirc_complex z = parse_point(zs), v;
    bicirc_status st;
    if (afam == "F1" || afam == "F2")
      st = bicirc_caratheodory(w.w, afam == "F1" ? 1 : 2, offset, z, &v);
    else
      st = bicirc_assoc(w.w, afam.c_str(), kn, offset, z, &v);
    if (st != BICIRC_OK) fail(st, "assoc");
    config["z"] = json::array({z.re, z.im});
    out.emit_coeff_table(config, {{afam, kn, offset, v}});
    return 0;
  }

  return 3;
}
