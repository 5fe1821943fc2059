/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "bicirc/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <thread>

#include "bicirc/associated.hpp"
#include "bicirc/determinants.hpp"
#include "bicirc/expweight.hpp"
#include "bicirc/kernels.hpp"
#include "bicirc/multiint.hpp"
#include "bicirc/polynomials.hpp"
#include "bicirc/recurrences.hpp"

namespace bicirc {

namespace {

constexpr double kPi = 3.14159265358979323846;

int thread_budget(int requested) {
  if (requested >= 1) return requested;
  if (const char* env = std::getenv("BIOCIRC_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

double unit_rand(unsigned long long& state) {
  state += 0x9e3779b97f4a7c15ULL;
  unsigned long long z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  return static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
}

// One deferred check; the runner fills suite/status.
struct Job {
  std::string name;
  int n;
  int offset;
  double tol;
  bool at_least = false;  // pass when residual >= tol (negative controls)
  std::function<std::optional<double>()> fn;
};

class Jobs {
 public:
  explicit Jobs(const VerifyOptions& opt) : opt_(opt) {}

  void add(std::string name, int n, int offset, double tol,
           std::function<std::optional<double>()> fn) {
    jobs_.push_back({std::move(name), n, offset, tol, false, std::move(fn)});
  }
  void add_floor(std::string name, int n, int offset, double bound,
                 std::function<std::optional<double>()> fn) {
    jobs_.push_back({std::move(name), n, offset, bound, true, std::move(fn)});
  }

  std::vector<CheckResult> run(const std::string& suite) {
    std::vector<CheckResult> out(jobs_.size());
    std::vector<std::exception_ptr> errs(jobs_.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= jobs_.size()) return;
        Job& j = jobs_[i];
        CheckResult r;
        r.suite = suite;
        r.name = j.name;
        r.n = j.n;
        r.offset = j.offset;
        r.tol = j.tol * (j.at_least ? 1.0 : opt_.tol_scale);
        try {
          std::optional<double> res = j.fn();
          if (!res) {
            r.status = CheckStatus::NotApplicable;
          } else {
            r.residual = *res;
            bool ok = j.at_least ? (*res >= r.tol) : (*res <= r.tol);
            r.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
          }
        } catch (...) {
          errs[i] = std::current_exception();
        }
        out[i] = std::move(r);
      }
    };
    int nthreads = std::min<int>(thread_budget(opt_.threads), static_cast<int>(jobs_.size()));
    if (nthreads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
    return out;
  }

 private:
  const VerifyOptions& opt_;
  std::vector<Job> jobs_;
};

std::vector<cplx> offcircle_grid() { return test_grid(false); }

int pick(int fallback, int n_max) { return n_max < 0 ? fallback : n_max; }

// ---------------------------------------------------------------- dodgson
void suite_dodgson(Jobs& jobs, const Weight& w, const VerifyOptions& opt) {
  int nmax = std::min(pick(4, opt.n_max), 6);
  for (StructKind kind : {StructKind::TwoJK, StructKind::JTwoK})
    for (int offset = -2; offset <= 4; ++offset)
      for (int n = 0; n <= nmax; ++n) {
        std::string name = std::string("dodgson ") +
                           (kind == StructKind::TwoJK ? "2jk" : "j2k") + " all minors";
        jobs.add(name, n, offset, 1e-10, [kind, offset, n, w]() -> std::optional<double> {
          auto [lo, hi] = required_window(kind, offset, n + 3);
          MomentTable table(w, lo - 2, hi + 2);
          cplx z = std::polar(0.5, 0.35), zeta = std::polar(1.5, 1.85);
          double worst = -1.0;
          int size = n + 3;
          for (int j1 = 0; j1 < size; ++j1)
            for (int j2 = j1 + 1; j2 < size; ++j2)
              for (int k1 = 0; k1 < size; ++k1)
                for (int k2 = k1 + 1; k2 < size; ++k2) {
                  auto r = dodgson_residual(kind, offset, n, z, zeta, {j1, j2}, {k1, k2}, table);
                  if (r) worst = std::max(worst, *r);
                }
          if (worst < 0.0) return std::nullopt;
          return worst;
        });
      }
}

// ---------------------------------------------------------------- duality
void suite_duality(Jobs& jobs, const Weight& w, const VerifyOptions& opt) {
  int nmax = pick(6, opt.n_max);
  for (int r = 0; r <= 4; ++r)
    for (int n = 0; n <= nmax; ++n)
      jobs.add("det duality D=E", n, r, 1e-12,
               [w, r, n]() -> std::optional<double> { return duality_check(r, n, w); });
  for (StructKind kind : {StructKind::TwoJK, StructKind::JTwoK})
    for (int n : {2, 4})
      jobs.add("antidiagonal reflection", n, 1, 1e-12, [w, kind, n]() -> std::optional<double> {
        auto [lo, hi] = required_window(kind, 1, n);
        MomentTable t(w, lo, hi);
        StructuredMatrix m = build(kind, 1, n, t);
        cplx d1 = det(m);
        cplx d2 = LuFactor(m.a.antitranspose()).det();
        return std::abs(d1 - d2) / std::max(1.0, std::abs(d1));
      });
  int pmax = std::min(pick(5, opt.n_max), 6);
  auto grid = test_grid(true);
  for (int s = 0; s <= 4; ++s)
    for (int n = 0; n <= pmax; ++n) {
      jobs.add("poly duality S*~P", n, s, 1e-10, [w, s, n, grid]() -> std::optional<double> {
        SystemFamily d(w, StructKind::TwoJK), e(w, StructKind::JTwoK);
        if (e.at(s).det_vanishing(n) || d.at(s - n + 2).det_vanishing(n) || !e.at(s).degree_ok(n) ||
            !d.at(s - n + 2).degree_ok(n))
          return std::nullopt;
        return duality_S_P(d, e, n, s, grid);
      });
      jobs.add("poly duality R~Q*", n, s, 1e-10, [w, s, n, grid]() -> std::optional<double> {
        SystemFamily d(w, StructKind::TwoJK), e(w, StructKind::JTwoK);
        if (e.at(s).det_vanishing(n) || d.at(s - n - 1).det_vanishing(n) || !e.at(s).degree_ok(n) ||
            !d.at(s - n - 1).degree_ok(n))
          return std::nullopt;
        return duality_R_Q(d, e, n, s, grid);
      });
    }
}

// ---------------------------------------------------------------- biorth
int max_constructible(BiorthSystem& sys, int cap) {
  int n = 0;
  while (n < cap && !sys.det_vanishing(n + 1)) ++n;
  return n;
}

void suite_biorth(Jobs& jobs, const Weight& w, const VerifyOptions& opt) {
  int nmax = pick(6, opt.n_max);
  // Existence gate at the canonical offset: banded/constant weights fail
  // here with SingularDeterminant, which deliberately propagates.
  jobs.add("existence P at r=0", std::min(nmax, 3), 0, 1e30, [w, nmax]() -> std::optional<double> {
    BiorthSystem sys(w, StructKind::TwoJK, 0);
    for (int n = 0; n <= std::min(nmax, 3); ++n) sys.poly_first(n);
    return 0.0;
  });
  std::vector<std::pair<StructKind, int>> cells;
  for (int r : {0, 1, 2}) cells.push_back({StructKind::TwoJK, r});
  for (int s : {0, 1, 2, nmax + 1}) cells.push_back({StructKind::JTwoK, s});
  for (auto [kind, offset] : cells) {
    const char* tag = kind == StructKind::TwoJK ? "PQ pairing" : "RS pairing";
    jobs.add(tag, nmax, offset, 1e-10, [w, kind, offset, nmax]() -> std::optional<double> {
      BiorthSystem sys(w, kind, offset);
      int top = max_constructible(sys, nmax);
      if (top < 1) return std::nullopt;
      double worst = 0.0;
      for (int m = 0; m <= top; ++m)
        for (int n = 0; n <= top; ++n) worst = std::max(worst, biorth_residual(sys, m, n));
      return worst;
    });
    jobs.add("det = product of norms", nmax, offset, 1e-10,
             [w, kind, offset, nmax]() -> std::optional<double> {
               BiorthSystem sys(w, kind, offset);
               int top = max_constructible(sys, nmax);
               if (top < 1) return std::nullopt;
               double worst = 0.0;
               cplx prod(1.0);
               for (int n = 1; n <= top; ++n) {
                 prod *= sys.norm(n - 1);
                 worst = std::max(worst,
                                  std::abs(prod - sys.det(n)) / std::max(1e-300, std::abs(sys.det(n))));
               }
               return worst;
             });
    jobs.add("norm vs pairing integral", nmax, offset, 1e-10,
             [w, kind, offset, nmax]() -> std::optional<double> {
               BiorthSystem sys(w, kind, offset);
               int top = max_constructible(sys, nmax);
               if (top < 1) return std::nullopt;
               double worst = 0.0;
               for (int n = 0; n <= top; ++n)
                 worst = std::max(worst, biorth_residual(sys, n, n));
               return worst;
             });
    jobs.add("monic leading coefficient", nmax, offset, 1e-12,
             [w, kind, offset, nmax]() -> std::optional<double> {
               BiorthSystem sys(w, kind, offset);
               int top = max_constructible(sys, nmax);
               double worst = 0.0;
               for (int n = 0; n <= top; ++n) {
                 worst = std::max(worst, std::abs(sys.poly_first(n).leading() - cplx(1.0)));
                 worst = std::max(worst, std::abs(sys.poly_second(n).leading() - cplx(1.0)));
               }
               return worst;
             });
    jobs.add("ldu product diagonal", std::min(nmax, 4), offset, 1e-9,
             [w, kind, offset, nmax]() -> std::optional<double> {
               BiorthSystem sys(w, kind, offset);
               int top = max_constructible(sys, std::min(nmax, 4));
               if (top < 1) return std::nullopt;
               return ldu(sys, top).residual;
             });
  }
  // bordered representation: P_d from the master-matrix minor.
  for (int d = 1; d <= std::min(nmax, 5); ++d)
    jobs.add("P equals bordered master minor", d, 1, 1e-10, [w, d]() -> std::optional<double> {
      BiorthSystem sys(w, StructKind::TwoJK, 1);
      if (!sys.degree_ok(d)) return std::nullopt;
      int n = d - 1;
      auto [lo, hi] = required_window(StructKind::TwoJK, 1, n + 3);
      MomentTable table(w, lo, hi);
      double worst = 0.0;
      for (cplx z : offcircle_grid()) {
        cplx minor = master_minor(StructKind::TwoJK, 1, n, cplx(0.3), z,
                                  {{n + 1}, {n + 2}}, table);
        cplx got = minor / sys.det(d);
        cplx want = sys.poly_first(d).eval(z);
        worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
      }
      return worst;
    });
  // tails against determinant ratios (the cross-check throws on mismatch).
  for (char fam : {'P', 'Q', 'R', 'S'})
    jobs.add(std::string("tail det-ratio ") + fam, std::min(nmax, 5), 1, 1e-10,
             [w, fam, nmax]() -> std::optional<double> {
               bool two = fam == 'P' || fam == 'Q';
               SystemFamily f(w, two ? StructKind::TwoJK : StructKind::JTwoK);
               int done = 0;
               for (int off : {1, 2, nmax + 1}) {
                 for (int n = 0; n <= std::min(nmax, 5); ++n) {
                   try {
                     tail(f, fam, n, off);
                     ++done;
                   } catch (const SingularDeterminant&) {
                     break;
                   }
                 }
               }
               if (done == 0) return std::nullopt;
               return 0.0;  // tail() itself asserts the 1e-10 agreement
             });
  // reciprocal is an involution on the cached polynomials.
  jobs.add("reciprocal involution", std::min(nmax, 5), 0, 0.0, [w, nmax]() -> std::optional<double> {
    BiorthSystem sys(w, StructKind::TwoJK, 0);
    int top = max_constructible(sys, std::min(nmax, 5));
    double worst = 0.0;
    for (int n = 0; n <= top; ++n) {
      const auto& p = sys.poly_first(n);
      const auto& rr = p.reciprocal().reciprocal();
      for (int i = 0; i <= n; ++i) worst = std::max(worst, std::abs(p.coeff(i) - rr.coeff(i)));
    }
    return worst;
  });
}

// ---------------------------------------------------------------- recur
void suite_recur(Jobs& jobs, const Weight& w, const VerifyOptions& opt) {
  int nmax = pick(5, opt.n_max);
  bool isexp = w.kind() == Weight::Kind::ExpLinear;
  auto grid = test_grid(true);
  for (StructKind kind : {StructKind::TwoJK, StructKind::JTwoK})
    for (int n = 0; n <= nmax; ++n)
      for (int offset = 0; offset <= 4; ++offset)
        jobs.add(std::string("coefficient redundancies ") +
                     (kind == StructKind::TwoJK ? "2jk" : "j2k"),
                 n, offset, 1e-10, [w, kind, n, offset]() -> std::optional<double> {
                   SystemFamily fam(w, kind);
                   return coeff_redundancy_residual(fam, n, offset);
                 });
  for (char fam : {'P', 'Q', 'R', 'S'}) {
    bool two = fam == 'P' || fam == 'Q';
    StructKind kind = two ? StructKind::TwoJK : StructKind::JTwoK;
    for (int n = 0; n <= nmax; ++n)
      for (int offset = 0; offset <= 4; ++offset) {
        jobs.add(std::string("pure-degree recurrence ") + fam, n, offset, 1e-9,
                 [w, kind, fam, n, offset, grid]() -> std::optional<double> {
                   SystemFamily f(w, kind);
                   CoeffFn cf = kind == StructKind::TwoJK ? generic_coeffs(&f, nullptr)
                                                          : generic_coeffs(nullptr, &f);
                   double worst = -1.0;
                   for (cplx z : grid) {
                     auto r = degree_residual(f, fam, n, offset, z, cf);
                     if (!r) return std::nullopt;
                     worst = std::max(worst, *r);
                   }
                   return worst;
                 });
        jobs.add(std::string("pure-offset recurrence ") + fam, n, offset, 1e-9,
                 [w, kind, fam, n, offset, grid]() -> std::optional<double> {
                   SystemFamily f(w, kind);
                   CoeffFn cf = kind == StructKind::TwoJK ? generic_coeffs(&f, nullptr)
                                                          : generic_coeffs(nullptr, &f);
                   double worst = -1.0;
                   for (cplx z : grid) {
                     auto r = offset_residual(f, fam, n, offset, z, cf);
                     if (!r) return std::nullopt;
                     worst = std::max(worst, *r);
                   }
                   return worst;
                 });
      }
  }
  for (int n = 0; n <= std::min(nmax, 4); ++n)
    for (int offset = 0; offset <= 4; ++offset)
      jobs.add("first-order shifts", n, offset, 1e-9,
               [w, n, offset, grid]() -> std::optional<double> {
                 SystemFamily d(w, StructKind::TwoJK), e(w, StructKind::JTwoK);
                 CoeffFn cf = generic_coeffs(&d, &e);
                 double worst = -1.0;
                 bool any = false;
                 for (cplx z : grid) {
                   auto rs = first_order_residuals(d, e, n, offset, z, cf);
                   for (auto& r : rs)
                     if (r) {
                       any = true;
                       worst = std::max(worst, *r);
                     }
                 }
                 if (!any) return std::nullopt;
                 return worst;
               });
  for (int n = 0; n <= std::min(nmax, 4); ++n)
    for (int offset = 0; offset <= 4; ++offset) {
      jobs.add("tail products", n, offset, 1e-10, [w, n, offset]() -> std::optional<double> {
        SystemFamily d(w, StructKind::TwoJK), e(w, StructKind::JTwoK);
        CoeffFn cf = generic_coeffs(&d, &e);
        auto rs = tail_product_residuals(d, e, n, offset, cf);
        double worst = -1.0;
        bool any = false;
        for (auto& r : rs)
          if (r) {
            any = true;
            worst = std::max(worst, *r);
          }
        return any ? std::optional<double>(worst) : std::nullopt;
      });
      jobs.add("tail offset relations", n, offset, 1e-10, [w, n, offset]() -> std::optional<double> {
        SystemFamily d(w, StructKind::TwoJK), e(w, StructKind::JTwoK);
        CoeffFn cf = generic_coeffs(&d, &e);
        auto rs = tail_offset_residuals(d, e, n, offset, cf);
        double worst = -1.0;
        bool any = false;
        for (auto& r : rs)
          if (r) {
            any = true;
            worst = std::max(worst, *r);
          }
        return any ? std::optional<double>(worst) : std::nullopt;
      });
    }
  for (char fam : {'P', 'R'})
    for (int n = 1; n <= std::min(nmax, 4); ++n)
      for (int offset = 0; offset <= 3; ++offset)
        jobs.add(std::string("offset mod-3 reconstruction ") + fam, n, offset, 1e-10,
                 [w, fam, n, offset]() -> std::optional<double> {
                   StructKind kind = fam == 'P' ? StructKind::TwoJK : StructKind::JTwoK;
                   SystemFamily f(w, kind);
                   CoeffFn cf = kind == StructKind::TwoJK ? generic_coeffs(&f, nullptr)
                                                          : generic_coeffs(nullptr, &f);
                   return offset_shift_reconstruction(f, fam, n, offset, cf);
                 });
  for (StructKind kind : {StructKind::TwoJK, StructKind::JTwoK})
    for (int n = 1; n <= pick(6, opt.n_max); ++n)
      for (int offset = 0; offset <= 2; ++offset)
        jobs.add(std::string("determinant from tails ") +
                     (kind == StructKind::TwoJK ? "2jk" : "j2k"),
                 n, offset, 1e-9, [w, kind, n, offset]() -> std::optional<double> {
                   SystemFamily f(w, kind);
                   try {
                     cplx got = reconstruct_det_from_tails(f, offset, n);
                     cplx want = f.at(offset).det(n);
                     return std::abs(got - want) / std::max(1e-300, std::abs(want));
                   } catch (const SingularDeterminant&) {
                     return std::nullopt;
                   }
                 });
  for (int n = 0; n <= std::min(nmax, 3); ++n)
    for (int offset = 0; offset <= 3; ++offset) {
      jobs.add("bilinear Q from P", n, offset, 1e-10, [w, n, offset]() -> std::optional<double> {
        SystemFamily d(w, StructKind::TwoJK);
        double worst = -1.0;
        for (cplx z : offcircle_grid()) {
          auto r = bilinear_Q_from_P(d, n, offset, z);
          if (!r) return std::nullopt;
          worst = std::max(worst, *r);
        }
        return worst;
      });
      jobs.add("bilinear R from S", n, offset, 1e-10, [w, n, offset]() -> std::optional<double> {
        SystemFamily e(w, StructKind::JTwoK);
        double worst = -1.0;
        for (cplx z : offcircle_grid()) {
          auto r = bilinear_R_from_S(e, n, offset, z);
          if (!r) return std::nullopt;
          worst = std::max(worst, *r);
        }
        return worst;
      });
    }
  if (isexp) {
    // Specialized closed-coefficient recurrences hold at every offset >= 0,
    // including the ones the determinant-ratio route cannot reach.
    CoeffFn cf = expweight::closed_coeffs();
    for (int n = 0; n <= std::min(nmax, 3); ++n)
      for (int r = 0; r <= 4; ++r) {
        jobs.add("exp closed-coefficient degree recurrence P", n, r, 1e-9,
                 [w, n, r, grid, cf]() -> std::optional<double> {
                   SystemFamily f(w, StructKind::TwoJK);
                   double worst = -1.0;
                   for (cplx z : grid) {
                     auto res = degree_residual(f, 'P', n, r, z, cf);
                     if (!res) return std::nullopt;
                     worst = std::max(worst, *res);
                   }
                   return worst;
                 });
        jobs.add("exp closed-coefficient offset recurrence Q*", n, r, 1e-9,
                 [w, n, r, grid, cf]() -> std::optional<double> {
                   SystemFamily f(w, StructKind::TwoJK);
                   double worst = -1.0;
                   for (cplx z : grid) {
                     auto res = offset_residual(f, 'Q', n, r, z, cf);
                     if (!res) return std::nullopt;
                     worst = std::max(worst, *res);
                   }
                   return worst;
                 });
      }
  }
}

// ---------------------------------------------------------------- mixed
void suite_mixed(Jobs& jobs, const Weight& w, const VerifyOptions& opt) {
  int nmax = pick(5, opt.n_max);
  auto grid = test_grid(true);
  for (int n = 0; n + 1 <= nmax; ++n)
    for (int offset = 0; offset <= 4; ++offset)
      jobs.add("mixed recurrences (16)", n, offset, 1e-9,
               [w, n, offset, grid]() -> std::optional<double> {
                 SystemFamily d(w, StructKind::TwoJK), e(w, StructKind::JTwoK);
                 double worst = -1.0;
                 bool any = false;
                 for (cplx z : grid) {
                   auto rs = mixed_residuals(d, e, n, offset, z);
                   for (auto& r : rs)
                     if (r) {
                       any = true;
                       worst = std::max(worst, *r);
                     }
                 }
                 return any ? std::optional<double>(worst) : std::nullopt;
               });
}

// ---------------------------------------------------------------- kernels
void suite_kernels(Jobs& jobs, const Weight& w, const VerifyOptions& opt) {
  int nmax = std::min(pick(4, opt.n_max), 6);
  auto grid = offcircle_grid();
  for (StructKind kind : {StructKind::TwoJK, StructKind::JTwoK}) {
    const char* tag = kind == StructKind::TwoJK ? "K" : "L";
    for (int offset = 0; offset <= 3; ++offset) {
      for (int n = 1; n <= nmax; ++n)
        jobs.add(std::string(tag) + " sum vs master determinant", n, offset, 1e-9,
                 [w, kind, n, offset, grid]() -> std::optional<double> {
                   BiorthSystem sys(w, kind, offset);
                   if (!sys.degree_ok(n + 1)) return std::nullopt;
                   for (int j = 0; j <= n; ++j)
                     if (std::abs(sys.norm(j)) == 0.0) return std::nullopt;
                   double worst = 0.0;
                   for (cplx z : grid)
                     for (cplx zz : {grid[1], grid[6]}) {
                       cplx a = kernel_sum(sys, n, z, zz);
                       cplx b = kernel_master(sys, n, z, zz);
                       worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
                     }
                   return worst;
                 });
      for (int n = 0; n <= nmax; ++n) {
        jobs.add(std::string(tag) + " normalization = n+1", n, offset, 1e-10,
                 [w, kind, n, offset]() -> std::optional<double> {
                   BiorthSystem sys(w, kind, offset);
                   if (!sys.degree_ok(n + 1)) return std::nullopt;
                   for (int j = 0; j <= n; ++j)
                     if (std::abs(sys.norm(j)) == 0.0) return std::nullopt;
                   return kernel_normalization_residual(sys, n);
                 });
        for (int ell = 0; ell <= n + 1; ++ell)
          jobs.add(std::string(tag) + (ell <= n ? " reproducing" : " annihilation"), n, offset,
                   1e-10, [w, kind, n, offset, ell, grid]() -> std::optional<double> {
                     BiorthSystem sys(w, kind, offset);
                     if (!sys.degree_ok(std::max(n, ell) + 1)) return std::nullopt;
                     for (int j = 0; j <= n; ++j)
                       if (std::abs(sys.norm(j)) == 0.0) return std::nullopt;
                     auto rr = reproducing_residuals(sys, n, ell, grid);
                     return std::max(rr.second_side, rr.first_side);
                   });
        jobs.add(std::string(tag) + " projection", n, offset, 1e-9,
                 [w, kind, n, offset, grid]() -> std::optional<double> {
                   BiorthSystem sys(w, kind, offset);
                   if (!sys.degree_ok(n + 1)) return std::nullopt;
                   for (int j = 0; j <= n; ++j)
                     if (std::abs(sys.norm(j)) == 0.0) return std::nullopt;
                   double worst = 0.0;
                   for (size_t i = 0; i + 1 < grid.size(); i += 2)
                     worst = std::max(worst, projection_residual(sys, n, grid[i], grid[i + 1]));
                   return worst;
                 });
        jobs.add(std::string(tag) + " leading behavior", n, offset, 1e-6,
                 [w, kind, n, offset, grid]() -> std::optional<double> {
                   BiorthSystem sys(w, kind, offset);
                   if (!sys.degree_ok(n + 1)) return std::nullopt;
                   for (int j = 0; j <= n; ++j)
                     if (std::abs(sys.norm(j)) == 0.0) return std::nullopt;
                   return leading_behavior_residual(sys, n, cplx(1e6), grid[2]);
                 });
      }
    }
  }
  for (int n = 0; n <= nmax; ++n)
    for (int s = 0; s <= 3; ++s)
      jobs.add("L from K cross identity", n, s, 1e-9,
               [w, n, s, grid]() -> std::optional<double> {
                 SystemFamily d(w, StructKind::TwoJK), e(w, StructKind::JTwoK);
                 if (!e.at(s).degree_ok(n + 1) || !d.at(s - n).degree_ok(n + 1))
                   return std::nullopt;
                 for (int j = 0; j <= n; ++j)
                   if (std::abs(e.at(s).norm(j)) == 0.0 || std::abs(d.at(s - n).norm(j)) == 0.0)
                     return std::nullopt;
                 double worst = 0.0;
                 for (size_t i = 0; i + 1 < grid.size(); i += 2)
                   worst = std::max(worst, cross_kernel_residual(d, e, n, s, grid[i], grid[i + 1]));
                 return worst;
               });
}

// ---------------------------------------------------------------- cd
void suite_cd(Jobs& jobs, const Weight& w, const VerifyOptions& opt) {
  int nmax = std::min(pick(4, opt.n_max), 6);
  auto grid = offcircle_grid();
  for (StructKind kind : {StructKind::TwoJK, StructKind::JTwoK})
    for (int offset : {0, 1, 2, 3, 6, 8})
      for (int n = 0; n <= nmax; ++n)
        jobs.add(std::string(kind == StructKind::TwoJK ? "K" : "L") +
                     " Christoffel-Darboux vs sum",
                 n, offset, 1e-9, [w, kind, n, offset, grid]() -> std::optional<double> {
                   SystemFamily fam(w, kind);
                   BiorthSystem& base = fam.at(offset);
                   int shifted = kind == StructKind::TwoJK ? offset + 2 : offset - 2;
                   if (!base.degree_ok(n + 1) || !fam.at(shifted).degree_ok(n + 2))
                     return std::nullopt;
                   for (int j = 0; j <= n; ++j)
                     if (std::abs(base.norm(j)) == 0.0) return std::nullopt;
                   double worst = 0.0;
                   for (size_t i = 0; i + 1 < grid.size(); i += 2) {
                     cplx z1 = grid[i], z2 = grid[i + 1];
                     cplx got = kernel_cd(fam, n, offset, z1, z2);
                     cplx want = kind == StructKind::TwoJK
                                     ? kernel_sum(base, n, z2 * z2, z1)
                                     : kernel_sum(base, n, z2, z1 * z1);
                     worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
                   }
                   return worst;
                 });
  jobs.add("degenerate point raises", 1, 0, 1e30, [w]() -> std::optional<double> {
    SystemFamily fam(w, StructKind::TwoJK);
    cplx z2 = std::polar(1.4, 0.3);
    cplx z1 = cplx(1.0) / z2;  // z1^2 == z2^-2
    try {
      kernel_cd(fam, 1, 0, z1, z2);
    } catch (const DegenerateCDPoint&) {
      return 0.0;  // expected guard
    }
    return 1e31;  // guard did not fire
  });
}

// ---------------------------------------------------------------- oracle
void suite_oracle(Jobs& jobs, const Weight& w, const VerifyOptions& opt) {
  int M = opt.oracle_m;
  for (int n = 0; n <= 3; ++n)
    for (int offset = 0; offset <= 2; ++offset) {
      jobs.add("oracle determinant 2jk", n, offset, 1e-10, [w, n, offset, M]() -> std::optional<double> {
        MultiIntOracle oracle(w, M);
        BiorthSystem sys(oracle.weight(), StructKind::TwoJK, offset);
        cplx want = sys.det(n);
        cplx got = oracle.d_multi(offset, n);
        return std::abs(got - want) / std::max(1.0, std::abs(want));
      });
      jobs.add("oracle determinant j2k", n, offset, 1e-10, [w, n, offset, M]() -> std::optional<double> {
        MultiIntOracle oracle(w, M);
        BiorthSystem sys(oracle.weight(), StructKind::JTwoK, offset);
        cplx want = sys.det(n);
        cplx got = oracle.e_multi(offset, n);
        return std::abs(got - want) / std::max(1.0, std::abs(want));
      });
    }
  for (char fam : {'P', 'Q', 'R', 'S'})
    for (int n = 1; n <= 3; ++n)
      jobs.add(std::string("oracle polynomial ") + fam, n, fam == 'R' || fam == 'S' ? 2 : 0, 1e-8,
               [w, fam, n, M]() -> std::optional<double> {
                 int offset = (fam == 'R' || fam == 'S') ? 2 : 0;
                 MultiIntOracle oracle(w, M);
                 StructKind kind =
                     (fam == 'P' || fam == 'Q') ? StructKind::TwoJK : StructKind::JTwoK;
                 BiorthSystem sys(oracle.weight(), kind, offset);
                 if (!sys.degree_ok(n)) return std::nullopt;
                 cplx z = std::polar(0.7, 0.55);
                 cplx got = oracle.poly(fam, n, offset, z);
                 cplx want = (fam == 'P' || fam == 'R') ? sys.poly_first(n).eval(z)
                                                        : sys.poly_second(n).eval(z);
                 return std::abs(got - want) / std::max(1.0, std::abs(want));
               });
  for (StructKind kind : {StructKind::TwoJK, StructKind::JTwoK})
    for (int n = 0; n <= 2; ++n)
      jobs.add(std::string("oracle kernel ") + (kind == StructKind::TwoJK ? "K" : "L"), n,
               kind == StructKind::TwoJK ? 0 : 2, 1e-8, [w, kind, n, M]() -> std::optional<double> {
                 int offset = kind == StructKind::TwoJK ? 0 : 2;
                 MultiIntOracle oracle(w, M);
                 BiorthSystem sys(oracle.weight(), kind, offset);
                 if (!sys.degree_ok(n + 1)) return std::nullopt;
                 for (int j = 0; j <= n; ++j)
                   if (std::abs(sys.norm(j)) == 0.0) return std::nullopt;
                 cplx z1 = cplx(0.6), z2 = cplx(0.9, 0.2);
                 cplx got = oracle.kernel(kind, n, offset, z1, z2);
                 cplx want = kernel_sum(sys, n, z2, z1);
                 return std::abs(got - want) / std::max(1.0, std::abs(want));
               });
  jobs.add("oracle kernel K", 3, 0, 1e-8, [w, M]() -> std::optional<double> {
    MultiIntOracle oracle(w, M);
    BiorthSystem sys(oracle.weight(), StructKind::TwoJK, 0);
    if (!sys.degree_ok(4)) return std::nullopt;
    cplx z1 = cplx(0.6), z2 = cplx(0.9, 0.2);
    cplx got = oracle.kernel(StructKind::TwoJK, 3, 0, z1, z2);
    cplx want = kernel_sum(sys, 3, z2, z1);
    return std::abs(got - want) / std::max(1.0, std::abs(want));
  });
  for (char fam : {'P', 'Q', 'R', 'S'})
    for (int n = 0; n <= 1; ++n)
      for (double rho : {0.5, 1.5})
        jobs.add(std::string("oracle associated ") + fam, n, fam == 'R' || fam == 'S' ? 3 : 0,
                 1e-7, [w, fam, n, rho, M]() -> std::optional<double> {
                   int offset = (fam == 'R' || fam == 'S') ? 3 : 0;
                   MultiIntOracle oracle(w, M);
                   StructKind kind =
                       (fam == 'P' || fam == 'Q') ? StructKind::TwoJK : StructKind::JTwoK;
                   BiorthSystem sys(oracle.weight(), kind, offset);
                   if (!sys.degree_ok(n + 1)) return std::nullopt;
                   cplx z = std::polar(rho, 0.85);
                   cplx got = oracle.assoc(fam, n, offset, z);
                   cplx want = assoc_hat(sys, fam, n, z);
                   return std::abs(got - want) / std::max(1.0, std::abs(want));
                 });
  for (int n = 1; n <= 3; ++n)
    for (int r = 0; r <= 2; ++r)
      for (int fidx = 0; fidx <= 2; ++fidx)
        jobs.add("oracle transfer D=E", n, r, 1e-9, [w, n, r, fidx, M]() -> std::optional<double> {
          MultiIntOracle oracle(w, M);
          return oracle.transfer_check(n, r, fidx);
        });
  for (StructKind kind : {StructKind::TwoJK, StructKind::JTwoK})
    for (int n = 1; n <= 2; ++n)
      for (int m = 1; m <= std::min(n + 1, 3); ++m)
        jobs.add(std::string("gaudin integration ") + (kind == StructKind::TwoJK ? "K" : "L"), n,
                 kind == StructKind::TwoJK ? 0 : 2, 1e-8,
                 [w, kind, n, m, M]() -> std::optional<double> {
                   int offset = kind == StructKind::TwoJK ? 0 : 2;
                   MultiIntOracle oracle(w, M);
                   BiorthSystem sys(oracle.weight(), kind, offset);
                   if (!sys.degree_ok(n + 1)) return std::nullopt;
                   for (int j = 0; j <= n; ++j)
                     if (std::abs(sys.norm(j)) == 0.0) return std::nullopt;
                   return oracle.gaudin_check(kind, n, m, offset);
                 });
  jobs.add("joint density factorization", 4, 0, 1e-12, [opt]() -> std::optional<double> {
    double worst = 0.0;
    for (int i = 0; i < 8; ++i)
      worst = std::max(worst, MultiIntOracle::joint_density_residual(4, opt.seed + i));
    return worst;
  });
  for (int n = 0; n <= 2; ++n)
    jobs.add("oracle bilinear Q from P", n, 0, 1e-8, [w, n, M]() -> std::optional<double> {
      MultiIntOracle oracle(w, M);
      cplx z(0.8, 0.1);
      cplx lhs = oracle.poly('Q', n, 0, z * z);
      cplx zi = cplx(1.0) / z;
      cplx ratio = oracle.d_multi(2, n) / oracle.d_multi(0, n);
      cplx br = oracle.poly('P', n + 1, 2, zi) * oracle.poly('P', n, 2, -zi) -
                oracle.poly('P', n + 1, 2, -zi) * oracle.poly('P', n, 2, zi);
      cplx rhs = ratio * std::pow(z, 2 * n + 1) * 0.5 * br;
      return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
    });
  // tau-function checks (weight-independent): u = 0 reduction and the
  // contour-quadrature oracle for the deformed moments.
  for (int n = 0; n <= 4; ++n)
    for (int ell = 0; ell <= 3; ++ell)
      jobs.add("tau at u=0 equals exp determinant", n, ell, 1e-12,
               [n, ell]() -> std::optional<double> {
                 BiorthSystem sys(Weight::exp_linear(), StructKind::TwoJK, ell);
                 cplx got = tau(n, ell, cplx(0.0));
                 cplx want = sys.det(n);
                 return std::abs(got - want) / std::max(1.0, std::abs(want));
               });
  for (double u : {0.3, 1.0, 2.0})
    jobs.add("tau(1,0,u) vs contour quadrature", 1, 0, 1e-10, [u]() -> std::optional<double> {
      cplx got = tau(1, 0, cplx(u));
      int M = 256;
      cplx acc(0.0);
      for (int j = 0; j < M; ++j) {
        cplx zeta = std::polar(1.0, 2.0 * kPi * j / M);
        acc += std::exp(zeta + u / (zeta * zeta));
      }
      return std::abs(got - acc / static_cast<double>(M));
    });
}

// ---------------------------------------------------------------- assoc
void suite_assoc(Jobs& jobs, const Weight& w, const VerifyOptions& opt) {
  int nmax = std::min(pick(3, opt.n_max), 5);
  auto grid = offcircle_grid();
  bool isexp = w.kind() == Weight::Kind::ExpLinear;
  for (int offset = 0; offset <= 2; ++offset)
    jobs.add("F2 series vs quadrature", -1, offset, 1e-10, [w, offset, grid]() -> std::optional<double> {
      int M = 1024;
      double worst = 0.0;
      for (cplx z : grid) {
        cplx got = F2(w, offset, z);
        cplx acc(0.0);
        for (int j = 0; j < M; ++j) {
          cplx zeta = std::polar(1.0, 2.0 * kPi * j / M);
          acc += w.eval(zeta) * std::pow(zeta, -offset) * (zeta + z) / (zeta - z);
        }
        acc /= static_cast<double>(M);
        worst = std::max(worst, std::abs(got - acc) / std::max(1.0, std::abs(acc)));
      }
      return worst;
    });
  jobs.add("Qhat_0 = F2 and Phat_0 = F1", 0, 1, 1e-13, [w, grid]() -> std::optional<double> {
    BiorthSystem sys(w, StructKind::TwoJK, 1);
    double worst = 0.0;
    for (cplx z : grid) {
      worst = std::max(worst, std::abs(assoc_hat(sys, 'Q', 0, z) - F2(w, 1, z)));
      worst = std::max(worst, std::abs(assoc_hat(sys, 'P', 0, z) - F1(w, 1, z)));
    }
    return worst;
  });
  jobs.add("even symmetrization of Phat/Shat", 2, 1, 1e-12, [w, grid]() -> std::optional<double> {
    BiorthSystem d(w, StructKind::TwoJK, 1);
    BiorthSystem e(w, StructKind::JTwoK, 1);
    double worst = 0.0;
    for (cplx z : {grid[0], grid[5]}) {
      if (d.degree_ok(2)) {
        cplx a = assoc_hat(d, 'P', 2, z);
        cplx b = 0.5 * (assoc_hat(d, 'p', 2, z) + assoc_hat(d, 'p', 2, -z));
        worst = std::max(worst, std::abs(a - b));
        worst = std::max(worst, std::abs(a - assoc_hat(d, 'P', 2, -z)));
      }
      if (e.degree_ok(2)) {
        cplx a = assoc_hat(e, 'S', 2, z);
        cplx b = 0.5 * (assoc_hat(e, 's', 2, z) + assoc_hat(e, 's', 2, -z));
        worst = std::max(worst, std::abs(a - b));
      }
      worst = std::max(worst, std::abs(F1(w, 1, z) - F1(w, 1, -z)));
    }
    return worst;
  });
  jobs.add("check functions vanish at n=0", 0, 1, 1e-12, [w, grid]() -> std::optional<double> {
    BiorthSystem d(w, StructKind::TwoJK, 1);
    BiorthSystem e(w, StructKind::JTwoK, 1);
    double worst = 0.0;
    for (cplx z : {grid[1], grid[4]}) {
      worst = std::max(worst, std::abs(assoc_check(d, 'P', 0, z)));
      worst = std::max(worst, std::abs(assoc_check(d, 'Q', 0, z)));
      worst = std::max(worst, std::abs(assoc_check(e, 'R', 0, z)));
      worst = std::max(worst, std::abs(assoc_check(e, 'S', 0, z)));
    }
    return worst;
  });
  struct OpCase {
    int which;
    StructKind kind;
    char polyfam;
  };
  const OpCase cases[4] = {{1, StructKind::TwoJK, 'P'},
                           {2, StructKind::TwoJK, 'Q'},
                           {3, StructKind::JTwoK, 'R'},
                           {4, StructKind::JTwoK, 'S'}};
  for (const auto& oc : cases)
    for (int n = 1; n <= nmax; ++n)
      for (int offset : {0, 1, 2, 3, n + 4, n + 5})
        jobs.add("difference operator annihilation L" + std::to_string(oc.which), n, offset, 1e-9,
                 [w, oc, n, offset, grid, isexp]() -> std::optional<double> {
                   SystemFamily d(w, StructKind::TwoJK), e(w, StructKind::JTwoK);
                   CoeffFn cf = isexp && oc.kind == StructKind::TwoJK
                                    ? expweight::closed_coeffs()
                                    : generic_coeffs(&d, &e);
                   BiorthSystem& sys = (oc.kind == StructKind::TwoJK ? d : e).at(offset);
                   if (!sys.degree_ok(n + 3)) return std::nullopt;
                   double worst = -1.0;
                   for (cplx z : {grid[0], grid[5]}) {
                     // Solution set: polynomial branch and the hat branch.
                     std::function<cplx(int)> poly_seq, hat_seq;
                     switch (oc.which) {
                       case 1:
                         poly_seq = [&sys, z](int m) { return sys.poly_first(m).eval(z); };
                         hat_seq = [&sys, z](int m) { return assoc_hat(sys, 'P', m, z); };
                         break;
                       case 2:
                         poly_seq = [&sys, z](int m) {
                           return sys.poly_second(m).eval(cplx(1.0) / (z * z));
                         };
                         hat_seq = [&sys, z](int m) { return assoc_hat(sys, 'Q', m, z); };
                         break;
                       case 3:
                         poly_seq = [&sys, z](int m) { return sys.poly_first(m).eval(z * z); };
                         hat_seq = [&sys, z](int m) { return assoc_hat(sys, 'R', m, z); };
                         break;
                       default:
                         poly_seq = [&sys, z](int m) {
                           return sys.poly_second(m).eval(cplx(1.0) / z);
                         };
                         hat_seq = [&sys, z](int m) { return assoc_hat(sys, 'S', m, z); };
                     }
                     auto r1 = apply_L_residual(oc.which, poly_seq, n, offset, z, cf);
                     auto r2 = apply_L_residual(oc.which, hat_seq, n, offset, z, cf);
                     if (!r1 || !r2) return std::nullopt;
                     worst = std::max({worst, *r1, *r2});
                   }
                   return worst;
                 });
  jobs.add_floor("negative control: L1 on constants", 1, 2, 1e-3, [w, grid]() -> std::optional<double> {
    SystemFamily d(w, StructKind::TwoJK), e(w, StructKind::JTwoK);
    CoeffFn cf = w.kind() == Weight::Kind::ExpLinear ? expweight::closed_coeffs()
                                                     : generic_coeffs(&d, &e);
    double lowest = 1e300;
    bool any = false;
    for (cplx z : grid) {
      auto r = apply_L_residual(1, [](int) { return cplx(1.0); }, 1, 2, z, cf);
      if (r) {
        any = true;
        lowest = std::min(lowest, *r);
      }
    }
    if (!any) return std::nullopt;
    return lowest;
  });
  if (isexp)
    for (int r = 0; r <= 3; ++r)
      jobs.add("F2 closed form vs series (exp)", -1, r, 1e-12, [r, grid]() -> std::optional<double> {
        Weight w = Weight::exp_linear();
        double worst = 0.0;
        for (cplx z : grid)
          worst = std::max(worst, std::abs(expweight::F2_closed(r, z) - F2(w, r, z)));
        return worst;
      });
}

// ---------------------------------------------------------------- casorati
void suite_casorati(Jobs& jobs, const Weight& w, const VerifyOptions& opt) {
  int nmax = std::min(pick(3, opt.n_max), 4);
  auto grid = offcircle_grid();
  bool isexp = w.kind() == Weight::Kind::ExpLinear;
  for (char fam : {'P', 'Q', 'R', 'S'}) {
    StructKind kind = (fam == 'P' || fam == 'Q') ? StructKind::TwoJK : StructKind::JTwoK;
    for (int offset : {0, 1, 2, 7, 9}) {
      jobs.add(std::string("Casoratian closed form at degree 0: ") + fam, 0, offset, 1e-8,
               [w, fam, kind, offset, grid]() -> std::optional<double> {
                 BiorthSystem sys(w, kind, offset);
                 if (!sys.degree_ok(2)) return std::nullopt;
                 double worst = 0.0;
                 for (cplx z : {grid[0], grid[4], grid[6]}) {
                   cplx got = LuFactor(casorati(sys, fam, 0, z)).det();
                   cplx want = casorati_zero_closed(sys, fam, z);
                   worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
                 }
                 return worst;
               });
      for (int n = 2; n <= nmax; ++n)
        jobs.add(std::string("Abel ratio ") + fam, n, offset, 1e-8,
                 [w, fam, kind, n, offset, grid, isexp]() -> std::optional<double> {
                   SystemFamily d(w, StructKind::TwoJK), e(w, StructKind::JTwoK);
                   CoeffFn cf = isexp && kind == StructKind::TwoJK ? expweight::closed_coeffs()
                                                                   : generic_coeffs(&d, &e);
                   BiorthSystem& sys = (kind == StructKind::TwoJK ? d : e).at(offset);
                   double worst = -1.0;
                   for (cplx z : {grid[1], grid[5]}) {
                     auto r = casoratian_ratio(sys, fam, n, z, cf);
                     if (!r) return std::nullopt;
                     worst = std::max(worst, *r);
                   }
                   return worst;
                 });
      for (int n = 1; n <= nmax; ++n)
        jobs.add(std::string("Casorati transfer step ") + fam, n, offset, 1e-9,
                 [w, fam, kind, n, offset, grid, isexp]() -> std::optional<double> {
                   SystemFamily d(w, StructKind::TwoJK), e(w, StructKind::JTwoK);
                   CoeffFn cf = isexp && kind == StructKind::TwoJK ? expweight::closed_coeffs()
                                                                   : generic_coeffs(&d, &e);
                   BiorthSystem& sys = (kind == StructKind::TwoJK ? d : e).at(offset);
                   double worst = -1.0;
                   for (cplx z : {grid[2], grid[6]}) {
                     auto r = first_order_casorati_step(sys, fam, n, z, cf);
                     if (!r) return std::nullopt;
                     worst = std::max(worst, *r);
                   }
                   return worst;
                 });
      jobs.add_floor(std::string("fundamental set nonzero Casoratian ") + fam, 1, offset, 1e-8,
                     [w, fam, kind, offset, grid]() -> std::optional<double> {
                       BiorthSystem sys(w, kind, offset);
                       if (!sys.degree_ok(3)) return std::nullopt;
                       double lowest = 1e300;
                       for (cplx z : {grid[0], grid[5]})
                         lowest =
                             std::min(lowest, std::abs(LuFactor(casorati(sys, fam, 1, z)).det()));
                       return lowest;
                     });
    }
  }
}

// ---------------------------------------------------------------- closed-forms
void suite_closed_forms(Jobs& jobs, const Weight& w, const VerifyOptions& opt) {
  if (w.kind() != Weight::Kind::ExpLinear)
    throw Error(errc::invalid_argument, "the closed-forms suite applies to the exp weight");
  int nmax = pick(10, opt.n_max);
  auto grid = offcircle_grid();
  for (int r = 0; r <= 4; ++r) {
    jobs.add("determinant closed form", nmax, r, 1e-10, [r, nmax]() -> std::optional<double> {
      BiorthSystem sys(Weight::exp_linear(), StructKind::TwoJK, r);
      double worst = 0.0;
      for (int n = 0; n <= nmax; ++n) {
        cplx want = expweight::det_closed(n, r);
        worst = std::max(worst, std::abs(sys.det(n) - want) / std::abs(want));
      }
      return worst;
    });
    jobs.add("norm closed form", nmax, r, 1e-10, [r, nmax]() -> std::optional<double> {
      BiorthSystem sys(Weight::exp_linear(), StructKind::TwoJK, r);
      double worst = 0.0;
      for (int n = 0; n <= nmax; ++n) {
        cplx want = expweight::norm_closed(n, r);
        worst = std::max(worst, std::abs(sys.norm(n) - want) / std::abs(want));
      }
      return worst;
    });
    for (char which : {'d', 'e', 'b', 'a'})
      jobs.add(std::string("recurrence coefficient closed form '") + which + "'", nmax, r, 1e-10,
               [which, r, nmax]() -> std::optional<double> {
                 SystemFamily fam(Weight::exp_linear(), StructKind::TwoJK);
                 CoeffFn cf = generic_coeffs(&fam, nullptr);
                 double worst = -1.0;
                 bool any = false;
                 for (int n = 0; n <= nmax; ++n) {
                   auto got = cf(which, n, r);
                   if (!got) continue;  // delta at r=0, n>=1 is 0/0 on e^z
                   any = true;
                   cplx want = expweight::reccoeff_closed(which, n, r);
                   worst = std::max(worst,
                                    std::abs(*got - want) / std::max(1.0, std::abs(want)));
                 }
                 return any ? std::optional<double>(worst) : std::nullopt;
               });
    jobs.add("Q hypergeometric coefficients", std::min(nmax, 8), r, 1e-10,
             [r, nmax]() -> std::optional<double> {
               BiorthSystem sys(Weight::exp_linear(), StructKind::TwoJK, r);
               double worst = 0.0;
               for (int n = 0; n <= std::min(nmax, 8); ++n) {
                 const auto& q = sys.poly_second(n);
                 for (int l = 0; l <= n; ++l) {
                   cplx want = expweight::q_coeff_closed(n, r, l);
                   worst = std::max(worst, std::abs(q.coeff(l) - want) /
                                               std::max(1.0, std::abs(want)));
                 }
               }
               return worst;
             });
    jobs.add("P coefficient sum and nabla forms", std::min(nmax, 8), r, 1e-10,
             [r, nmax]() -> std::optional<double> {
               BiorthSystem sys(Weight::exp_linear(), StructKind::TwoJK, r);
               double worst = 0.0;
               for (int n = 0; n <= std::min(nmax, 8); ++n) {
                 const auto& p = sys.poly_first(n);
                 for (int l = 0; l <= n; ++l) {
                   cplx want = expweight::P_coeff_closed(n, l, r);
                   double scale = std::max(1.0, std::abs(want));
                   worst = std::max(worst, std::abs(p.coeff(l) - want) / scale);
                   worst = std::max(worst,
                                    std::abs(expweight::P_coeff_nabla(n, l, r) - want) / scale);
                 }
               }
               return worst;
             });
    jobs.add("P coefficient recurrence and reduction", std::min(nmax, 6), r, 1e-10,
             [r, nmax]() -> std::optional<double> {
               double worst = 0.0;
               for (int n = 0; n + 3 <= std::min(nmax, 6) + 2; ++n)
                 for (int l = 0; l + 2 <= n + 3; ++l) {
                   cplx lhs = expweight::P_coeff_closed(n + 1, l, r) +
                              (2.0 * n + 2.0) * expweight::P_coeff_closed(n, l, r);
                   cplx rhs = expweight::P_coeff_closed(n + 3, l + 2, r) +
                              (4.0 * n + 2.0 * r + 5.0) * expweight::P_coeff_closed(n + 2, l + 2, r) +
                              (2.0 * n + r + 1.0) * (2.0 * n + r + 2.0) *
                                  expweight::P_coeff_closed(n + 1, l + 2, r);
                   double scale = std::max(1.0, std::abs(lhs));
                   worst = std::max(worst, std::abs(lhs - rhs) / scale);
                   if (r >= 2) {
                     cplx red = expweight::P_coeff_closed(n + 1, l, r - 2);
                     worst = std::max(worst, std::abs(lhs - red) / scale);
                   }
                 }
               return worst;
             });
    jobs.add("F2 closed form vs series", -1, r, 1e-12, [r, grid]() -> std::optional<double> {
      Weight w = Weight::exp_linear();
      double worst = 0.0;
      for (cplx z : grid)
        worst = std::max(worst, std::abs(expweight::F2_closed(r, z) - F2(w, r, z)));
      return worst;
    });
  }
  // frozen single values
  jobs.add("D_2^(0) = 1", 2, 0, 1e-12, []() -> std::optional<double> {
    BiorthSystem sys(Weight::exp_linear(), StructKind::TwoJK, 0);
    return std::abs(sys.det(2) - cplx(1.0));
  });
  jobs.add("D_3^(1) = 1/45", 3, 1, 1e-12, []() -> std::optional<double> {
    BiorthSystem sys(Weight::exp_linear(), StructKind::TwoJK, 1);
    return std::abs(sys.det(3) - cplx(1.0 / 45.0));
  });
  jobs.add("tau(n,ell,0) equals determinant", 4, 0, 1e-12, []() -> std::optional<double> {
    double worst = 0.0;
    for (int n = 0; n <= 4; ++n)
      for (int ell = 0; ell <= 3; ++ell) {
        BiorthSystem sys(Weight::exp_linear(), StructKind::TwoJK, ell);
        worst = std::max(worst, std::abs(tau(n, ell, cplx(0.0)) - sys.det(n)));
      }
    return worst;
  });
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"dodgson", "duality", "biorth",   "recur",
                                                 "mixed",   "kernels", "cd",       "oracle",
                                                 "assoc",   "casorati", "closed-forms"};
  return names;
}

Report run_suite(const Weight& w, const std::string& suite, const VerifyOptions& opt) {
  if (suite == "all") {
    Report total;
    total.suite = "all";
    for (const auto& name : suite_names()) {
      if (name == "closed-forms" && w.kind() != Weight::Kind::ExpLinear) continue;
      Report r = run_suite(w, name, opt);
      total.checks.insert(total.checks.end(), r.checks.begin(), r.checks.end());
    }
    for (const auto& c : total.checks) {
      if (c.status == CheckStatus::Pass) ++total.passed;
      if (c.status == CheckStatus::Fail) ++total.failed;
      if (c.status == CheckStatus::NotApplicable) ++total.not_applicable;
      if (c.status != CheckStatus::NotApplicable)
        total.max_residual = std::max(total.max_residual, c.residual);
    }
    return total;
  }
  Jobs jobs(opt);
  if (suite == "dodgson")
    suite_dodgson(jobs, w, opt);
  else if (suite == "duality")
    suite_duality(jobs, w, opt);
  else if (suite == "biorth")
    suite_biorth(jobs, w, opt);
  else if (suite == "recur")
    suite_recur(jobs, w, opt);
  else if (suite == "mixed")
    suite_mixed(jobs, w, opt);
  else if (suite == "kernels")
    suite_kernels(jobs, w, opt);
  else if (suite == "cd")
    suite_cd(jobs, w, opt);
  else if (suite == "oracle")
    suite_oracle(jobs, w, opt);
  else if (suite == "assoc")
    suite_assoc(jobs, w, opt);
  else if (suite == "casorati")
    suite_casorati(jobs, w, opt);
  else if (suite == "closed-forms")
    suite_closed_forms(jobs, w, opt);
  else
    throw Error(errc::invalid_argument, "unknown suite '" + suite + "'");
  Report report;
  report.suite = suite;
  report.checks = jobs.run(suite);
  for (const auto& c : report.checks) {
    if (c.status == CheckStatus::Pass) ++report.passed;
    if (c.status == CheckStatus::Fail) ++report.failed;
    if (c.status == CheckStatus::NotApplicable) ++report.not_applicable;
    if (c.status != CheckStatus::NotApplicable)
      report.max_residual = std::max(report.max_residual, c.residual);
  }
  return report;
}

Weight random_fourier_weight(unsigned long long seed, int band, double decay) {
  unsigned long long state = seed;
  std::map<int, cplx> coeffs;
  for (int k = -band; k <= band; ++k) {
    double re = unit_rand(state), im = unit_rand(state);
    coeffs[k] = cplx(re, im) * std::pow(decay, std::abs(k));
  }
  coeffs[0] += cplx(1.0);
  return Weight::fourier(std::move(coeffs));
}

}  // namespace bicirc
