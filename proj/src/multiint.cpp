/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "bicirc/multiint.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

namespace bicirc {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr long long kBudget = 1LL << 24;
constexpr int kCauchyTerms = 64;

int thread_budget() {
  if (const char* env = std::getenv("BIOCIRC_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

struct KahanSum {
  cplx sum{0.0};
  cplx comp{0.0};
  void add(cplx v) {
    cplx y = v - comp;
    cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// Deterministic uniform in [-0.5, 0.5) from a splitmix-style stream.
double unit_rand(unsigned long long& state) {
  state += 0x9e3779b97f4a7c15ULL;
  unsigned long long z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  return static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
}

}  // namespace

MultiIntOracle::MultiIntOracle(const Weight& w, int grid_points, int truncate_band)
    : banded_(w.kind() == Weight::Kind::FourierSeries ? w : w.truncated(truncate_band)),
      m_(grid_points) {
  if (m_ < 2) throw Error(errc::invalid_argument, "oracle grid needs at least 2 points");
  grid_.resize(static_cast<size_t>(m_));
  weight_samples_.resize(static_cast<size_t>(m_));
  for (int j = 0; j < m_; ++j) {
    grid_[static_cast<size_t>(j)] = std::polar(1.0, 2.0 * kPi * j / m_);
    weight_samples_[static_cast<size_t>(j)] = banded_.eval(grid_[static_cast<size_t>(j)]);
  }
}

cplx MultiIntOracle::multi(bool dside, int offset, int n, const Extra& extra) const {
  if (n < 0 || n > 4) throw Error(errc::invalid_argument, "multiple integral needs 0 <= n <= 4");
  if (n == 0) return cplx(1.0);
  long long cost = 1;
  for (int i = 0; i < n; ++i) {
    cost *= m_;
    if (cost > kBudget) throw CostLimitExceeded("oracle grid budget M^n > 2^24 exceeded");
  }
  // Per-point factor f(zeta) = w(zeta) zeta^{-offset} extra(zeta).
  std::vector<cplx> fv(static_cast<size_t>(m_));
  std::vector<cplx> inv2(static_cast<size_t>(m_)), sq(static_cast<size_t>(m_)),
      inv1(static_cast<size_t>(m_));
  for (int j = 0; j < m_; ++j) {
    cplx zeta = grid_[static_cast<size_t>(j)];
    cplx f = weight_samples_[static_cast<size_t>(j)] * std::pow(zeta, -offset);
    if (extra) f *= extra(zeta);
    fv[static_cast<size_t>(j)] = f;
    inv2[static_cast<size_t>(j)] = cplx(1.0) / (zeta * zeta);
    sq[static_cast<size_t>(j)] = zeta * zeta;
    inv1[static_cast<size_t>(j)] = cplx(1.0) / zeta;
  }
  auto cell = [&](const int* idx) {
    cplx v(1.0);
    for (int a = 0; a < n; ++a) v *= fv[static_cast<size_t>(idx[a])];
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        cplx za = grid_[static_cast<size_t>(idx[a])], zb = grid_[static_cast<size_t>(idx[b])];
        if (dside)
          v *= (zb - za) * (inv2[static_cast<size_t>(idx[b])] - inv2[static_cast<size_t>(idx[a])]);
        else
          v *= (sq[static_cast<size_t>(idx[b])] - sq[static_cast<size_t>(idx[a])]) *
               (inv1[static_cast<size_t>(idx[b])] - inv1[static_cast<size_t>(idx[a])]);
      }
    return v;
  };
  // Parallel over the outermost index, deterministic ordered reduction.
  int nthreads = std::min(thread_budget(), m_);
  std::vector<cplx> partial(static_cast<size_t>(m_));
  auto worker = [&](int begin, int end) {
    int idx[4] = {0, 0, 0, 0};
    for (int i0 = begin; i0 < end; ++i0) {
      KahanSum acc;
      idx[0] = i0;
      if (n == 1) {
        acc.add(cell(idx));
      } else {
        for (idx[1] = 0; idx[1] < m_; ++idx[1]) {
          if (n == 2) {
            acc.add(cell(idx));
          } else {
            for (idx[2] = 0; idx[2] < m_; ++idx[2]) {
              if (n == 3) {
                acc.add(cell(idx));
              } else {
                for (idx[3] = 0; idx[3] < m_; ++idx[3]) acc.add(cell(idx));
              }
            }
          }
        }
      }
      partial[static_cast<size_t>(i0)] = acc.sum;
    }
  };
  if (nthreads <= 1) {
    worker(0, m_);
  } else {
    std::vector<std::thread> pool;
    int chunk = (m_ + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
      int b = t * chunk, e = std::min(m_, b + chunk);
      if (b < e) pool.emplace_back(worker, b, e);
    }
    for (auto& th : pool) th.join();
  }
  KahanSum total;
  for (int j = 0; j < m_; ++j) total.add(partial[static_cast<size_t>(j)]);
  double norm = std::exp(-std::lgamma(n + 1.0) - n * std::log(static_cast<double>(m_)));
  return total.sum * norm;
}

cplx MultiIntOracle::d_multi(int r, int n, const Extra& extra) const {
  return multi(true, r, n, extra);
}

cplx MultiIntOracle::e_multi(int s, int n, const Extra& extra) const {
  return multi(false, s, n, extra);
}

cplx MultiIntOracle::poly(char family, int n, int offset, cplx z) const {
  if (n < 0 || n > 3) throw Error(errc::invalid_argument, "oracle polynomials need n <= 3");
  if (n == 0) return cplx(1.0);
  switch (family) {
    case 'P':
      return d_multi(offset, n, [z](cplx zeta) { return z - zeta; }) / d_multi(offset, n);
    case 'Q':
      return d_multi(offset, n, [z](cplx zeta) { return z - cplx(1.0) / (zeta * zeta); }) /
             d_multi(offset, n);
    case 'R':
      return e_multi(offset, n, [z](cplx zeta) { return z - zeta * zeta; }) / e_multi(offset, n);
    case 'S':
      return e_multi(offset, n, [z](cplx zeta) { return z - cplx(1.0) / zeta; }) /
             e_multi(offset, n);
    default:
      throw Error(errc::invalid_argument, "oracle poly family must be P,Q,R,S");
  }
}

cplx MultiIntOracle::kernel(StructKind kind, int n, int offset, cplx z1, cplx z2) const {
  if (n < 0 || n > 3) throw Error(errc::invalid_argument, "oracle kernels need n <= 3");
  if (kind == StructKind::TwoJK) {
    cplx num = d_multi(offset, n, [z1, z2](cplx zeta) {
      return (z1 - zeta) * (z2 - cplx(1.0) / (zeta * zeta));
    });
    return num / d_multi(offset, n + 1);
  }
  cplx num = e_multi(offset, n, [z1, z2](cplx zeta) {
    return (z1 - zeta * zeta) * (z2 - cplx(1.0) / zeta);
  });
  return num / e_multi(offset, n + 1);
}

namespace {

// Truncated geometric expansion of 1/(u - v(zeta)) in the region-appropriate
// ratio; |ratio| must keep the 64-term tail below 1e-10.
void check_cauchy_ratio(double ratio) {
  double bound = std::pow(ratio, kCauchyTerms + 1) / (1.0 - ratio);
  if (!(bound < 1e-10))
    throw RegionTooCloseToCircle("Cauchy-factor series tail above 1e-10; move z away from |z|=1");
}

}  // namespace

cplx MultiIntOracle::assoc(char family, int n, int offset, cplx z) const {
  if (n < 0 || n > 3) throw Error(errc::invalid_argument, "oracle associated needs n <= 3");
  double az = std::abs(z);
  if (std::abs(az - 1.0) < 0.1)
    throw RegionTooCloseToCircle("oracle associated functions need |"
                                 "z| off the circle by 0.1");
  bool outside = az > 1.0;
  check_cauchy_ratio(outside ? 1.0 / az : az);
  cplx w0 = banded_.moment(offset);
  switch (family) {
    case 'Q': {
      // 1/(z - zeta): outside sum (zeta/z)^m / z, inside -sum (z/zeta)^m / zeta.
      Extra cau = [z, outside](cplx zeta) {
        cplx acc(0.0), ratio = outside ? zeta / z : z / zeta, p(1.0);
        for (int m = 0; m < kCauchyTerms; ++m) {
          acc += p;
          p *= ratio;
        }
        return outside ? acc / z : -acc / zeta;
      };
      cplx v = -2.0 * z * d_multi(offset, n + 1, cau) / d_multi(offset, n);
      return n == 0 ? v + w0 : v;
    }
    case 'P': {
      cplx zi2 = cplx(1.0) / (z * z);
      Extra cau = [zi2, outside](cplx zeta) {
        cplx g2 = zeta * zeta;
        cplx acc(0.0), ratio = outside ? zi2 * g2 : cplx(1.0) / (zi2 * g2), p(1.0);
        for (int m = 0; m < kCauchyTerms; ++m) {
          acc += p;
          p *= ratio;
        }
        // 1/(z^-2 - zeta^-2)
        return outside ? -acc * g2 : acc / zi2;
      };
      cplx v = 2.0 * zi2 * d_multi(offset, n + 1, cau) / d_multi(offset, n);
      return n == 0 ? v - w0 : v;
    }
    case 'R': {
      cplx zi = cplx(1.0) / z;
      Extra cau = [zi, outside](cplx zeta) {
        cplx acc(0.0), ratio = outside ? zi * zeta : cplx(1.0) / (zi * zeta), p(1.0);
        for (int m = 0; m < kCauchyTerms; ++m) {
          acc += p;
          p *= ratio;
        }
        // 1/(z^-1 - zeta^-1)
        return outside ? -acc * zeta : acc / zi;
      };
      cplx v = 2.0 * zi * e_multi(offset, n + 1, cau) / e_multi(offset, n);
      return n == 0 ? v - w0 : v;
    }
    case 'S': {
      cplx z2 = z * z;
      Extra cau = [z2, outside](cplx zeta) {
        cplx g2 = zeta * zeta;
        cplx acc(0.0), ratio = outside ? g2 / z2 : z2 / g2, p(1.0);
        for (int m = 0; m < kCauchyTerms; ++m) {
          acc += p;
          p *= ratio;
        }
        // 1/(z^2 - zeta^2)
        return outside ? acc / z2 : -acc / g2;
      };
      cplx v = -2.0 * z2 * e_multi(offset, n + 1, cau) / e_multi(offset, n);
      return n == 0 ? v + w0 : v;
    }
    default:
      throw Error(errc::invalid_argument, "oracle associated family must be P,Q,R,S");
  }
}

double MultiIntOracle::transfer_check(int n, int r, int fidx, cplx z0) const {
  Extra f = nullptr;
  if (fidx == 1) f = [](cplx zeta) { return zeta; };
  if (fidx == 2) f = [z0](cplx zeta) { return z0 - zeta; };
  cplx a = d_multi(r, n, f);
  cplx b = e_multi(n + r - 1, n, f);
  return std::abs(a - b) / std::max(1.0, std::abs(a));
}

double MultiIntOracle::gaudin_check(StructKind kind, int n, int m, int offset) const {
  if (m < 1 || m > n + 1 || n + 1 > 4)
    throw Error(errc::invalid_argument, "gaudin check needs 1 <= m <= n+1 <= 4");
  BiorthSystem sys(banded_, kind, offset);
  // spectator points are fixed on-circle samples
  std::vector<cplx> pts;
  for (int j = 0; j < m - 1; ++j) pts.push_back(std::polar(1.0, 0.8 + 2.1 * j));
  auto kval = [&](cplx zk, cplx zj) {
    // TwoJK rows K_n(zeta_k^-2, zeta_j); JTwoK rows L_n(zeta_k^-1, zeta_j^2)
    cplx a = kind == StructKind::TwoJK ? cplx(1.0) / (zk * zk) : cplx(1.0) / zk;
    cplx b = kind == StructKind::TwoJK ? zj : zj * zj;
    cplx acc(0.0);
    for (int j = 0; j <= n; ++j) {
      cplx h = sys.norm(j);
      acc += sys.poly_second(j).eval(a) * sys.poly_first(j).eval(b) / h;
    }
    return acc;
  };
  KahanSum integ;
  for (int g = 0; g < m_; ++g) {
    cplx zm = grid_[static_cast<size_t>(g)];
    CMatrix km(m, m);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        cplx zj = j == m - 1 ? zm : pts[static_cast<size_t>(j)];
        cplx zk = k == m - 1 ? zm : pts[static_cast<size_t>(k)];
        km(j, k) = kval(zk, zj);
      }
    integ.add(weight_samples_[static_cast<size_t>(g)] * std::pow(zm, -offset) *
              LuFactor(km).det());
  }
  cplx lhs = integ.sum / static_cast<double>(m_);
  CMatrix km1(m - 1, m - 1);
  for (int j = 0; j + 1 < m; ++j)
    for (int k = 0; k + 1 < m; ++k)
      km1(j, k) = kval(pts[static_cast<size_t>(k)], pts[static_cast<size_t>(j)]);
  cplx rhs = static_cast<double>(n - m + 2) * LuFactor(km1).det();
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

double MultiIntOracle::joint_density_residual(int npts, unsigned long long seed) {
  unsigned long long state = seed;
  std::vector<cplx> zs;
  for (int i = 0; i < npts; ++i) zs.push_back(std::polar(1.0, 2.0 * kPi * (unit_rand(state) + 0.5)));
  cplx lhs(1.0), rhs(1.0), psi(1.0);
  for (int a = 0; a < npts; ++a) {
    psi *= std::pow(zs[static_cast<size_t>(a)], 1 - npts);
    for (int b = a + 1; b < npts; ++b) {
      cplx za = zs[static_cast<size_t>(a)], zb = zs[static_cast<size_t>(b)];
      lhs *= (zb - za) * (cplx(1.0) / (zb * zb) - cplx(1.0) / (za * za));
      rhs *= (cplx(1.0) / zb - cplx(1.0) / za) * (zb * zb - za * za);
    }
  }
  return std::abs(lhs - psi * rhs) / std::max(1e-300, std::abs(lhs));
}

}  // namespace bicirc
