/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "bicirc/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bicirc {

namespace {

constexpr double kPi = 3.14159265358979323846;

double inv_factorial(int k) {
  if (k < 0) return 0.0;
  if (k <= 18) {  // k! is an exact double here, so 1/k! is correctly rounded
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return 1.0 / f;
  }
  return std::exp(-std::lgamma(static_cast<double>(k) + 1.0));
}

int next_pow2(int v) {
  int p = 1;
  while (p < v) p <<= 1;
  return p;
}

}  // namespace

cplx deformed_moment(cplx u, int l) {
  // sum over j >= max(0, ceil(-l/2)) of u^j / (j! (l+2j)!)
  int j0 = 0;
  if (l < 0) j0 = (-l + 1) / 2;
  cplx sum(0.0);
  cplx term;
  const int max_terms = 200;
  int j = j0;
  for (int it = 0; it < max_terms; ++it, ++j) {
    double logden = std::lgamma(static_cast<double>(j) + 1.0) +
                    std::lgamma(static_cast<double>(l + 2 * j) + 1.0);
    term = std::pow(u, j) * std::exp(-logden);
    sum += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum)) && 2 * j > std::abs(u)) return sum;
  }
  // super-factorial decay: only unreachable for absurd |u|
  if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) return sum;
  throw SeriesNotConverged("deformed moment series for l=" + std::to_string(l) +
                           " did not converge in 200 terms");
}

struct Weight::Impl {
  Kind kind = Kind::ExpLinear;
  cplx u{0.0};
  std::map<int, cplx> coeffs;  // FourierSeries
  int band_hint = 0;           // Quadrature
  std::function<cplx(cplx)> symbol;
  std::vector<cplx> samples;  // Quadrature grid samples, fixed at construction
};

Weight Weight::exp_linear() {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::ExpLinear;
  return Weight(std::move(impl));
}

Weight Weight::exp_deformed(cplx u) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::ExpDeformed;
  impl->u = u;
  return Weight(std::move(impl));
}

Weight Weight::fourier(std::map<int, cplx> coeffs) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::FourierSeries;
  impl->coeffs = std::move(coeffs);
  return Weight(std::move(impl));
}

Weight Weight::quadrature(std::function<cplx(cplx)> symbol, int band_hint) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Quadrature;
  impl->band_hint = band_hint;
  impl->symbol = std::move(symbol);
  int m = next_pow2(std::max(256, 2 * band_hint + 1));
  impl->samples.resize(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) {
    cplx zeta = std::polar(1.0, 2.0 * kPi * j / m);
    impl->samples[static_cast<size_t>(j)] = impl->symbol(zeta);
  }
  return Weight(std::move(impl));
}

Weight::Kind Weight::kind() const { return impl_->kind; }
cplx Weight::deformation() const { return impl_->u; }

cplx Weight::moment(int k) const {
  switch (impl_->kind) {
    case Kind::ExpLinear:
      return cplx(inv_factorial(k));
    case Kind::ExpDeformed:
      return deformed_moment(impl_->u, k);
    case Kind::FourierSeries: {
      auto it = impl_->coeffs.find(k);
      return it == impl_->coeffs.end() ? cplx(0.0) : it->second;
    }
    case Kind::Quadrature: {
      if (std::abs(k) > impl_->band_hint)
        throw QuadratureBandExceeded("moment index " + std::to_string(k) +
                                     " beyond quadrature band " + std::to_string(impl_->band_hint));
      int m = static_cast<int>(impl_->samples.size());
      cplx acc(0.0);
      for (int j = 0; j < m; ++j) {
        cplx zmk = std::polar(1.0, -2.0 * kPi * j * k / m);
        acc += impl_->samples[static_cast<size_t>(j)] * zmk;
      }
      return acc / static_cast<double>(m);
    }
  }
  return cplx(0.0);
}

cplx Weight::eval(cplx zeta) const {
  switch (impl_->kind) {
    case Kind::ExpLinear:
      return std::exp(zeta);
    case Kind::ExpDeformed:
      return std::exp(zeta + impl_->u / (zeta * zeta));
    case Kind::FourierSeries: {
      cplx acc(0.0);
      for (const auto& [k, c] : impl_->coeffs) acc += c * std::pow(zeta, k);
      return acc;
    }
    case Kind::Quadrature:
      return impl_->symbol(zeta);
  }
  return cplx(0.0);
}

int Weight::band(double tol) const {
  switch (impl_->kind) {
    case Kind::ExpLinear:
    case Kind::ExpDeformed: {
      int k = 1;
      while (k < 512 && (inv_factorial(k) >= tol ||
                         (impl_->kind == Kind::ExpDeformed &&
                          std::abs(deformed_moment(impl_->u, -k)) >= tol)))
        ++k;
      return k;
    }
    case Kind::FourierSeries: {
      int b = 0;
      for (const auto& [k, c] : impl_->coeffs)
        if (std::abs(c) >= tol) b = std::max(b, std::abs(k));
      return b;
    }
    case Kind::Quadrature:
      return impl_->band_hint;
  }
  return 0;
}

Weight Weight::truncated(int band, double tol) const {
  std::map<int, cplx> c;
  for (int k = -band; k <= band; ++k) {
    cplx v;
    if (impl_->kind == Kind::Quadrature && std::abs(k) > impl_->band_hint) continue;
    v = moment(k);
    if (std::abs(v) >= tol) c[k] = v;
  }
  return fourier(std::move(c));
}

const std::map<int, cplx>& Weight::fourier_coeffs() const {
  static const std::map<int, cplx> empty;
  return impl_->kind == Kind::FourierSeries ? impl_->coeffs : empty;
}

std::string Weight::describe() const {
  switch (impl_->kind) {
    case Kind::ExpLinear:
      return "exp";
    case Kind::ExpDeformed: {
      std::ostringstream os;
      os << "expu:u=" << impl_->u.real();
      if (impl_->u.imag() != 0.0) os << (impl_->u.imag() >= 0 ? "+" : "") << impl_->u.imag() << "i";
      return os.str();
    }
    case Kind::FourierSeries:
      return "fourier[" + std::to_string(impl_->coeffs.size()) + " modes]";
    case Kind::Quadrature:
      return "quadrature[band " + std::to_string(impl_->band_hint) + "]";
  }
  return "?";
}

namespace {

cplx parse_complex(const std::string& s) {
  // <re>, <re>+<im>i, <re>-<im>i
  std::string t = s;
  if (t.empty()) throw Error(errc::invalid_argument, "empty complex literal");
  size_t split = std::string::npos;
  for (size_t i = 1; i < t.size(); ++i) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') split = i;
  }
  try {
    if (t.back() == 'i') {
      if (split == std::string::npos) {
        std::string im = t.substr(0, t.size() - 1);
        if (im.empty() || im == "+" || im == "-") im += "1";
        return cplx(0.0, std::stod(im));
      }
      std::string re = t.substr(0, split);
      std::string im = t.substr(split, t.size() - split - 1);
      if (im == "+" || im == "-") im += "1";
      return cplx(std::stod(re), std::stod(im));
    }
    return cplx(std::stod(t), 0.0);
  } catch (const std::exception&) {
    throw Error(errc::invalid_argument, "bad complex literal '" + s + "'");
  }
}

}  // namespace

Weight Weight::parse(const std::string& spec) {
  if (spec == "exp") return exp_linear();
  if (spec.rfind("expu:", 0) == 0) {
    std::string rest = spec.substr(5);
    if (rest.rfind("u=", 0) != 0)
      throw Error(errc::invalid_argument, "expected expu:u=<re>[+<im>i], got '" + spec + "'");
    return exp_deformed(parse_complex(rest.substr(2)));
  }
  if (spec.rfind("fourier:", 0) == 0) {
    std::string path = spec.substr(8);
    std::ifstream in(path);
    if (!in) throw Error(errc::invalid_argument, "cannot open weight file '" + path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw Error(errc::invalid_argument, "bad weight JSON in '" + path + "': " + e.what());
    }
    if (!j.contains("coeffs") || !j["coeffs"].is_object())
      throw Error(errc::invalid_argument, "weight JSON must contain a \"coeffs\" object");
    std::map<int, cplx> coeffs;
    for (const auto& [key, val] : j["coeffs"].items()) {
      int k;
      try {
        k = std::stoi(key);
      } catch (const std::exception&) {
        throw Error(errc::invalid_argument, "bad coefficient index '" + key + "'");
      }
      if (!val.is_array() || val.size() != 2)
        throw Error(errc::invalid_argument, "coefficient " + key + " must be [re, im]");
      coeffs[k] = cplx(val[0].get<double>(), val[1].get<double>());
    }
    return fourier(std::move(coeffs));
  }
  throw Error(errc::invalid_argument, "unknown weight spec '" + spec + "'");
}

MomentTable::MomentTable(const Weight& w, int kmin, int kmax) : weight_(w), kmin_(kmin), kmax_(kmax) {
  if (kmin > kmax) throw Error(errc::invalid_argument, "moment table window reversed");
  values_.reserve(static_cast<size_t>(kmax - kmin + 1));
  for (int k = kmin; k <= kmax; ++k) values_.push_back(w.moment(k));
}

cplx circle_pair(const Weight& w, const LaurentPoly& f) {
  cplx acc(0.0);
  for (int e = f.lo(); e <= f.hi(); ++e) {
    cplx c = f.coeff(e);
    if (c != cplx(0.0)) acc += c * w.moment(-e);
  }
  return acc;
}

}  // namespace bicirc
