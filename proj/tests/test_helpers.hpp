/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <complex>

#include "bicirc/verify.hpp"
#include "doctest.h"

namespace bicirc_test {

inline double cdist(bicirc::cplx a, bicirc::cplx b) { return std::abs(a - b); }

inline double rdist(bicirc::cplx a, bicirc::cplx b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

inline bicirc::Weight rand_weight(unsigned long long seed = 7) {
  return bicirc::random_fourier_weight(seed);
}

}  // namespace bicirc_test
