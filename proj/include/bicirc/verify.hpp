/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <string>
#include <vector>

#include "bicirc/weights.hpp"

namespace bicirc {

struct VerifyOptions {
  int n_max = -1;  // -1: per-suite defaults
  unsigned long long seed = 7;
  int oracle_m = 64;
  double tol_scale = 1.0;
  int threads = 0;  // 0: BIOCIRC_THREADS, then hardware
};

enum class CheckStatus { Pass, Fail, NotApplicable };

struct CheckResult {
  std::string suite;
  std::string name;
  int n = -1;
  int offset = 0;
  double residual = 0.0;
  double tol = 0.0;
  CheckStatus status = CheckStatus::Pass;
};

struct Report {
  std::string suite;
  std::vector<CheckResult> checks;
  int passed = 0;
  int failed = 0;
  int not_applicable = 0;
  double max_residual = 0.0;
  bool ok() const { return failed == 0; }
};

const std::vector<std::string>& suite_names();

/// Run one named suite (or "all") against the weight. Checks run in
/// parallel under the thread budget; the report order is deterministic.
/// Existence failures of the base TwoJK system propagate as
/// SingularDeterminant (the banded/constant-weight behavior).
Report run_suite(const Weight& w, const std::string& suite, const VerifyOptions& opt = {});

/// Reproducible band-limited weight with decaying random coefficients and
/// generically non-vanishing determinants.
Weight random_fourier_weight(unsigned long long seed, int band = 16, double decay = 0.75);

}  // namespace bicirc
