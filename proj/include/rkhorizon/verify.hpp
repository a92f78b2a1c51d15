#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rkhorizon {

enum class VerifyLevel { fast, full };

/// Test hooks. mse_bound_scale below 1 deliberately corrupts the
/// mean-squared-error bound so the domination check must fail (negative
/// control); libsvm_dir points at real datasets for the optional
/// figure-style checks.
struct VerifyHooks {
  double mse_bound_scale = 1.0;
  std::string libsvm_dir;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// The acceptance criteria at their pinned scales. Deterministic.
std::vector<CheckResult> acceptance_criteria(const VerifyHooks& hooks = {});

/// fast: scaled-down versions of every check, a few seconds total.
/// full: the acceptance criteria plus end-to-end reproductions of the
/// synthetic figure configurations (and the LIBSVM ones when a data
/// directory is supplied).
std::vector<CheckResult> verify_suite(VerifyLevel level,
                                      const VerifyHooks& hooks = {});

/// Prints one PASS/FAIL line per check; returns 0 when everything passed.
int report_checks(const std::vector<CheckResult>& checks, std::ostream& out);

}  // namespace rkhorizon
