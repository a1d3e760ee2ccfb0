#pragma once

// Verification suites run by `nahm verify <suite>`.

#include "nahm/oracle.hpp"

#include <string>
#include <vector>

namespace nahm {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  ///< empty on success, a short diff otherwise
};

/// s3, hyperbolic, flat, identities, einstein-catalog
const std::vector<std::string>& verify_suite_names();

/// Runs one suite. `order` is the expansion order used where a suite expands (0 = suite default).
std::vector<CheckResult> run_verify_suite(const std::string& suite, int order = 0);

/// Builtin specs exercised by the catalog suite.
const std::vector<std::string>& catalog_specs();

/// Whether the traceless Ricci tensor vanishes, computed from the frame Christoffel symbols alone.
bool ricci_is_einstein(const FrameBackground<Rational>& bg);

/// Assembles the sigma = 1 coupled leading-order system in (a1, c1, a2, c2) as a dense 24x24 system with
/// sources *d_omega b and d_omega^* b, and reports whether every solution has a1 = 0 and c1 = 0.
/// Returns false when the system is inconsistent.
bool leading_system_forces_zero(const FrameBackground<Rational>& bg, const Form1<Rational>& b, int r);

/// Engine table vs the exact Taylor coefficients of a registered closed form; returns mismatches.
std::vector<std::string> compare_with_taylor(const ProfileSolution& sol, const PhgSeries<Rational>& s, int N);

struct ConvergenceRow {
  int order = 0;
  Real max_error;                     ///< max over the grid of the scaled coefficient deviation
  std::optional<double> slope;        ///< least-squares slope of log(error) vs log(y)
  std::vector<std::pair<Real, Real>> samples;  ///< (y, error)
};

/// Truncated series (order N) vs closed form on a log-spaced grid in [y_min, y_max].
ConvergenceRow series_convergence(const ProfileSolution& sol, int N, const Real& y_min, const Real& y_max,
                                  int points = 12);

}  // namespace nahm
