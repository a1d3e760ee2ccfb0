// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "nahm/oracle.hpp"
#include "nahm/sample.hpp"
#include "nahm/verify.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace nahm;
using Q = Rational;

namespace {

constexpr int kCatalogOrder = 8;
constexpr int kFlatOrder = 10;
constexpr int kRandomSamples = 10;
constexpr double kFlowResidualTol = 1e-10;
constexpr double kScalarModeTol = 1e-10;
constexpr double kSlopeLow = 0.5, kSlopeHigh = 1.5;
constexpr double kS3Seconds = 5.0;
constexpr double kConvergenceSeconds = 30.0;
constexpr unsigned kFloatBits = 256;

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Form1<Q> e() { return vierbein<Q>(); }

/// Every catalog background expanded with zero free data and with random free data.
std::vector<PhgSeries<Q>> catalog_runs() {
  Sampler rng(20240901);
  std::vector<PhgSeries<Q>> runs;
  for (const auto& spec : catalog_specs()) {
    const auto bg = builtin(spec);
    runs.push_back(expand(bg, FreeData<Q>{}, kCatalogOrder));
    for (int n = 0; n < 3; ++n) runs.push_back(expand(bg, rng.free_data(), kCatalogOrder));
  }
  return runs;
}

Outcome s3_coefficients() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto sol = profile_solution("round-s3");
  const auto s = expand(sol.background, sol.matched_free_data, 6);
  const std::vector<Q> a{1, Q(-2, 3), Q(2, 9), Q(-4, 135)};
  const std::vector<Q> b{1, Q(-1, 3), Q(-1, 45), Q(58, 945)};
  for (int n = 1; n < 4; ++n) {
    if (s.a(2 * n, 0) != a[n] * e()) o.fail("A coefficient of y^" + std::to_string(2 * n));
    if (s.b(2 * n - 1, 0) != b[n] * e()) o.fail("Phi coefficient of y^" + std::to_string(2 * n - 1));
  }
  if (s.background.omega != a[0] * e()) o.fail("A coefficient of y^0");
  if (!is_log_free(s)) o.fail("log terms present");
  const double t = seconds_since(t0);
  if (t >= kS3Seconds) o.fail("runtime " + std::to_string(t) + " s");
  if (o.pass) o.detail = "A: 1, -2/3, 2/9, -4/135; Phi: 1, -1/3, -1/45, 58/945";
  return o;
}

Outcome hyperbolic() {
  Outcome o;
  const auto sol = profile_solution("hyperbolic-h3");
  const auto tp = taylor_profile(sol, 5);
  const std::vector<Q> coth{Q(1, 3), Q(-1, 45), Q(2, 945)};
  const auto s = expand(sol.background, sol.matched_free_data, 6);
  for (int n = 0; n < 3; ++n) {
    const int k = 2 * n + 1;
    if (tp.fPhi[static_cast<std::size_t>(k + 1)] != coth[n]) o.fail("oracle coefficient of y^" + std::to_string(k));
    if (s.b(k, 0) != coth[n] * e()) o.fail("engine coefficient of y^" + std::to_string(k));
  }
  for (const auto& [m, c] : s.entries)
    if (!is_zero(c.a)) o.fail("A differs from omega at y^" + std::to_string(m.first));
  if (o.pass) o.detail = "coth: 1/3, -1/45, 2/945; A = omega";
  return o;
}

Outcome flat() {
  Outcome o;
  const auto s = expand(builtin("flat"), FreeData<Q>{}, kFlatOrder);
  if (!s.entries.empty()) o.fail(std::to_string(s.entries.size()) + " nonzero entries");
  if (o.pass) o.detail = "zero through N = " + std::to_string(kFlatOrder);
  return o;
}

Outcome log_free_iff_einstein() {
  Outcome o;
  Sampler rng(4);
  int runs = 0;
  for (const char* spec : {"round-s3", "hyperbolic-h3", "flat"}) {
    const auto bg = builtin(spec);
    for (int n = 0; n < kRandomSamples; ++n, ++runs)
      if (!is_log_free(expand(bg, rng.free_data(), kCatalogOrder))) o.fail(std::string(spec) + " has log terms");
  }
  for (const char* spec : {"berger-s3?squash=1/2", "berger-s3?squash=2", "berger-s3?squash=3", "h2xr"}) {
    const auto bg = builtin(spec);
    const auto s = expand(bg, rng.free_data(), kCatalogOrder);
    ++runs;
    const auto first = std::find_if(s.entries.begin(), s.entries.end(), [](const auto& kv) {
      return kv.first.second > 0 && !kv.second.zero();
    });
    if (first == s.entries.end()) {
      o.fail(std::string(spec) + " is log free");
      continue;
    }
    if (first->first != Monomial{1, 1}) o.fail(std::string(spec) + " first log entry is not at (1,1)");
    if (s.b(1, 1) != project(bg.starF, EigenPart::Plus)) o.fail(std::string(spec) + " b_{1,1} != P+(*F)");
    if (!is_zero(s.a(1, 1)) || !is_zero(s.phi_y(1, 1))) o.fail(std::string(spec) + " (1,1) log entry outside b");
  }
  if (o.pass) o.detail = std::to_string(runs) + " expansions through N = " + std::to_string(kCatalogOrder);
  return o;
}

Outcome parity(const std::vector<PhgSeries<Q>>& runs) {
  Outcome o;
  for (const auto& s : runs) {
    const auto v = parity_report(s);
    if (!v.empty())
      o.fail(s.background.name + ": " + v.front().field + " at (" + std::to_string(v.front().k) + "," +
             std::to_string(v.front().p) + ")");
  }
  if (o.pass) o.detail = std::to_string(runs.size()) + " catalog expansions";
  return o;
}

Outcome master_residual(const std::vector<PhgSeries<Q>>& runs) {
  Outcome o;
  std::size_t entries = 0;
  for (const auto& s : runs) {
    entries += s.entries.size();
    const auto res = expansion_residuals(s);
    if (!res.empty())
      o.fail(s.background.name + ": " + res.front().equation + " at y^" + std::to_string(res.front().n) + " log^" +
             std::to_string(res.front().p));
  }
  if (o.pass)
    o.detail = std::to_string(runs.size()) + " expansions, " + std::to_string(entries) + " stored entries, exact zero";
  return o;
}

Outcome algebra_suites() {
  Outcome o;
  const auto results = run_verify_suite("identities");
  for (const auto& r : results)
    if (!r.pass) o.fail(r.name + ": " + r.detail);
  if (o.pass) o.detail = std::to_string(results.size()) + " checks";
  return o;
}

Outcome closed_form_residuals() {
  Outcome o;
  double worst = 0;
  for (const char* name : {"round-s3", "hyperbolic-h3"}) {
    const auto sol = profile_solution(name);
    const auto c = background_cast<double>(sol.background).c;
    for (double y : {0.5, 1.0, 2.0}) {
      const double r = flow_residual(c, sol.state(y), sol.derivative(y)).max();
      worst = std::max(worst, r);
      if (!(r <= kFlowResidualTol)) o.fail(std::string(name) + " at y=" + std::to_string(y));
    }
  }
  std::ostringstream os;
  os << "max residual " << worst << " (tol " << kFlowResidualTol << ")";
  o.detail = o.pass ? os.str() : o.detail + ", " + os.str();
  return o;
}

Outcome convergence() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  set_real_precision_bits(kFloatBits);
  const auto sol = profile_solution("round-s3");
  std::ostringstream os;
  for (int N : {2, 4, 6}) {
    const auto row = series_convergence(sol, N, Real("0.01"), Real("0.1"));
    const double slope = row.slope.value_or(0);
    os << (N > 2 ? ", " : "") << "N=" << N << " slope " << slope;
    if (!row.slope || slope < N + kSlopeLow || slope > N + kSlopeHigh) o.fail("N=" + std::to_string(N));
  }
  const double t = seconds_since(t0);
  if (t >= kConvergenceSeconds) o.fail("runtime " + std::to_string(t) + " s");
  o.detail = o.pass ? os.str() : o.detail + " (" + os.str() + ")";
  return o;
}

Outcome global_constraint(const std::vector<PhgSeries<Q>>& runs) {
  Outcome o;
  Sampler rng(10);
  for (const auto& s : runs)
    if (global_report(s).a21_trace != 0) o.fail(s.background.name + ": a21_trace != 0");
  double worst = 0;
  for (const auto& spec : catalog_specs()) {
    const auto bg = builtin(spec);
    const auto f = rng.free_data();
    const Q k = global_report(expand(bg, f, 2)).k_density;
    for (unsigned bits : {64u, kFloatBits}) {
      set_real_precision_bits(bits);
      const Real kf = global_report(expand(background_cast<Real>(bg), free_data_cast<Real>(f), 2)).k_density;
      const double d = static_cast<double>(abs(kf - scalar_cast<Real>(k)));
      worst = std::max(worst, d);
      if (!(d <= kScalarModeTol)) o.fail(spec + ": k-density differs across scalar modes");
    }
  }
  set_real_precision_bits(kFloatBits);
  std::ostringstream os;
  os << "a21_trace = 0 on " << runs.size() << " expansions; k-density max mode gap " << worst;
  o.detail = o.pass ? os.str() : o.detail + ", " + os.str();
  return o;
}

}  // namespace

int main() {
  const auto runs = catalog_runs();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"S3 coefficient reproduction (exact)", s3_coefficients},
      {"hyperbolic reproduction (exact)", hyperbolic},
      {"flat model zero series", flat},
      {"log free iff Einstein on the catalog", log_free_iff_einstein},
      {"parity of stored entries", [&] { return parity(runs); }},
      {"zero residual of the flow equations", [&] { return master_residual(runs); }},
      {"algebra suites", algebra_suites},
      {"closed-form flow residuals", closed_form_residuals},
      {"series vs closed-form convergence slopes", convergence},
      {"global constraint and k-density stability", [&] { return global_constraint(runs); }},
  };
  int failures = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    Outcome o;
    try {
      o = criteria[n].second();
    } catch (const std::exception& err) {
      o.fail(std::string("threw: ") + err.what());
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << n + 1 << "] " << criteria[n].first << ": " << o.detail
              << std::endl;
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << std::endl;
  return failures ? 1 : 0;
}
