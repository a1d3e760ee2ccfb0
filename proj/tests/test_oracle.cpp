#include <doctest.h>

#include "nahm/oracle.hpp"
#include "nahm/sample.hpp"
#include "nahm/verify.hpp"

#include <cmath>

using namespace nahm;
using Q = Rational;

namespace {

Form1<Q> e() { return vierbein<Q>(); }

double distance_to_closed_form(const ProfileSolution& sol, const FlowState<double>& s) {
  return state_distance(s, sol.state(s.y));
}

}  // namespace

TEST_CASE("truncated series arithmetic") {
  const int N = 8;
  const auto one = TruncatedSeries::constant(1, N);
  const auto y = TruncatedSeries::monomial(1, 1, N);
  const auto geometric = one / (one - y);
  for (int n = 0; n <= N; ++n) CHECK(geometric[n] == 1);
  const auto E = TruncatedSeries::exp_linear(2, N);
  Q fact = 1, pow2 = 1;
  for (int n = 0; n <= N; ++n) {
    CHECK(E[n] == pow2 / fact);
    pow2 *= 2;
    fact *= n + 1;
  }
  const auto inv = one / y;
  CHECK(inv.low() == -1);
  CHECK(inv[-1] == 1);
  CHECK((Q(3) * y)[1] == 3);
  CHECK_THROWS(geometric[N + 1]);
}

TEST_CASE("Taylor coefficients of the sphere profile") {
  const auto tp = taylor_profile(profile_solution("round-s3"), 6);
  CHECK(tp.fA == std::vector<Q>{1, 0, Q(-2, 3), 0, Q(2, 9), 0, Q(-4, 135)});
  // fPhi index n+1 holds y^n
  CHECK(tp.fPhi[0] == 1);
  CHECK(tp.fPhi[1] == 0);
  CHECK(tp.fPhi[2] == Q(-1, 3));
  CHECK(tp.fPhi[4] == Q(-1, 45));
  CHECK(tp.fPhi[6] == Q(58, 945));
  const auto tp8 = taylor_profile(profile_solution("round-s3"), 7);
  CHECK(tp8.fPhi[8] == Q(-403, 14175));
}

TEST_CASE("Taylor coefficients of the hyperbolic profile are those of coth") {
  const auto tp = taylor_profile(profile_solution("hyperbolic-h3"), 5);
  CHECK(tp.fPhi[0] == 1);
  CHECK(tp.fPhi[2] == Q(1, 3));
  CHECK(tp.fPhi[4] == Q(-1, 45));
  CHECK(tp.fPhi[6] == Q(2, 945));
  for (std::size_t n = 1; n < tp.fA.size(); ++n) CHECK(tp.fA[n] == 0);
}

TEST_CASE("closed forms match their Taylor series near the boundary") {
  for (const char* name : {"round-s3", "hyperbolic-h3"}) {
    CAPTURE(name);
    const auto sol = profile_solution(name);
    const int N = 10;
    const auto tp = taylor_profile(sol, N);
    const double y = 0.1;
    double fA = 0, fPhi = 0;
    for (int n = 0; n <= N; ++n) fA += static_cast<double>(tp.fA[n]) * std::pow(y, n);
    for (int n = -1; n <= N; ++n) fPhi += static_cast<double>(tp.fPhi[n + 1]) * std::pow(y, n);
    CHECK(std::abs(fA - sol.fA(y)) < 1e-10);
    CHECK(std::abs(fPhi - sol.fPhi(y)) < 1e-10);
  }
}

TEST_CASE("analytic derivatives agree with central differences") {
  set_real_precision_bits(256);
  const Real h("1e-25");
  const Real tol("1e-40");
  for (const char* name : {"round-s3", "hyperbolic-h3", "flat"}) {
    CAPTURE(name);
    const auto sol = profile_solution(name);
    for (const char* yc : {"0.2", "0.5", "1", "2"}) {
      CAPTURE(yc);
      const Real y(yc);
      const Real dA = (sol.fA(Real(y + h)) - sol.fA(Real(y - h))) / (2 * h);
      const Real dPhi = (sol.fPhi(Real(y + h)) - sol.fPhi(Real(y - h))) / (2 * h);
      CHECK(abs(dA - sol.fA_prime(y)) < tol);
      CHECK(abs(dPhi - sol.fPhi_prime(y)) < tol);
    }
  }
}

TEST_CASE("closed forms solve the flow") {
  for (const char* name : {"round-s3", "hyperbolic-h3", "flat"}) {
    CAPTURE(name);
    const auto sol = profile_solution(name);
    const auto c = background_cast<double>(sol.background).c;
    for (double y : {0.5, 1.0, 2.0}) CHECK(flow_residual(c, sol.state(y), sol.derivative(y)).max() <= 1e-10);
  }
  set_real_precision_bits(256);
  const auto sol = profile_solution("round-s3");
  const auto c = background_cast<Real>(sol.background).c;
  const Real y("0.75");
  CHECK(flow_residual(c, sol.state(y), sol.derivative(y)).max() < Real("1e-70"));
}

TEST_CASE("registry") {
  CHECK(profile_for_background("builtin:round-s3").has_value());
  CHECK(profile_for_background("hyperbolic-h3").has_value());
  CHECK_FALSE(profile_for_background("builtin:berger-s3?squash=2").has_value());
  CHECK_THROWS_AS(profile_solution("torus"), std::invalid_argument);
  const auto h = profile_solution("hyperbolic-h3");
  CHECK(h.bracket_scale == 2);
  CHECK(h.matched_free_data.c_minus == Form1<Q>{});
  CHECK(profile_solution("round-s3").matched_free_data.c_minus == Q(-2, 3) * e());
}

TEST_CASE("adaptive integration follows the sphere solution") {
  const auto sol = profile_solution("round-s3");
  const auto c = background_cast<double>(sol.background).c;
  IntegratorOptions<double> opt;
  opt.tol = 1e-10;
  const auto path = integrate_flow(c, sol.state(0.1), 1.0, opt);
  REQUIRE(path.size() > 2);
  CHECK(path.back().y == doctest::Approx(1.0));
  double worst = 0;
  for (const auto& s : path) worst = std::max(worst, distance_to_closed_form(sol, s));
  CHECK(worst <= 10 * opt.tol);
}

TEST_CASE("integration backwards in y") {
  const auto sol = profile_solution("hyperbolic-h3");
  const auto c = background_cast<double>(sol.background).c;
  const auto path = integrate_flow(c, sol.state(1.0), 0.2);
  CHECK(path.back().y == doctest::Approx(0.2));
  CHECK(distance_to_closed_form(sol, path.back()) <= 1e-8);
}

TEST_CASE("series start plus integration reproduces the sphere solution") {
  const auto sol = profile_solution("round-s3");
  const auto s = expand(sol.background, sol.matched_free_data, 6);
  const auto c = background_cast<double>(sol.background).c;
  const auto start = series_state<double>(s, 0.05, 6);
  const auto path = integrate_flow(c, start, 1.0);
  CHECK(distance_to_closed_form(sol, path.back()) <= 1e-5);
}

TEST_CASE("fixed-step integration converges at fifth order") {
  const auto sol = profile_solution("round-s3");
  const auto c = background_cast<double>(sol.background).c;
  auto error = [&](double h) {
    IntegratorOptions<double> opt;
    opt.fixed_step = h;
    return distance_to_closed_form(sol, integrate_flow(c, sol.state(0.5), 1.5, opt).back());
  };
  const double order = std::log2(error(0.1) / error(0.05));
  CHECK(order > 4.5);
  CHECK(order < 7.0);
}

TEST_CASE("flat model stays flat") {
  const auto sol = profile_solution("flat");
  const auto c = background_cast<double>(sol.background).c;
  const auto path = integrate_flow(c, sol.state(0.1), 2.0);
  for (const auto& s : path) {
    CHECK(max_abs(s.A) == 0);
    CHECK(max_abs(s.phi_y) == 0);
    CHECK(max_abs(Form1<double>(s.phi - vierbein<double>() / s.y)) <= 1e-9 / s.y);
  }
}

TEST_CASE("integrator errors") {
  const auto sol = profile_solution("round-s3");
  const auto c = background_cast<double>(sol.background).c;
  IntegratorOptions<double> opt;
  opt.max_steps = 3;
  try {
    integrate_flow(c, sol.state(0.1), 1.0, opt);
    FAIL("expected IntegrationError");
  } catch (const IntegrationError<double>& err) {
    CHECK(err.last_good.y > 0.1);
    CHECK(err.last_good.y < 1.0);
  }
  CHECK_THROWS_AS(integrate_flow(c, sol.state(0.1), 1.0, IntegratorOptions<double>{.tol = -1, .fixed_step = {}}), std::invalid_argument);
  auto bad = sol.state(0.1);
  bad.y = 0;
  CHECK_THROWS_AS(integrate_flow(c, bad, 1.0), std::invalid_argument);
}

TEST_CASE("trajectory rows") {
  const auto header = trajectory_csv_header();
  CHECK(std::count(header.begin(), header.end(), ',') == 21);
  const auto row = trajectory_csv_row(profile_solution("round-s3").state(0.5));
  CHECK(std::count(row.begin(), row.end(), ',') == 21);
}

TEST_CASE("global report") {
  const auto sol = profile_solution("round-s3");
  const auto r = global_report(expand(sol.background, sol.matched_free_data, 4));
  CHECK(r.a21_trace == 0);
  CHECK_FALSE(r.violation);
  // a_2 = -2/3 e and Tr(t_a t_b) = -delta/2, so 2 Tr(e ^ *a_2) density = -tr(a_2) = 2
  CHECK(r.k_density == 2);
  CHECK_FALSE(r.k_number.has_value());
  CHECK(global_report(expand(builtin("flat"), FreeData<Q>{}, 4)).cs_density == 0);
  Sampler rng(31);
  for (const auto& spec : catalog_specs()) {
    CAPTURE(spec);
    const auto bg = builtin(spec);
    const auto f = rng.free_data();
    const auto rq = global_report(expand(bg, f, 4));
    CHECK(rq.a21_trace == 0);
    set_real_precision_bits(256);
    const auto rr = global_report(expand(background_cast<Real>(bg), free_data_cast<Real>(f), 4));
    CHECK(abs(rr.k_density - scalar_cast<Real>(rq.k_density)) < Real("1e-10"));
  }
  auto with_volume = builtin("round-s3");
  with_volume.volume = Q(5);
  auto s = expand(with_volume, sol.matched_free_data, 4);
  CHECK(global_report(s).k_number == Q(10));
  const auto j = to_json(global_report(s));
  CHECK(j["k_density"] == "2/1");
  CHECK(j["violation"] == false);
}
