#include "nahm/verify.hpp"

#include "nahm/dense.hpp"
#include "nahm/sample.hpp"
#include "nahm/sigma_module.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace nahm {

namespace {

class Suite {
 public:
  void check(const std::string& name, bool pass, const std::string& detail = {}) {
    results_.push_back({name, pass, pass ? std::string() : detail});
  }
  /// Runs a property over many samples and records one line with the first failure, if any.
  void property(const std::string& name, int samples, const std::function<std::string(int)>& body) {
    for (int n = 0; n < samples; ++n) {
      std::string why;
      try {
        why = body(n);
      } catch (const std::exception& e) {
        why = std::string("threw: ") + e.what();
      }
      if (!why.empty()) {
        check(name, false, "sample " + std::to_string(n) + ": " + why);
        return;
      }
    }
    check(name, true);
  }
  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::vector<CheckResult> results_;
};

std::string show(const Form1<Rational>& x) {
  std::ostringstream os;
  os << "[";
  for (int a = 0; a < 3; ++a) {
    os << (a ? "; " : "");
    for (int i = 0; i < 3; ++i) os << (i ? " " : "") << format_rational(x(a, i));
  }
  os << "]";
  return os.str();
}

std::vector<Rational> flatten(const Form1<Rational>& a, const Form0<Rational>& v) {
  std::vector<Rational> out(a.c.begin(), a.c.end());
  out.insert(out.end(), v.c.begin(), v.c.end());
  return out;
}

/// Dense 12x12 matrix of (a, phi) -> ((lambda-1) a + [e, phi], Gamma a + lambda phi).
DenseMatrix<Rational> coupled_matrix(const Rational& lambda) {
  DenseMatrix<Rational> M(12, 12);
  for (std::size_t col = 0; col < 12; ++col) {
    Form1<Rational> a;
    Form0<Rational> phi;
    if (col < 9)
      a.c[col] = 1;
    else
      phi.c[col - 9] = 1;
    const Form1<Rational> top = (lambda - 1) * a + e_bracket(phi);
    const Form0<Rational> bottom = gamma_op(a) + lambda * phi;
    const auto image = flatten(top, bottom);
    for (std::size_t row = 0; row < 12; ++row) M(row, col) = image[row];
  }
  return M;
}

void leading_system_suite(Suite& suite);

std::vector<Rational> leading_system(const std::vector<Rational>& u, int r) {
  Form1<Rational> a1, a2;
  Form0<Rational> c1, c2;
  for (std::size_t n = 0; n < 9; ++n) a1.c[n] = u[n], a2.c[n] = u[12 + n];
  for (std::size_t n = 0; n < 3; ++n) c1.c[n] = u[9 + n], c2.c[n] = u[21 + n];
  const Form1<Rational> e1 = Rational(2) * a1 - L_op(a1) + e_bracket(c1);
  const Form0<Rational> e2 = Rational(2) * c1 + gamma_op(a1);
  const Form1<Rational> e3 = Rational(r) * a1 + Rational(2) * a2 - L_op(a2) - bracket(c2, vierbein<Rational>());
  const Form0<Rational> e4 = Rational(r) * c1 + Rational(2) * c2 + gamma_op(a2);
  auto out = flatten(e1, e2);
  const auto tail = flatten(e3, e4);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

void identities_suite(Suite& suite) {
  Sampler rng(20240611);

  suite.property("projector completeness and idempotence (sigma=1)", 100, [&](int) -> std::string {
    const auto a = rng.form1();
    Form1<Rational> sum;
    for (auto p : kEigenParts) {
      const auto Pa = project(a, p);
      sum += Pa;
      for (auto q : kEigenParts) {
        const auto PQa = project(Pa, q);
        if (p == q ? PQa != Pa : !is_zero(PQa)) return std::string("P_") + to_string(q) + " P_" + to_string(p);
      }
    }
    return sum == a ? "" : "sum of projectors is not the identity";
  });

  suite.property("L eigenvalues on V^-, V^0, V^+ (sigma=1)", 50, [&](int) -> std::string {
    for (auto p : kEigenParts) {
      const auto x = rng.form1_in(p);
      if (L_op(x) != Rational(l_eigenvalue(p)) * x) return std::string("eigenvalue on V_") + to_string(p);
    }
    return "";
  });

  for (int sigma = 1; sigma <= 4; ++sigma) {
    const SigmaModule m(sigma);
    const auto I = DenseMatrix<Rational>::identity(m.dim());
    DenseMatrix<Rational> sum(m.dim(), m.dim());
    bool ok = true;
    std::string why;
    for (auto p : kEigenParts) {
      const auto& P = m.projector(p);
      sum = sum + P;
      if (!(m.L() * P == Rational(m.eigenvalue(p)) * P)) ok = false, why = "L P != lambda P";
      if (m.projector_rank(p) != static_cast<std::size_t>(SigmaModule::expected_dim(p, sigma)))
        ok = false, why = std::string("rank of P_") + to_string(p);
      for (auto q : kEigenParts) {
        const auto PQ = P * m.projector(q);
        if (p == q ? !(PQ == P) : !PQ.is_zero()) ok = false, why = "projector products";
      }
    }
    if (!(sum == I)) ok = false, why = "projectors do not sum to identity";
    suite.check("sigma module " + std::to_string(sigma) + ": projectors, ranks, eigenvalues", ok, why);
  }

  suite.property("Gamma a = Gamma(a^0)", 50, [&](int) -> std::string {
    const auto a = rng.form1();
    return gamma_op(a) == gamma_op(project(a, EigenPart::Zero)) ? "" : "mismatch for " + show(a);
  });
  suite.property("[e, Gamma a] = 2 a^0", 50, [&](int) -> std::string {
    const auto a = rng.form1();
    return e_bracket(gamma_op(a)) == Rational(2) * project(a, EigenPart::Zero) ? "" : "mismatch for " + show(a);
  });
  suite.property("Gamma [e, v] = 2 v", 50, [&](int) -> std::string {
    const auto v = rng.form0();
    return gamma_op(e_bracket(v)) == Rational(2) * v ? "" : "mismatch";
  });

  suite.property("invert_cal_L(k, cal_L(k, a)) = a", 30, [&](int) -> std::string {
    const auto a = rng.form1();
    for (int k = -5; k <= 8; ++k) {
      if (k == -2 || k == -1 || k == 1) continue;
      if (invert_cal_L(k, cal_L(k, a)) != a) return "k=" + std::to_string(k);
    }
    return "";
  });

  suite.property("resolve_coupled agrees with a dense 12x12 solve", 50, [&](int) -> std::string {
    Rational lambda;
    do {
      lambda = rng.rational(12, 3);
    } while (lambda == 2 || lambda == -1 || lambda == 1);
    const auto theta = rng.form1_in(EigenPart::Zero);
    const auto xi = rng.form0();
    const auto [a, phi] = resolve_coupled(lambda, theta, xi);
    const auto dense = solve_unique(coupled_matrix(lambda), flatten(theta, xi));
    return dense == flatten(a, phi) ? "" : "lambda=" + format_rational(lambda);
  });

  suite.property("*d_omega maps V^- into V^0 on the catalog", 5, [&](int) -> std::string {
    for (const auto& spec : catalog_specs()) {
      const auto bg = builtin(spec);
      const auto image = star_d_omega(bg, rng.form1_in(EigenPart::Minus));
      if (!in_eigenspace(image, EigenPart::Zero)) return spec;
    }
    return "";
  });
  leading_system_suite(suite);
}

void leading_system_suite(Suite& suite) {
  Sampler rng(77);
  suite.property("coupled leading system forces a1 = c1 = 0 on the catalog (b in V^+)", 3, [&](int) -> std::string {
    for (const auto& spec : catalog_specs())
      for (int r = 1; r <= 3; ++r)
        if (!leading_system_forces_zero(builtin(spec), rng.form1_in(EigenPart::Plus), r))
          return spec + " r=" + std::to_string(r);
    return "";
  });
}

void closed_form_suite(Suite& suite, const std::string& name, int N) {
  const auto sol = profile_solution(name);
  const auto s = expand(sol.background, sol.matched_free_data, N);
  const auto diffs = compare_with_taylor(sol, s, N);
  suite.check(name + ": engine table equals Taylor oracle through y^" + std::to_string(N), diffs.empty(),
              diffs.empty() ? "" : diffs.front());
  suite.check(name + ": log-free", is_log_free(s));
  suite.check(name + ": parity", parity_report(s).empty());
  const auto res = expansion_residuals(s);
  suite.check(name + ": flow equations vanish order by order", res.empty(),
              res.empty() ? "" : res.front().equation + " at y^" + std::to_string(res.front().n));

  const auto c = background_cast<double>(sol.background).c;
  for (double y : {0.5, 1.0, 2.0}) {
    const double r = flow_residual(c, sol.state(y), sol.derivative(y)).max();
    std::ostringstream os;
    os << "residual " << r;
    suite.check(name + ": closed-form flow residual at y=" + std::to_string(y).substr(0, 3) + " <= 1e-10", r <= 1e-10,
                os.str());
  }
}

void flat_suite(Suite& suite, int N) {
  const auto bg = builtin("flat");
  const auto s = expand(bg, FreeData<Rational>{}, N);
  suite.check("flat: zero free data gives the zero series through y^" + std::to_string(N), s.entries.empty(),
              std::to_string(s.entries.size()) + " nonzero entries");
  FlowState<Rational> st;
  st.y = Rational(1, 2);
  st.phi = vierbein<Rational>() / st.y;
  FlowDerivative<Rational> d;
  d.dphi = -vierbein<Rational>() / (st.y * st.y);
  const auto r = flow_residual(bg.c, st, d);
  suite.check("flat: model solution has exactly zero flow residual", r.max() == 0, format_rational(r.max()));
}

void catalog_suite(Suite& suite, int N) {
  Sampler rng(7);
  for (const auto& spec : catalog_specs()) {
    const auto bg = builtin(spec);
    const bool einstein = is_einstein(bg);
    suite.check(spec + ": einstein flag matches the Ricci oracle", einstein == ricci_is_einstein(bg));
    suite.check(spec + ": (*F)^0 = 0", is_zero(project(bg.starF, EigenPart::Zero)));
    const auto free = einstein ? rng.free_data() : FreeData<Rational>{};
    const auto s = expand(bg, free, N);
    suite.check(spec + ": log-free iff einstein", is_log_free(s) == einstein,
                std::string("log_free=") + (is_log_free(s) ? "true" : "false"));
    if (!einstein)
      suite.check(spec + ": b_{1,1} = (*F)^+", s.b(1, 1) == project(bg.starF, EigenPart::Plus), show(s.b(1, 1)));
    suite.check(spec + ": parity", parity_report(s).empty());
    suite.check(spec + ": log depth p <= k", log_depth_bounded(s));
    const auto res = expansion_residuals(s);
    suite.check(spec + ": flow equations vanish order by order", res.empty(),
                res.empty() ? "" : res.front().equation + " at y^" + std::to_string(res.front().n));
    const auto report = global_report(s);
    suite.check(spec + ": Tr(e ^ *a_{2,1}) = 0", report.a21_trace == 0, format_rational(report.a21_trace));
  }
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"s3", "hyperbolic", "flat", "identities", "einstein-catalog"};
  return names;
}

const std::vector<std::string>& catalog_specs() {
  static const std::vector<std::string> specs{
      "flat",          "round-s3",         "round-s3?scale=2",   "hyperbolic-h3",      "hyperbolic-h3?scale=1/2",
      "berger-s3",     "berger-s3?squash=1/2", "berger-s3?squash=2", "berger-s3?squash=3", "h2xr",
      "h2xr?scale=3"};
  return specs;
}

bool leading_system_forces_zero(const FrameBackground<Rational>& bg, const Form1<Rational>& b, int r) {
  DenseMatrix<Rational> M(24, 24);
  for (std::size_t col = 0; col < 24; ++col) {
    std::vector<Rational> u(24, Rational(0));
    u[col] = 1;
    const auto image = leading_system(u, r);
    for (std::size_t row = 0; row < 24; ++row) M(row, col) = image[row];
  }
  auto rhs = flatten(Form1<Rational>{}, Form0<Rational>{});
  const auto source = flatten(star_d_omega(bg, b), d_omega_star(bg, b));
  rhs.insert(rhs.end(), source.begin(), source.end());
  const auto sol = solve_general(M, rhs);
  if (!sol) return false;
  for (std::size_t n = 0; n < 12; ++n) {
    if (sol->particular[n] != 0) return false;
    for (const auto& v : sol->nullspace)
      if (v[n] != 0) return false;
  }
  return true;
}

bool ricci_is_einstein(const FrameBackground<Rational>& bg) {
  const auto ric = ricci_tensor(bg.c, bg.conn);
  const Rational mean = (ric[0][0] + ric[1][1] + ric[2][2]) / 3;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (ric[i][j] != (i == j ? mean : Rational(0))) return false;
  return true;
}

std::vector<std::string> compare_with_taylor(const ProfileSolution& sol, const PhgSeries<Rational>& s, int N) {
  std::vector<std::string> out;
  const auto t = taylor_profile(sol, N);
  const auto e = vierbein<Rational>();
  for (const auto& [m, c] : s.entries)
    if (m.second != 0) out.push_back("unexpected log entry at (" + std::to_string(m.first) + "," + std::to_string(m.second) + ")");
  for (int k = 1; k <= N; ++k) {
    const auto ea = t.fA[static_cast<std::size_t>(k)] * e;
    const auto eb = t.fPhi[static_cast<std::size_t>(k + 1)] * e;
    if (s.a(k, 0) != ea) out.push_back("a_" + std::to_string(k) + " = " + show(s.a(k, 0)) + ", oracle " + show(ea));
    if (s.b(k, 0) != eb) out.push_back("b_" + std::to_string(k) + " = " + show(s.b(k, 0)) + ", oracle " + show(eb));
    if (!is_zero(s.phi_y(k, 0))) out.push_back("phi_y_" + std::to_string(k) + " is nonzero");
  }
  return out;
}

ConvergenceRow series_convergence(const ProfileSolution& sol, int N, const Real& y_min, const Real& y_max,
                                  int points) {
  if (!(y_min > 0) || !(y_max > y_min) || !(y_max < 1)) throw std::invalid_argument("need 0 < y-min < y-max < 1");
  if (points < 2) throw std::invalid_argument("need at least two grid points");
  const auto s = expand(sol.background, sol.matched_free_data, N);
  const auto omega = form_cast<Real>(sol.background.omega);
  Real scale = max_abs(omega);
  if (scale < 1) scale = 1;

  ConvergenceRow row;
  row.order = N;
  row.max_error = 0;
  const Real lmin = log(y_min), lmax = log(y_max);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int used = 0;
  for (int n = 0; n < points; ++n) {
    const Real y = exp(lmin + (lmax - lmin) * n / (points - 1));
    const auto approx = series_state<Real>(s, y, N);
    const auto exact = sol.state<Real>(y);
    Real err = max_abs(Form1<Real>(approx.A - exact.A));
    const Real ep = max_abs(Form1<Real>(approx.phi - exact.phi));
    if (ep > err) err = ep;
    err /= scale;
    row.samples.emplace_back(y, err);
    if (err > row.max_error) row.max_error = err;
    if (err > 0) {
      const double lx = static_cast<double>(log(y)), ly = static_cast<double>(log(err));
      sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
      ++used;
    }
  }
  if (used >= 2) row.slope = (used * sxy - sx * sy) / (used * sxx - sx * sx);
  return row;
}

std::vector<CheckResult> run_verify_suite(const std::string& suite_name, int order) {
  Suite suite;
  if (suite_name == "s3") {
    closed_form_suite(suite, "round-s3", order ? order : 6);
  } else if (suite_name == "hyperbolic") {
    closed_form_suite(suite, "hyperbolic-h3", order ? order : 6);
  } else if (suite_name == "flat") {
    flat_suite(suite, order ? order : 10);
  } else if (suite_name == "identities") {
    identities_suite(suite);
  } else if (suite_name == "einstein-catalog") {
    catalog_suite(suite, order ? order : 8);
  } else {
    throw std::invalid_argument("unknown verify suite '" + suite_name + "'");
  }
  return suite.take();
}

}  // namespace nahm
