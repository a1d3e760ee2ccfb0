#pragma once

// Ground truth for the expansion engine: closed-form Nahm pole solutions, their exact Taylor
// coefficients, the reduced flow on invariant backgrounds, a numerical integrator and the
// boundary integrals.

#include "nahm/algebra.hpp"
#include "nahm/geometry.hpp"
#include "nahm/io.hpp"
#include "nahm/series.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace nahm {

// ---------------------------------------------------------------------------
// Truncated Laurent series with rational coefficients.

class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  /// coefficients of y^low, y^(low+1), ..., known through y^last.
  TruncatedSeries(int low, std::vector<Rational> coeffs, int last);

  static TruncatedSeries constant(const Rational& c, int last);
  static TruncatedSeries monomial(const Rational& c, int power, int last);
  /// exp(rate * y) through y^last.
  static TruncatedSeries exp_linear(const Rational& rate, int last);

  int low() const { return low_; }
  int last() const { return last_; }
  /// Coefficient of y^n (zero below low, throws above last).
  Rational operator[](int n) const;

  friend TruncatedSeries operator+(const TruncatedSeries& x, const TruncatedSeries& y);
  friend TruncatedSeries operator-(const TruncatedSeries& x, const TruncatedSeries& y);
  friend TruncatedSeries operator*(const TruncatedSeries& x, const TruncatedSeries& y);
  friend TruncatedSeries operator/(const TruncatedSeries& x, const TruncatedSeries& y);
  friend TruncatedSeries operator*(const Rational& s, const TruncatedSeries& x);

 private:
  void normalize();
  int low_ = 0;
  int last_ = 0;
  std::vector<Rational> c_;
};

// ---------------------------------------------------------------------------
// Flow states and the reduced flow.

template <class F>
struct FlowState {
  F y{};
  Form1<F> A;
  Form1<F> phi;
  Form0<F> phi_y;
};

template <class F>
struct FlowDerivative {
  Form1<F> dA;
  Form1<F> dphi;
  Form0<F> dphi_y;
};

/// Right-hand side of the flow for frame-constant fields:
///   dA/dy     = *d_A phi + [phi_y, phi]
///   dphi/dy   = d_A phi_y + *(F_A - phi ^ phi)
///   dphi_y/dy = d_A^* phi
template <class F>
FlowDerivative<F> flow_rhs(const StructureConstants<F>& c, const Form1<F>& A, const Form1<F>& phi,
                           const Form0<F>& phi_y) {
  FlowDerivative<F> d;
  d.dA = star_d_A(c, A, phi) + bracket(phi_y, phi);
  d.dphi = d_A(A, phi_y) + star_curvature_of(c, A) - star_wedge(phi, phi) / F(2);
  d.dphi_y = d_A_star(c, A, phi);
  return d;
}

template <class F>
struct FlowResidual {
  F dA{};
  F dphi{};
  F dphi_y{};
  F max() const {
    F m = dA;
    if (dphi > m) m = dphi;
    if (dphi_y > m) m = dphi_y;
    return m;
  }
};

/// Pointwise residual of the three flow equations given the fields and their y-derivatives.
template <class F>
FlowResidual<F> flow_residual(const StructureConstants<F>& c, const FlowState<F>& s, const FlowDerivative<F>& d) {
  const auto rhs = flow_rhs(c, s.A, s.phi, s.phi_y);
  return {max_abs(Form1<F>(d.dA - rhs.dA)), max_abs(Form1<F>(d.dphi - rhs.dphi)),
          max_abs(Form0<F>(d.dphi_y - rhs.dphi_y))};
}

// ---------------------------------------------------------------------------
// Closed-form solutions.

enum class ProfileKind { RoundS3, Hyperbolic, Flat };

/// A = omega + (fA - 1) e-type profile and phi = fPhi e on a constant-curvature background.
/// For the sphere A = fA(y) e (omega = e); for H^3 A = omega; for R^3 A = 0.
struct ProfileSolution {
  std::string name;
  ProfileKind kind = ProfileKind::Flat;
  FrameBackground<Rational> background;
  /// Bracket normalization of the source formula relative to [t_a, t_b] = eps_abc t_c.
  Rational bracket_scale = 1;
  /// Free data that makes the engine reproduce this solution.
  FreeData<Rational> matched_free_data;

  template <class F>
  F fA(const F& y) const;
  template <class F>
  F fA_prime(const F& y) const;
  template <class F>
  F fPhi(const F& y) const;
  template <class F>
  F fPhi_prime(const F& y) const;

  template <class F>
  FlowState<F> state(const F& y) const {
    FlowState<F> s;
    s.y = y;
    const auto e = vierbein<F>();
    s.A = kind == ProfileKind::RoundS3 ? fA(y) * e : form_cast<F>(background.omega);
    s.phi = fPhi(y) * e;
    return s;
  }

  template <class F>
  FlowDerivative<F> derivative(const F& y) const {
    FlowDerivative<F> d;
    const auto e = vierbein<F>();
    if (kind == ProfileKind::RoundS3) d.dA = fA_prime(y) * e;
    d.dphi = fPhi_prime(y) * e;
    return d;
  }
};

template <class F>
F ProfileSolution::fA(const F& y) const {
  using std::exp;
  if (kind != ProfileKind::RoundS3) return F(1);
  const F E = exp(F(2) * y);
  return F(6) * E / (E * E + F(4) * E + F(1));
}

template <class F>
F ProfileSolution::fA_prime(const F& y) const {
  using std::exp;
  if (kind != ProfileKind::RoundS3) return F(0);
  const F E = exp(F(2) * y);
  const F D = E * E + F(4) * E + F(1);
  return F(-12) * E * (E - F(1)) * (E + F(1)) / (D * D);
}

template <class F>
F ProfileSolution::fPhi(const F& y) const {
  using std::exp;
  if (kind == ProfileKind::Flat) return F(1) / y;
  const F E = exp(F(2) * y);
  if (kind == ProfileKind::Hyperbolic) return (E + F(1)) / (E - F(1));
  return F(6) * (E + F(1)) * E / ((E * E + F(4) * E + F(1)) * (E - F(1)));
}

template <class F>
F ProfileSolution::fPhi_prime(const F& y) const {
  using std::exp;
  if (kind == ProfileKind::Flat) return F(-1) / (y * y);
  const F E = exp(F(2) * y);
  const F Em = E - F(1);
  if (kind == ProfileKind::Hyperbolic) return F(-4) * E / (Em * Em);
  const F D = E * E + F(4) * E + F(1);
  const F P = E * E * E * E + F(2) * E * E * E + F(6) * E * E + F(2) * E + F(1);
  return F(-12) * E * P / (Em * Em * D * D);
}

/// Registered closed forms: "round-s3", "hyperbolic-h3", "flat" (unit scale).
ProfileSolution profile_solution(const std::string& name);

/// The solution registered for a background name such as "builtin:round-s3", if any.
std::optional<ProfileSolution> profile_for_background(const std::string& background_name);

struct TaylorProfile {
  std::vector<Rational> fA;    ///< coefficients of y^0 .. y^N
  std::vector<Rational> fPhi;  ///< coefficients of y^-1 .. y^N (index n+1 holds y^n)
};

/// Exact Taylor coefficients of the profiles, from power-series arithmetic in exp(2y).
TaylorProfile taylor_profile(const ProfileSolution& sol, int N);

// ---------------------------------------------------------------------------
// Integrator (Dormand-Prince 5(4)).

template <class F>
struct IntegratorOptions {
  F tol = F(1e-10);
  F initial_step = F(1e-3);
  F min_step = F(1e-14);
  std::size_t max_steps = 1000000;
  /// When set, take steps of exactly this size with no error control.
  std::optional<F> fixed_step;
};

template <class F>
struct IntegrationError : std::runtime_error {
  IntegrationError(const std::string& what, FlowState<F> last) : std::runtime_error(what), last_good(std::move(last)) {}
  FlowState<F> last_good;
};

namespace detail {

template <class F>
using Vec21 = std::array<F, 21>;

template <class F>
Vec21<F> pack(const Form1<F>& A, const Form1<F>& phi, const Form0<F>& phi_y) {
  Vec21<F> v;
  for (std::size_t n = 0; n < 9; ++n) {
    v[n] = A.c[n];
    v[9 + n] = phi.c[n];
  }
  for (std::size_t n = 0; n < 3; ++n) v[18 + n] = phi_y.c[n];
  return v;
}

template <class F>
void unpack(const Vec21<F>& v, Form1<F>& A, Form1<F>& phi, Form0<F>& phi_y) {
  for (std::size_t n = 0; n < 9; ++n) {
    A.c[n] = v[n];
    phi.c[n] = v[9 + n];
  }
  for (std::size_t n = 0; n < 3; ++n) phi_y.c[n] = v[18 + n];
}

template <class F>
Vec21<F> rhs(const StructureConstants<F>& c, const Vec21<F>& v) {
  Form1<F> A, phi;
  Form0<F> phi_y;
  unpack(v, A, phi, phi_y);
  const auto d = flow_rhs(c, A, phi, phi_y);
  return pack(d.dA, d.dphi, d.dphi_y);
}

/// x + h * sum (num/den) k, with the tableau entries kept exact until converted to F.
template <class F>
Vec21<F> axpy(const Vec21<F>& x, const F& h, std::initializer_list<std::tuple<long, long, const Vec21<F>*>> terms) {
  Vec21<F> r = x;
  for (const auto& [num, den, k] : terms) {
    const F w = h * F(num) / F(den);
    for (std::size_t n = 0; n < 21; ++n) r[n] += w * (*k)[n];
  }
  return r;
}

}  // namespace detail

/// Integrates the flow from init.y to y_target. Returns the accepted states (including both ends).
template <class F>
std::vector<FlowState<F>> integrate_flow(const StructureConstants<F>& c, const FlowState<F>& init, const F& y_target,
                                         const IntegratorOptions<F>& opt = {}) {
  using std::abs;
  using std::max;
  using std::min;
  using std::pow;
  if (!(init.y > 0)) throw std::invalid_argument("integrate_flow: initial y must be positive");
  if (!(opt.tol > 0)) throw std::invalid_argument("integrate_flow: tolerance must be positive");
  using V = detail::Vec21<F>;

  std::vector<FlowState<F>> out{init};
  V x = detail::pack(init.A, init.phi, init.phi_y);
  F y = init.y;
  const F dir = y_target >= y ? F(1) : F(-1);
  F h = opt.fixed_step ? *opt.fixed_step : opt.initial_step;
  V k1 = detail::rhs(c, x);

  for (std::size_t step = 0; dir * (y_target - y) > F(0); ++step) {
    if (step >= opt.max_steps) throw IntegrationError<F>("integrate_flow: step limit reached", out.back());
    if (h > abs(y_target - y)) h = abs(y_target - y);
    const F hs = dir * h;
    const V k2 = detail::rhs(c, detail::axpy(x, hs, {{1, 5, &k1}}));
    const V k3 = detail::rhs(c, detail::axpy(x, hs, {{3, 40, &k1}, {9, 40, &k2}}));
    const V k4 = detail::rhs(c, detail::axpy(x, hs, {{44, 45, &k1}, {-56, 15, &k2}, {32, 9, &k3}}));
    const V k5 = detail::rhs(
        c, detail::axpy(x, hs, {{19372, 6561, &k1}, {-25360, 2187, &k2}, {64448, 6561, &k3}, {-212, 729, &k4}}));
    const V k6 = detail::rhs(c, detail::axpy(x, hs,
                                             {{9017, 3168, &k1},
                                              {-355, 33, &k2},
                                              {46732, 5247, &k3},
                                              {49, 176, &k4},
                                              {-5103, 18656, &k5}}));
    const V x5 = detail::axpy(
        x, hs, {{35, 384, &k1}, {500, 1113, &k3}, {125, 192, &k4}, {-2187, 6784, &k5}, {11, 84, &k6}});
    const V k7 = detail::rhs(c, x5);

    F err(0);
    if (!opt.fixed_step) {
      const V x4 = detail::axpy(x, hs,
                                {{5179, 57600, &k1},
                                 {7571, 16695, &k3},
                                 {393, 640, &k4},
                                 {-92097, 339200, &k5},
                                 {187, 2100, &k6},
                                 {1, 40, &k7}});
      for (std::size_t n = 0; n < 21; ++n) {
        const F scale = F(1) + max(abs(x[n]), abs(x5[n]));
        err = max(err, F(abs(x5[n] - x4[n]) / scale));
      }
    }
    for (const auto& v : x5)
      if (!(abs(v) < F(1e300))) throw IntegrationError<F>("integrate_flow: solution blew up", out.back());

    if (opt.fixed_step || err <= opt.tol) {
      y += hs;
      x = x5;
      k1 = k7;
      FlowState<F> s;
      s.y = y;
      detail::unpack(x, s.A, s.phi, s.phi_y);
      out.push_back(s);
    }
    if (!opt.fixed_step) {
      const F factor = err == F(0) ? F(5) : min(F(5), max(F(0.2), F(0.9) * F(pow(opt.tol / err, F(0.2)))));
      h *= factor;
      if (h < opt.min_step) throw IntegrationError<F>("integrate_flow: step size underflow", out.back());
    }
  }
  return out;
}

/// Max-abs distance between two states' field coefficients.
template <class F>
F state_distance(const FlowState<F>& x, const FlowState<F>& y) {
  F d = max_abs(Form1<F>(x.A - y.A));
  const F p = max_abs(Form1<F>(x.phi - y.phi));
  const F q = max_abs(Form0<F>(x.phi_y - y.phi_y));
  if (p > d) d = p;
  if (q > d) d = q;
  return d;
}

/// Expansion truncated at order N evaluated as a flow state.
template <class F, class S>
FlowState<F> series_state(const PhgSeries<S>& s, const F& y, int N) {
  const auto v = evaluate<F>(s, y, N);
  return {y, v.A, v.phi, v.phi_y};
}

std::string trajectory_csv_header();

template <class F>
std::string trajectory_csv_row(const FlowState<F>& s) {
  std::string row = ScalarTraits<F>::to_string(s.y);
  for (const auto& v : s.A.c) row += "," + ScalarTraits<F>::to_string(v);
  for (const auto& v : s.phi.c) row += "," + ScalarTraits<F>::to_string(v);
  for (const auto& v : s.phi_y.c) row += "," + ScalarTraits<F>::to_string(v);
  return row;
}

// ---------------------------------------------------------------------------
// Boundary integrals.

/// Tr(e ^ *x) as a multiple of the volume form, with Tr(t_a t_b) = -1/2 delta_ab.
template <class S>
S trace_pairing_density(const Form1<S>& x) {
  return -x.trace() / S(2);
}

/// Tr(A ^ dA + 2/3 A ^ A ^ A) for A = omega, as a multiple of the volume form.
template <class S>
S chern_simons_density(const FrameBackground<S>& bg) {
  const auto& W = bg.omega;
  S cs(0);
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        for (int p = 0; p < 3; ++p)
          for (int q = 0; q < 3; ++q) {
            const int s = levi_civita(i, p, q);
            if (s != 0) cs += S(s) * W(a, i) * W(a, k) * bg.c(k, p, q);
          }
  cs /= S(4);
  const S det = W(0, 0) * (W(1, 1) * W(2, 2) - W(1, 2) * W(2, 1)) - W(0, 1) * (W(1, 0) * W(2, 2) - W(1, 2) * W(2, 0)) +
                W(0, 2) * (W(1, 0) * W(2, 1) - W(1, 1) * W(2, 0));
  return cs - det;
}

template <class S>
struct GlobalReport {
  S a21_trace{};   ///< Tr(e ^ *a_{2,1}) density
  S k_density{};   ///< 2 Tr(e ^ *a_2) density
  std::optional<S> k_number;  ///< k_density * volume when the volume is known
  S cs_density{};  ///< Chern-Simons density of omega
  bool violation = false;  ///< a21_trace != 0
};

template <class S>
GlobalReport<S> global_report(const PhgSeries<S>& s) {
  if (s.order < 1) throw std::invalid_argument("global_report: series must reach k = 2");
  GlobalReport<S> r;
  r.a21_trace = trace_pairing_density(s.a(2, 1));
  r.k_density = S(2) * trace_pairing_density(s.a(2, 0));
  if (s.background.volume) r.k_number = r.k_density * *s.background.volume;
  r.cs_density = chern_simons_density(s.background);
  r.violation = !ScalarTraits<S>::is_zero(r.a21_trace);
  return r;
}

template <class S>
Json to_json(const GlobalReport<S>& r) {
  Json j;
  j["a21_trace"] = scalar_to_json(r.a21_trace);
  j["k_density"] = scalar_to_json(r.k_density);
  j["k_number"] = r.k_number ? scalar_to_json(*r.k_number) : Json(nullptr);
  j["cs_density"] = scalar_to_json(r.cs_density);
  j["violation"] = r.violation;
  return j;
}

// ---------------------------------------------------------------------------
// Substituting an expansion into the flow equations.

/// A y^n (log y)^p expansion with values in T, used to substitute a PhgSeries into the flow.
template <class T>
using LogExpansion = std::map<Monomial, T>;

namespace detail {

template <class T>
void add_term(LogExpansion<T>& into, const Monomial& m, const T& v) {
  auto [it, inserted] = into.emplace(m, v);
  if (!inserted) it->second += v;
}

template <class T>
LogExpansion<T> y_derivative(const LogExpansion<T>& x) {
  LogExpansion<T> r;
  for (const auto& [m, v] : x) {
    const auto [n, p] = m;
    using S = std::decay_t<decltype(v.c[0])>;
    if (n != 0) add_term(r, {n - 1, p}, S(n) * v);
    if (p != 0) add_term(r, {n - 1, p - 1}, S(p) * v);
  }
  return r;
}

template <class R, class X, class Y, class Op>
LogExpansion<R> product(const LogExpansion<X>& x, const LogExpansion<Y>& y, Op op) {
  LogExpansion<R> r;
  for (const auto& [mx, vx] : x)
    for (const auto& [my, vy] : y) add_term(r, {mx.first + my.first, mx.second + my.second}, R(op(vx, vy)));
  return r;
}

template <class T, class Op>
LogExpansion<T> map_terms(const LogExpansion<T>& x, Op op) {
  LogExpansion<T> r;
  for (const auto& [m, v] : x) r.emplace(m, op(v));
  return r;
}

template <class T>
LogExpansion<T> sum(LogExpansion<T> x, const LogExpansion<T>& y, int sign = 1) {
  for (const auto& [m, v] : y) add_term(x, m, sign > 0 ? v : T(-v));
  return x;
}

}  // namespace detail

struct ResidualEntry {
  std::string equation;  ///< "A", "phi" or "phi_y"
  int n = 0;
  int p = 0;
  std::string value;  ///< max-abs coefficient of the residual at y^n (log y)^p
};

/// Substitutes A = omega + sum a, phi = e/y + sum b, phi_y = sum phi_y into the full flow
/// equations and returns every nonzero coefficient at orders y^n with n <= order - 1, the range
/// fully determined by the stored coefficients (k <= order).
template <class S>
std::vector<ResidualEntry> expansion_residuals(const PhgSeries<S>& s) {
  using detail::product;
  using detail::sum;
  const auto& c = s.background.c;
  const int N = s.order;

  LogExpansion<Form1<S>> A, phi;
  LogExpansion<Form0<S>> phy;
  A[{0, 0}] = s.background.omega;
  phi[{-1, 0}] = vierbein<S>();
  for (const auto& [m, co] : s.entries) {
    if (m.first > N) continue;
    detail::add_term(A, m, co.a);
    detail::add_term(phi, m, co.b);
    detail::add_term(phy, m, co.phi_y);
  }

  auto sw = [](const Form1<S>& x, const Form1<S>& y) { return star_wedge(x, y); };
  auto br01 = [](const Form0<S>& v, const Form1<S>& x) { return bracket(v, x); };
  auto br10 = [](const Form1<S>& x, const Form0<S>& v) { return bracket(x, v); };
  auto sbs = [](const Form1<S>& x, const Form1<S>& y) { return star_bracket_star(x, y); };
  auto half = [](LogExpansion<Form1<S>> x) {
    for (auto& [_, v] : x) v /= S(2);
    return x;
  };

  // dA/dy - *d phi - *[A ^ phi] - [phi_y, phi]
  auto rA = detail::y_derivative(A);
  rA = sum(rA, detail::map_terms(phi, [&](const Form1<S>& x) { return star_d(c, x); }), -1);
  rA = sum(rA, product<Form1<S>>(A, phi, sw), -1);
  rA = sum(rA, product<Form1<S>>(phy, phi, br01), -1);

  // dphi/dy - [A, phi_y] - *dA - 1/2 *[A ^ A] + 1/2 *[phi ^ phi]
  auto rphi = detail::y_derivative(phi);
  rphi = sum(rphi, product<Form1<S>>(A, phy, br10), -1);
  rphi = sum(rphi, detail::map_terms(A, [&](const Form1<S>& x) { return star_d(c, x); }), -1);
  rphi = sum(rphi, half(product<Form1<S>>(A, A, sw)), -1);
  rphi = sum(rphi, half(product<Form1<S>>(phi, phi, sw)), +1);

  // dphi_y/dy - d^* phi + *[A ^ *phi]
  auto rphy = detail::y_derivative(phy);
  LogExpansion<Form0<S>> codiff;
  for (const auto& [m, v] : phi) codiff.emplace(m, codifferential(c, v));
  rphy = sum(rphy, codiff, -1);
  rphy = sum(rphy, product<Form0<S>>(A, phi, sbs), +1);

  std::vector<ResidualEntry> out;
  auto report = [&](const std::string& eq, const auto& expansion) {
    for (const auto& [m, v] : expansion) {
      if (m.first > N - 1 || is_zero(v)) continue;
      out.push_back({eq, m.first, m.second, ScalarTraits<S>::to_string(max_abs(v))});
    }
  };
  report("A", rA);
  report("phi", rphi);
  report("phi_y", rphy);
  return out;
}

}  // namespace nahm
