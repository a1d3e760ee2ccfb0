#pragma once

// Polyhomogeneous boundary expansions for G = SU(2)/SO(3):
//   A   = omega + sum a_{k,p} y^k (log y)^p,
//   phi = e/y   + sum b_{k,p} y^k (log y)^p,
//   phi_y =       sum (phi_y)_{k,p} y^k (log y)^p.
// Coefficients are produced order by order from the coefficient equations of the reduced flow.

#include "nahm/algebra.hpp"
#include "nahm/geometry.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace nahm {

template <class S>
struct PhgCoeff {
  Form1<S> a;
  Form1<S> b;
  Form0<S> phi_y;

  bool zero() const { return is_zero(a) && is_zero(b) && is_zero(phi_y); }
  friend bool operator==(const PhgCoeff& x, const PhgCoeff& y) {
    return x.a == y.a && x.b == y.b && x.phi_y == y.phi_y;
  }
};

/// Address of y^k (log y)^p.
using Monomial = std::pair<int, int>;

template <class S>
struct PhgSeries {
  FrameBackground<S> background;
  int order = 0;
  std::map<Monomial, PhgCoeff<S>> entries;

  Form1<S> a(int k, int p) const { return get(k, p).a; }
  Form1<S> b(int k, int p) const { return get(k, p).b; }
  Form0<S> phi_y(int k, int p) const { return get(k, p).phi_y; }

  PhgCoeff<S> get(int k, int p) const {
    auto it = entries.find({k, p});
    return it == entries.end() ? PhgCoeff<S>{} : it->second;
  }

  void set_a(int k, int p, const Form1<S>& v) { store(k, p, [&](PhgCoeff<S>& c) { c.a = v; }); }
  void set_b(int k, int p, const Form1<S>& v) { store(k, p, [&](PhgCoeff<S>& c) { c.b = v; }); }
  void set_phi_y(int k, int p, const Form0<S>& v) { store(k, p, [&](PhgCoeff<S>& c) { c.phi_y = v; }); }

  /// Largest log power among stored entries (0 for an empty series).
  int max_log_power() const {
    int m = 0;
    for (const auto& [key, _] : entries) m = std::max(m, key.second);
    return m;
  }

  /// Largest log power stored at order k, or -1.
  int max_log_power(int k) const {
    int m = -1;
    for (const auto& [key, _] : entries)
      if (key.first == k) m = std::max(m, key.second);
    return m;
  }

 private:
  template <class F>
  void store(int k, int p, F&& f) {
    auto& slot = entries[{k, p}];
    f(slot);
    if (slot.zero()) entries.erase({k, p});
  }
};

/// Resonant slot for externally injected kernel data: (k, p, eigenspace).
using KernelSlot = std::tuple<int, int, EigenPart>;

template <class S>
struct FreeData {
  Form1<S> c_plus;   ///< free V^+ part of b_1
  Form1<S> c_zero;   ///< free V^0 part of a_2; fixes (phi_y)_2 = -Gamma(c_zero)/2
  Form1<S> c_minus;  ///< free V^- part of a_2
  std::map<KernelSlot, Form1<S>> higher_kernel;

  void validate() const {
    if (!in_eigenspace(c_plus, EigenPart::Plus)) throw std::invalid_argument("c_plus is not in V^+");
    if (!in_eigenspace(c_zero, EigenPart::Zero)) throw std::invalid_argument("c_zero is not in V^0");
    if (!in_eigenspace(c_minus, EigenPart::Minus)) throw std::invalid_argument("c_minus is not in V^-");
  }

  friend FreeData operator+(const FreeData& x, const FreeData& y) {
    FreeData r;
    r.c_plus = x.c_plus + y.c_plus;
    r.c_zero = x.c_zero + y.c_zero;
    r.c_minus = x.c_minus + y.c_minus;
    return r;
  }
};

template <class To, class From>
FreeData<To> free_data_cast(const FreeData<From>& f) {
  FreeData<To> r;
  r.c_plus = form_cast<To>(f.c_plus);
  r.c_zero = form_cast<To>(f.c_zero);
  r.c_minus = form_cast<To>(f.c_minus);
  for (const auto& [slot, v] : f.higher_kernel) r.higher_kernel[slot] = form_cast<To>(v);
  return r;
}

/// Fills b_1, a_2, phi_y_2 (with their log companions) from the background and the free data.
/// The returned series has order 1: b known through k = 1, a and phi_y through k = 2.
template <class S>
PhgSeries<S> seed_leading(const FrameBackground<S>& bg, const FreeData<S>& free) {
  free.validate();
  PhgSeries<S> s;
  s.background = bg;
  const Form1<S>& F = bg.starF;
  const S half = S(1) / S(2), third = S(1) / S(3), ninth = S(1) / S(9);

  const Form1<S> b11 = project(F, EigenPart::Plus);
  const Form1<S> b1 = free.c_plus + half * project(F, EigenPart::Zero) + third * project(F, EigenPart::Minus);
  s.set_b(1, 1, b11);
  s.set_b(1, 0, b1);

  const Form1<S> d11 = star_d_omega(bg, b11);
  const Form1<S> d1 = star_d_omega(bg, b1);
  s.set_a(2, 1, third * project(d11, EigenPart::Plus) + third * project(d11, EigenPart::Zero));
  s.set_phi_y(2, 1, third * d_omega_star(bg, b11));

  const Form1<S> a2 = -ninth * project(d11, EigenPart::Plus) + third * project(d1, EigenPart::Plus) + free.c_zero +
                      free.c_minus - third * project(d11, EigenPart::Zero) + project(d1, EigenPart::Zero);
  s.set_a(2, 0, a2);
  s.set_phi_y(2, 0, -half * gamma_op(free.c_zero));
  s.order = 1;
  return s;
}

template <class S>
struct QuadraticSource {
  Form1<S> Qa;   ///< sum *[a ^ b] + [phi_y, b] at total order k
  Form1<S> Qb;   ///< sum [a, phi_y] + *(a ^ a) - *(b ^ b) at total order k - 1 (feeds b_k)
  Form0<S> Qphi; ///< -sum *[a ^ *b] at total order k
};

/// Quadratic convolution terms for the (k, p) coefficient equations; absent entries count as zero.
template <class S>
QuadraticSource<S> quadratic_source(const PhgSeries<S>& s, int k, int p) {
  if (s.order < k - 1) throw std::invalid_argument("quadratic_source: series not computed through order k-1");
  QuadraticSource<S> q;
  const S half = S(1) / S(2);
  for (const auto& [m1, c1] : s.entries) {
    for (const auto& [m2, c2] : s.entries) {
      if (m1.second + m2.second != p) continue;
      const int total = m1.first + m2.first;
      if (total == k) {
        q.Qa += star_wedge(c1.a, c2.b) + bracket(c1.phi_y, c2.b);
        q.Qphi -= star_bracket_star(c1.a, c2.b);
      } else if (total == k - 1) {
        q.Qb += bracket(c1.a, c2.phi_y) + half * star_wedge(c1.a, c2.a) - half * star_wedge(c1.b, c2.b);
      }
    }
  }
  return q;
}

/// Solves for b_k and then a_{k+1}, (phi_y)_{k+1}, every log power from the top down.
template <class S>
void advance_order(PhgSeries<S>& s, int k) {
  if (k < 2) throw std::invalid_argument("advance_order requires k >= 2");
  if (s.order != k - 1) throw std::invalid_argument("advance_order: series must be complete through k-1");
  const auto& bg = s.background;
  // Products can double the log depth; anything above that comes out zero and is pruned.
  const int top = 2 * s.max_log_power() + 1;

  std::vector<QuadraticSource<S>> sources;
  sources.reserve(static_cast<std::size_t>(top) + 1);
  for (int p = 0; p <= top; ++p) sources.push_back(quadratic_source(s, k, p));

  for (int p = top; p >= 0; --p) {
    Form1<S> rhs = star_d_omega(bg, s.a(k - 1, p)) + d_omega(bg, s.phi_y(k - 1, p)) -
                   S(p + 1) * s.b(k, p + 1) + sources[static_cast<std::size_t>(p)].Qb;
    s.set_b(k, p, invert_cal_L(k, rhs));
  }

  const S lambda(k + 1);
  for (int p = top; p >= 0; --p) {
    const auto& q = sources[static_cast<std::size_t>(p)];
    const Form1<S> b = s.b(k, p);
    const Form1<S> R = star_d_omega(bg, b) - S(p + 1) * s.a(k + 1, p + 1) + q.Qa;
    const Form0<S> Sphi = d_omega_star(bg, b) - S(p + 1) * s.phi_y(k + 1, p + 1) + q.Qphi;

    Form1<S> a = project(R, EigenPart::Plus) / S(k + 2);
    a += project(R, EigenPart::Minus) / S(k - 1);
    auto [a0, phi] = resolve_coupled(lambda, project(R, EigenPart::Zero), Sphi);
    a += a0;
    s.set_a(k + 1, p, a);
    s.set_phi_y(k + 1, p, phi);
  }
  s.order = k;
}

/// Full expansion through y^N (b_k, a_k, phi_y_k for k <= N).
template <class S>
PhgSeries<S> expand(const FrameBackground<S>& bg, const FreeData<S>& free, int N) {
  if (N < 2) throw std::invalid_argument("expansion order must be at least 2");
  if (!free.higher_kernel.empty()) {
    const auto& [k, p, part] = free.higher_kernel.begin()->first;
    throw MathError("no resonant slot at (k=" + std::to_string(k) + ", p=" + std::to_string(p) + ", V_" +
                    to_string(part) + "): the sigma=1 recursion has no kernel for k >= 2");
  }
  PhgSeries<S> s = seed_leading(bg, free);
  for (int k = 2; k <= N; ++k) advance_order(s, k);
  for (auto it = s.entries.begin(); it != s.entries.end();) {
    if (it->first.first > N)
      it = s.entries.erase(it);
    else
      ++it;
  }
  return s;
}

template <class S>
bool is_log_free(const PhgSeries<S>& s) {
  return std::none_of(s.entries.begin(), s.entries.end(), [](const auto& kv) { return kv.first.second > 0; });
}

struct ParityViolation {
  int k = 0;
  int p = 0;
  std::string field;
};

/// Entries violating the SU(2) pattern: a, phi_y only at even k; b only at odd k.
template <class S>
std::vector<ParityViolation> parity_report(const PhgSeries<S>& s) {
  std::vector<ParityViolation> out;
  for (const auto& [m, c] : s.entries) {
    const bool even = m.first % 2 == 0;
    if (!even && !is_zero(c.a)) out.push_back({m.first, m.second, "a"});
    if (!even && !is_zero(c.phi_y)) out.push_back({m.first, m.second, "phi_y"});
    if (even && !is_zero(c.b)) out.push_back({m.first, m.second, "b"});
  }
  return out;
}

/// Largest log power at each order exceeds the order nowhere.
template <class S>
bool log_depth_bounded(const PhgSeries<S>& s) {
  return std::all_of(s.entries.begin(), s.entries.end(), [](const auto& kv) { return kv.first.second <= kv.first.first; });
}

template <class F>
struct FieldValue {
  Form1<F> A;
  Form1<F> phi;
  Form0<F> phi_y;
};

/// Evaluates the truncated expansion (orders k <= N) at 0 < y < 1.
template <class F, class S>
FieldValue<F> evaluate(const PhgSeries<S>& s, const F& y, int N) {
  if (!(y > 0 && y < 1)) throw std::invalid_argument("evaluate: y must lie in (0, 1)");
  if (N > s.order) throw std::invalid_argument("evaluate: truncation exceeds computed order");
  using std::log;
  using std::pow;
  FieldValue<F> v;
  v.A = form_cast<F>(s.background.omega);
  v.phi = vierbein<F>() / y;
  const F logy = log(y);
  for (const auto& [m, c] : s.entries) {
    if (m.first > N) continue;
    F w = pow(y, m.first);
    for (int i = 0; i < m.second; ++i) w *= logy;
    v.A += w * form_cast<F>(c.a);
    v.phi += w * form_cast<F>(c.b);
    v.phi_y += w * form_cast<F>(c.phi_y);
  }
  return v;
}

}  // namespace nahm
