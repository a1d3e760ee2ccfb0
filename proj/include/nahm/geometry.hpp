#pragma once

// Locally homogeneous 3-manifolds given by the structure constants of an orthonormal coframe,
// de_k = -1/2 c^k_ij e_i ^ e_j (equivalently [E_i, E_j] = c^k_ij E_k on the dual frame).

#include "nahm/algebra.hpp"

#include <array>
#include <optional>
#include <string>

namespace nahm {

template <class S>
struct StructureConstants {
  /// c[k][i][j] = c^k_ij
  std::array<std::array<std::array<S, 3>, 3>, 3> c{};

  StructureConstants() {
    for (auto& m : c)
      for (auto& row : m) row.fill(S(0));
  }
  S& operator()(int k, int i, int j) { return c[k][i][j]; }
  const S& operator()(int k, int i, int j) const { return c[k][i][j]; }

  /// Sets c^k_ij = value and c^k_ji = -value.
  void set(int k, int i, int j, const S& value) {
    c[k][i][j] = value;
    c[k][j][i] = -value;
  }

  bool antisymmetric() const {
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          if (!ScalarTraits<S>::is_zero(S(c[k][i][j] + c[k][j][i]))) return false;
    return true;
  }

  /// Trace of ad(E_k): c^p_kp.
  S ad_trace(int k) const { return c[0][k][0] + c[1][k][1] + c[2][k][2]; }
};

/// Frame Levi-Civita coefficients G(i,j,k) = <nabla_{E_i} E_j, E_k>.
template <class S>
struct FrameConnection {
  std::array<S, 27> g{};
  FrameConnection() { g.fill(S(0)); }
  S& operator()(int i, int j, int k) { return g[static_cast<std::size_t>(9 * i + 3 * j + k)]; }
  const S& operator()(int i, int j, int k) const { return g[static_cast<std::size_t>(9 * i + 3 * j + k)]; }
};

/// Koszul formula in an orthonormal frame: G(i,j,k) = (c^k_ij - c^i_jk + c^j_ki) / 2.
template <class S>
FrameConnection<S> levi_civita(const StructureConstants<S>& c) {
  if (!c.antisymmetric()) throw std::invalid_argument("structure constants must be antisymmetric in i,j");
  FrameConnection<S> conn;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) conn(i, j, k) = (c(k, i, j) - c(i, j, k) + c(j, k, i)) / S(2);
  return conn;
}

/// Max |G(i,j,k) + G(i,k,j)| (metricity) and |G(i,j,k) - G(j,i,k) - c^k_ij| (torsion).
template <class S>
std::pair<S, S> connection_residuals(const StructureConstants<S>& c, const FrameConnection<S>& conn) {
  S metric(0), torsion(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        S m = abs_value(S(conn(i, j, k) + conn(i, k, j)));
        S t = abs_value(S(conn(i, j, k) - conn(j, i, k) - c(k, i, j)));
        if (m > metric) metric = m;
        if (t > torsion) torsion = t;
      }
  return {metric, torsion};
}

/// The su(2)-valued connection form omega(a, i) = 1/2 eps_ajk G(i, j, k), so that [omega(E_i), t_j] = nabla_i t_j.
template <class S>
Form1<S> connection_form(const FrameConnection<S>& conn) {
  Form1<S> w;
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i) {
      S sum(0);
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          const int s = levi_civita(a, j, k);
          if (s > 0) sum += conn(i, j, k);
          if (s < 0) sum -= conn(i, j, k);
        }
      w(a, i) = sum / S(2);
    }
  return w;
}

/// *d x for a frame-constant 1-form: (*dx)(a, m) = -1/2 x(a,k) c^k_ij eps_ijm.
template <class S>
Form1<S> star_d(const StructureConstants<S>& c, const Form1<S>& x) {
  Form1<S> r;
  for (int a = 0; a < 3; ++a)
    for (int m = 0; m < 3; ++m) {
      S sum(0);
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            const int s = levi_civita(i, j, m);
            if (s == 0) continue;
            if (s > 0)
              sum += x(a, k) * c(k, i, j);
            else
              sum -= x(a, k) * c(k, i, j);
          }
      r(a, m) = -sum / S(2);
    }
  return r;
}

/// d^* x = -*d*x for a frame-constant 1-form (no connection term): x(a,k) c^p_kp.
template <class S>
Form0<S> codifferential(const StructureConstants<S>& c, const Form1<S>& x) {
  Form0<S> r;
  for (int a = 0; a < 3; ++a)
    for (int k = 0; k < 3; ++k) r[a] += x(a, k) * c.ad_trace(k);
  return r;
}

/// Covariant operators of a connection form A on frame-constant forms.
template <class S>
Form1<S> star_d_A(const StructureConstants<S>& c, const Form1<S>& A, const Form1<S>& x) {
  return star_d(c, x) + star_wedge(A, x);
}

template <class S>
Form1<S> d_A(const Form1<S>& A, const Form0<S>& v) {
  return bracket(A, v);
}

template <class S>
Form0<S> d_A_star(const StructureConstants<S>& c, const Form1<S>& A, const Form1<S>& x) {
  return codifferential(c, x) - star_bracket_star(A, x);
}

/// *F_A = *dA + 1/2 *[A ^ A].
template <class S>
Form1<S> star_curvature_of(const StructureConstants<S>& c, const Form1<S>& A) {
  return star_d(c, A) + star_wedge(A, A) / S(2);
}

template <class S>
struct FrameBackground {
  std::string name;
  StructureConstants<S> c;
  FrameConnection<S> conn;
  Form1<S> omega;  ///< Levi-Civita connection as an su(2)-valued 1-form
  Form1<S> starF;  ///< *F_omega
  std::optional<S> volume;
};

template <class S>
FrameBackground<S> make_background(std::string name, const StructureConstants<S>& c, std::optional<S> volume = {}) {
  if (volume && !(*volume > 0)) throw std::invalid_argument("background volume must be positive");
  FrameBackground<S> bg;
  bg.name = std::move(name);
  bg.c = c;
  bg.conn = levi_civita(c);
  bg.omega = connection_form(bg.conn);
  bg.starF = star_curvature_of(c, bg.omega);
  bg.volume = std::move(volume);
  return bg;
}

template <class To, class From>
FrameBackground<To> background_cast(const FrameBackground<From>& bg) {
  StructureConstants<To> c;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) c(k, i, j) = scalar_cast<To>(bg.c(k, i, j));
  std::optional<To> vol;
  if (bg.volume) vol = scalar_cast<To>(*bg.volume);
  return make_background<To>(bg.name, c, vol);
}

template <class S>
Form1<S> star_curvature(const FrameBackground<S>& bg) {
  return bg.starF;
}

/// Einstein iff the V^+ (traceless Ricci) part of *F_omega vanishes.
template <class S>
bool is_einstein(const FrameBackground<S>& bg) {
  return is_zero(project(bg.starF, EigenPart::Plus));
}

/// *d_omega x for a 1-form x.
template <class S>
Form1<S> star_d_omega(const FrameBackground<S>& bg, const Form1<S>& x) {
  return star_d_A(bg.c, bg.omega, x);
}

/// d_omega v for a 0-form v.
template <class S>
Form1<S> d_omega(const FrameBackground<S>& bg, const Form0<S>& v) {
  return d_A(bg.omega, v);
}

/// d_omega^* x for a 1-form x.
template <class S>
Form0<S> d_omega_star(const FrameBackground<S>& bg, const Form1<S>& x) {
  return d_A_star(bg.c, bg.omega, x);
}

/// Ricci tensor Ric(j,k) computed directly from the frame Christoffel symbols.
template <class S>
std::array<std::array<S, 3>, 3> ricci_tensor(const StructureConstants<S>& c, const FrameConnection<S>& G) {
  // R(E_i,E_j)E_k = sum_n R[i][j][k][n] E_n
  auto riemann = [&](int i, int j, int k, int n) {
    S r(0);
    for (int m = 0; m < 3; ++m) r += G(j, k, m) * G(i, m, n) - G(i, k, m) * G(j, m, n);
    for (int l = 0; l < 3; ++l) r -= c(l, i, j) * G(l, k, n);
    return r;
  };
  std::array<std::array<S, 3>, 3> ric{};
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      S sum(0);
      for (int i = 0; i < 3; ++i) sum += riemann(i, j, k, i);
      ric[j][k] = sum;
    }
  return ric;
}

// Builtin catalog (rational data). Implemented in geometry.cpp.

struct BuiltinInfo {
  std::string name;
  std::string params;
  std::string description;
};

std::vector<BuiltinInfo> builtin_catalog();

/// builtin("round-s3"), builtin("berger-s3?squash=2"), ...; throws std::invalid_argument on bad input.
FrameBackground<Rational> builtin(const std::string& spec);

/// Resolves "builtin:<name>?k=v" or a path to a background JSON file.
FrameBackground<Rational> load_background(const std::string& spec);

}  // namespace nahm
