#pragma once

// Independent reference computations used only by the tests.

#include "nahm/algebra.hpp"
#include "nahm/geometry.hpp"

#include <array>

namespace oracle {

using nahm::Form0;
using nahm::Form1;
using nahm::levi_civita;
using nahm::StructureConstants;

template <class S>
using Vec3 = std::array<S, 3>;

template <class S>
Vec3<S> cross(const Vec3<S>& u, const Vec3<S>& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

template <class S>
Vec3<S> column(const Form1<S>& x, int i) {
  return {x(0, i), x(1, i), x(2, i)};
}

/// [E_i, E_j] = c^k_ij E_k, so the bracket of frame vectors X, Y has components sum X_i Y_j c^k_ij.
template <class S>
Vec3<S> lie_bracket(const StructureConstants<S>& c, const Vec3<S>& X, const Vec3<S>& Y) {
  Vec3<S> r{S(0), S(0), S(0)};
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[k] += X[i] * Y[j] * c(k, i, j);
  return r;
}

template <class S>
S dot(const Vec3<S>& u, const Vec3<S>& v) {
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

template <class S>
Vec3<S> unit(int i) {
  Vec3<S> r{S(0), S(0), S(0)};
  r[i] = S(1);
  return r;
}

/// Ricci quadratic form of a left-invariant metric with orthonormal frame E and brackets c:
/// Ric(X,X) = -1/2 sum |[X,E_i]|^2 - 1/2 B(X,X) + 1/4 sum <[E_i,E_j],X>^2 - <[Z,X],X>, <Z,W> = tr ad_W.
template <class S>
S ricci_quadratic(const StructureConstants<S>& c, const Vec3<S>& X) {
  S r(0);
  for (int i = 0; i < 3; ++i) {
    const auto v = lie_bracket(c, X, unit<S>(i));
    r -= dot(v, v) / S(2);
  }
  S killing(0);
  for (int i = 0; i < 3; ++i) killing += lie_bracket(c, X, lie_bracket(c, X, unit<S>(i)))[i];
  r -= killing / S(2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const S t = dot(lie_bracket(c, unit<S>(i), unit<S>(j)), X);
      r += t * t / S(4);
    }
  Vec3<S> Z{S(0), S(0), S(0)};
  for (int w = 0; w < 3; ++w)
    for (int i = 0; i < 3; ++i) Z[w] += c(i, w, i);
  r -= dot(lie_bracket(c, Z, X), X);
  return r;
}

template <class S>
std::array<std::array<S, 3>, 3> ricci(const StructureConstants<S>& c) {
  std::array<std::array<S, 3>, 3> ric{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) {
        ric[i][j] = ricci_quadratic(c, unit<S>(i));
      } else {
        Vec3<S> s = unit<S>(i);
        s[j] = S(1);
        ric[i][j] = (ricci_quadratic(c, s) - ricci_quadratic(c, unit<S>(i)) - ricci_quadratic(c, unit<S>(j))) / S(2);
      }
    }
  return ric;
}

/// Ric - R/2 g as a frame matrix, stored as a Form1.
template <class S>
Form1<S> einstein_tensor(const StructureConstants<S>& c) {
  const auto ric = ricci(c);
  const S R = ric[0][0] + ric[1][1] + ric[2][2];
  Form1<S> g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = ric[i][j] - (i == j ? R / S(2) : S(0));
  return g;
}

/// Torsion T(i,j,k) = G(i,j,k) - G(j,i,k) - c^k_ij and metricity M(i,j,k) = G(i,j,k) + G(i,k,j).
template <class S>
bool torsion_free_and_metric(const StructureConstants<S>& c, const nahm::FrameConnection<S>& G) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        if (G(i, j, k) - G(j, i, k) - c(k, i, j) != 0) return false;
        if (G(i, j, k) + G(i, k, j) != 0) return false;
      }
  return true;
}

/// *d x for frame-constant x: dx(E_i,E_j) = -c^k_ij x_k, then (*beta)_m = 1/2 eps_ijm beta_ij.
template <class S>
Form1<S> star_d(const StructureConstants<S>& c, const Form1<S>& x) {
  Form1<S> r;
  for (int a = 0; a < 3; ++a)
    for (int m = 0; m < 3; ++m)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const int s = levi_civita(i, j, m);
          if (s == 0) continue;
          for (int k = 0; k < 3; ++k) r(a, m) -= S(s) * c(k, i, j) * x(a, k) / S(2);
        }
  return r;
}

/// *d_omega x = *d x + sum eps_ijm [omega_i, x_j].
template <class S>
Form1<S> star_d_omega(const nahm::FrameBackground<S>& bg, const Form1<S>& x) {
  Form1<S> r = oracle::star_d(bg.c, x);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int m = 0; m < 3; ++m) {
        const int s = levi_civita(i, j, m);
        if (s == 0) continue;
        const auto v = cross(column(bg.omega, i), column(x, j));
        for (int a = 0; a < 3; ++a) r(a, m) += S(s) * v[a];
      }
  return r;
}

/// d_omega^* x = -sum_i (nabla_{E_i} x)(E_i) = sum_{i,k} G(i,i,k) x_k - sum_i [omega_i, x_i].
template <class S>
Form0<S> d_omega_star(const nahm::FrameBackground<S>& bg, const Form1<S>& x) {
  Form0<S> r;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k)
      for (int a = 0; a < 3; ++a) r[a] += bg.conn(i, i, k) * x(a, k);
    const auto v = cross(column(bg.omega, i), column(x, i));
    for (int a = 0; a < 3; ++a) r[a] -= v[a];
  }
  return r;
}

/// Eigenspace membership straight from the definitions: multiples of I, antisymmetric, symmetric traceless.
template <class S>
bool is_multiple_of_identity(const Form1<S>& x) {
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i)
      if (a != i && x(a, i) != 0) return false;
  return x(0, 0) == x(1, 1) && x(1, 1) == x(2, 2);
}

template <class S>
bool is_antisymmetric(const Form1<S>& x) {
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i)
      if (x(a, i) + x(i, a) != 0) return false;
  return true;
}

template <class S>
bool is_symmetric_traceless(const Form1<S>& x) {
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i)
      if (x(a, i) != x(i, a)) return false;
  return x.trace() == 0;
}

}  // namespace oracle
