#pragma once

// su(2)-valued invariant forms on an oriented orthonormal coframe {e_1, e_2, e_3}.
//
// Conventions (fixed for the whole library):
//   [t_a, t_b] = eps_abc t_c,   *e_1 = e_2 ^ e_3 (cyclic),   *1 = e_1 ^ e_2 ^ e_3,
//   Tr(t_a t_b) = -1/2 delta_ab,   x ^ y of g-valued forms means 1/2 [x ^ y].
// A degree-1 form is stored as the matrix c(a, i) of sum c(a,i) t_a (x) e_i.

#include "nahm/scalar.hpp"

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace nahm {

constexpr int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  // even permutations of (0,1,2)
  if ((i == 0 && j == 1) || (i == 1 && j == 2) || (i == 2 && j == 0)) return 1;
  return -1;
}

/// Raised for arithmetic that the expansion cannot get past (resonances, singular systems).
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegreeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Eigenspaces of L = *[e, .]; ordering Minus < Zero < Plus is the serialization order.
enum class EigenPart { Minus = 0, Zero = 1, Plus = 2 };

inline constexpr std::array<EigenPart, 3> kEigenParts{EigenPart::Minus, EigenPart::Zero, EigenPart::Plus};

inline const char* to_string(EigenPart part) {
  switch (part) {
    case EigenPart::Minus: return "minus";
    case EigenPart::Zero: return "zero";
    case EigenPart::Plus: return "plus";
  }
  return "?";
}

inline EigenPart parse_eigen_part(const std::string& s) {
  if (s == "minus") return EigenPart::Minus;
  if (s == "zero") return EigenPart::Zero;
  if (s == "plus") return EigenPart::Plus;
  throw std::invalid_argument("unknown eigenspace '" + s + "' (expected minus, zero or plus)");
}

/// Eigenvalue of L on the given part of V_sigma: (sigma+1, 1, -sigma).
constexpr int l_eigenvalue(EigenPart part, int sigma = 1) {
  switch (part) {
    case EigenPart::Minus: return sigma + 1;
    case EigenPart::Zero: return 1;
    case EigenPart::Plus: return -sigma;
  }
  return 0;
}

class ResonantOrder : public MathError {
 public:
  ResonantOrder(int k, std::vector<EigenPart> parts)
      : MathError(message(k, parts)), k_(k), parts_(std::move(parts)) {}
  int order() const { return k_; }
  const std::vector<EigenPart>& parts() const { return parts_; }

 private:
  static std::string message(int k, const std::vector<EigenPart>& parts) {
    std::string s = "resonant order k=" + std::to_string(k) + " on";
    for (auto p : parts) s += std::string(" V_") + to_string(p);
    return s;
  }
  int k_;
  std::vector<EigenPart> parts_;
};

class SingularLambda : public MathError {
 public:
  explicit SingularLambda(std::string lambda)
      : MathError("coupled V0 system is singular at lambda=" + lambda) {}
};

/// g-valued 0-form with frame-constant coefficients.
template <class S>
struct Form0 {
  std::array<S, 3> c{S(0), S(0), S(0)};

  S& operator[](int a) { return c[static_cast<std::size_t>(a)]; }
  const S& operator[](int a) const { return c[static_cast<std::size_t>(a)]; }

  Form0& operator+=(const Form0& o) {
    for (int a = 0; a < 3; ++a) (*this)[a] += o[a];
    return *this;
  }
  Form0& operator-=(const Form0& o) {
    for (int a = 0; a < 3; ++a) (*this)[a] -= o[a];
    return *this;
  }
  Form0& operator*=(const S& s) {
    for (auto& x : c) x *= s;
    return *this;
  }
  Form0& operator/=(const S& s) {
    for (auto& x : c) x /= s;
    return *this;
  }
  friend Form0 operator+(Form0 x, const Form0& y) { return x += y; }
  friend Form0 operator-(Form0 x, const Form0& y) { return x -= y; }
  friend Form0 operator-(Form0 x) {
    for (auto& v : x.c) v = -v;
    return x;
  }
  friend Form0 operator*(const S& s, Form0 x) { return x *= s; }
  friend Form0 operator*(Form0 x, const S& s) { return x *= s; }
  friend Form0 operator/(Form0 x, const S& s) { return x /= s; }
  friend bool operator==(const Form0& x, const Form0& y) { return x.c == y.c; }
  friend bool operator!=(const Form0& x, const Form0& y) { return !(x == y); }
};

/// g-valued 1-form: entry (a, i) multiplies t_a (x) e_i.
template <class S>
struct Form1 {
  std::array<S, 9> c{S(0), S(0), S(0), S(0), S(0), S(0), S(0), S(0), S(0)};

  S& operator()(int a, int i) { return c[static_cast<std::size_t>(3 * a + i)]; }
  const S& operator()(int a, int i) const { return c[static_cast<std::size_t>(3 * a + i)]; }

  Form1& operator+=(const Form1& o) {
    for (std::size_t n = 0; n < 9; ++n) c[n] += o.c[n];
    return *this;
  }
  Form1& operator-=(const Form1& o) {
    for (std::size_t n = 0; n < 9; ++n) c[n] -= o.c[n];
    return *this;
  }
  Form1& operator*=(const S& s) {
    for (auto& x : c) x *= s;
    return *this;
  }
  Form1& operator/=(const S& s) {
    for (auto& x : c) x /= s;
    return *this;
  }
  friend Form1 operator+(Form1 x, const Form1& y) { return x += y; }
  friend Form1 operator-(Form1 x, const Form1& y) { return x -= y; }
  friend Form1 operator-(Form1 x) {
    for (auto& v : x.c) v = -v;
    return x;
  }
  friend Form1 operator*(const S& s, Form1 x) { return x *= s; }
  friend Form1 operator*(Form1 x, const S& s) { return x *= s; }
  friend Form1 operator/(Form1 x, const S& s) { return x /= s; }
  friend bool operator==(const Form1& x, const Form1& y) { return x.c == y.c; }
  friend bool operator!=(const Form1& x, const Form1& y) { return !(x == y); }

  S trace() const { return (*this)(0, 0) + (*this)(1, 1) + (*this)(2, 2); }
  Form1 transpose() const {
    Form1 t;
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < 3; ++i) t(i, a) = (*this)(a, i);
    return t;
  }
};

template <class S>
bool is_zero(const Form0<S>& x) {
  for (const auto& v : x.c)
    if (!ScalarTraits<S>::is_zero(v)) return false;
  return true;
}

template <class S>
bool is_zero(const Form1<S>& x) {
  for (const auto& v : x.c)
    if (!ScalarTraits<S>::is_zero(v)) return false;
  return true;
}

template <class S>
S max_abs(const Form0<S>& x) {
  S m(0);
  for (const auto& v : x.c) {
    S a = abs_value(v);
    if (a > m) m = a;
  }
  return m;
}

template <class S>
S max_abs(const Form1<S>& x) {
  S m(0);
  for (const auto& v : x.c) {
    S a = abs_value(v);
    if (a > m) m = a;
  }
  return m;
}

template <class To, class From>
Form0<To> form_cast(const Form0<From>& x) {
  Form0<To> r;
  for (int a = 0; a < 3; ++a) r[a] = scalar_cast<To>(x[a]);
  return r;
}

template <class To, class From>
Form1<To> form_cast(const Form1<From>& x) {
  Form1<To> r;
  for (std::size_t n = 0; n < 9; ++n) r.c[n] = scalar_cast<To>(x.c[n]);
  return r;
}

/// Generator t_a as a degree-0 form.
template <class S>
Form0<S> generator(int a) {
  Form0<S> t;
  t[a] = S(1);
  return t;
}

/// e = sum t_i e_i.
template <class S>
Form1<S> vierbein() {
  Form1<S> e;
  for (int i = 0; i < 3; ++i) e(i, i) = S(1);
  return e;
}

/// *[x ^ y] for two 1-forms (graded bracket, symmetric in x and y).
template <class S>
Form1<S> star_wedge(const Form1<S>& x, const Form1<S>& y) {
  Form1<S> r;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      const int c = 3 - a - b;
      const int sab = levi_civita(a, b, c);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          if (i == j) continue;
          const int k = 3 - i - j;
          const int s = sab * levi_civita(i, j, k);
          if (s > 0)
            r(c, k) += x(a, i) * y(b, j);
          else
            r(c, k) -= x(a, i) * y(b, j);
        }
    }
  return r;
}

/// [u, v] for two 0-forms.
template <class S>
Form0<S> bracket(const Form0<S>& u, const Form0<S>& v) {
  Form0<S> r;
  r[0] = u[1] * v[2] - u[2] * v[1];
  r[1] = u[2] * v[0] - u[0] * v[2];
  r[2] = u[0] * v[1] - u[1] * v[0];
  return r;
}

/// [v, x] for a 0-form v and a 1-form x.
template <class S>
Form1<S> bracket(const Form0<S>& v, const Form1<S>& x) {
  Form1<S> r;
  for (int i = 0; i < 3; ++i) {
    Form0<S> col;
    for (int a = 0; a < 3; ++a) col[a] = x(a, i);
    const Form0<S> out = bracket(v, col);
    for (int a = 0; a < 3; ++a) r(a, i) = out[a];
  }
  return r;
}

/// [x, v] = -[v, x].
template <class S>
Form1<S> bracket(const Form1<S>& x, const Form0<S>& v) {
  return -bracket(v, x);
}

/// *[x ^ *y] for two 1-forms; a 0-form.
template <class S>
Form0<S> star_bracket_star(const Form1<S>& x, const Form1<S>& y) {
  Form0<S> r;
  for (int i = 0; i < 3; ++i) {
    Form0<S> xi, yi;
    for (int a = 0; a < 3; ++a) {
      xi[a] = x(a, i);
      yi[a] = y(a, i);
    }
    r += bracket(xi, yi);
  }
  return r;
}

/// L(a) = *[e, a]. In matrix form tr(a) I - a^T.
template <class S>
Form1<S> L_op(const Form1<S>& a) {
  Form1<S> r = -a.transpose();
  const S t = a.trace();
  for (int i = 0; i < 3; ++i) r(i, i) += t;
  return r;
}

/// Gamma(a) = *[a, *e].
template <class S>
Form0<S> gamma_op(const Form1<S>& a) {
  return star_bracket_star(a, vierbein<S>());
}

/// [e, v] for a 0-form v.
template <class S>
Form1<S> e_bracket(const Form0<S>& v) {
  return bracket(vierbein<S>(), v);
}

/// Projection onto V^-, V^0 or V^+ (sigma = 1) by Lagrange interpolation in L.
template <class S>
Form1<S> project(const Form1<S>& a, EigenPart part) {
  const int lambda = l_eigenvalue(part);
  Form1<S> r = a;
  int denom = 1;
  for (auto other : kEigenParts) {
    if (other == part) continue;
    const int mu = l_eigenvalue(other);
    r = L_op(r) - S(mu) * r;
    denom *= lambda - mu;
  }
  return r / S(denom);
}

template <class S>
bool in_eigenspace(const Form1<S>& a, EigenPart part) {
  return is_zero(Form1<S>(project(a, part) - a));
}

/// cal_L_k(a) = k a + *[e, a].
template <class S>
Form1<S> cal_L(int k, const Form1<S>& a) {
  return S(k) * a + L_op(a);
}

/// Preimage of rhs under cal_L_k with no component in the kernel. Throws ResonantOrder when rhs has a
/// nonzero part on an eigenspace where k + lambda = 0.
template <class S>
Form1<S> invert_cal_L(int k, const Form1<S>& rhs) {
  std::vector<EigenPart> singular;
  Form1<S> r;
  for (auto part : kEigenParts) {
    const Form1<S> p = project(rhs, part);
    if (k + l_eigenvalue(part) != 0)
      r += p / S(k + l_eigenvalue(part));
    else if (!is_zero(p))
      singular.push_back(part);
  }
  if (!singular.empty()) throw ResonantOrder(k, singular);
  return r;
}

/// Solves (lambda-1) a = Theta - [e, phi], lambda phi = -Gamma a + Xi for (a, phi), Theta in V^0.
template <class S>
std::pair<Form1<S>, Form0<S>> resolve_coupled(const S& lambda, const Form1<S>& theta, const Form0<S>& xi) {
  const S den = lambda * lambda - lambda - S(2);
  if (ScalarTraits<S>::is_zero(den)) throw SingularLambda(ScalarTraits<S>::to_string(lambda));
  if (!in_eigenspace(theta, EigenPart::Zero))
    throw std::invalid_argument("resolve_coupled: Theta must lie in V^0");
  Form1<S> a = (lambda * theta - e_bracket(xi)) / den;
  Form0<S> phi = ((lambda - S(1)) * xi - gamma_op(theta)) / den;
  return {std::move(a), std::move(phi)};
}

/// Runtime-typed form for the product selector surface.
template <class S>
using GForm = std::variant<Form0<S>, Form1<S>>;

template <class S>
int degree(const GForm<S>& x) {
  return static_cast<int>(x.index());
}

enum class Product { StarWedge, Bracket, StarBracketStar };

/// Bilinear products between invariant forms, selected at run time.
/// StarWedge: (1,1)->1; Bracket: (0,0)->0, (0,1)->1, (1,0)->1; StarBracketStar: (1,1)->0.
template <class S>
GForm<S> graded_product(Product kind, const GForm<S>& x, const GForm<S>& y) {
  const int dx = degree(x), dy = degree(y);
  switch (kind) {
    case Product::StarWedge:
      if (dx == 1 && dy == 1) return star_wedge(std::get<1>(x), std::get<1>(y));
      break;
    case Product::StarBracketStar:
      if (dx == 1 && dy == 1) return star_bracket_star(std::get<1>(x), std::get<1>(y));
      break;
    case Product::Bracket:
      if (dx == 0 && dy == 0) return bracket(std::get<0>(x), std::get<0>(y));
      if (dx == 0 && dy == 1) return bracket(std::get<0>(x), std::get<1>(y));
      if (dx == 1 && dy == 0) return bracket(std::get<1>(x), std::get<0>(y));
      break;
  }
  throw DegreeMismatch("product not defined for degrees (" + std::to_string(dx) + "," + std::to_string(dy) + ")");
}

}  // namespace nahm
