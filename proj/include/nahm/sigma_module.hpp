#pragma once

// Abstract V_sigma = Omega^1(tau_sigma) realized as spin-sigma (x) spin-1 over the rationals.
//
// The su(2) action uses the unnormalized weight basis |m>, m = j..-j, with
//   H|m> = m|m>,  E|m> = |m+1>,  F|m> = (j+m)(j-m+1)|m-1>,
// which is a rational representation of the complexified algebra. With t_a = -i J_a
// the vierbein operator becomes L = sum_a rho(t_a) (x) T_a = -(H(x)H' + (E(x)F' + F(x)E')/2).

#include "nahm/algebra.hpp"
#include "nahm/dense.hpp"

#include <array>
#include <map>
#include <stdexcept>

namespace nahm {

/// Lie algebra representation matrices (H, E, F) for spin j.
struct SpinRep {
  int spin = 0;
  DenseMatrix<Rational> H, E, F;

  explicit SpinRep(int j) : spin(j) {
    if (j < 0) throw std::invalid_argument("spin must be non-negative");
    const auto n = static_cast<std::size_t>(2 * j + 1);
    H = DenseMatrix<Rational>(n, n);
    E = DenseMatrix<Rational>(n, n);
    F = DenseMatrix<Rational>(n, n);
    // index r <-> weight m = j - r
    for (std::size_t r = 0; r < n; ++r) {
      const int m = j - static_cast<int>(r);
      H(r, r) = m;
      if (r > 0) E(r - 1, r) = 1;
      if (r + 1 < n) F(r + 1, r) = Rational((j + m) * (j - m + 1));
    }
  }
  std::size_t dim() const { return H.rows(); }

  /// Casimir J^2 = H^2 + (EF + FE)/2, equal to j(j+1) Id.
  DenseMatrix<Rational> casimir() const { return H * H + Rational(1, 2) * (E * F + F * E); }
};

inline DenseMatrix<Rational> kron(const DenseMatrix<Rational>& x, const DenseMatrix<Rational>& y) {
  DenseMatrix<Rational> r(x.rows() * y.rows(), x.cols() * y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (x(i, j) == 0) continue;
      for (std::size_t k = 0; k < y.rows(); ++k)
        for (std::size_t l = 0; l < y.cols(); ++l) r(i * y.rows() + k, j * y.cols() + l) = x(i, j) * y(k, l);
    }
  return r;
}

/// Casimir of the tensor product rep spin j1 (x) spin j2.
inline DenseMatrix<Rational> tensor_casimir(const SpinRep& r1, const SpinRep& r2) {
  const auto i1 = DenseMatrix<Rational>::identity(r1.dim());
  const auto i2 = DenseMatrix<Rational>::identity(r2.dim());
  const auto H = kron(r1.H, i2) + kron(i1, r2.H);
  const auto E = kron(r1.E, i2) + kron(i1, r2.E);
  const auto F = kron(r1.F, i2) + kron(i1, r2.F);
  return H * H + Rational(1, 2) * (E * F + F * E);
}

class SigmaModule {
 public:
  explicit SigmaModule(int sigma) : sigma_(sigma), rep_(check(sigma)), vec_(1) {
    L_ = Rational(-1) * (kron(rep_.H, vec_.H) + Rational(1, 2) * (kron(rep_.E, vec_.F) + kron(rep_.F, vec_.E)));
    for (auto part : kEigenParts) {
      auto P = DenseMatrix<Rational>::identity(dim());
      const int lambda = eigenvalue(part);
      Rational denom = 1;
      for (auto other : kEigenParts) {
        if (other == part) continue;
        const int mu = eigenvalue(other);
        P = (L_ - Rational(mu) * DenseMatrix<Rational>::identity(dim())) * P;
        denom *= lambda - mu;
      }
      projectors_[static_cast<std::size_t>(part)] = (Rational(1) / denom) * P;
    }
  }

  int sigma() const { return sigma_; }
  std::size_t dim() const { return 3 * rep_.dim(); }
  int eigenvalue(EigenPart part) const { return l_eigenvalue(part, sigma_); }
  const DenseMatrix<Rational>& L() const { return L_; }
  const DenseMatrix<Rational>& projector(EigenPart part) const {
    return projectors_[static_cast<std::size_t>(part)];
  }

  /// Dimensions (2 sigma - 1, 2 sigma + 1, 2 sigma + 3) indexed by part.
  static int expected_dim(EigenPart part, int sigma) {
    switch (part) {
      case EigenPart::Minus: return 2 * sigma - 1;
      case EigenPart::Zero: return 2 * sigma + 1;
      case EigenPart::Plus: return 2 * sigma + 3;
    }
    return 0;
  }

  std::size_t projector_rank(EigenPart part) const { return rank(projector(part)); }

 private:
  static int check(int sigma) {
    if (sigma < 1) throw std::invalid_argument("sigma must be a positive integer");
    return sigma;
  }

  int sigma_;
  SpinRep rep_;
  SpinRep vec_;
  DenseMatrix<Rational> L_;
  std::array<DenseMatrix<Rational>, 3> projectors_;
};

struct LeadingOrderStructure {
  int a_order = 0;
  int b_order = 0;
  int phi_order = 0;
  /// (dim V^+, dim V^0, dim V^-): the free data of b, phi_y and a at leading order.
  std::array<int, 3> free_dims{};
};

/// Leading exponents of a^sigma, b^sigma, phi_y^sigma and the dimensions of their free data.
inline LeadingOrderStructure leading_order_structure(int sigma) {
  if (sigma < 1) throw std::invalid_argument("sigma must be >= 1");
  const SigmaModule module(sigma);
  LeadingOrderStructure s;
  s.a_order = sigma + 1;
  s.b_order = sigma;
  s.phi_order = sigma + 1;
  s.free_dims = {static_cast<int>(module.projector_rank(EigenPart::Plus)),
                 static_cast<int>(module.projector_rank(EigenPart::Zero)),
                 static_cast<int>(module.projector_rank(EigenPart::Minus))};
  return s;
}

/// Spins J present in spin j1 (x) spin j2, read off from the Casimir's eigenvalues J(J+1).
inline std::vector<int> clebsch_gordan_spins(int j1, int j2) {
  const SpinRep r1(j1), r2(j2);
  const auto C = tensor_casimir(r1, r2);
  const auto n = C.rows();
  std::vector<int> spins;
  for (int J = 0; J <= j1 + j2; ++J) {
    const auto shifted = C - Rational(J * (J + 1)) * DenseMatrix<Rational>::identity(n);
    if (rank(shifted) < n) spins.push_back(J);
  }
  return spins;
}

}  // namespace nahm
