#pragma once

// Deterministic random inputs for property checks.

#include "nahm/algebra.hpp"
#include "nahm/geometry.hpp"
#include "nahm/series.hpp"

#include <cstdint>
#include <random>

namespace nahm {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  /// p/q with |p| <= max_num, 1 <= q <= max_den.
  Rational rational(int max_num = 9, int max_den = 7) {
    std::uniform_int_distribution<int> num(-max_num, max_num), den(1, max_den);
    return Rational(num(rng_), den(rng_));
  }

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Form0<Rational> form0() {
    Form0<Rational> v;
    for (auto& x : v.c) x = rational();
    return v;
  }

  Form1<Rational> form1() {
    Form1<Rational> x;
    for (auto& v : x.c) v = rational();
    return x;
  }

  Form1<Rational> form1_in(EigenPart part) { return project(form1(), part); }

  FreeData<Rational> free_data() {
    FreeData<Rational> f;
    f.c_plus = form1_in(EigenPart::Plus);
    f.c_zero = form1_in(EigenPart::Zero);
    f.c_minus = form1_in(EigenPart::Minus);
    return f;
  }

  StructureConstants<Rational> structure_constants() {
    StructureConstants<Rational> c;
    for (int k = 0; k < 3; ++k) {
      c.set(k, 0, 1, rational(4, 3));
      c.set(k, 1, 2, rational(4, 3));
      c.set(k, 2, 0, rational(4, 3));
    }
    return c;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace nahm
