#pragma once

// Scalar fields used throughout the library: an exact rational type and an
// arbitrary-precision binary float whose precision is chosen at run time.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace nahm {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using Real = boost::multiprecision::mpfr_float;

namespace detail {
inline unsigned requested_bits = 0;
}

/// Sets the working precision (in bits) for every Real created afterwards. The decimal precision is
/// rounded up so the binary mantissa is never shorter than requested.
inline void set_real_precision_bits(unsigned bits) {
  if (bits < 64) throw std::invalid_argument("float precision must be at least 64 bits");
  const auto digits10 = static_cast<unsigned>(std::ceil(bits * 0.30102999566398120));
  Real::default_precision(digits10);
  detail::requested_bits = bits;
}

/// The precision last requested through set_real_precision_bits, or the library default in bits.
inline unsigned real_precision_bits() {
  if (detail::requested_bits) return detail::requested_bits;
  return static_cast<unsigned>(std::ceil(Real::default_precision() / 0.30102999566398120));
}

/// Parses "p/q" or "p" into a canonical rational. Throws on malformed input or q == 0.
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in rational '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
}

/// Lowest-terms "p/q" with q > 0; integers are written with "/1".
inline std::string format_rational(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
  static bool is_zero(const Rational& x) { return x == 0; }
  static std::string to_string(const Rational& x) { return format_rational(x); }
  static Rational from_string(const std::string& s) { return parse_rational(s); }
  static Rational from_rational(const Rational& q) { return q; }
};

template <>
struct ScalarTraits<Real> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  static Real tolerance() {
    Real t = 10;
    return boost::multiprecision::pow(t, -static_cast<int>(Real::default_precision()) + 10);
  }
  static bool is_zero(const Real& x) { return boost::multiprecision::abs(x) <= tolerance(); }
  static std::string to_string(const Real& x) {
    if (x == 0) return "0";
    return x.str(static_cast<std::streamsize>(Real::default_precision()), std::ios_base::scientific);
  }
  static Real from_string(const std::string& s) {
    if (s.find('/') != std::string::npos) return Real(parse_rational(s));
    return Real(s);
  }
  static Real from_rational(const Rational& q) { return Real(q); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "double";
  static double tolerance() { return 1e-13; }
  static bool is_zero(double x) { return std::abs(x) <= tolerance(); }
  static std::string to_string(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
  }
  static double from_string(const std::string& s) { return std::stod(s); }
  static double from_rational(const Rational& q) { return q.convert_to<double>(); }
};

/// Converts between the scalar realizations (exact → float is rounding; float → exact is rejected).
template <class To, class From>
To scalar_cast(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (std::is_same_v<From, Rational>) {
    return ScalarTraits<To>::from_rational(x);
  } else if constexpr (std::is_same_v<To, double>) {
    return x.template convert_to<double>();
  } else if constexpr (std::is_same_v<From, double>) {
    static_assert(!std::is_same_v<To, Rational>, "no float to rational conversion");
    return To(x);
  } else {
    static_assert(!std::is_same_v<To, Rational>, "no float to rational conversion");
    return To(x);
  }
}

template <class S>
S abs_value(const S& x) {
  if constexpr (std::is_same_v<S, double>) {
    return std::abs(x);
  } else {
    return boost::multiprecision::abs(x);
  }
}

}  // namespace nahm
