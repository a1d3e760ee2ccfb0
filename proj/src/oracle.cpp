#include "nahm/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace nahm {

TruncatedSeries::TruncatedSeries(int low, std::vector<Rational> coeffs, int last)
    : low_(low), last_(last), c_(std::move(coeffs)) {
  if (last < low) throw std::invalid_argument("truncated series: last < low");
  c_.resize(static_cast<std::size_t>(last - low + 1), Rational(0));
  normalize();
}

TruncatedSeries TruncatedSeries::constant(const Rational& c, int last) { return monomial(c, 0, last); }

TruncatedSeries TruncatedSeries::monomial(const Rational& c, int power, int last) {
  return TruncatedSeries(power, {c}, std::max(last, power));
}

TruncatedSeries TruncatedSeries::exp_linear(const Rational& rate, int last) {
  std::vector<Rational> c;
  Rational term = 1;
  for (int n = 0; n <= last; ++n) {
    c.push_back(term);
    term = term * rate / (n + 1);
  }
  return TruncatedSeries(0, std::move(c), last);
}

void TruncatedSeries::normalize() {
  std::size_t lead = 0;
  while (lead + 1 < c_.size() && c_[lead] == 0) ++lead;
  if (lead == 0) return;
  c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
  low_ += static_cast<int>(lead);
}

Rational TruncatedSeries::operator[](int n) const {
  if (n > last_) throw std::out_of_range("truncated series: coefficient beyond truncation order");
  if (n < low_) return 0;
  return c_[static_cast<std::size_t>(n - low_)];
}

TruncatedSeries operator+(const TruncatedSeries& x, const TruncatedSeries& y) {
  const int low = std::min(x.low_, y.low_);
  const int last = std::min(x.last_, y.last_);
  if (last < low) throw std::invalid_argument("truncated series: nothing known in sum");
  std::vector<Rational> c;
  for (int n = low; n <= last; ++n) c.push_back(x[n] + y[n]);
  return TruncatedSeries(low, std::move(c), last);
}

TruncatedSeries operator*(const Rational& s, const TruncatedSeries& x) {
  std::vector<Rational> c = x.c_;
  for (auto& v : c) v *= s;
  return TruncatedSeries(x.low_, std::move(c), x.last_);
}

TruncatedSeries operator-(const TruncatedSeries& x, const TruncatedSeries& y) { return x + Rational(-1) * y; }

TruncatedSeries operator*(const TruncatedSeries& x, const TruncatedSeries& y) {
  const int low = x.low_ + y.low_;
  const int last = std::min(x.last_ + y.low_, y.last_ + x.low_);
  std::vector<Rational> c;
  for (int n = low; n <= last; ++n) {
    Rational sum = 0;
    for (int i = x.low_; i <= n - y.low_; ++i) sum += x[i] * y[n - i];
    c.push_back(sum);
  }
  return TruncatedSeries(low, std::move(c), last);
}

TruncatedSeries operator/(const TruncatedSeries& x, const TruncatedSeries& y) {
  const Rational lead = y[y.low_];
  if (lead == 0) throw std::domain_error("truncated series: division by a series with no known nonzero term");
  const int low = x.low_ - y.low_;
  const int terms = std::min(x.last_ - x.low_, y.last_ - y.low_);
  std::vector<Rational> q;
  for (int m = 0; m <= terms; ++m) {
    Rational v = x[x.low_ + m];
    for (int j = 1; j <= m; ++j) v -= y[y.low_ + j] * q[static_cast<std::size_t>(m - j)];
    q.push_back(v / lead);
  }
  return TruncatedSeries(low, std::move(q), low + terms);
}

ProfileSolution profile_solution(const std::string& name) {
  ProfileSolution s;
  s.name = name;
  if (name == "round-s3") {
    s.kind = ProfileKind::RoundS3;
    s.background = builtin("round-s3");
    s.matched_free_data.c_minus = Rational(-2, 3) * vierbein<Rational>();
  } else if (name == "hyperbolic-h3") {
    s.kind = ProfileKind::Hyperbolic;
    s.background = builtin("hyperbolic-h3");
    s.bracket_scale = 2;
  } else if (name == "flat") {
    s.kind = ProfileKind::Flat;
    s.background = builtin("flat");
  } else {
    throw std::invalid_argument("no closed-form solution registered for '" + name + "'");
  }
  return s;
}

std::optional<ProfileSolution> profile_for_background(const std::string& background_name) {
  const std::string prefix = "builtin:";
  std::string name = background_name;
  if (name.rfind(prefix, 0) == 0) name = name.substr(prefix.size());
  if (name == "round-s3" || name == "hyperbolic-h3" || name == "flat") return profile_solution(name);
  return std::nullopt;
}

TaylorProfile taylor_profile(const ProfileSolution& sol, int N) {
  if (N < 0 || N > 12) throw std::invalid_argument("taylor_profile: order must lie in [0, 12]");
  TaylorProfile out;
  const int work = N + 2;
  const auto one = TruncatedSeries::constant(1, work);
  const auto E = TruncatedSeries::exp_linear(2, work);
  TruncatedSeries fA, fPhi;
  switch (sol.kind) {
    case ProfileKind::Flat:
      fA = one;
      fPhi = TruncatedSeries::monomial(1, -1, work);
      break;
    case ProfileKind::Hyperbolic:
      fA = one;
      fPhi = (E + one) / (E - one);
      break;
    case ProfileKind::RoundS3: {
      const auto D = E * E + Rational(4) * E + one;
      fA = Rational(6) * E / D;
      fPhi = Rational(6) * (E + one) * E / (D * (E - one));
      break;
    }
  }
  for (int n = 0; n <= N; ++n) out.fA.push_back(fA[n]);
  for (int n = -1; n <= N; ++n) out.fPhi.push_back(fPhi[n]);
  return out;
}

std::string trajectory_csv_header() {
  std::string h = "y";
  for (const char* field : {"A", "phi"})
    for (int a = 1; a <= 3; ++a)
      for (int i = 1; i <= 3; ++i) h += "," + std::string(field) + "_" + std::to_string(a) + std::to_string(i);
  for (int a = 1; a <= 3; ++a) h += ",phi_y_" + std::to_string(a);
  return h;
}

}  // namespace nahm
