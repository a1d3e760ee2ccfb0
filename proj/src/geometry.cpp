#include "nahm/geometry.hpp"

#include "nahm/io.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace nahm {

namespace {

using Params = std::map<std::string, Rational>;

std::pair<std::string, Params> split_spec(const std::string& spec) {
  const auto q = spec.find('?');
  std::string name = spec.substr(0, q);
  Params params;
  if (q == std::string::npos) return {name, params};
  std::stringstream rest(spec.substr(q + 1));
  std::string item;
  while (std::getline(rest, item, '&')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("malformed builtin parameter '" + item + "'");
    params[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
  }
  return {name, params};
}

Rational positive_param(Params& params, const std::string& key) {
  Rational value = 1;
  if (auto it = params.find(key); it != params.end()) {
    value = it->second;
    params.erase(it);
  }
  if (value <= 0) throw std::invalid_argument("parameter '" + key + "' must be positive");
  return value;
}

std::string canonical_name(const std::string& name, const std::string& key, const Rational& value) {
  if (value == 1) return name;
  return name + "?" + key + "=" + format_rational(value);
}

}  // namespace

std::vector<BuiltinInfo> builtin_catalog() {
  return {
      {"flat", "", "Euclidean R^3, c = 0"},
      {"round-s3", "scale=r", "round S^3 of radius r, c^k_ij = (2/r) eps_ijk"},
      {"hyperbolic-h3", "scale=r", "hyperbolic space of curvature -1/r^2 (solvable group frame)"},
      {"berger-s3", "squash=t", "Berger sphere: E_1 = X_1/t, einstein iff t = 1"},
      {"h2xr", "scale=r", "H^2 (curvature -1/r^2) x R, not einstein"},
  };
}

FrameBackground<Rational> builtin(const std::string& spec) {
  auto [name, params] = split_spec(spec);
  StructureConstants<Rational> c;
  std::string canonical;
  if (name == "flat") {
    canonical = name;
  } else if (name == "round-s3") {
    const Rational r = positive_param(params, "scale");
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) c(k, i, j) = Rational(2 * levi_civita(i, j, k)) / r;
    canonical = canonical_name(name, "scale", r);
  } else if (name == "hyperbolic-h3") {
    const Rational r = positive_param(params, "scale");
    c.set(1, 0, 1, 1 / r);
    c.set(2, 0, 2, 1 / r);
    canonical = canonical_name(name, "scale", r);
  } else if (name == "berger-s3") {
    const Rational t = positive_param(params, "squash");
    c.set(0, 1, 2, 2 * t);
    c.set(1, 2, 0, 2 / t);
    c.set(2, 0, 1, 2 / t);
    canonical = canonical_name(name, "squash", t);
  } else if (name == "h2xr") {
    const Rational r = positive_param(params, "scale");
    c.set(1, 0, 1, 1 / r);
    canonical = canonical_name(name, "scale", r);
  } else {
    throw std::invalid_argument("unknown builtin background '" + name + "'");
  }
  if (!params.empty()) throw std::invalid_argument("unknown parameter '" + params.begin()->first + "' for " + name);
  return make_background<Rational>("builtin:" + canonical, c);
}

FrameBackground<Rational> load_background(const std::string& spec) {
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) return builtin(spec.substr(prefix.size()));
  return parse_background_json(read_text_file(spec));
}

}  // namespace nahm
