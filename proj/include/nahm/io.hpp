#pragma once

// JSON and CSV formats for backgrounds, free data, expansions, trajectories and reports.
// Rationals are written as "p/q" strings, floats as decimal strings at the working precision.

#include "nahm/algebra.hpp"
#include "nahm/geometry.hpp"
#include "nahm/series.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>

namespace nahm {

using Json = nlohmann::ordered_json;

template <class S>
Json scalar_to_json(const S& x) {
  return ScalarTraits<S>::to_string(x);
}

template <class S>
S scalar_from_json(const Json& j) {
  if (j.is_string()) return ScalarTraits<S>::from_string(j.get<std::string>());
  if (j.is_number_integer()) return S(j.get<long long>());
  throw std::invalid_argument("expected a scalar string, got " + j.dump());
}

template <class S>
Json to_json(const Form0<S>& v) {
  Json j = Json::array();
  for (int a = 0; a < 3; ++a) j.push_back(scalar_to_json(v[a]));
  return j;
}

template <class S>
Json to_json(const Form1<S>& x) {
  Json j = Json::array();
  for (int a = 0; a < 3; ++a) {
    Json row = Json::array();
    for (int i = 0; i < 3; ++i) row.push_back(scalar_to_json(x(a, i)));
    j.push_back(row);
  }
  return j;
}

template <class S>
Form0<S> form0_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected a 3-vector");
  Form0<S> v;
  for (int a = 0; a < 3; ++a) v[a] = scalar_from_json<S>(j[static_cast<std::size_t>(a)]);
  return v;
}

template <class S>
Form1<S> form1_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected a 3x3 matrix");
  Form1<S> x;
  for (int a = 0; a < 3; ++a) {
    const Json& row = j[static_cast<std::size_t>(a)];
    if (!row.is_array() || row.size() != 3) throw std::invalid_argument("expected a 3x3 matrix");
    for (int i = 0; i < 3; ++i) x(a, i) = scalar_from_json<S>(row[static_cast<std::size_t>(i)]);
  }
  return x;
}

/// "rational" or "float:<bits>".
template <class S>
std::string scalar_tag() {
  if constexpr (ScalarTraits<S>::exact)
    return "rational";
  else
    return "float:" + std::to_string(real_precision_bits());
}

// Backgrounds

Json background_to_json(const FrameBackground<Rational>& bg);
FrameBackground<Rational> background_from_json(const Json& j);
FrameBackground<Rational> parse_background_json(const std::string& text);

// Free data

/// {"entries": [{"eigenspace": "plus", "matrix": [[...]]}, ...],
///  "higher_kernel": [{"k": .., "p": .., "eigenspace": .., "matrix": ..}]}
/// Entries with the same tag are summed. Every matrix must lie in its declared eigenspace.
template <class S>
FreeData<S> free_data_from_json(const Json& j) {
  FreeData<S> f;
  auto checked = [](const Json& item, EigenPart part) {
    const Form1<S> m = form1_from_json<S>(item.at("matrix"));
    const Form1<S> residual = m - project(m, part);
    bool ok;
    if constexpr (ScalarTraits<S>::exact)
      ok = is_zero(residual);
    else
      ok = max_abs(residual) <= S(1e-10);
    if (!ok) throw std::invalid_argument(std::string("free-data matrix is not in V_") + to_string(part));
    return m;
  };
  if (j.contains("entries")) {
    for (const auto& item : j.at("entries")) {
      const EigenPart part = parse_eigen_part(item.at("eigenspace").get<std::string>());
      const Form1<S> m = checked(item, part);
      switch (part) {
        case EigenPart::Plus: f.c_plus += m; break;
        case EigenPart::Zero: f.c_zero += m; break;
        case EigenPart::Minus: f.c_minus += m; break;
      }
    }
  }
  if (j.contains("higher_kernel")) {
    for (const auto& item : j.at("higher_kernel")) {
      const EigenPart part = parse_eigen_part(item.at("eigenspace").get<std::string>());
      f.higher_kernel[{item.at("k").get<int>(), item.at("p").get<int>(), part}] = checked(item, part);
    }
  }
  return f;
}

template <class S>
Json free_data_to_json(const FreeData<S>& f) {
  Json j;
  j["entries"] = Json::array();
  const std::pair<EigenPart, const Form1<S>*> parts[] = {
      {EigenPart::Minus, &f.c_minus}, {EigenPart::Zero, &f.c_zero}, {EigenPart::Plus, &f.c_plus}};
  for (const auto& [part, m] : parts) {
    if (is_zero(*m)) continue;
    j["entries"].push_back(Json{{"eigenspace", to_string(part)}, {"matrix", to_json(*m)}});
  }
  if (!f.higher_kernel.empty()) {
    j["higher_kernel"] = Json::array();
    for (const auto& [slot, m] : f.higher_kernel) {
      const auto& [k, p, part] = slot;
      j["higher_kernel"].push_back(Json{{"k", k}, {"p", p}, {"eigenspace", to_string(part)}, {"matrix", to_json(m)}});
    }
  }
  return j;
}

FreeData<Rational> load_free_data(const std::string& path);

// Series

/// An expansion together with its (opaque) summary block, as stored on disk.
template <class S>
struct SeriesDocument {
  std::string background;
  std::string scalar;
  int order = 0;
  std::map<Monomial, PhgCoeff<S>> entries;
  std::optional<Json> summary;
};

template <class S>
SeriesDocument<S> make_document(const PhgSeries<S>& s, std::optional<Json> summary = {}) {
  return {s.background.name, scalar_tag<S>(), s.order, s.entries, std::move(summary)};
}

template <class S>
Json to_json(const SeriesDocument<S>& doc) {
  Json j;
  j["background"] = doc.background;
  j["scalar"] = doc.scalar;
  j["order"] = doc.order;
  j["entries"] = Json::array();
  for (const auto& [m, c] : doc.entries)
    j["entries"].push_back(
        Json{{"k", m.first}, {"p", m.second}, {"a", to_json(c.a)}, {"b", to_json(c.b)}, {"phi_y", to_json(c.phi_y)}});
  if (doc.summary) j["summary"] = *doc.summary;
  return j;
}

template <class S>
SeriesDocument<S> series_document_from_json(const Json& j) {
  SeriesDocument<S> doc;
  doc.background = j.at("background").get<std::string>();
  doc.scalar = j.value("scalar", scalar_tag<S>());
  doc.order = j.at("order").get<int>();
  for (const auto& e : j.at("entries")) {
    PhgCoeff<S> c;
    c.a = form1_from_json<S>(e.at("a"));
    c.b = form1_from_json<S>(e.at("b"));
    c.phi_y = form0_from_json<S>(e.at("phi_y"));
    const Monomial m{e.at("k").get<int>(), e.at("p").get<int>()};
    if (m.first < 1 || m.second < 0) throw std::invalid_argument("series entry has invalid (k, p)");
    if (!doc.entries.emplace(m, c).second) throw std::invalid_argument("duplicate series entry");
  }
  if (j.contains("summary")) doc.summary = j.at("summary");
  return doc;
}

/// Canonical text form: two-space indentation and a trailing newline.
inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_text_file(const std::string& path);

}  // namespace nahm
