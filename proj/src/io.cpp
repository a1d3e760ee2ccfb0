#include "nahm/io.hpp"

#include <fstream>
#include <sstream>

namespace nahm {

Json background_to_json(const FrameBackground<Rational>& bg) {
  Json j;
  j["name"] = bg.name;
  Json c = Json::array();
  for (int k = 0; k < 3; ++k) {
    Json plane = Json::array();
    for (int i = 0; i < 3; ++i) {
      Json row = Json::array();
      for (int l = 0; l < 3; ++l) row.push_back(format_rational(bg.c(k, i, l)));
      plane.push_back(row);
    }
    c.push_back(plane);
  }
  j["c"] = c;
  j["volume"] = bg.volume ? Json(format_rational(*bg.volume)) : Json(nullptr);
  return j;
}

FrameBackground<Rational> background_from_json(const Json& j) {
  StructureConstants<Rational> c;
  const Json& cj = j.at("c");
  if (!cj.is_array() || cj.size() != 3) throw std::invalid_argument("background 'c' must be 3x3x3");
  for (int k = 0; k < 3; ++k) {
    const Json& plane = cj[static_cast<std::size_t>(k)];
    if (!plane.is_array() || plane.size() != 3) throw std::invalid_argument("background 'c' must be 3x3x3");
    for (int i = 0; i < 3; ++i) {
      const Json& row = plane[static_cast<std::size_t>(i)];
      if (!row.is_array() || row.size() != 3) throw std::invalid_argument("background 'c' must be 3x3x3");
      for (int l = 0; l < 3; ++l) c(k, i, l) = scalar_from_json<Rational>(row[static_cast<std::size_t>(l)]);
    }
  }
  std::optional<Rational> volume;
  if (j.contains("volume") && !j.at("volume").is_null()) volume = scalar_from_json<Rational>(j.at("volume"));
  return make_background<Rational>(j.value("name", std::string("custom")), c, volume);
}

FrameBackground<Rational> parse_background_json(const std::string& text) {
  return background_from_json(parse_json_text(text));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

FreeData<Rational> load_free_data(const std::string& path) {
  return free_data_from_json<Rational>(parse_json_text(read_text_file(path)));
}

}  // namespace nahm
