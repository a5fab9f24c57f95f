#include "biquat/serialize.hpp"

#include <cstdio>

#include <json.hpp>

namespace biquat {

namespace {

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string pair17(Complex c) {
  return "[" + num17(c.real()) + "," + num17(c.imag()) + "]";
}

Complex complex_from(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2) {
    throw Error(std::string("frame_from_json: '") + key + "' must be [re,im]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

std::string frame_to_json(const Frame& fr) {
  return "{\"a1\":" + pair17(fr.a1) + ",\"a2\":" + pair17(fr.a2) +
         ",\"b1\":" + pair17(fr.b1) + ",\"b2\":" + pair17(fr.b2) + "}";
}

Frame frame_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("frame_from_json: ") + e.what());
  }
  try {
    return {complex_from(j, "a1"), complex_from(j, "a2"), complex_from(j, "b1"),
            complex_from(j, "b2")};
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("frame_from_json: ") + e.what());
  }
}

std::string polyline_to_json(const Polyline& path) {
  std::string out = "{\"vertices\":[";
  for (size_t k = 0; k < path.vertices.size(); ++k) {
    const auto& p = path.vertices[k];
    if (k > 0) out += ",";
    out += "[" + num17(p.x) + "," + num17(p.y) + "," + num17(p.z) + "]";
  }
  out += "],\"closed\":";
  out += path.closed ? "true" : "false";
  return out + "}";
}

Polyline polyline_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("polyline_from_json: ") + e.what());
  }
  Polyline out;
  const nlohmann::json* verts = &j;
  try {
    if (j.is_object()) {
      verts = &j.at("vertices");
      out.closed = j.value("closed", false);
    }
    for (const auto& v : *verts) {
      if (!v.is_array() || v.size() != 3) {
        throw Error("polyline_from_json: vertex must be [x,y,z]");
      }
      out.vertices.push_back(
          {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("polyline_from_json: ") + e.what());
  }
  return out;
}

}  // namespace biquat
