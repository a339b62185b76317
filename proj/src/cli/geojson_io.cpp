#include "gcpoly/cli/geojson_io.hpp"

#include <fstream>
#include <stdexcept>

#include "gcpoly/cli/config.hpp"

namespace gcpoly::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<Point> parse_positions(const json& coords) {
  if (!coords.is_array()) throw std::invalid_argument("GeoJSON: positions must be an array");
  std::vector<Point> pts;
  for (const auto& pos : coords) {
    if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
      throw std::invalid_argument("GeoJSON: bad position");
    }
    const Point p{pos[0].get<double>(), pos[1].get<double>()};
    if (pts.empty() || pts.back() != p) pts.push_back(p);
  }
  return pts;
}

Polyline parse_line(const json& coords) {
  std::vector<Point> pts = parse_positions(coords);
  const bool closed = pts.size() >= 4 && pts.front() == pts.back();
  return {std::move(pts), closed};
}

Polyline parse_ring(const json& coords) {
  std::vector<Point> pts = parse_positions(coords);
  if (pts.size() < 4 || pts.front() != pts.back()) {
    throw std::invalid_argument("GeoJSON: polygon ring needs 4+ positions and must be closed");
  }
  return {std::move(pts), true};
}

std::vector<Polyline> parse_polygon(const json& coords) {
  if (!coords.is_array() || coords.empty()) {
    throw std::invalid_argument("GeoJSON: polygon needs at least one ring");
  }
  std::vector<Polyline> rings;
  for (const auto& ring : coords) rings.push_back(parse_ring(ring));
  return rings;
}

Geometry parse_geometry(const json& g) {
  if (!g.is_object() || !g.contains("type") || !g.contains("coordinates")) {
    throw std::invalid_argument("GeoJSON: geometry needs 'type' and 'coordinates'");
  }
  const std::string type = g["type"].get<std::string>();
  const json& c = g["coordinates"];
  Geometry out;
  if (type == "LineString") {
    out.kind = GeometryKind::line_string;
    out.parts.push_back({parse_line(c)});
  } else if (type == "MultiLineString") {
    out.kind = GeometryKind::multi_line_string;
    if (!c.is_array()) throw std::invalid_argument("GeoJSON: bad MultiLineString");
    for (const auto& line : c) out.parts.push_back({parse_line(line)});
  } else if (type == "Polygon") {
    out.kind = GeometryKind::polygon;
    out.parts.push_back(parse_polygon(c));
  } else if (type == "MultiPolygon") {
    out.kind = GeometryKind::multi_polygon;
    if (!c.is_array()) throw std::invalid_argument("GeoJSON: bad MultiPolygon");
    for (const auto& poly : c) out.parts.push_back(parse_polygon(poly));
  } else {
    throw std::invalid_argument("GeoJSON: unsupported geometry type '" + type + "'");
  }
  return out;
}

Feature parse_feature(const json& f) {
  Feature out;
  if (f.contains("properties") && f["properties"].is_object()) {
    out.properties = ordered_json::parse(f["properties"].dump());
  }
  if (f.contains("geometry") && !f["geometry"].is_null()) {
    out.geometry = parse_geometry(f["geometry"]);
  }
  return out;
}

ordered_json coords_of(const Polyline& line) {
  ordered_json arr = ordered_json::array();
  for (const Point& p : line.points()) arr.push_back({round_sig(p.x), round_sig(p.y)});
  return arr;
}

}  // namespace

std::vector<Feature> parse_features(const json& doc) {
  try {
    if (!doc.is_object() || !doc.contains("type")) {
      throw std::invalid_argument("GeoJSON: top-level object with 'type' expected");
    }
    const std::string type = doc["type"].get<std::string>();
    std::vector<Feature> out;
    if (type == "FeatureCollection") {
      if (!doc.contains("features") || !doc["features"].is_array()) {
        throw std::invalid_argument("GeoJSON: FeatureCollection without 'features'");
      }
      for (const auto& f : doc["features"]) out.push_back(parse_feature(f));
    } else if (type == "Feature") {
      out.push_back(parse_feature(doc));
    } else {
      out.push_back({ordered_json::object(), parse_geometry(doc)});
    }
    return out;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("GeoJSON: ") + e.what());
  }
}

std::vector<Feature> read_features_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return parse_features(doc);
}

ordered_json line_to_json(const Polyline& line) {
  return {{"type", "LineString"}, {"coordinates", coords_of(line)}};
}

ordered_json polygon_to_json(const Polygon& p) {
  ordered_json rings = ordered_json::array();
  rings.push_back(coords_of(p.exterior));
  for (const auto& hole : p.interiors) rings.push_back(coords_of(hole));
  return {{"type", "Polygon"}, {"coordinates", rings}};
}

ordered_json geometry_to_json(const Geometry& g) {
  ordered_json coords = ordered_json::array();
  const auto part_coords = [](const std::vector<Polyline>& rings) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rings) arr.push_back(coords_of(r));
    return arr;
  };
  switch (g.kind) {
    case GeometryKind::line_string:
      return {{"type", "LineString"}, {"coordinates", coords_of(g.parts.at(0).at(0))}};
    case GeometryKind::multi_line_string:
      for (const auto& part : g.parts) coords.push_back(coords_of(part.at(0)));
      return {{"type", "MultiLineString"}, {"coordinates", coords}};
    case GeometryKind::polygon:
      return {{"type", "Polygon"}, {"coordinates", part_coords(g.parts.at(0))}};
    case GeometryKind::multi_polygon:
      for (const auto& part : g.parts) coords.push_back(part_coords(part));
      return {{"type", "MultiPolygon"}, {"coordinates", coords}};
  }
  return {};
}

std::vector<Polygon> polygons_of(const Geometry& g) {
  std::vector<Polygon> out;
  if (g.kind != GeometryKind::polygon && g.kind != GeometryKind::multi_polygon) return out;
  for (const auto& part : g.parts) {
    out.push_back({part.front(), std::vector<Polyline>(part.begin() + 1, part.end())});
  }
  return out;
}

std::string feature_id(const Feature& f) {
  for (const char* key : {"image_id", "source"}) {
    if (f.properties.contains(key)) {
      const auto& v = f.properties[key];
      return v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  return "";
}

}  // namespace gcpoly::cli
