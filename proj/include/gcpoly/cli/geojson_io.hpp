#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcpoly/geometry.hpp"

namespace gcpoly::cli {

enum class GeometryKind { line_string, multi_line_string, polygon, multi_polygon };

/// A GeoJSON geometry as parts of rings/lines. LineString: one part with one
/// line; Polygon: one part whose first ring is the exterior.
struct Geometry {
  GeometryKind kind = GeometryKind::line_string;
  std::vector<std::vector<Polyline>> parts;
};

struct Feature {
  nlohmann::ordered_json properties = nlohmann::ordered_json::object();
  std::optional<Geometry> geometry;
};

/// Accepts a FeatureCollection, a single Feature or a bare geometry. Repeated
/// consecutive positions are dropped. Throws std::invalid_argument on
/// malformed input.
std::vector<Feature> parse_features(const nlohmann::json& doc);
std::vector<Feature> read_features_file(const std::string& path);

nlohmann::ordered_json geometry_to_json(const Geometry& g);
nlohmann::ordered_json polygon_to_json(const Polygon& p);
nlohmann::ordered_json line_to_json(const Polyline& line);

/// Polygons of a Polygon/MultiPolygon geometry; empty for line geometries.
std::vector<Polygon> polygons_of(const Geometry& g);

/// Identifier used to pair features across files: the `image_id` property,
/// else `source`, else the empty string.
std::string feature_id(const Feature& f);

}  // namespace gcpoly::cli
