#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "trackforge/geo/geometry.hpp"
#include "trackforge/tracks/dem.hpp"

namespace trackforge::tracks {

// Ordered by restrictiveness; lower wins in classify_airspace.
enum class AirspaceClass { B = 0, C = 1, D = 2, other = 3 };

const char* airspace_class_name(AirspaceClass cls);
AirspaceClass airspace_class_from_name(const std::string& name);

struct AirspaceVolume {
    std::string name;
    AirspaceClass cls = AirspaceClass::other;
    geo::Polygon boundary;  // no repeated closing vertex
    double floor_ft_agl = 0.0;
    double ceiling_ft_agl = 0.0;
};

// GeoJSON FeatureCollection of Polygon features with properties `class`,
// `floor_ft_agl`, `ceiling_ft_agl` (and optional `name`). Note GeoJSON
// coordinate order is [lon, lat]. Only the outer ring is read.
std::vector<AirspaceVolume> load_airspace_geojson(const std::filesystem::path& path);
void save_airspace_geojson(const std::filesystem::path& path,
                           std::span<const AirspaceVolume> volumes);

// Horizontal containment plus AGL altitude within [floor, ceiling]; when
// several volumes match, the most restrictive class wins (B > C > D).
AirspaceClass classify_airspace(const geo::LatLon& point, double alt_agl_ft,
                                std::span<const AirspaceVolume> volumes);

}  // namespace trackforge::tracks
