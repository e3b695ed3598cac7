#pragma once

#include <span>
#include <vector>

namespace trackforge::geo {

inline constexpr double kEarthRadiusM = 6371000.0;
inline constexpr double kMetersPerDegLat = 111111.0;
inline constexpr double kMetersPerNm = 1852.0;

struct LatLon {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
};

// Vertices in order, no repeated closing vertex.
using Polygon = std::vector<LatLon>;

double deg2rad(double deg);
double rad2deg(double rad);

// Great-circle distance on the spherical Earth.
double haversine_m(const LatLon& a, const LatLon& b);

// Initial great-circle bearing from `a` to `b`, degrees in [0, 360).
// Coincident points give 0.
double initial_bearing_deg(const LatLon& a, const LatLon& b);

// Even-odd ray casting in the lat/lon plane. Boundary points are not
// guaranteed either way (callers needing exactness use rectangles).
bool point_in_polygon(const LatLon& p, std::span<const LatLon> polygon);

struct GeoRect {
    double lat_min = 0.0;
    double lat_max = 0.0;
    double lon_min = 0.0;
    double lon_max = 0.0;

    bool contains_closed(const LatLon& p) const;
    // Lower edges in, upper edges out: every point belongs to at most one
    // rect of an edge-sharing tiling.
    bool contains_half_open(const LatLon& p) const;
    bool interior_intersects(const GeoRect& other) const;
    double width_deg() const { return lon_max - lon_min; }
    double height_deg() const { return lat_max - lat_min; }
};

// Exact polygon/rectangle intersection test (vertex containment both ways
// plus edge crossings), treating shared boundaries as intersecting.
bool polygon_intersects_rect(std::span<const LatLon> polygon, const GeoRect& rect);

// Distance from a point to the nearest point of a rectangle (0 inside) in a
// local equirectangular metric: latitude degrees at kMetersPerDegLat,
// longitude degrees scaled by cos of the point's latitude.
double point_rect_distance_m(const LatLon& p, const GeoRect& rect);

}  // namespace trackforge::geo
