#include "trackforge/geo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace trackforge::geo {

double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

double haversine_m(const LatLon& a, const LatLon& b) {
    const double phi1 = deg2rad(a.lat_deg);
    const double phi2 = deg2rad(b.lat_deg);
    const double dphi = deg2rad(b.lat_deg - a.lat_deg);
    const double dlam = deg2rad(b.lon_deg - a.lon_deg);
    const double s = std::sin(dphi / 2) * std::sin(dphi / 2) +
                     std::cos(phi1) * std::cos(phi2) * std::sin(dlam / 2) * std::sin(dlam / 2);
    return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(s)));
}

double initial_bearing_deg(const LatLon& a, const LatLon& b) {
    const double phi1 = deg2rad(a.lat_deg);
    const double phi2 = deg2rad(b.lat_deg);
    const double dlam = deg2rad(b.lon_deg - a.lon_deg);
    const double y = std::sin(dlam) * std::cos(phi2);
    const double x = std::cos(phi1) * std::sin(phi2) -
                     std::sin(phi1) * std::cos(phi2) * std::cos(dlam);
    if (x == 0.0 && y == 0.0) return 0.0;
    const double deg = rad2deg(std::atan2(y, x));
    return deg < 0.0 ? deg + 360.0 : deg;
}

bool point_in_polygon(const LatLon& p, std::span<const LatLon> polygon) {
    bool inside = false;
    const std::size_t n = polygon.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const auto& a = polygon[i];
        const auto& b = polygon[j];
        const bool straddles = (a.lat_deg > p.lat_deg) != (b.lat_deg > p.lat_deg);
        if (!straddles) continue;
        const double lon_at = a.lon_deg + (p.lat_deg - a.lat_deg) /
                                              (b.lat_deg - a.lat_deg) *
                                              (b.lon_deg - a.lon_deg);
        if (p.lon_deg < lon_at) inside = !inside;
    }
    return inside;
}

bool GeoRect::contains_closed(const LatLon& p) const {
    return p.lat_deg >= lat_min && p.lat_deg <= lat_max && p.lon_deg >= lon_min &&
           p.lon_deg <= lon_max;
}

bool GeoRect::contains_half_open(const LatLon& p) const {
    return p.lat_deg >= lat_min && p.lat_deg < lat_max && p.lon_deg >= lon_min &&
           p.lon_deg < lon_max;
}

bool GeoRect::interior_intersects(const GeoRect& other) const {
    return lat_min < other.lat_max && other.lat_min < lat_max &&
           lon_min < other.lon_max && other.lon_min < lon_max;
}

namespace {

int orientation(const LatLon& a, const LatLon& b, const LatLon& c) {
    const double cross = (b.lon_deg - a.lon_deg) * (c.lat_deg - a.lat_deg) -
                         (b.lat_deg - a.lat_deg) * (c.lon_deg - a.lon_deg);
    if (cross > 0) return 1;
    if (cross < 0) return -1;
    return 0;
}

bool on_segment(const LatLon& a, const LatLon& b, const LatLon& p) {
    return std::min(a.lon_deg, b.lon_deg) <= p.lon_deg &&
           p.lon_deg <= std::max(a.lon_deg, b.lon_deg) &&
           std::min(a.lat_deg, b.lat_deg) <= p.lat_deg &&
           p.lat_deg <= std::max(a.lat_deg, b.lat_deg);
}

bool segments_intersect(const LatLon& p1, const LatLon& p2, const LatLon& q1,
                        const LatLon& q2) {
    const int o1 = orientation(p1, p2, q1);
    const int o2 = orientation(p1, p2, q2);
    const int o3 = orientation(q1, q2, p1);
    const int o4 = orientation(q1, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(p1, p2, q1)) return true;
    if (o2 == 0 && on_segment(p1, p2, q2)) return true;
    if (o3 == 0 && on_segment(q1, q2, p1)) return true;
    if (o4 == 0 && on_segment(q1, q2, p2)) return true;
    return false;
}

}  // namespace

bool polygon_intersects_rect(std::span<const LatLon> polygon, const GeoRect& rect) {
    if (polygon.empty()) return false;
    for (const auto& v : polygon)
        if (rect.contains_closed(v)) return true;

    const LatLon corners[4] = {{rect.lat_min, rect.lon_min},
                               {rect.lat_min, rect.lon_max},
                               {rect.lat_max, rect.lon_max},
                               {rect.lat_max, rect.lon_min}};
    for (const auto& corner : corners)
        if (point_in_polygon(corner, polygon)) return true;

    const std::size_t n = polygon.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        for (int e = 0; e < 4; ++e) {
            if (segments_intersect(polygon[i], polygon[j], corners[e], corners[(e + 1) % 4]))
                return true;
        }
    }
    return false;
}

double point_rect_distance_m(const LatLon& p, const GeoRect& rect) {
    const double dlat =
        std::max({rect.lat_min - p.lat_deg, 0.0, p.lat_deg - rect.lat_max});
    const double dlon =
        std::max({rect.lon_min - p.lon_deg, 0.0, p.lon_deg - rect.lon_max});
    const double dy = dlat * kMetersPerDegLat;
    const double dx = dlon * kMetersPerDegLat * std::cos(deg2rad(p.lat_deg));
    return std::hypot(dx, dy);
}

}  // namespace trackforge::geo
