#include "trackforge/query/aerodrome.hpp"

#include <cmath>

#include "trackforge/util/csv.hpp"

namespace trackforge::query {

std::vector<Aerodrome> read_aerodromes(const std::filesystem::path& path) {
    util::CsvFile csv;
    try {
        csv = util::read_csv(path);
    } catch (const std::exception& e) {
        throw QuerygenError(e.what());
    }
    if (csv.header != std::vector<std::string>{"id", "lat", "lon"})
        throw QuerygenError("aerodrome header mismatch in " + path.string());

    std::vector<Aerodrome> out;
    out.reserve(csv.rows.size());
    for (const auto& row : csv.rows) {
        if (row.size() != 3)
            throw QuerygenError("bad aerodrome row in " + path.string());
        const auto lat = util::parse_double(row[1]);
        const auto lon = util::parse_double(row[2]);
        if (!lat || !lon || *lat < -90.0 || *lat > 90.0 || *lon < -180.0 ||
            *lon >= 180.0)
            throw QuerygenError("bad aerodrome coordinates for '" + row[0] + "'");
        out.push_back({row[0], *lat, *lon});
    }
    return out;
}

void write_aerodromes(const std::filesystem::path& path,
                      const std::vector<Aerodrome>& aerodromes) {
    std::string out = "id,lat,lon\n";
    for (const auto& a : aerodromes) {
        out += a.id + ',' + util::format_double(a.lat_deg) + ',' +
               util::format_double(a.lon_deg) + '\n';
    }
    util::write_text_file(path, out);
}

geo::Polygon circle_polygon(const Aerodrome& aerodrome, double radius_m,
                            int n_vertices) {
    if (radius_m <= 0.0)
        throw QuerygenError("circle radius must be positive");
    if (n_vertices < 3)
        throw QuerygenError("circle needs at least 3 vertices");
    if (std::abs(aerodrome.lat_deg) > 85.0)
        throw PolarDegeneracy("aerodrome '" + aerodrome.id +
                              "' too close to a pole for the equirectangular frame");

    const double dlat = radius_m / geo::kMetersPerDegLat;
    const double dlon = dlat / std::cos(geo::deg2rad(aerodrome.lat_deg));
    geo::Polygon polygon;
    polygon.reserve(static_cast<std::size_t>(n_vertices));
    const double two_pi = 2.0 * std::acos(-1.0);
    for (int k = 0; k < n_vertices; ++k) {
        const double theta = two_pi * k / n_vertices;
        polygon.push_back({aerodrome.lat_deg + dlat * std::cos(theta),
                           aerodrome.lon_deg + dlon * std::sin(theta)});
    }
    return polygon;
}

}  // namespace trackforge::query
