#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "trackforge/geo/geometry.hpp"

namespace trackforge::query {

struct QuerygenError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PolarDegeneracy : QuerygenError {
    using QuerygenError::QuerygenError;
};

struct Aerodrome {
    std::string id;
    double lat_deg = 0.0;
    double lon_deg = 0.0;

    geo::LatLon position() const { return {lat_deg, lon_deg}; }
};

// Aerodrome CSV: header `id,lat,lon`. Throws QuerygenError on bad files.
std::vector<Aerodrome> read_aerodromes(const std::filesystem::path& path);
void write_aerodromes(const std::filesystem::path& path,
                      const std::vector<Aerodrome>& aerodromes);

// n-gon approximating the radius_m circle around the aerodrome in a local
// equirectangular frame: one degree of latitude = 111,111 m, longitude scaled
// by 1/cos(lat). Rejects non-positive radii; throws PolarDegeneracy above
// |lat| = 85 where the longitude scale factor blows up.
geo::Polygon circle_polygon(const Aerodrome& aerodrome, double radius_m = 14816.0,
                            int n_vertices = 64);

}  // namespace trackforge::query
