#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trackforge/geo/geometry.hpp"
#include "trackforge/query/aerodrome.hpp"
#include "trackforge/tracks/airspace.hpp"
#include "trackforge/tracks/dem.hpp"

namespace trackforge::query {

struct FilteredBox {
    geo::GeoRect rect;
    std::vector<tracks::AirspaceClass> classes;  // intersecting classes, sorted
};

// Keeps a rectangle iff it intersects at least one of the airspace polygons
// and lies within max_dist_m (default 15 NM) of some aerodrome. Survivors are
// annotated with the set of intersecting classes.
std::vector<FilteredBox> filter_boxes(std::span<const geo::GeoRect> rects,
                                      std::span<const tracks::AirspaceVolume> volumes,
                                      std::span<const Aerodrome> aerodromes,
                                      double max_dist_m = 27780.0);

// Min/max elevation over every DEM node whose cell (node-centered, one
// cell_deg across) touches the rectangle — conservative by construction.
// Missing nodes count as sea level. Throws OutOfCoverage when the rectangle
// leaves the grid.
std::pair<double, double> elevation_range(const geo::GeoRect& rect,
                                          const tracks::DemGrid& dem);

struct MslParams {
    double agl_floor_ft = 0.0;
    double agl_ceiling_ft = 5100.0;
    double hard_ceiling_ft = 12500.0;
    double absolute_cap_ft = 12500.0;
};

// msl_min = elev_min + agl_floor;
// msl_max = min(elev_max + agl_ceiling, elev_max + hard_ceiling, absolute cap),
// never below msl_min.
std::pair<double, double> msl_bounds(std::pair<double, double> elev_range_ft,
                                     const MslParams& params = {});

// Meridian timezone of the rectangle's center: round(center_lon / 15) with
// half-offsets rounded up (-112.5 -> -7), clamped to [-12, 12].
int box_timezone(const geo::GeoRect& rect);

struct QueryBox {
    int id = 0;
    geo::GeoRect rect;
    double elev_min_ft = 0.0;
    double elev_max_ft = 0.0;
    double msl_min_ft = 0.0;
    double msl_max_ft = 0.0;
    int tz_offset_h = 0;
    int group_id = 0;
    std::vector<tracks::AirspaceClass> classes;

    double area_deg2() const { return rect.height_deg() * rect.width_deg(); }
};

struct Query {
    int group_id = 0;
    int box_id = 0;
    geo::GeoRect rect;
    double msl_min_ft = 0.0;
    double msl_max_ft = 0.0;
    std::int64_t day = 0;  // epoch day of the local date
    double utc_start_s = 0.0;
    double utc_end_s = 0.0;
};

// Assigns boxes to group_count groups by longest-processing-time bin packing
// on box area (largest first into the least-loaded group, ties to the lowest
// group id), then emits one query per (box, day): the local-midnight day
// window shifted to UTC by the box timezone. Throws QuerygenError when boxes
// or days are empty or group_count < 1.
std::vector<Query> emit_queries(std::vector<QueryBox>& boxes,
                                std::span<const std::int64_t> days, int group_count);

inline constexpr const char* kQueryHeader =
    "group_id,box_id,lat_min,lat_max,lon_min,lon_max,msl_min_ft,msl_max_ft,"
    "day,utc_start,utc_end";

void write_query_csv(const std::filesystem::path& path, std::span<const Query> queries);

inline constexpr const char* kBoxHeader =
    "box_id,group_id,lat_min,lat_max,lon_min,lon_max,elev_min_ft,elev_max_ft,"
    "msl_min_ft,msl_max_ft,tz_offset_h,airspace_classes";

void write_box_csv(const std::filesystem::path& path, std::span<const QueryBox> boxes);

// Box outlines as one line segment per row, for external plotting.
void write_box_outlines_csv(const std::filesystem::path& path,
                            std::span<const QueryBox> boxes);

struct QuerygenConfig {
    double radius_m = 14816.0;  // 8 NM terminal-environment radius
    int circle_vertices = 64;
    double union_cell_deg = 0.01;
    double cover_grid_deg = 0.05;
    double max_span_deg = 2.0;
    double max_aerodrome_dist_m = 27780.0;  // 15 NM
    MslParams msl;
    std::int64_t first_day = 17897;  // 2019-01-01
    int n_days = 1;
    int group_count = 8;
};

struct QuerygenResult {
    std::vector<geo::Polygon> circles;
    std::vector<geo::Polygon> merged;
    std::vector<geo::GeoRect> candidate_rects;  // pre-filter
    std::vector<QueryBox> boxes;
    std::vector<Query> queries;
};

// Full pipeline: circles -> union -> rectilinear cover -> join/split ->
// airspace & distance filter -> elevation/MSL/timezone annotation -> grouped
// per-day queries.
QuerygenResult run_querygen(std::span<const Aerodrome> aerodromes,
                            std::span<const tracks::AirspaceVolume> volumes,
                            const tracks::DemGrid& dem,
                            const QuerygenConfig& config = {});

}  // namespace trackforge::query
