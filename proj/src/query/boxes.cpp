#include "trackforge/query/boxes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "trackforge/query/cover.hpp"
#include "trackforge/util/csv.hpp"
#include "trackforge/util/timeparse.hpp"

namespace trackforge::query {

std::vector<FilteredBox> filter_boxes(std::span<const geo::GeoRect> rects,
                                      std::span<const tracks::AirspaceVolume> volumes,
                                      std::span<const Aerodrome> aerodromes,
                                      double max_dist_m) {
    std::vector<FilteredBox> out;
    for (const auto& rect : rects) {
        std::vector<tracks::AirspaceClass> classes;
        for (const auto& volume : volumes) {
            if (geo::polygon_intersects_rect(volume.boundary, rect))
                classes.push_back(volume.cls);
        }
        std::sort(classes.begin(), classes.end());
        classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
        if (classes.empty()) continue;

        const bool near = std::any_of(
            aerodromes.begin(), aerodromes.end(), [&](const Aerodrome& a) {
                return geo::point_rect_distance_m(a.position(), rect) <= max_dist_m;
            });
        if (!near) continue;
        out.push_back({rect, std::move(classes)});
    }
    return out;
}

std::pair<double, double> elevation_range(const geo::GeoRect& rect,
                                          const tracks::DemGrid& dem) {
    if (!dem.covers(rect.lat_min, rect.lon_min) ||
        !dem.covers(rect.lat_max, rect.lon_max))
        throw tracks::OutOfCoverage("query rectangle leaves the DEM grid");

    const double cell = dem.cell_deg();
    const double half = cell / 2.0;
    // A node qualifies when its node-centered cell touches the rectangle.
    auto lo_index = [&](double bound, double origin) {
        return static_cast<int>(std::ceil((bound - half - origin) / cell - 1e-9));
    };
    auto hi_index = [&](double bound, double origin) {
        return static_cast<int>(std::floor((bound + half - origin) / cell + 1e-9));
    };
    const int r0 = std::max(0, lo_index(rect.lat_min, dem.origin_lat()));
    const int r1 = std::min(dem.nrows() - 1, hi_index(rect.lat_max, dem.origin_lat()));
    const int c0 = std::max(0, lo_index(rect.lon_min, dem.origin_lon()));
    const int c1 = std::min(dem.ncols() - 1, hi_index(rect.lon_max, dem.origin_lon()));

    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) {
            double v = dem.at(r, c);
            if (v == dem.nodata()) v = 0.0;
            if (first) {
                lo = hi = v;
                first = false;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }
    if (first)
        throw tracks::OutOfCoverage("query rectangle touches no DEM cells");
    return {lo, hi};
}

std::pair<double, double> msl_bounds(std::pair<double, double> elev_range_ft,
                                     const MslParams& params) {
    const auto [elev_min, elev_max] = elev_range_ft;
    if (elev_min > elev_max)
        throw QuerygenError("elevation range is inverted");
    const double msl_min = elev_min + params.agl_floor_ft;
    double msl_max = std::min({elev_max + params.agl_ceiling_ft,
                               elev_max + params.hard_ceiling_ft,
                               params.absolute_cap_ft});
    msl_max = std::max(msl_max, msl_min);
    return {msl_min, msl_max};
}

int box_timezone(const geo::GeoRect& rect) {
    const double center = (rect.lon_min + rect.lon_max) / 2.0;
    const auto offset = static_cast<int>(std::floor(center / 15.0 + 0.5));
    return std::clamp(offset, -12, 12);
}

std::vector<Query> emit_queries(std::vector<QueryBox>& boxes,
                                std::span<const std::int64_t> days, int group_count) {
    if (boxes.empty()) throw QuerygenError("no query boxes to emit");
    if (days.empty()) throw QuerygenError("no days to emit");
    if (group_count < 1) throw QuerygenError("group count must be positive");

    // Longest-processing-time packing on box area.
    std::vector<std::size_t> order(boxes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return boxes[a].area_deg2() > boxes[b].area_deg2();
    });
    std::vector<double> load(static_cast<std::size_t>(group_count), 0.0);
    for (const std::size_t i : order) {
        const auto lightest =
            std::min_element(load.begin(), load.end()) - load.begin();
        boxes[i].group_id = static_cast<int>(lightest);
        load[static_cast<std::size_t>(lightest)] += boxes[i].area_deg2();
    }

    std::vector<Query> queries;
    queries.reserve(boxes.size() * days.size());
    for (const auto& box : boxes) {
        for (const std::int64_t day : days) {
            Query q;
            q.group_id = box.group_id;
            q.box_id = box.id;
            q.rect = box.rect;
            q.msl_min_ft = box.msl_min_ft;
            q.msl_max_ft = box.msl_max_ft;
            q.day = day;
            // Local midnight-to-midnight expressed in UTC.
            q.utc_start_s = static_cast<double>(day) * 86400.0 -
                            static_cast<double>(box.tz_offset_h) * 3600.0;
            q.utc_end_s = q.utc_start_s + 86400.0;
            queries.push_back(q);
        }
    }
    return queries;
}

void write_query_csv(const std::filesystem::path& path, std::span<const Query> queries) {
    std::string out(kQueryHeader);
    out += '\n';
    for (const auto& q : queries) {
        out += std::to_string(q.group_id) + ',' + std::to_string(q.box_id) + ',' +
               util::format_double(q.rect.lat_min) + ',' +
               util::format_double(q.rect.lat_max) + ',' +
               util::format_double(q.rect.lon_min) + ',' +
               util::format_double(q.rect.lon_max) + ',' +
               util::format_double(q.msl_min_ft) + ',' +
               util::format_double(q.msl_max_ft) + ',' + util::format_date(q.day) +
               ',' + util::format_iso8601(q.utc_start_s) + ',' +
               util::format_iso8601(q.utc_end_s) + '\n';
    }
    util::write_text_file(path, out);
}

namespace {

std::string class_list(const std::vector<tracks::AirspaceClass>& classes) {
    std::string out;
    for (const auto cls : classes) {
        if (!out.empty()) out += ';';
        out += tracks::airspace_class_name(cls);
    }
    return out;
}

}  // namespace

void write_box_csv(const std::filesystem::path& path, std::span<const QueryBox> boxes) {
    std::string out(kBoxHeader);
    out += '\n';
    for (const auto& b : boxes) {
        out += std::to_string(b.id) + ',' + std::to_string(b.group_id) + ',' +
               util::format_double(b.rect.lat_min) + ',' +
               util::format_double(b.rect.lat_max) + ',' +
               util::format_double(b.rect.lon_min) + ',' +
               util::format_double(b.rect.lon_max) + ',' +
               util::format_double(b.elev_min_ft) + ',' +
               util::format_double(b.elev_max_ft) + ',' +
               util::format_double(b.msl_min_ft) + ',' +
               util::format_double(b.msl_max_ft) + ',' +
               std::to_string(b.tz_offset_h) + ',' + class_list(b.classes) + '\n';
    }
    util::write_text_file(path, out);
}

void write_box_outlines_csv(const std::filesystem::path& path,
                            std::span<const QueryBox> boxes) {
    std::string out = "box_id,lat1,lon1,lat2,lon2\n";
    for (const auto& b : boxes) {
        const geo::LatLon corners[4] = {{b.rect.lat_min, b.rect.lon_min},
                                        {b.rect.lat_min, b.rect.lon_max},
                                        {b.rect.lat_max, b.rect.lon_max},
                                        {b.rect.lat_max, b.rect.lon_min}};
        for (int k = 0; k < 4; ++k) {
            const auto& p = corners[k];
            const auto& q = corners[(k + 1) % 4];
            out += std::to_string(b.id) + ',' + util::format_double(p.lat_deg) + ',' +
                   util::format_double(p.lon_deg) + ',' + util::format_double(q.lat_deg) +
                   ',' + util::format_double(q.lon_deg) + '\n';
        }
    }
    util::write_text_file(path, out);
}

QuerygenResult run_querygen(std::span<const Aerodrome> aerodromes,
                            std::span<const tracks::AirspaceVolume> volumes,
                            const tracks::DemGrid& dem, const QuerygenConfig& config) {
    if (aerodromes.empty()) throw QuerygenError("no aerodromes");

    QuerygenResult result;
    result.circles.reserve(aerodromes.size());
    for (const auto& a : aerodromes)
        result.circles.push_back(
            circle_polygon(a, config.radius_m, config.circle_vertices));

    result.merged = union_polygons(result.circles, config.union_cell_deg);
    const auto regions = rectilinear_cover(result.merged, config.cover_grid_deg);
    result.candidate_rects = join_split_rectangles(regions, config.max_span_deg);

    auto filtered = filter_boxes(result.candidate_rects, volumes, aerodromes,
                                 config.max_aerodrome_dist_m);
    result.boxes.reserve(filtered.size());
    for (std::size_t i = 0; i < filtered.size(); ++i) {
        QueryBox box;
        box.id = static_cast<int>(i);
        box.rect = filtered[i].rect;
        box.classes = std::move(filtered[i].classes);
        const auto elev = elevation_range(box.rect, dem);
        box.elev_min_ft = elev.first;
        box.elev_max_ft = elev.second;
        const auto msl = msl_bounds(elev, config.msl);
        box.msl_min_ft = msl.first;
        box.msl_max_ft = msl.second;
        box.tz_offset_h = box_timezone(box.rect);
        result.boxes.push_back(std::move(box));
    }

    if (!result.boxes.empty() && config.n_days > 0) {
        std::vector<std::int64_t> days;
        days.reserve(static_cast<std::size_t>(config.n_days));
        for (int d = 0; d < config.n_days; ++d)
            days.push_back(config.first_day + d);
        result.queries = emit_queries(result.boxes, days, config.group_count);
    }
    return result;
}

}  // namespace trackforge::query
