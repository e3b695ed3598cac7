#include "trackforge/tracks/segment.hpp"

#include <algorithm>
#include <cmath>

#include "trackforge/util/csv.hpp"

namespace trackforge::tracks {

std::vector<RawSegment> split_segments(std::span<const ingest::Observation> sorted,
                                       double max_gap_s) {
    std::vector<RawSegment> segments;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const bool fresh =
            i == 0 || sorted[i].time_s - sorted[i - 1].time_s > max_gap_s;
        if (fresh) segments.emplace_back();
        segments.back().push_back(sorted[i]);
    }
    return segments;
}

std::vector<RawSegment> filter_short(std::vector<RawSegment> segments,
                                     std::size_t min_points) {
    std::erase_if(segments,
                  [&](const RawSegment& s) { return s.size() < min_points; });
    return segments;
}

namespace {

double wrap180(double deg) {
    while (deg > 180.0) deg -= 360.0;
    while (deg <= -180.0) deg += 360.0;
    return deg;
}

double wrap360(double deg) {
    while (deg >= 360.0) deg -= 360.0;
    while (deg < 0.0) deg += 360.0;
    return deg;
}

}  // namespace

std::vector<TrackPoint> interpolate(const RawSegment& segment, double rate_hz) {
    if (rate_hz <= 0.0) throw TracksError("interpolation rate must be positive");

    // Collapse duplicate timestamps (keep the first row of each run).
    RawSegment knots;
    knots.reserve(segment.size());
    for (const auto& obs : segment) {
        if (!knots.empty() && obs.time_s == knots.back().time_s) continue;
        if (!obs.alt_msl_ft)
            throw TracksError("interpolate requires alt_msl_ft on every observation");
        knots.push_back(obs);
    }
    if (knots.size() < 2)
        throw DegenerateSegment("need at least 2 distinct timestamps to interpolate");

    const double t0 = knots.front().time_s;
    const double t_end = knots.back().time_s;
    const double dt = 1.0 / rate_hz;

    std::vector<double> grid;
    const auto steps = static_cast<std::size_t>(
        std::floor((t_end - t0) / dt + 1e-9));
    grid.reserve(steps + 2);
    for (std::size_t k = 0; k <= steps; ++k) grid.push_back(t0 + static_cast<double>(k) * dt);
    if (grid.back() > t_end)
        grid.back() = t_end;  // eps guard overshot by < 1e-9 s
    else if (grid.back() < t_end)
        grid.push_back(t_end);

    std::vector<TrackPoint> out;
    out.reserve(grid.size());
    std::size_t seg = 0;  // knots[seg] <= t < knots[seg+1]
    for (const double t : grid) {
        while (seg + 2 < knots.size() && knots[seg + 1].time_s <= t) ++seg;
        const auto& a = knots[seg];
        const auto& b = knots[seg + 1];

        TrackPoint point;
        point.time_s = t;
        if (t == a.time_s || t == b.time_s) {
            const auto& k = (t == a.time_s) ? a : b;
            point.lat_deg = k.lat_deg;
            point.lon_deg = k.lon_deg;
            point.alt_msl_ft = *k.alt_msl_ft;
            point.heading_deg = k.heading_deg;
        } else {
            const double u = (t - a.time_s) / (b.time_s - a.time_s);
            point.lat_deg = a.lat_deg + u * (b.lat_deg - a.lat_deg);
            point.lon_deg = a.lon_deg + u * (b.lon_deg - a.lon_deg);
            point.alt_msl_ft = *a.alt_msl_ft + u * (*b.alt_msl_ft - *a.alt_msl_ft);
            if (a.heading_deg && b.heading_deg)
                point.heading_deg =
                    wrap360(*a.heading_deg + u * wrap180(*b.heading_deg - *a.heading_deg));
        }
        out.push_back(point);
    }
    return out;
}

void add_agl(std::vector<TrackPoint>& points, const DemGrid& dem) {
    for (auto& point : points)
        point.alt_agl_ft = point.alt_msl_ft - dem.terrain_ft(point.lat_deg, point.lon_deg);
}

void add_dynamics(std::vector<TrackPoint>& points) {
    const std::size_t n = points.size();
    if (n < 2) return;

    // Per-leg speed (kt) and course (deg).
    std::vector<double> leg_speed(n - 1);
    std::vector<double> leg_course(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double dist_m = geo::haversine_m(points[i].position(), points[i + 1].position());
        const double dt = points[i + 1].time_s - points[i].time_s;
        leg_speed[i] = (dist_m / geo::kMetersPerNm) / (dt / 3600.0);
        leg_course[i] = geo::initial_bearing_deg(points[i].position(), points[i + 1].position());
    }
    leg_course[n - 1] = leg_course[n - 2];

    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0) {
            points[i].ground_speed_kt = leg_speed.front();
        } else if (i + 1 == n) {
            points[i].ground_speed_kt = leg_speed.back();
        } else {
            points[i].ground_speed_kt = 0.5 * (leg_speed[i - 1] + leg_speed[i]);
        }

        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 == n ? i : i + 1;
        const double span_s = points[hi].time_s - points[lo].time_s;
        points[i].vert_rate_fpm =
            (points[hi].alt_msl_ft - points[lo].alt_msl_ft) / span_s * 60.0;
        points[i].turn_rate_deg_s = wrap180(leg_course[hi] - leg_course[lo]) / span_s;
    }
}

void add_airspace(std::vector<TrackPoint>& points,
                  std::span<const AirspaceVolume> volumes) {
    for (auto& point : points)
        point.airspace = classify_airspace(point.position(), point.alt_agl_ft, volumes);
}

void write_segment_csv(const std::filesystem::path& path,
                       std::span<const TrackPoint> points) {
    std::string out(kSegmentHeader);
    out += '\n';
    for (const auto& p : points) {
        out += util::format_double(p.time_s);
        out += ',';
        out += util::format_double(p.lat_deg);
        out += ',';
        out += util::format_double(p.lon_deg);
        out += ',';
        out += util::format_double(p.alt_msl_ft);
        out += ',';
        out += util::format_double(p.alt_agl_ft);
        out += ',';
        out += airspace_class_name(p.airspace);
        out += ',';
        out += util::format_double(p.ground_speed_kt);
        out += ',';
        out += util::format_double(p.vert_rate_fpm);
        out += ',';
        out += util::format_double(p.turn_rate_deg_s);
        out += '\n';
    }
    util::write_text_file(path, out);
}

std::vector<TrackPoint> read_segment_csv(const std::filesystem::path& path) {
    const auto csv = util::read_csv(path);
    if (util::join_csv(csv.header) != kSegmentHeader)
        throw TracksError("segment header mismatch in " + path.string());
    std::vector<TrackPoint> out;
    out.reserve(csv.rows.size());
    for (const auto& row : csv.rows) {
        if (row.size() != 9) throw TracksError("bad segment row in " + path.string());
        TrackPoint p;
        p.time_s = util::parse_double(row[0]).value();
        p.lat_deg = util::parse_double(row[1]).value();
        p.lon_deg = util::parse_double(row[2]).value();
        p.alt_msl_ft = util::parse_double(row[3]).value();
        p.alt_agl_ft = util::parse_double(row[4]).value();
        p.airspace = airspace_class_from_name(row[5]);
        p.ground_speed_kt = util::parse_double(row[6]).value();
        p.vert_rate_fpm = util::parse_double(row[7]).value();
        p.turn_rate_deg_s = util::parse_double(row[8]).value();
        out.push_back(p);
    }
    return out;
}

}  // namespace trackforge::tracks
