#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "trackforge/geo/geometry.hpp"
#include "trackforge/ingest/observation.hpp"
#include "trackforge/tracks/airspace.hpp"
#include "trackforge/tracks/dem.hpp"

namespace trackforge::tracks {

struct TrackPoint {
    double time_s = 0.0;
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    double alt_msl_ft = 0.0;
    std::optional<double> heading_deg;  // carried through interpolation only
    double alt_agl_ft = 0.0;
    AirspaceClass airspace = AirspaceClass::other;
    double ground_speed_kt = 0.0;
    double vert_rate_fpm = 0.0;
    double turn_rate_deg_s = 0.0;

    geo::LatLon position() const { return {lat_deg, lon_deg}; }
};

using RawSegment = std::vector<ingest::Observation>;

// Splits time-sorted observations wherever the gap exceeds max_gap_s.
std::vector<RawSegment> split_segments(std::span<const ingest::Observation> sorted,
                                       double max_gap_s = 300.0);

// Keeps segments with at least min_points observations.
std::vector<RawSegment> filter_short(std::vector<RawSegment> segments,
                                     std::size_t min_points = 10);

// Linear resampling of lat/lon/alt onto a uniform grid at rate_hz anchored at
// the first timestamp; the exact last timestamp is appended when it falls off
// the grid, so both endpoints reproduce the input exactly. Headings follow
// the shortest arc. Duplicate-time rows collapse to the first. Every
// observation must carry alt_msl_ft (the caller filters missing-alt rows).
// Throws DegenerateSegment for fewer than 2 distinct timestamps.
std::vector<TrackPoint> interpolate(const RawSegment& segment, double rate_hz = 1.0);

// alt_agl = alt_msl - bilinear terrain under each point.
void add_agl(std::vector<TrackPoint>& points, const DemGrid& dem);

// Ground speed from consecutive great-circle distances (interior points
// average the two adjacent legs), vertical rate from central differences of
// altitude, turn rate from central differences of course; one-sided at the
// endpoints.
void add_dynamics(std::vector<TrackPoint>& points);

void add_airspace(std::vector<TrackPoint>& points,
                  std::span<const AirspaceVolume> volumes);

inline constexpr const char* kSegmentHeader =
    "time_s,lat_deg,lon_deg,alt_msl_ft,alt_agl_ft,airspace,ground_speed_kt,"
    "vert_rate_fpm,turn_rate_deg_s";

void write_segment_csv(const std::filesystem::path& path,
                       std::span<const TrackPoint> points);
std::vector<TrackPoint> read_segment_csv(const std::filesystem::path& path);

}  // namespace trackforge::tracks
