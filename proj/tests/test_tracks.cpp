#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "trackforge/geo/geometry.hpp"
#include "trackforge/ingest/observation.hpp"
#include "trackforge/tracks/airspace.hpp"
#include "trackforge/tracks/dem.hpp"
#include "trackforge/tracks/process.hpp"
#include "trackforge/tracks/segment.hpp"
#include "trackforge/util/csv.hpp"
#include "trackforge/util/hash.hpp"
#include "trackforge/util/zip.hpp"

namespace fs = std::filesystem;
using namespace trackforge;
using doctest::Approx;

namespace {

fs::path temp_dir(const std::string& tag) {
    auto dir = fs::temp_directory_path() / ("trackforge_tracks_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

ingest::Observation obs(double t, double lat, double lon,
                        std::optional<double> alt = 1000.0) {
    ingest::Observation o;
    o.time_s = t;
    o.icao24 = "abc123";
    o.lat_deg = lat;
    o.lon_deg = lon;
    o.alt_msl_ft = alt;
    return o;
}

// Times only; fixed position, constant altitude.
tracks::RawSegment seg_at_times(std::initializer_list<double> times) {
    tracks::RawSegment s;
    for (double t : times) s.push_back(obs(t, 42.0, -71.0));
    return s;
}

// n observations spaced `gap` seconds apart starting at t0.
tracks::RawSegment uniform_times(double t0, double gap, int n) {
    tracks::RawSegment s;
    for (int i = 0; i < n; ++i) s.push_back(obs(t0 + i * gap, 42.0, -71.0));
    return s;
}

// Flat DEM covering a generous box around (42, -71).
tracks::DemGrid flat_dem(double elevation_ft) {
    return tracks::DemGrid(40.0, -73.0, 1.0, 5, 5, -9999.0,
                           std::vector<double>(25, elevation_ft));
}

tracks::AirspaceVolume square_volume(const std::string& name,
                                     tracks::AirspaceClass cls, double lat0,
                                     double lon0, double half_deg, double floor,
                                     double ceiling) {
    tracks::AirspaceVolume v;
    v.name = name;
    v.cls = cls;
    v.boundary = {{lat0 - half_deg, lon0 - half_deg},
                  {lat0 - half_deg, lon0 + half_deg},
                  {lat0 + half_deg, lon0 + half_deg},
                  {lat0 + half_deg, lon0 - half_deg}};
    v.floor_ft_agl = floor;
    v.ceiling_ft_agl = ceiling;
    return v;
}

}  // namespace

TEST_CASE("split_segments breaks at gaps over the threshold") {
    // Gaps 10, 10, 400, 10 -> segments of 3 and 2 points.
    const auto s = seg_at_times({0, 10, 20, 420, 430});
    const auto parts = tracks::split_segments(s, 300.0);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].size() == 3);
    CHECK(parts[1].size() == 2);

    // All gaps under the threshold: identity.
    const auto one = tracks::split_segments(seg_at_times({0, 100, 200}), 300.0);
    REQUIRE(one.size() == 1);
    CHECK(one[0].size() == 3);

    // A single observation still forms a (short) segment.
    const auto single = tracks::split_segments(seg_at_times({5}), 300.0);
    REQUIRE(single.size() == 1);
    CHECK(single[0].size() == 1);

    CHECK(tracks::split_segments(tracks::RawSegment{}, 300.0).empty());
}

TEST_CASE("filter_short keeps only segments with ten or more points") {
    std::vector<tracks::RawSegment> segments;
    segments.push_back(uniform_times(0, 1, 9));
    segments.push_back(uniform_times(1000, 1, 10));
    segments.push_back(uniform_times(2000, 1, 11));
    const auto kept = tracks::filter_short(std::move(segments), 10);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].size() == 10);
    CHECK(kept[1].size() == 11);

    std::vector<tracks::RawSegment> all_short;
    all_short.push_back(uniform_times(0, 1, 3));
    CHECK(tracks::filter_short(std::move(all_short), 10).empty());
    CHECK(tracks::filter_short({}, 10).empty());
}

TEST_CASE("interpolate is linear between knots") {
    tracks::RawSegment s;
    s.push_back(obs(0, 40.0, -70.0, 1000.0));
    s.push_back(obs(10, 41.0, -69.0, 2000.0));
    const auto points = tracks::interpolate(s, 1.0);
    REQUIRE(points.size() == 11);
    CHECK(points[5].time_s == 5.0);
    CHECK(points[5].alt_msl_ft == Approx(1500.0));
    CHECK(points[5].lat_deg == Approx(40.5));
    CHECK(points[5].lon_deg == Approx(-69.5));
    CHECK(points.front().time_s == 0.0);
    CHECK(points.back().time_s == 10.0);
}

TEST_CASE("interpolate reproduces an already-uniform input exactly") {
    tracks::RawSegment s;
    for (int i = 0; i <= 10; ++i)
        s.push_back(obs(i, 42.0 + 0.001 * i, -71.0 - 0.002 * i, 1000.0 + 3.0 * i));
    const auto points = tracks::interpolate(s, 1.0);
    REQUIRE(points.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(points[i].time_s == s[i].time_s);
        CHECK(points[i].lat_deg == s[i].lat_deg);
        CHECK(points[i].lon_deg == s[i].lon_deg);
        CHECK(points[i].alt_msl_ft == *s[i].alt_msl_ft);
    }
}

TEST_CASE("interpolate handles headings on the circle") {
    tracks::RawSegment s;
    auto a = obs(0, 42.0, -71.0);
    a.heading_deg = 350.0;
    auto b = obs(2, 42.0, -71.0);
    b.heading_deg = 10.0;
    s.push_back(a);
    s.push_back(b);
    const auto points = tracks::interpolate(s, 1.0);
    REQUIRE(points.size() == 3);
    REQUIRE(points[1].heading_deg.has_value());
    CHECK(*points[1].heading_deg == Approx(0.0).epsilon(1e-12));
}

TEST_CASE("interpolate keeps exact values at original timestamps") {
    // Off-grid final point: grid is anchored at t0, the last knot is appended.
    tracks::RawSegment s;
    s.push_back(obs(0.5, 40.125, -70.25, 1234.5));
    s.push_back(obs(3.5, 40.625, -70.75, 2234.5));
    s.push_back(obs(5.25, 41.0, -71.0, 3000.25));
    const auto points = tracks::interpolate(s, 1.0);
    CHECK(points.front().time_s == 0.5);
    CHECK(points.front().lat_deg == 40.125);
    CHECK(points.front().alt_msl_ft == 1234.5);
    CHECK(points.back().time_s == 5.25);
    CHECK(points.back().lon_deg == -71.0);
    CHECK(points.back().alt_msl_ft == 3000.25);
    // On-grid interior knot (0.5 + 3 steps at 1 Hz) is copied, not blended.
    CHECK(points[3].time_s == 3.5);
    CHECK(points[3].alt_msl_ft == 2234.5);
    // Strictly increasing output times.
    for (std::size_t i = 1; i < points.size(); ++i)
        CHECK(points[i].time_s > points[i - 1].time_s);
}

TEST_CASE("interpolate collapses duplicate timestamps and rejects degenerates") {
    tracks::RawSegment dup;
    dup.push_back(obs(0, 40.0, -70.0, 1000.0));
    dup.push_back(obs(0, 99.0, 99.0, 9999.0));  // duplicate time: ignored
    dup.push_back(obs(2, 40.2, -70.2, 1200.0));
    const auto points = tracks::interpolate(dup, 1.0);
    REQUIRE(points.size() == 3);
    CHECK(points[0].lat_deg == 40.0);
    CHECK(points[1].alt_msl_ft == Approx(1100.0));

    tracks::RawSegment degenerate;
    degenerate.push_back(obs(0, 40.0, -70.0, 1000.0));
    degenerate.push_back(obs(0, 40.0, -70.0, 1000.0));
    CHECK_THROWS_AS(tracks::interpolate(degenerate, 1.0), tracks::DegenerateSegment);
    CHECK_THROWS_AS(tracks::interpolate({}, 1.0), tracks::DegenerateSegment);

    tracks::RawSegment no_alt;
    no_alt.push_back(obs(0, 40.0, -70.0, std::nullopt));
    no_alt.push_back(obs(1, 40.0, -70.0, 1000.0));
    CHECK_THROWS_AS(tracks::interpolate(no_alt, 1.0), tracks::TracksError);
}

TEST_CASE("DEM bilinear interpolation matches hand calculations") {
    // 2x2 grid: north row (row 1) at 100 ft, south row at 0 ft.
    tracks::DemGrid dem(40.0, -71.0, 1.0, 2, 2, -9999.0, {0.0, 0.0, 100.0, 100.0});

    // Node hits return node values.
    CHECK(dem.terrain_ft(40.0, -71.0) == Approx(0.0));
    CHECK(dem.terrain_ft(41.0, -70.0) == Approx(100.0));
    // Cell center blends all four corners: 50 ft.
    CHECK(dem.terrain_ft(40.5, -70.5) == Approx(50.0));
    // Quarter point.
    CHECK(dem.terrain_ft(40.25, -70.5) == Approx(25.0));

    CHECK_THROWS_AS(dem.terrain_ft(39.9, -70.5), tracks::OutOfCoverage);
    CHECK_THROWS_AS(dem.terrain_ft(40.5, -69.9), tracks::OutOfCoverage);
    CHECK(dem.covers(41.0, -70.0));
    CHECK_FALSE(dem.covers(41.0001, -70.0));
}

TEST_CASE("DEM nodata cells enter the blend as sea level") {
    tracks::DemGrid dem(40.0, -71.0, 1.0, 2, 2, -9999.0,
                        {-9999.0, 0.0, 100.0, 100.0});
    CHECK(dem.terrain_ft(40.0, -71.0) == Approx(0.0));
    CHECK(dem.terrain_ft(40.5, -70.5) == Approx(50.0));
}

TEST_CASE("DEM save/load round trip") {
    const auto dir = temp_dir("dem");
    tracks::DemGrid dem(40.0, -71.25, 0.5, 3, 4, -500.0,
                        {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
    dem.save(dir / "dem.csv");
    const auto back = tracks::DemGrid::load(dir / "dem.csv");
    CHECK(back.nrows() == 3);
    CHECK(back.ncols() == 4);
    CHECK(back.origin_lat() == 40.0);
    CHECK(back.origin_lon() == -71.25);
    CHECK(back.cell_deg() == 0.5);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 4; ++c) CHECK(back.at(r, c) == dem.at(r, c));

    CHECK_THROWS_AS(tracks::DemGrid::load(dir / "missing.csv"), tracks::TracksError);
}

TEST_CASE("DEM constructor validation") {
    CHECK_THROWS_AS(tracks::DemGrid(0, 0, -1.0, 2, 2, -9999, {0, 0, 0, 0}),
                    tracks::TracksError);
    CHECK_THROWS_AS(tracks::DemGrid(0, 0, 1.0, 1, 2, -9999, {0, 0}),
                    tracks::TracksError);
    CHECK_THROWS_AS(tracks::DemGrid(0, 0, 1.0, 2, 2, -9999, {0, 0, 0}),
                    tracks::TracksError);
}

TEST_CASE("add_agl subtracts terrain under each point") {
    const auto dem = flat_dem(250.0);
    tracks::RawSegment s;
    s.push_back(obs(0, 42.0, -71.0, 1000.0));
    s.push_back(obs(10, 42.01, -71.01, 1000.0));
    auto points = tracks::interpolate(s, 1.0);
    tracks::add_agl(points, dem);
    for (const auto& p : points) {
        CHECK(p.alt_agl_ft == Approx(750.0));
        // Consistency: msl - agl recovers the terrain elevation.
        CHECK(p.alt_msl_ft - p.alt_agl_ft == Approx(250.0));
    }
}

TEST_CASE("dynamics: constant climb yields constant vertical rate") {
    // 600 ft over 60 s at 1 Hz -> 600 fpm everywhere (linear profile).
    tracks::RawSegment s;
    for (int i = 0; i <= 60; ++i) s.push_back(obs(i, 42.0, -71.0, 1000.0 + 10.0 * i));
    auto points = tracks::interpolate(s, 1.0);
    tracks::add_dynamics(points);
    for (const auto& p : points) CHECK(p.vert_rate_fpm == Approx(600.0));
}

TEST_CASE("dynamics: stationary sequence has zero speed and turn rate") {
    auto points = tracks::interpolate(uniform_times(0, 1, 12), 1.0);
    tracks::add_dynamics(points);
    for (const auto& p : points) {
        CHECK(p.ground_speed_kt == Approx(0.0));
        CHECK(p.turn_rate_deg_s == Approx(0.0));
        CHECK(p.vert_rate_fpm == Approx(0.0));
    }
}

TEST_CASE("dynamics: one nautical mile per minute is sixty knots") {
    const double dlat = geo::rad2deg(geo::kMetersPerNm / geo::kEarthRadiusM);
    tracks::RawSegment s;
    s.push_back(obs(0, 42.0, -71.0, 1000.0));
    s.push_back(obs(60, 42.0 + dlat, -71.0, 1000.0));
    std::vector<tracks::TrackPoint> points;
    for (const auto& o : s) {
        tracks::TrackPoint p;
        p.time_s = o.time_s;
        p.lat_deg = o.lat_deg;
        p.lon_deg = o.lon_deg;
        p.alt_msl_ft = *o.alt_msl_ft;
        points.push_back(p);
    }
    tracks::add_dynamics(points);
    CHECK(points[0].ground_speed_kt == Approx(60.0).epsilon(1e-9));
    CHECK(points[1].ground_speed_kt == Approx(60.0).epsilon(1e-9));
}

TEST_CASE("dynamics: integrating vert_rate recovers the altitude profile") {
    // Smooth synthetic climb: linear trend plus a gentle sine.
    tracks::RawSegment s;
    const double pi = std::acos(-1.0);
    for (int i = 0; i <= 120; ++i) {
        const double t = i;
        const double alt = 1000.0 + 5.0 * t + 50.0 * std::sin(2 * pi * t / 60.0);
        s.push_back(obs(t, 42.0, -71.0, alt));
    }
    auto points = tracks::interpolate(s, 1.0);
    tracks::add_dynamics(points);

    double integral_ft = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const double dt = points[i + 1].time_s - points[i].time_s;
        integral_ft +=
            0.5 * (points[i].vert_rate_fpm + points[i + 1].vert_rate_fpm) / 60.0 * dt;
    }
    const double actual = points.back().alt_msl_ft - points.front().alt_msl_ft;
    CHECK(integral_ft == Approx(actual).epsilon(0.01));
}

TEST_CASE("dynamics: turn rate follows course changes") {
    // Eastward then northward leg: course swings 90 degrees at the corner.
    std::vector<tracks::TrackPoint> points(3);
    points[0] = {0.0, 42.0, -71.0, 1000.0, {}, 0, tracks::AirspaceClass::other, 0, 0, 0};
    points[1] = {10.0, 42.0, -70.99, 1000.0, {}, 0, tracks::AirspaceClass::other, 0, 0, 0};
    points[2] = {20.0, 42.01, -70.99, 1000.0, {}, 0, tracks::AirspaceClass::other, 0, 0, 0};
    tracks::add_dynamics(points);
    // Interior point sees ~(0 - 90)/20 s; wrap180 keeps it in (-180, 180].
    CHECK(points[1].turn_rate_deg_s == Approx(-4.5).epsilon(0.01));
    // Final point duplicates the last course: zero turn rate.
    CHECK(points[2].turn_rate_deg_s == Approx(0.0));
}

TEST_CASE("classify_airspace: containment, precedence, altitude band") {
    using tracks::AirspaceClass;
    std::vector<tracks::AirspaceVolume> volumes;
    volumes.push_back(square_volume("d", AirspaceClass::D, 42.0, -71.0, 0.5, 0, 2500));
    volumes.push_back(square_volume("c", AirspaceClass::C, 42.0, -71.0, 1.0, 0, 4000));

    // Inside D (and C): most restrictive wins -> C.
    CHECK(tracks::classify_airspace({42.0, -71.0}, 1000.0, volumes) == AirspaceClass::C);
    // Inside C only.
    CHECK(tracks::classify_airspace({42.0, -70.3}, 1000.0, volumes) == AirspaceClass::C);
    // Altitude band: above D's ceiling only C matches; above both, nothing.
    CHECK(tracks::classify_airspace({42.0, -71.0}, 3000.0, volumes) == AirspaceClass::C);
    CHECK(tracks::classify_airspace({42.0, -71.0}, 4500.0, volumes) == AirspaceClass::other);
    // Outside all volumes.
    CHECK(tracks::classify_airspace({10.0, 10.0}, 1000.0, volumes) == AirspaceClass::other);

    // D alone matches when C is removed.
    std::vector<tracks::AirspaceVolume> only_d = {volumes[0]};
    CHECK(tracks::classify_airspace({42.0, -71.0}, 1000.0, only_d) == AirspaceClass::D);

    // B outranks C.
    volumes.push_back(square_volume("b", AirspaceClass::B, 42.0, -71.0, 2.0, 0, 10000));
    CHECK(tracks::classify_airspace({42.0, -71.0}, 1000.0, volumes) == AirspaceClass::B);
}

TEST_CASE("airspace GeoJSON round trip preserves volumes") {
    const auto dir = temp_dir("airspace");
    std::vector<tracks::AirspaceVolume> volumes;
    volumes.push_back(square_volume("bravo", tracks::AirspaceClass::B, 40.0, -74.0,
                                    0.8, 0, 7000));
    volumes.push_back(square_volume("delta", tracks::AirspaceClass::D, 41.0, -72.0,
                                    0.2, 500, 2500));
    tracks::save_airspace_geojson(dir / "air.json", volumes);
    const auto back = tracks::load_airspace_geojson(dir / "air.json");
    REQUIRE(back.size() == 2);
    CHECK(back[0].name == "bravo");
    CHECK(back[0].cls == tracks::AirspaceClass::B);
    CHECK(back[0].floor_ft_agl == 0.0);
    CHECK(back[0].ceiling_ft_agl == 7000.0);
    REQUIRE(back[0].boundary.size() == 4);  // closing vertex dropped on load
    CHECK(back[0].boundary[0].lat_deg == volumes[0].boundary[0].lat_deg);
    CHECK(back[0].boundary[0].lon_deg == volumes[0].boundary[0].lon_deg);
    CHECK(back[1].cls == tracks::AirspaceClass::D);
}

TEST_CASE("airspace GeoJSON stores coordinates as [lon, lat]") {
    const auto dir = temp_dir("airspace_order");
    const std::string text = R"({
      "type": "FeatureCollection",
      "features": [{
        "type": "Feature",
        "properties": {"class": "D", "floor_ft_agl": 0, "ceiling_ft_agl": 2500},
        "geometry": {"type": "Polygon", "coordinates": [[
          [-71.5, 42.25], [-71.0, 42.25], [-71.0, 42.75], [-71.5, 42.75], [-71.5, 42.25]
        ]]}
      }]
    })";
    util::write_text_file(dir / "d.json", text);
    const auto volumes = tracks::load_airspace_geojson(dir / "d.json");
    REQUIRE(volumes.size() == 1);
    REQUIRE(volumes[0].boundary.size() == 4);
    CHECK(volumes[0].boundary[0].lat_deg == 42.25);
    CHECK(volumes[0].boundary[0].lon_deg == -71.5);
    // Center of the square classifies as D.
    CHECK(tracks::classify_airspace({42.5, -71.25}, 1000.0, volumes) ==
          tracks::AirspaceClass::D);
}

TEST_CASE("airspace GeoJSON validation errors") {
    const auto dir = temp_dir("airspace_bad");
    util::write_text_file(dir / "notjson.json", "not json at all");
    CHECK_THROWS_AS(tracks::load_airspace_geojson(dir / "notjson.json"),
                    tracks::TracksError);
    util::write_text_file(dir / "notfc.json", R"({"type": "Point"})");
    CHECK_THROWS_AS(tracks::load_airspace_geojson(dir / "notfc.json"),
                    tracks::TracksError);
    // floor >= ceiling is rejected.
    const std::string bad_band = R"({
      "type": "FeatureCollection",
      "features": [{
        "type": "Feature",
        "properties": {"class": "D", "floor_ft_agl": 3000, "ceiling_ft_agl": 1000},
        "geometry": {"type": "Polygon", "coordinates": [[
          [-71.5, 42.25], [-71.0, 42.25], [-71.0, 42.75], [-71.5, 42.25]
        ]]}
      }]
    })";
    util::write_text_file(dir / "band.json", bad_band);
    CHECK_THROWS_AS(tracks::load_airspace_geojson(dir / "band.json"),
                    tracks::TracksError);
}

TEST_CASE("segment CSV round trip") {
    const auto dir = temp_dir("segcsv");
    tracks::RawSegment s;
    for (int i = 0; i <= 15; ++i)
        s.push_back(obs(i, 42.0 + 0.0001 * i, -71.0, 1000.0 + 2.5 * i));
    auto points = tracks::interpolate(s, 1.0);
    tracks::add_agl(points, flat_dem(100.0));
    tracks::add_dynamics(points);
    tracks::write_segment_csv(dir / "seg.csv", points);
    const auto back = tracks::read_segment_csv(dir / "seg.csv");
    REQUIRE(back.size() == points.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].time_s == points[i].time_s);
        CHECK(back[i].lat_deg == points[i].lat_deg);
        CHECK(back[i].alt_msl_ft == points[i].alt_msl_ft);
        CHECK(back[i].alt_agl_ft == points[i].alt_agl_ft);
        CHECK(back[i].airspace == points[i].airspace);
        CHECK(back[i].ground_speed_kt == points[i].ground_speed_kt);
        CHECK(back[i].vert_rate_fpm == points[i].vert_rate_fpm);
        CHECK(back[i].turn_rate_deg_s == points[i].turn_rate_deg_s);
    }
}

namespace {

std::string obs_csv_rows(const std::vector<ingest::Observation>& rows) {
    std::string out(ingest::kObservationHeader);
    out += '\n';
    for (const auto& o : rows) {
        out += util::format_double(o.time_s) + "," + o.icao24 + "," +
               util::format_double(o.lat_deg) + "," + util::format_double(o.lon_deg) +
               "," + (o.alt_msl_ft ? util::format_double(*o.alt_msl_ft) : "") + ",,,\n";
    }
    return out;
}

std::vector<ingest::Observation> steady_track(const std::string& icao, double t0,
                                              int n, double lat0 = 42.0) {
    std::vector<ingest::Observation> rows;
    for (int i = 0; i < n; ++i) {
        auto o = obs(t0 + i, lat0 + 0.0002 * i, -71.0, 1200.0 + i);
        o.icao24 = icao;
        rows.push_back(o);
    }
    return rows;
}

}  // namespace

TEST_CASE("process_archive_task runs the full chain over a leaf zip") {
    const auto dir = temp_dir("process");
    const auto dem = flat_dem(100.0);
    std::vector<tracks::AirspaceVolume> volumes;
    volumes.push_back(square_volume("d", tracks::AirspaceClass::D, 42.0, -71.0,
                                    0.5, 0, 5000));

    // aaa001: one long clean track. aaa002: nine observations (dropped).
    // aaa003: two tracks separated by a 400 s gap, plus a missing-alt row.
    auto third = steady_track("aaa003", 0, 30);
    auto more = steady_track("aaa003", 30 + 400, 20);
    third.insert(third.end(), more.begin(), more.end());
    auto bad = obs(15.5, 42.0, -71.0, std::nullopt);
    bad.icao24 = "aaa003";
    third.insert(third.begin() + 16, bad);

    util::write_zip(dir / "aa.zip",
                    {{"aaa001.csv", obs_csv_rows(steady_track("aaa001", 0, 40))},
                     {"aaa002.csv", obs_csv_rows(steady_track("aaa002", 0, 9))},
                     {"aaa003.csv", obs_csv_rows(third)}});

    const auto out = dir / "out";
    const auto stats = tracks::process_archive_task(dir / "aa.zip", dem, volumes, out);
    CHECK(stats.aircraft_seen == 3);
    CHECK(stats.aircraft_failed == 0);
    CHECK(stats.segments_kept == 3);
    CHECK(stats.segments_dropped == 1);
    CHECK(stats.rows_missing_alt == 1);
    CHECK(stats.rows_in == 40 + 9 + 51);
    CHECK(stats.failures.empty());

    CHECK(fs::exists(out / "aaa001_000.csv"));
    CHECK_FALSE(fs::exists(out / "aaa002_000.csv"));
    CHECK(fs::exists(out / "aaa003_000.csv"));
    CHECK(fs::exists(out / "aaa003_001.csv"));

    // Spot-check one output: AGL consistency and airspace classification.
    const auto seg = tracks::read_segment_csv(out / "aaa001_000.csv");
    REQUIRE(seg.size() == 40);
    for (const auto& p : seg) {
        CHECK(p.alt_msl_ft - p.alt_agl_ft == Approx(100.0));
        CHECK(p.airspace == tracks::AirspaceClass::D);
    }
    for (std::size_t i = 1; i < seg.size(); ++i)
        CHECK(seg[i].time_s > seg[i - 1].time_s);
}

TEST_CASE("process_archive_task is deterministic") {
    const auto dir = temp_dir("process_det");
    const auto dem = flat_dem(0.0);
    util::write_zip(dir / "aa.zip",
                    {{"aaa001.csv", obs_csv_rows(steady_track("aaa001", 0, 25))},
                     {"aaa004.csv", obs_csv_rows(steady_track("aaa004", 50, 12))}});
    const auto s1 =
        tracks::process_archive_task(dir / "aa.zip", dem, {}, dir / "out1");
    const auto s2 =
        tracks::process_archive_task(dir / "aa.zip", dem, {}, dir / "out2");
    CHECK(s1.segments_kept == s2.segments_kept);
    CHECK(util::hash_tree(dir / "out1") == util::hash_tree(dir / "out2"));
}

TEST_CASE("process_archive_task surfaces zip damage and isolates aircraft failures") {
    const auto dir = temp_dir("process_bad");
    const auto dem = flat_dem(0.0);
    util::write_text_file(dir / "junk.zip", "this is not a zip archive");
    CHECK_THROWS_AS(
        tracks::process_archive_task(dir / "junk.zip", dem, {}, dir / "out"),
        tracks::CorruptArchive);

    // One aircraft outside DEM coverage fails; the other still processes.
    auto away = steady_track("bbb001", 0, 20, /*lat0=*/10.0);
    util::write_zip(dir / "ab.zip",
                    {{"aaa001.csv", obs_csv_rows(steady_track("aaa001", 0, 20))},
                     {"bbb001.csv", obs_csv_rows(away)}});
    const auto stats =
        tracks::process_archive_task(dir / "ab.zip", dem, {}, dir / "out");
    CHECK(stats.aircraft_seen == 2);
    CHECK(stats.aircraft_failed == 1);
    CHECK(stats.segments_kept == 1);
    REQUIRE(stats.failures.size() == 1);
    CHECK(stats.failures[0].find("bbb001") != std::string::npos);
    CHECK(fs::exists(dir / "out/aaa001_000.csv"));
    CHECK_FALSE(fs::exists(dir / "out/bbb001_000.csv"));
}

TEST_CASE("geo primitives: haversine, bearing, polygons, rectangles") {
    // One degree of latitude along a meridian.
    const double one_deg_m = geo::haversine_m({0.0, 0.0}, {1.0, 0.0});
    CHECK(one_deg_m == Approx(geo::kEarthRadiusM * std::acos(-1.0) / 180.0));

    CHECK(geo::initial_bearing_deg({0, 0}, {1, 0}) == Approx(0.0));
    CHECK(geo::initial_bearing_deg({0, 0}, {0, 1}) == Approx(90.0));
    CHECK(geo::initial_bearing_deg({0, 0}, {-1, 0}) == Approx(180.0));
    CHECK(geo::initial_bearing_deg({0, 0}, {0, -1}) == Approx(270.0));
    CHECK(geo::initial_bearing_deg({42, -71}, {42, -71}) == 0.0);

    const geo::Polygon tri = {{0, 0}, {0, 4}, {4, 0}};
    CHECK(geo::point_in_polygon({1.0, 1.0}, tri));
    CHECK_FALSE(geo::point_in_polygon({3.0, 3.0}, tri));

    const geo::GeoRect rect{40.0, 41.0, -72.0, -71.0};
    CHECK(rect.contains_closed({40.0, -72.0}));
    CHECK(rect.contains_closed({41.0, -71.0}));
    CHECK(rect.contains_half_open({40.0, -72.0}));
    CHECK_FALSE(rect.contains_half_open({41.0, -71.5}));
    CHECK_FALSE(rect.contains_half_open({40.5, -71.0}));

    const geo::GeoRect touching{41.0, 42.0, -72.0, -71.0};
    CHECK_FALSE(rect.interior_intersects(touching));
    const geo::GeoRect overlapping{40.5, 42.0, -72.0, -71.0};
    CHECK(rect.interior_intersects(overlapping));

    CHECK(geo::polygon_intersects_rect(tri, {-1.0, 1.0, -1.0, 1.0}));
    CHECK_FALSE(geo::polygon_intersects_rect(tri, {5.0, 6.0, 5.0, 6.0}));
    // Rect fully inside the polygon (no vertices cross): still intersects.
    CHECK(geo::polygon_intersects_rect(tri, {0.5, 1.0, 0.5, 1.0}));
    // Polygon fully inside the rect.
    CHECK(geo::polygon_intersects_rect(tri, {-10.0, 10.0, -10.0, 10.0}));

    CHECK(geo::point_rect_distance_m({40.5, -71.5}, rect) == 0.0);
    // One degree of latitude north of the rect's top edge.
    CHECK(geo::point_rect_distance_m({42.0, -71.5}, rect) ==
          Approx(geo::kMetersPerDegLat));
}
