#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trackforge::ingest {

// One ADS-B style state-vector row. alt and the rate fields may be missing
// (empty CSV fields).
struct Observation {
    double time_s = 0.0;  // epoch seconds
    std::string icao24;
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    std::optional<double> alt_msl_ft;
    std::optional<double> ground_speed_kt;
    std::optional<double> heading_deg;
    std::optional<double> vert_rate_fpm;
};

inline constexpr const char* kObservationHeader =
    "time,icao24,lat,lon,alt_msl_ft,ground_speed_kt,heading_deg,vert_rate_fpm";

// Row-level parse; rejects bad numbers, out-of-range lat/lon, non-finite
// time, malformed icao24.
std::optional<Observation> parse_observation_row(std::span<const std::string> fields);

struct ObservationFile {
    std::vector<Observation> rows;
    std::size_t invalid_rows = 0;
};

// Parses observation CSV text already in memory (e.g. a zip entry).
// `label` is used in error messages. Throws SchemaMismatch on a bad header;
// bad rows are only counted.
ObservationFile parse_observations_text(std::string_view text, const std::string& label);

// Reads one observation CSV. Throws SchemaMismatch on a bad header,
// UnreadableFile if the file cannot be opened; bad rows are only counted.
ObservationFile read_observations(const std::filesystem::path& path);

void write_observations(const std::filesystem::path& path,
                        std::span<const Observation> rows);

}  // namespace trackforge::ingest
