#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "trackforge/tracks/airspace.hpp"
#include "trackforge/tracks/dem.hpp"
#include "trackforge/tracks/segment.hpp"

namespace trackforge::tracks {

struct ProcessConfig {
    double max_gap_s = 300.0;
    std::size_t min_observations = 10;
    double rate_hz = 1.0;
};

struct ProcessStats {
    std::size_t aircraft_seen = 0;
    std::size_t aircraft_failed = 0;
    std::size_t segments_kept = 0;
    std::size_t segments_dropped = 0;
    std::size_t rows_in = 0;
    std::size_t rows_missing_alt = 0;
    std::size_t rows_out = 0;
    std::vector<std::string> failures;  // one message per failed aircraft
};

// Runs the full per-aircraft chain (split -> filter -> interpolate -> AGL ->
// dynamics -> airspace) over every CSV entry of one leaf archive and writes
// `<icao24>_<nnn>.csv` per surviving segment into out_dir. Rows without an
// altitude are dropped up front. A failure while processing one aircraft is
// recorded and the task moves on; nothing is written for that aircraft.
// Throws CorruptArchive if the zip itself cannot be read.
ProcessStats process_archive_task(const std::filesystem::path& zip_path,
                                  const DemGrid& dem,
                                  std::span<const AirspaceVolume> volumes,
                                  const std::filesystem::path& out_dir,
                                  const ProcessConfig& config = {});

}  // namespace trackforge::tracks
