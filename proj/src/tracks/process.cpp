#include "trackforge/tracks/process.hpp"

#include <algorithm>

#include "trackforge/ingest/observation.hpp"
#include "trackforge/util/zip.hpp"

namespace trackforge::tracks {

namespace {

std::string segment_filename(const std::string& icao, std::size_t index) {
    std::string n = std::to_string(index);
    if (n.size() < 3) n.insert(0, 3 - n.size(), '0');
    return icao + "_" + n + ".csv";
}

}  // namespace

ProcessStats process_archive_task(const std::filesystem::path& zip_path,
                                  const DemGrid& dem,
                                  std::span<const AirspaceVolume> volumes,
                                  const std::filesystem::path& out_dir,
                                  const ProcessConfig& config) {
    std::vector<util::ZipEntry> entries;
    try {
        entries = util::read_zip(zip_path);
    } catch (const util::ZipError& e) {
        throw CorruptArchive(zip_path.string() + ": " + e.what());
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });

    std::filesystem::create_directories(out_dir);

    ProcessStats stats;
    for (const auto& entry : entries) {
        if (!entry.name.ends_with(".csv")) continue;
        ++stats.aircraft_seen;
        const std::string icao = entry.name.substr(0, entry.name.size() - 4);
        try {
            auto parsed = ingest::parse_observations_text(
                entry.data, zip_path.string() + "!" + entry.name);
            stats.rows_in += parsed.rows.size();

            auto& rows = parsed.rows;
            const auto no_alt = [](const ingest::Observation& o) {
                return !o.alt_msl_ft.has_value();
            };
            stats.rows_missing_alt +=
                static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), no_alt));
            rows.erase(std::remove_if(rows.begin(), rows.end(), no_alt), rows.end());
            std::stable_sort(rows.begin(), rows.end(),
                             [](const auto& a, const auto& b) { return a.time_s < b.time_s; });
            if (rows.empty()) continue;

            auto raw = split_segments(rows, config.max_gap_s);
            const std::size_t before = raw.size();
            raw = filter_short(std::move(raw), config.min_observations);
            stats.segments_dropped += before - raw.size();

            std::vector<std::vector<TrackPoint>> processed;
            processed.reserve(raw.size());
            for (const auto& seg : raw) {
                auto points = interpolate(seg, config.rate_hz);
                add_agl(points, dem);
                add_dynamics(points);
                add_airspace(points, volumes);
                processed.push_back(std::move(points));
            }
            for (std::size_t k = 0; k < processed.size(); ++k) {
                write_segment_csv(out_dir / segment_filename(icao, k), processed[k]);
                ++stats.segments_kept;
                stats.rows_out += processed[k].size();
            }
        } catch (const std::exception& e) {
            ++stats.aircraft_failed;
            stats.failures.push_back(icao + ": " + e.what());
        }
    }
    return stats;
}

}  // namespace trackforge::tracks
