#include "trackforge/ingest/organize.hpp"

#include <algorithm>
#include <map>

#include "trackforge/ingest/hierarchy.hpp"
#include "trackforge/ingest/observation.hpp"
#include "trackforge/sched/ordering.hpp"
#include "trackforge/sched/run_live.hpp"
#include "trackforge/util/timeparse.hpp"

namespace trackforge::ingest {

namespace {

struct ParsedFile {
    bool ok = false;
    ObservationFile content;
};

std::vector<ParsedFile> parse_phase(const std::vector<std::filesystem::path>& files,
                                    const OrganizeOptions& options) {
    std::vector<ParsedFile> parsed(files.size());
    auto parse_one = [&](std::size_t index) {
        try {
            parsed[index].content = read_observations(files[index]);
            parsed[index].ok = true;
        } catch (const std::exception&) {
            parsed[index].ok = false;  // logged by caller via files_failed
        }
    };

    if (options.workers <= 1 || files.size() < 2) {
        for (std::size_t i = 0; i < files.size(); ++i) parse_one(i);
        return parsed;
    }

    // Results land in per-task slots, so completion order cannot leak into
    // the output.
    std::vector<sched::Task> tasks;
    tasks.reserve(files.size());
    for (std::size_t i = 0; i < files.size(); ++i) {
        sched::Task task;
        task.id = static_cast<sched::TaskId>(i);
        task.group_key = files[i].generic_string();
        std::error_code ec;
        const auto size = std::filesystem::file_size(files[i], ec);
        task.size_bytes = ec ? 0 : size;
        task.time_key = util::parse_iso8601(files[i].stem().string());
        tasks.push_back(std::move(task));
    }
    if (options.ordering) tasks = sched::order_tasks(std::move(tasks), *options.ordering);
    sched::LiveOptions live;
    live.worker_count = options.workers;
    live.protocol.poll_interval_s = options.poll_interval_s;
    (void)sched::run_live(tasks, live, [&](const sched::Task& task) {
        parse_one(static_cast<std::size_t>(task.id));
    });
    return parsed;
}

}  // namespace

OrganizeStats organize(const std::vector<std::filesystem::path>& input_files,
                       const Registry& registry, int year,
                       const std::filesystem::path& out_root,
                       const OrganizeOptions& options) {
    OrganizeStats stats;
    const auto parsed = parse_phase(input_files, options);

    // icao24 -> (destination, rows); std::map keeps writes in sorted order.
    struct Bucket {
        std::filesystem::path dir;
        bool matched = false;
        std::vector<Observation> rows;
    };
    std::map<std::string, Bucket> buckets;

    for (const auto& file : parsed) {
        if (!file.ok) {
            ++stats.files_failed;
            continue;
        }
        ++stats.files_read;
        stats.rows_total += file.content.rows.size() + file.content.invalid_rows;
        stats.rows_invalid += file.content.invalid_rows;
        for (const auto& obs : file.content.rows) {
            if (options.ceiling_ft && obs.alt_msl_ft && *obs.alt_msl_ft > *options.ceiling_ft) {
                ++stats.rows_dropped_ceiling;
                continue;
            }
            auto& bucket = buckets[obs.icao24];
            if (bucket.rows.empty()) {
                const auto* record = registry.find(obs.icao24);
                bucket.matched = record != nullptr;
                const auto path = record ? hierarchy_path(*record, year)
                                         : unknown_hierarchy_path(obs.icao24, year);
                bucket.dir = out_root / path.rel_path();
            }
            if (bucket.matched)
                ++stats.rows_kept;
            else
                ++stats.rows_unmatched;
            bucket.rows.push_back(obs);
        }
    }

    for (auto& [icao24, bucket] : buckets) {
        std::stable_sort(bucket.rows.begin(), bucket.rows.end(),
                         [](const Observation& a, const Observation& b) {
                             return a.time_s < b.time_s;
                         });
        write_observations(bucket.dir / (icao24 + ".csv"), bucket.rows);
    }
    return stats;
}

}  // namespace trackforge::ingest
