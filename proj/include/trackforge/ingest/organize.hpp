#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include "trackforge/ingest/registry.hpp"
#include "trackforge/sched/types.hpp"

namespace trackforge::ingest {

struct OrganizeOptions {
    std::optional<double> ceiling_ft;  // drop rows with alt_msl above this
    int workers = 1;                   // parse-phase parallelism
    double poll_interval_s = 0.01;     // used when workers > 1
    // Hand-out order for the parallel parse phase (sizes from the filesystem,
    // time keys from YYYY-MM-DD-HH stems). Input-list order when unset.
    // Execution order never reaches the output: results are slot-addressed
    // and merged in input-list order.
    std::optional<sched::OrderingPolicy> ordering;
};

struct OrganizeStats {
    std::size_t files_read = 0;
    std::size_t files_failed = 0;
    std::size_t rows_total = 0;
    std::size_t rows_kept = 0;
    std::size_t rows_unmatched = 0;
    std::size_t rows_dropped_ceiling = 0;
    std::size_t rows_invalid = 0;
};

// Groups raw observation files into the four-tier hierarchy: one
// `<icao24>.csv` per aircraft under hierarchy_path(record, year), rows
// time-sorted. Rows are classified in this order: invalid, above-ceiling
// (dropped), unmatched address (kept under <year>/unknown/_/<xx>), kept.
// Unreadable input files are counted in files_failed and skipped. The output
// tree is fully rewritten, so reruns over the same input are byte-identical.
// With workers > 1 the parse phase runs on the self-scheduling engine (one
// task per input file); the merge and writes stay deterministic.
OrganizeStats organize(const std::vector<std::filesystem::path>& input_files,
                       const Registry& registry, int year,
                       const std::filesystem::path& out_root,
                       const OrganizeOptions& options = {});

}  // namespace trackforge::ingest
