// trackforge: single entry point for the track-processing pipeline
// (organize -> archive -> segment), aerodrome query generation, and the
// scheduling benchmark/simulation tools.
//
// Every subcommand accepts --config <json> whose keys mirror the flags;
// explicit flags override the file. Each run writes the fully resolved
// configuration to <out>/resolved_config.json, which can be fed back via
// --config to reproduce the run bit-exactly.
//
// Exit codes: 0 success (warnings allowed), 2 usage/config error (no outputs
// written), 1 runtime failure.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "trackforge/ingest/archive.hpp"
#include "trackforge/ingest/make_tasks.hpp"
#include "trackforge/ingest/organize.hpp"
#include "trackforge/ingest/registry.hpp"
#include "trackforge/query/aerodrome.hpp"
#include "trackforge/query/boxes.hpp"
#include "trackforge/sched/manifest.hpp"
#include "trackforge/sched/ordering.hpp"
#include "trackforge/sched/partition.hpp"
#include "trackforge/sched/run_live.hpp"
#include "trackforge/sched/trace.hpp"
#include "trackforge/sched/types.hpp"
#include "trackforge/sim/cost_model.hpp"
#include "trackforge/sim/metrics.hpp"
#include "trackforge/sim/simulate.hpp"
#include "trackforge/sim/sweep.hpp"
#include "trackforge/sim/synth.hpp"
#include "trackforge/tracks/process.hpp"
#include "trackforge/util/csv.hpp"
#include "trackforge/util/timeparse.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace trackforge;

namespace {

// Configuration or input validation problem: exit 2, nothing written.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void warn(const std::string& message) { std::cerr << "warning: " << message << "\n"; }

// ---------------------------------------------------------------- shared opts

struct SchedOpts {
    int workers = 0;  // 0: derive nodes*nppn - 1
    int nodes = 1;
    int nppn = 4;
    std::string ordering;  // empty: per-command default
    std::string distribution = "self";
    int tasks_per_message = 1;
    double poll_interval_s = 0.3;
    std::uint64_t seed = 0;
};

void sched_from_json(const json& j, SchedOpts& s) {
    s.workers = j.value("workers", s.workers);
    s.nodes = j.value("nodes", s.nodes);
    s.nppn = j.value("nppn", s.nppn);
    s.ordering = j.value("ordering", s.ordering);
    s.distribution = j.value("distribution", s.distribution);
    s.tasks_per_message = j.value("tasks_per_message", s.tasks_per_message);
    s.poll_interval_s = j.value("poll_interval_s", s.poll_interval_s);
    s.seed = j.value("seed", s.seed);
}

void sched_to_json(json& j, const SchedOpts& s) {
    j["workers"] = s.workers;
    j["nodes"] = s.nodes;
    j["nppn"] = s.nppn;
    j["ordering"] = s.ordering;
    j["distribution"] = s.distribution;
    j["tasks_per_message"] = s.tasks_per_message;
    j["poll_interval_s"] = s.poll_interval_s;
    j["seed"] = s.seed;
}

void add_sched_flags(CLI::App* sub, SchedOpts& s) {
    sub->add_option("--workers", s.workers, "Worker count (0: derive nodes*nppn - 1)");
    sub->add_option("--nodes", s.nodes, "Node count for deriving the worker count");
    sub->add_option("--nppn", s.nppn, "Processes per node");
    sub->add_option("--ordering", s.ordering,
                    "Task hand-out order: chronological | largest_first | random");
    sub->add_option("--distribution", s.distribution,
                    "Work distribution: self | block | cyclic");
    sub->add_option("--tasks-per-message", s.tasks_per_message,
                    "Tasks bundled into one scheduling message");
    sub->add_option("--poll-interval", s.poll_interval_s,
                    "Manager/worker poll interval in seconds");
    sub->add_option("--seed", s.seed, "Seed for synthetic workloads / random ordering");
}

void cost_from_json(const json& j, sim::CostModel& m) {
    m.fixed_overhead_s = j.value("fixed_overhead_s", m.fixed_overhead_s);
    m.seconds_per_mb = j.value("seconds_per_mb", m.seconds_per_mb);
    m.node_contention_factor = j.value("node_contention_factor", m.node_contention_factor);
}

void cost_to_json(json& j, const sim::CostModel& m) {
    j["fixed_overhead_s"] = m.fixed_overhead_s;
    j["seconds_per_mb"] = m.seconds_per_mb;
    j["node_contention_factor"] = m.node_contention_factor;
}

int resolve_workers(const SchedOpts& s) {
    if (s.workers > 0) return s.workers;
    sched::TriplesConfig triples;
    triples.nodes = s.nodes;
    triples.nppn = s.nppn;
    try {
        const auto validated = sched::validate_config(triples);
        for (const auto& w : validated.warnings) warn(w);
        return validated.worker_count;
    } catch (const sched::SchedError& e) {
        throw UsageError(std::string("job shape: ") + e.what());
    }
}

sched::OrderingPolicy resolve_ordering(SchedOpts& s, const std::string& fallback) {
    if (s.ordering.empty()) s.ordering = fallback;  // resolved into the snapshot
    const auto kind = sched::ordering_kind_from_name(s.ordering);
    if (!kind) throw UsageError("unknown ordering '" + s.ordering + "'");
    return {*kind, s.seed};
}

enum class Distribution { self_sched, block, cyclic };

Distribution resolve_distribution(const std::string& name) {
    if (name == "self") return Distribution::self_sched;
    if (name == "block") return Distribution::block;
    if (name == "cyclic") return Distribution::cyclic;
    throw UsageError("unknown distribution '" + name + "' (self | block | cyclic)");
}

// ------------------------------------------------------------------- helpers

void require_dir(const std::string& path, const std::string& flag) {
    if (path.empty()) throw UsageError(flag + " is required");
    if (!fs::is_directory(path)) throw UsageError(flag + ": not a directory: " + path);
}

void require_file(const std::string& path, const std::string& flag) {
    if (path.empty()) throw UsageError(flag + " is required");
    if (!fs::is_regular_file(path)) throw UsageError(flag + ": no such file: " + path);
}

fs::path require_out(const std::string& out) {
    if (out.empty()) throw UsageError("--out is required");
    return fs::path(out);
}

void write_json_file(const fs::path& path, const json& j) {
    util::write_text_file(path, j.dump(2) + "\n");
}

void write_snapshot(const fs::path& out_dir, const json& resolved) {
    fs::create_directories(out_dir);
    write_json_file(out_dir / "resolved_config.json", resolved);
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string current;
    for (char c : csv) {
        if (c == ',') {
            if (!current.empty()) out.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) out.push_back(current);
    return out;
}

json metrics_json(const sim::TraceMetrics& metrics, const std::string& mode,
                  int n_workers) {
    json j;
    j["mode"] = mode;
    j["n_workers"] = n_workers;
    j["job_time_s"] = metrics.job_time_s;
    j["median_worker_busy_s"] = metrics.median_worker_busy_s;
    j["span_s"] = metrics.span_s;
    j["top_10_percent_share"] = metrics.top_share(10.0);
    return j;
}

sched::ScheduleTrace simulate_mode(const sim::Workload& workload, int n_workers,
                                   Distribution dist, const sched::OrderingPolicy& policy,
                                   const sched::ProtocolConfig& pcfg,
                                   const sim::CostModel& model, int nppn) {
    switch (dist) {
        case Distribution::block:
            return sim::simulate_static(workload, n_workers, sim::PartitionKind::block,
                                        model, nppn);
        case Distribution::cyclic:
            return sim::simulate_static(workload, n_workers, sim::PartitionKind::cyclic,
                                        model, nppn);
        case Distribution::self_sched:
            return sim::simulate_self_sched(workload, n_workers, policy, pcfg, model, nppn);
    }
    throw UsageError("unreachable distribution");
}

sim::Workload build_workload(const std::string& kind, const std::string& manifest,
                             int n_tasks, std::uint64_t seed) {
    if (kind == "gaussian") {
        sim::GaussianParams params;
        if (n_tasks > 0) params.n = n_tasks;
        return sim::synth_gaussian(params, seed);
    }
    if (kind == "heavy_tail" || kind == "clustered") {
        sim::HeavyTailParams params;
        if (n_tasks > 0) params.n = n_tasks;
        return kind == "heavy_tail" ? sim::synth_heavy_tail(params, seed)
                                    : sim::synth_clustered(params, seed);
    }
    if (kind == "manifest") {
        require_file(manifest, "--manifest");
        return sim::workload_from_tasks(sched::read_manifest(manifest));
    }
    throw UsageError("unknown workload '" + kind +
                     "' (gaussian | heavy_tail | clustered | manifest)");
}

bool all_have_time_keys(const sim::Workload& workload) {
    return std::all_of(workload.tasks.begin(), workload.tasks.end(),
                       [](const sched::Task& t) { return t.time_key.has_value(); });
}

// bench/simulate default to a 32-node by 8-process shape (255 workers).
SchedOpts cluster_sched_defaults() {
    SchedOpts s;
    s.nodes = 32;
    s.nppn = 8;
    return s;
}

// ------------------------------------------------------------------ organize

struct OrganizeCmd {
    std::string input, registry, out;
    int year = 2019;
    std::optional<double> ceiling_ft;
    SchedOpts sched;
};

void organize_from_json(const json& j, OrganizeCmd& c) {
    c.input = j.value("input", c.input);
    c.registry = j.value("registry", c.registry);
    c.out = j.value("out", c.out);
    c.year = j.value("year", c.year);
    if (j.contains("ceiling_ft") && !j["ceiling_ft"].is_null())
        c.ceiling_ft = j["ceiling_ft"].get<double>();
    sched_from_json(j, c.sched);
}

int cmd_organize(OrganizeCmd& c) {
    require_dir(c.input, "--input");
    require_file(c.registry, "--registry");
    const auto out_dir = require_out(c.out);

    ingest::Registry registry;
    std::size_t rejects = 0;
    try {
        auto parsed = ingest::parse_registry({fs::path(c.registry)});
        rejects = parsed.rejects.size();
        registry = ingest::Registry(std::move(parsed.records));
    } catch (const ingest::IngestError& e) {
        throw UsageError(std::string("registry: ") + e.what());
    }

    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(c.input))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw UsageError("no input files under " + c.input);

    ingest::OrganizeOptions options;
    options.ceiling_ft = c.ceiling_ft;
    options.workers = resolve_workers(c.sched);
    options.poll_interval_s = c.sched.poll_interval_s;
    options.ordering = resolve_ordering(c.sched, "largest_first");

    json resolved;
    resolved["command"] = "organize";
    resolved["input"] = c.input;
    resolved["registry"] = c.registry;
    resolved["out"] = c.out;
    resolved["year"] = c.year;
    if (c.ceiling_ft) resolved["ceiling_ft"] = *c.ceiling_ft;
    sched_to_json(resolved, c.sched);
    write_snapshot(out_dir, resolved);

    const auto stats = ingest::organize(files, registry, c.year, out_dir / "tree", options);

    json report;
    report["registry_records"] = registry.size();
    report["registry_rejects"] = rejects;
    report["files_read"] = stats.files_read;
    report["files_failed"] = stats.files_failed;
    report["rows_total"] = stats.rows_total;
    report["rows_kept"] = stats.rows_kept;
    report["rows_unmatched"] = stats.rows_unmatched;
    report["rows_dropped_ceiling"] = stats.rows_dropped_ceiling;
    report["rows_invalid"] = stats.rows_invalid;
    write_json_file(out_dir / "organize_stats.json", report);

    if (stats.files_failed > 0)
        warn(std::to_string(stats.files_failed) + " input file(s) could not be read");
    std::cout << "organized " << stats.files_read << " file(s), kept " << stats.rows_kept
              << " row(s) -> " << (out_dir / "tree").string() << "\n";
    return 0;
}

// ------------------------------------------------------------------- archive

struct ArchiveCmd {
    std::string input, out;
    SchedOpts sched;
    sim::CostModel model;
};

void archive_from_json(const json& j, ArchiveCmd& c) {
    c.input = j.value("input", c.input);
    c.out = j.value("out", c.out);
    sched_from_json(j, c.sched);
    cost_from_json(j, c.model);
}

int cmd_archive(ArchiveCmd& c) {
    require_dir(c.input, "--input");
    const auto out_dir = require_out(c.out);
    const int n_workers = resolve_workers(c.sched);
    const auto dist = resolve_distribution(c.sched.distribution);
    const auto policy = resolve_ordering(c.sched, "largest_first");
    try {
        c.model.validate();
    } catch (const sim::InvalidParams& e) {
        throw UsageError(std::string("cost model: ") + e.what());
    }

    json resolved;
    resolved["command"] = "archive";
    resolved["input"] = c.input;
    resolved["out"] = c.out;
    sched_to_json(resolved, c.sched);
    cost_to_json(resolved, c.model);
    write_snapshot(out_dir, resolved);

    ingest::ArchiveOptions options;
    options.workers = n_workers;
    options.poll_interval_s = c.sched.poll_interval_s;
    const auto report = ingest::archive_leaves(c.input, out_dir / "zips", options);

    json stats;
    stats["zips_written"] = report.zips_written;
    stats["empty_leaves"] = report.empty_leaves;
    stats["failures"] = report.failures;
    write_json_file(out_dir / "archive_stats.json", stats);
    for (const auto& failure : report.failures) warn("leaf failed: " + failure);

    // Schedule trace over the produced archives (one task per zip) under the
    // requested distribution, so different policies can be compared while the
    // archive bytes stay identical.
    const auto manifest = ingest::make_tasks(out_dir / "zips");
    for (const auto& w : manifest.warnings) warn(w);
    if (!manifest.tasks.empty()) {
        const auto workload = sim::workload_from_tasks(manifest.tasks);
        sched::ProtocolConfig pcfg;
        pcfg.poll_interval_s = c.sched.poll_interval_s;
        pcfg.tasks_per_message = c.sched.tasks_per_message;
        const auto trace =
            simulate_mode(workload, n_workers, dist, policy, pcfg, c.model, c.sched.nppn);
        sched::write_trace_csv(out_dir / "trace.csv", trace);
        const auto metrics = sim::trace_metrics(trace);
        write_json_file(out_dir / "trace_metrics.json",
                        metrics_json(metrics, c.sched.distribution, n_workers));
        sim::write_ecdf_csv(out_dir / "worker_ecdf.csv", metrics);
    }

    std::cout << "archived " << report.zips_written << " leaf zip(s) -> "
              << (out_dir / "zips").string() << "\n";
    return 0;
}

// ------------------------------------------------------------------- segment

struct SegmentCmd {
    std::string archives, dem, airspace, out;
    double max_gap_s = 300.0;
    std::size_t min_observations = 10;
    double rate_hz = 1.0;
    SchedOpts sched;
};

void segment_from_json(const json& j, SegmentCmd& c) {
    c.archives = j.value("archives", c.archives);
    c.dem = j.value("dem", c.dem);
    c.airspace = j.value("airspace", c.airspace);
    c.out = j.value("out", c.out);
    c.max_gap_s = j.value("max_gap_s", c.max_gap_s);
    c.min_observations = j.value("min_observations", c.min_observations);
    c.rate_hz = j.value("rate_hz", c.rate_hz);
    sched_from_json(j, c.sched);
}

int cmd_segment(SegmentCmd& c) {
    require_dir(c.archives, "--archives");
    require_file(c.dem, "--dem");
    require_file(c.airspace, "--airspace");
    const auto out_dir = require_out(c.out);
    const int n_workers = resolve_workers(c.sched);
    const auto policy = resolve_ordering(c.sched, "largest_first");

    tracks::DemGrid dem;
    std::vector<tracks::AirspaceVolume> volumes;
    try {
        dem = tracks::DemGrid::load(c.dem);
        volumes = tracks::load_airspace_geojson(c.airspace);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }

    // One task per leaf archive; the group key doubles as the zip path and
    // the output subdirectory, so aircraft ids cannot collide across leaves.
    auto manifest = ingest::make_tasks(c.archives);
    for (const auto& w : manifest.warnings) warn(w);
    std::vector<sched::Task> tasks;
    for (auto& task : manifest.tasks) {
        if (fs::is_regular_file(fs::path(c.archives) / (task.group_key + ".zip")))
            tasks.push_back(std::move(task));
        else
            warn("skipping non-archive file in " + task.group_key);
    }
    if (tasks.empty()) throw UsageError("no .zip archives under " + c.archives);
    std::vector<sched::Task> ordered;
    try {
        ordered = sched::order_tasks(std::move(tasks), policy);
    } catch (const sched::MissingTimeKey& e) {
        throw UsageError(std::string("ordering: ") + e.what());
    }

    json resolved;
    resolved["command"] = "segment";
    resolved["archives"] = c.archives;
    resolved["dem"] = c.dem;
    resolved["airspace"] = c.airspace;
    resolved["out"] = c.out;
    resolved["max_gap_s"] = c.max_gap_s;
    resolved["min_observations"] = c.min_observations;
    resolved["rate_hz"] = c.rate_hz;
    sched_to_json(resolved, c.sched);
    write_snapshot(out_dir, resolved);

    tracks::ProcessConfig process_config;
    process_config.max_gap_s = c.max_gap_s;
    process_config.min_observations = c.min_observations;
    process_config.rate_hz = c.rate_hz;

    tracks::ProcessStats totals;
    std::mutex totals_mutex;
    sched::LiveOptions live;
    live.worker_count = n_workers;
    live.protocol.poll_interval_s = c.sched.poll_interval_s;
    live.protocol.tasks_per_message = c.sched.tasks_per_message;
    const auto trace = sched::run_live(ordered, live, [&](const sched::Task& task) {
        const auto zip = fs::path(c.archives) / (task.group_key + ".zip");
        const auto stats = tracks::process_archive_task(
            zip, dem, volumes, out_dir / "segments" / task.group_key, process_config);
        const std::lock_guard<std::mutex> lock(totals_mutex);
        totals.aircraft_seen += stats.aircraft_seen;
        totals.aircraft_failed += stats.aircraft_failed;
        totals.segments_kept += stats.segments_kept;
        totals.segments_dropped += stats.segments_dropped;
        totals.rows_in += stats.rows_in;
        totals.rows_missing_alt += stats.rows_missing_alt;
        totals.rows_out += stats.rows_out;
        for (const auto& failure : stats.failures)
            totals.failures.push_back(task.group_key + "/" + failure);
    });
    std::sort(totals.failures.begin(), totals.failures.end());

    json stats;
    stats["archives"] = ordered.size();
    stats["messages"] = sched::chunk_count(ordered.size(), c.sched.tasks_per_message);
    stats["job_time_s"] = trace.job_time_s;
    stats["aircraft_seen"] = totals.aircraft_seen;
    stats["aircraft_failed"] = totals.aircraft_failed;
    stats["segments_kept"] = totals.segments_kept;
    stats["segments_dropped"] = totals.segments_dropped;
    stats["rows_in"] = totals.rows_in;
    stats["rows_missing_alt"] = totals.rows_missing_alt;
    stats["rows_out"] = totals.rows_out;
    stats["failures"] = totals.failures;
    write_json_file(out_dir / "segment_stats.json", stats);

    sched::write_trace_csv(out_dir / "trace.csv", trace);
    sim::write_ecdf_csv(out_dir / "worker_ecdf.csv", sim::trace_metrics(trace));

    for (const auto& failure : totals.failures) warn("aircraft failed: " + failure);
    std::cout << "segmented " << ordered.size() << " archive(s): " << totals.segments_kept
              << " segment(s) from " << totals.aircraft_seen << " aircraft -> "
              << (out_dir / "segments").string() << "\n";
    return 0;
}

// ------------------------------------------------------------------ querygen

struct QuerygenCmd {
    std::string aerodromes, dem, airspace, out;
    double radius_nm = 8.0;
    int vertices = 64;
    double union_cell_deg = 0.01;
    double cover_grid_deg = 0.05;
    double max_span_deg = 2.0;
    double max_dist_nm = 15.0;
    std::string first_day = "2019-01-01";
    int days = 1;
    int groups = 8;
    query::MslParams msl;
};

void querygen_from_json(const json& j, QuerygenCmd& c) {
    c.aerodromes = j.value("aerodromes", c.aerodromes);
    c.dem = j.value("dem", c.dem);
    c.airspace = j.value("airspace", c.airspace);
    c.out = j.value("out", c.out);
    c.radius_nm = j.value("radius_nm", c.radius_nm);
    c.vertices = j.value("circle_vertices", c.vertices);
    c.union_cell_deg = j.value("union_cell_deg", c.union_cell_deg);
    c.cover_grid_deg = j.value("cover_grid_deg", c.cover_grid_deg);
    c.max_span_deg = j.value("max_span_deg", c.max_span_deg);
    c.max_dist_nm = j.value("max_dist_nm", c.max_dist_nm);
    c.first_day = j.value("first_day", c.first_day);
    c.days = j.value("days", c.days);
    c.groups = j.value("groups", c.groups);
    c.msl.agl_floor_ft = j.value("agl_floor_ft", c.msl.agl_floor_ft);
    c.msl.agl_ceiling_ft = j.value("agl_ceiling_ft", c.msl.agl_ceiling_ft);
    c.msl.hard_ceiling_ft = j.value("hard_ceiling_ft", c.msl.hard_ceiling_ft);
    c.msl.absolute_cap_ft = j.value("absolute_cap_ft", c.msl.absolute_cap_ft);
}

int cmd_querygen(QuerygenCmd& c) {
    require_file(c.aerodromes, "--aerodromes");
    require_file(c.dem, "--dem");
    require_file(c.airspace, "--airspace");
    const auto out_dir = require_out(c.out);

    std::vector<query::Aerodrome> aerodromes;
    tracks::DemGrid dem;
    std::vector<tracks::AirspaceVolume> volumes;
    try {
        aerodromes = query::read_aerodromes(c.aerodromes);
        dem = tracks::DemGrid::load(c.dem);
        volumes = tracks::load_airspace_geojson(c.airspace);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    if (aerodromes.empty()) throw UsageError("aerodrome file has no rows: " + c.aerodromes);

    const auto first_epoch = util::parse_iso8601(c.first_day);
    if (!first_epoch) throw UsageError("--first-day: expected YYYY-MM-DD");

    query::QuerygenConfig config;
    config.radius_m = c.radius_nm * geo::kMetersPerNm;
    config.circle_vertices = c.vertices;
    config.union_cell_deg = c.union_cell_deg;
    config.cover_grid_deg = c.cover_grid_deg;
    config.max_span_deg = c.max_span_deg;
    config.max_aerodrome_dist_m = c.max_dist_nm * geo::kMetersPerNm;
    config.msl = c.msl;
    config.first_day = static_cast<std::int64_t>(*first_epoch / 86400.0);
    config.n_days = c.days;
    config.group_count = c.groups;

    json resolved;
    resolved["command"] = "querygen";
    resolved["aerodromes"] = c.aerodromes;
    resolved["dem"] = c.dem;
    resolved["airspace"] = c.airspace;
    resolved["out"] = c.out;
    resolved["radius_nm"] = c.radius_nm;
    resolved["circle_vertices"] = c.vertices;
    resolved["union_cell_deg"] = c.union_cell_deg;
    resolved["cover_grid_deg"] = c.cover_grid_deg;
    resolved["max_span_deg"] = c.max_span_deg;
    resolved["max_dist_nm"] = c.max_dist_nm;
    resolved["first_day"] = c.first_day;
    resolved["days"] = c.days;
    resolved["groups"] = c.groups;
    resolved["agl_floor_ft"] = c.msl.agl_floor_ft;
    resolved["agl_ceiling_ft"] = c.msl.agl_ceiling_ft;
    resolved["hard_ceiling_ft"] = c.msl.hard_ceiling_ft;
    resolved["absolute_cap_ft"] = c.msl.absolute_cap_ft;
    write_snapshot(out_dir, resolved);

    const auto result = query::run_querygen(aerodromes, volumes, dem, config);

    query::write_query_csv(out_dir / "queries.csv", result.queries);
    query::write_box_csv(out_dir / "boxes.csv", result.boxes);
    query::write_box_outlines_csv(out_dir / "box_outlines.csv", result.boxes);

    json stats;
    stats["aerodromes"] = aerodromes.size();
    stats["circles"] = result.circles.size();
    stats["merged_polygons"] = result.merged.size();
    stats["candidate_rects"] = result.candidate_rects.size();
    stats["boxes"] = result.boxes.size();
    stats["queries"] = result.queries.size();
    write_json_file(out_dir / "querygen_stats.json", stats);

    std::cout << "querygen: " << aerodromes.size() << " aerodrome(s) -> "
              << result.boxes.size() << " box(es), " << result.queries.size()
              << " query(ies) -> " << (out_dir / "queries.csv").string() << "\n";
    return 0;
}

// --------------------------------------------------------------------- bench

struct BenchCmd {
    std::string workload = "gaussian";
    std::string manifest, out;
    std::string policies;      // comma list; default depends on the workload
    std::string compare;       // e.g. "block,cyclic,self"
    std::string chunk_series;  // e.g. "1,4,16,64,256"
    int seeds = 1;
    int n_tasks = 0;  // 0: workload default
    SchedOpts sched = cluster_sched_defaults();
    sim::CostModel model;
};

void bench_from_json(const json& j, BenchCmd& c) {
    c.workload = j.value("workload", c.workload);
    c.manifest = j.value("manifest", c.manifest);
    c.out = j.value("out", c.out);
    c.policies = j.value("policies", c.policies);
    c.compare = j.value("compare", c.compare);
    c.chunk_series = j.value("chunk_series", c.chunk_series);
    c.seeds = j.value("seeds", c.seeds);
    c.n_tasks = j.value("n_tasks", c.n_tasks);
    sched_from_json(j, c.sched);
    cost_from_json(j, c.model);
}

int cmd_bench(BenchCmd& c) {
    const auto out_dir = require_out(c.out);
    if (c.seeds < 1) throw UsageError("--seeds must be >= 1");
    try {
        c.model.validate();
    } catch (const sim::InvalidParams& e) {
        throw UsageError(std::string("cost model: ") + e.what());
    }
    const auto base_workload = build_workload(c.workload, c.manifest, c.n_tasks, c.sched.seed);

    if (c.policies.empty())
        c.policies = all_have_time_keys(base_workload)
                         ? "chronological,largest_first,random"
                         : "largest_first,random";
    std::vector<sched::OrderingPolicy> policies;
    for (const auto& name : split_list(c.policies)) {
        const auto kind = sched::ordering_kind_from_name(name);
        if (!kind) throw UsageError("unknown ordering '" + name + "'");
        policies.push_back({*kind, c.sched.seed});
    }
    if (policies.empty()) throw UsageError("--policies is empty");

    std::vector<Distribution> compare_modes;
    for (const auto& name : split_list(c.compare))
        compare_modes.push_back(resolve_distribution(name));

    std::vector<int> chunk_sizes;
    for (const auto& text : split_list(c.chunk_series)) {
        const auto value = util::parse_int(text);
        if (!value || *value < 1) throw UsageError("bad --chunk-series entry '" + text + "'");
        chunk_sizes.push_back(static_cast<int>(*value));
    }

    const int n_workers = resolve_workers(c.sched);
    const auto policy = resolve_ordering(c.sched, "largest_first");
    sched::ProtocolConfig pcfg;
    pcfg.poll_interval_s = c.sched.poll_interval_s;
    pcfg.tasks_per_message = c.sched.tasks_per_message;

    json resolved;
    resolved["command"] = "bench";
    resolved["workload"] = c.workload;
    if (!c.manifest.empty()) resolved["manifest"] = c.manifest;
    resolved["out"] = c.out;
    resolved["policies"] = c.policies;
    resolved["compare"] = c.compare;
    resolved["chunk_series"] = c.chunk_series;
    resolved["seeds"] = c.seeds;
    resolved["n_tasks"] = c.n_tasks;
    sched_to_json(resolved, c.sched);
    cost_to_json(resolved, c.model);
    write_snapshot(out_dir, resolved);

    // Job-time sweep over the feasible (workers, NPPN) grid, per seed.
    const auto cells = sim::default_sweep_cells();
    std::string seed_rows = "seed,policy,n_workers,nppn,tasks_per_message,job_time_s\n";
    std::vector<sim::SweepRow> first_rows;
    for (int k = 0; k < c.seeds; ++k) {
        const std::uint64_t seed_k = c.sched.seed + static_cast<std::uint64_t>(k);
        const auto workload =
            c.workload == "manifest" ? base_workload
                                     : build_workload(c.workload, c.manifest, c.n_tasks, seed_k);
        const auto rows = sim::benchmark_sweep(workload, cells, policies, pcfg, c.model, seed_k);
        if (k == 0) first_rows = rows;
        for (const auto& row : rows) {
            seed_rows += std::to_string(seed_k) + "," + row.policy + "," +
                         std::to_string(row.n_workers) + "," + std::to_string(row.nppn) +
                         "," + std::to_string(row.tasks_per_message) + "," +
                         util::format_double(row.job_time_s) + "\n";
        }
    }
    sim::write_sweep_csv(out_dir / "sweep.csv", first_rows);
    if (c.seeds > 1) util::write_text_file(out_dir / "sweep_seeds.csv", seed_rows);
    const auto tables = sim::render_markdown_tables(first_rows);
    util::write_text_file(out_dir / "tables.md", tables);
    std::cout << tables;

    // Distribution comparison at the flag-selected cell (ECDF per mode).
    if (!compare_modes.empty()) {
        const auto mode_names = split_list(c.compare);
        std::string rows = "mode,n_workers,nppn,job_time_s,median_worker_busy_s,"
                           "span_s,top_10_percent_share\n";
        for (std::size_t i = 0; i < compare_modes.size(); ++i) {
            const auto& name = mode_names[i];
            const auto trace = simulate_mode(base_workload, n_workers, compare_modes[i],
                                             policy, pcfg, c.model, c.sched.nppn);
            const auto metrics = sim::trace_metrics(trace);
            sim::write_ecdf_csv(out_dir / ("ecdf_" + name + ".csv"), metrics);
            rows += name + "," + std::to_string(n_workers) + "," +
                    std::to_string(c.sched.nppn) + "," + util::format_double(metrics.job_time_s) +
                    "," + util::format_double(metrics.median_worker_busy_s) + "," +
                    util::format_double(metrics.span_s) + "," +
                    util::format_double(metrics.top_share(10.0)) + "\n";
            std::cout << "compare " << name << ": job_time_s=" << metrics.job_time_s << "\n";
        }
        util::write_text_file(out_dir / "compare.csv", rows);
    }

    // Job time as a function of the message chunk size.
    if (!chunk_sizes.empty()) {
        std::string rows = "tasks_per_message,job_time_s\n";
        for (int chunk : chunk_sizes) {
            sched::ProtocolConfig chunk_cfg = pcfg;
            chunk_cfg.tasks_per_message = chunk;
            const auto trace = sim::simulate_self_sched(base_workload, n_workers, policy,
                                                        chunk_cfg, c.model, c.sched.nppn);
            rows += std::to_string(chunk) + "," + util::format_double(trace.job_time_s) + "\n";
        }
        util::write_text_file(out_dir / "chunk_series.csv", rows);
    }

    return 0;
}

// ------------------------------------------------------------------ simulate

struct SimulateCmd {
    std::string workload = "gaussian";
    std::string manifest, out;
    int n_tasks = 0;
    SchedOpts sched = cluster_sched_defaults();
    sim::CostModel model;
};

void simulate_from_json(const json& j, SimulateCmd& c) {
    c.workload = j.value("workload", c.workload);
    c.manifest = j.value("manifest", c.manifest);
    c.out = j.value("out", c.out);
    c.n_tasks = j.value("n_tasks", c.n_tasks);
    sched_from_json(j, c.sched);
    cost_from_json(j, c.model);
}

int cmd_simulate(SimulateCmd& c) {
    const auto out_dir = require_out(c.out);
    try {
        c.model.validate();
    } catch (const sim::InvalidParams& e) {
        throw UsageError(std::string("cost model: ") + e.what());
    }
    const auto workload = build_workload(c.workload, c.manifest, c.n_tasks, c.sched.seed);
    const int n_workers = resolve_workers(c.sched);
    const auto dist = resolve_distribution(c.sched.distribution);
    const auto policy = resolve_ordering(c.sched, "largest_first");
    sched::ProtocolConfig pcfg;
    pcfg.poll_interval_s = c.sched.poll_interval_s;
    pcfg.tasks_per_message = c.sched.tasks_per_message;

    json resolved;
    resolved["command"] = "simulate";
    resolved["workload"] = c.workload;
    if (!c.manifest.empty()) resolved["manifest"] = c.manifest;
    resolved["out"] = c.out;
    resolved["n_tasks"] = c.n_tasks;
    sched_to_json(resolved, c.sched);
    cost_to_json(resolved, c.model);
    write_snapshot(out_dir, resolved);

    sched::ScheduleTrace trace;
    try {
        trace = simulate_mode(workload, n_workers, dist, policy, pcfg, c.model, c.sched.nppn);
    } catch (const sched::MissingTimeKey& e) {
        throw UsageError(std::string("ordering: ") + e.what());
    }
    sched::write_trace_csv(out_dir / "trace.csv", trace);
    const auto metrics = sim::trace_metrics(trace);
    write_json_file(out_dir / "metrics.json",
                    metrics_json(metrics, c.sched.distribution, n_workers));
    sim::write_ecdf_csv(out_dir / "worker_ecdf.csv", metrics);

    std::cout << "simulated " << workload.tasks.size() << " task(s) on " << n_workers
              << " worker(s): job_time_s=" << util::format_double(trace.job_time_s) << "\n";
    return 0;
}

// ---------------------------------------------------------------------- main

std::optional<std::string> config_path_from_argv(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    OrganizeCmd organize_cmd;
    ArchiveCmd archive_cmd;
    SegmentCmd segment_cmd;
    QuerygenCmd querygen_cmd;
    BenchCmd bench_cmd;
    SimulateCmd simulate_cmd;

    // Config file first, flags override: values are folded into the command
    // structs before CLI11 parses, and CLI11 only writes options it saw.
    if (const auto config_path = config_path_from_argv(argc, argv)) {
        try {
            std::ifstream in(*config_path);
            if (!in) throw UsageError("cannot open config file: " + *config_path);
            const auto parsed = json::parse(in, nullptr, true, true);
            organize_from_json(parsed, organize_cmd);
            archive_from_json(parsed, archive_cmd);
            segment_from_json(parsed, segment_cmd);
            querygen_from_json(parsed, querygen_cmd);
            bench_from_json(parsed, bench_cmd);
            simulate_from_json(parsed, simulate_cmd);
        } catch (const json::exception& e) {
            std::cerr << "error: config: " << e.what() << "\n";
            return 2;
        } catch (const UsageError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }

    CLI::App app{"aircraft track pipeline, query generation, and scheduling benchmarks"};
    app.require_subcommand(1);
    std::string config_dummy;

    auto* organize = app.add_subcommand(
        "organize", "Group raw observation files into the aircraft hierarchy");
    organize->add_option("--config", config_dummy, "JSON config file; flags override");
    organize->add_option("--input", organize_cmd.input, "Directory of raw observation CSVs");
    organize->add_option("--registry", organize_cmd.registry, "Aircraft registry CSV");
    organize->add_option("--year", organize_cmd.year, "Dataset year label (tier 1)");
    organize->add_option("--ceiling", organize_cmd.ceiling_ft,
                         "Drop rows above this MSL altitude (feet)");
    organize->add_option("--out", organize_cmd.out, "Output directory");
    add_sched_flags(organize, organize_cmd.sched);

    auto* archive = app.add_subcommand(
        "archive", "Zip each leaf directory of an organized tree");
    archive->add_option("--config", config_dummy, "JSON config file; flags override");
    archive->add_option("--input", archive_cmd.input, "Organized tree root");
    archive->add_option("--out", archive_cmd.out, "Output directory");
    add_sched_flags(archive, archive_cmd.sched);

    auto* segment = app.add_subcommand(
        "segment", "Process leaf archives into interpolated track segments");
    segment->add_option("--config", config_dummy, "JSON config file; flags override");
    segment->add_option("--archives", segment_cmd.archives, "Zip tree root");
    segment->add_option("--dem", segment_cmd.dem, "Terrain grid file");
    segment->add_option("--airspace", segment_cmd.airspace, "Airspace GeoJSON");
    segment->add_option("--out", segment_cmd.out, "Output directory");
    segment->add_option("--max-gap", segment_cmd.max_gap_s,
                        "Split tracks at time gaps above this (seconds)");
    segment->add_option("--min-obs", segment_cmd.min_observations,
                        "Drop segments with fewer observations");
    segment->add_option("--rate", segment_cmd.rate_hz, "Interpolation rate (Hz)");
    add_sched_flags(segment, segment_cmd.sched);

    auto* querygen = app.add_subcommand(
        "querygen", "Generate aerodrome bounding-box queries");
    querygen->add_option("--config", config_dummy, "JSON config file; flags override");
    querygen->add_option("--aerodromes", querygen_cmd.aerodromes, "Aerodrome CSV (id,lat,lon)");
    querygen->add_option("--dem", querygen_cmd.dem, "Terrain grid file");
    querygen->add_option("--airspace", querygen_cmd.airspace, "Airspace GeoJSON");
    querygen->add_option("--out", querygen_cmd.out, "Output directory");
    querygen->add_option("--radius-nm", querygen_cmd.radius_nm, "Circle radius (NM)");
    querygen->add_option("--vertices", querygen_cmd.vertices, "Circle vertex count");
    querygen->add_option("--max-span", querygen_cmd.max_span_deg,
                         "Maximum box span per axis (degrees)");
    querygen->add_option("--max-dist-nm", querygen_cmd.max_dist_nm,
                         "Maximum box distance from an aerodrome (NM)");
    querygen->add_option("--first-day", querygen_cmd.first_day, "First query day (YYYY-MM-DD)");
    querygen->add_option("--days", querygen_cmd.days, "Number of consecutive days");
    querygen->add_option("--groups", querygen_cmd.groups, "Balanced query group count");
    auto* bench = app.add_subcommand(
        "bench", "Job-time sweeps over the feasible (workers, NPPN) grid");
    bench->add_option("--config", config_dummy, "JSON config file; flags override");
    bench->add_option("--workload", bench_cmd.workload,
                      "gaussian | heavy_tail | clustered | manifest");
    bench->add_option("--manifest", bench_cmd.manifest, "Task manifest CSV (workload=manifest)");
    bench->add_option("--out", bench_cmd.out, "Output directory");
    bench->add_option("--policies", bench_cmd.policies, "Comma list of orderings to sweep");
    bench->add_option("--compare", bench_cmd.compare,
                      "Comma list of distributions to compare (block,cyclic,self)");
    bench->add_option("--chunk-series", bench_cmd.chunk_series,
                      "Comma list of tasks-per-message values to series");
    bench->add_option("--seeds", bench_cmd.seeds, "Repetitions with consecutive seeds");
    bench->add_option("--n-tasks", bench_cmd.n_tasks, "Synthetic task count (0: default)");
    add_sched_flags(bench, bench_cmd.sched);

    auto* simulate = app.add_subcommand(
        "simulate", "One schedule simulation: trace, metrics, worker ECDF");
    simulate->add_option("--config", config_dummy, "JSON config file; flags override");
    simulate->add_option("--workload", simulate_cmd.workload,
                         "gaussian | heavy_tail | clustered | manifest");
    simulate->add_option("--manifest", simulate_cmd.manifest,
                         "Task manifest CSV (workload=manifest)");
    simulate->add_option("--out", simulate_cmd.out, "Output directory");
    simulate->add_option("--n-tasks", simulate_cmd.n_tasks, "Synthetic task count (0: default)");
    add_sched_flags(simulate, simulate_cmd.sched);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (organize->parsed()) return cmd_organize(organize_cmd);
        if (archive->parsed()) return cmd_archive(archive_cmd);
        if (segment->parsed()) return cmd_segment(segment_cmd);
        if (querygen->parsed()) return cmd_querygen(querygen_cmd);
        if (bench->parsed()) return cmd_bench(bench_cmd);
        if (simulate->parsed()) return cmd_simulate(simulate_cmd);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;  // no subcommand (require_subcommand should have caught this)
}
