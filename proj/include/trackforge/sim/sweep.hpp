#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "trackforge/sched/types.hpp"
#include "trackforge/sim/cost_model.hpp"
#include "trackforge/sim/simulate.hpp"
#include "trackforge/sim/synth.hpp"

namespace trackforge::sim {

struct SweepCell {
    int n_workers = 1;
    int nppn = 8;
};

struct SweepRow {
    std::string policy;
    int n_workers = 1;
    int nppn = 8;
    int tasks_per_message = 1;
    double job_time_s = 0.0;
};

// The (worker count, NPPN) grid reachable on a 64-node allocation with
// 64 slots per node: each column halves the node count until NPPN fills a
// node; one process is the manager.
std::vector<SweepCell> default_sweep_cells();

// Runs simulate_self_sched for every (cell, policy) pair. The random policy
// is reseeded per cell by hashing (base_seed, cell index) so sweeps are
// reproducible yet decorrelated.
std::vector<SweepRow> benchmark_sweep(const Workload& workload,
                                      const std::vector<SweepCell>& cells,
                                      const std::vector<sched::OrderingPolicy>& policies,
                                      const sched::ProtocolConfig& pcfg,
                                      const CostModel& model,
                                      std::uint64_t base_seed = 0);

// CSV: `policy,n_workers,nppn,tasks_per_message,job_time_s`.
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& path);

// One Markdown table per policy: rows are worker counts, columns NPPN values,
// cells are job times in seconds ('-' where the sweep has no sample).
std::string render_markdown_tables(const std::vector<SweepRow>& rows);

}  // namespace trackforge::sim
