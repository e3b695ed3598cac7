#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trackforge/sched/types.hpp"
#include "trackforge/sim/cost_model.hpp"

namespace trackforge::sim {

enum class WorkloadKind {
    synthetic_gaussian,
    synthetic_heavy_tail,
    synthetic_clustered,
    manifest,
};

std::string workload_kind_name(WorkloadKind kind);

struct Workload {
    std::vector<sched::Task> tasks;
    WorkloadKind provenance = WorkloadKind::manifest;
};

// Dataset-#1 analogue: a few thousand large files with sizes clustered
// around a few hundred MB. Sizes are drawn from a normal distribution and
// redrawn until positive. Tasks carry hourly time keys so chronological
// ordering is meaningful.
struct GaussianParams {
    int n = 2425;
    double mean_mb = 295.0;
    double sigma_mb = 120.0;
    std::int64_t start_epoch_s = 1546300800;  // 2019-01-01T00:00:00Z
};

// Dataset-#2 analogue: many small files with a heavy right tail (Pareto).
// No time keys; chronological ordering is undefined for these tasks.
struct HeavyTailParams {
    int n = 5000;
    double scale_mb = 2.0;
    double alpha = 2.5;
};

Workload synth_gaussian(const GaussianParams& params, std::uint64_t seed);
Workload synth_heavy_tail(const HeavyTailParams& params, std::uint64_t seed);
// Heavy-tail sizes sorted descending: the large tasks sit in one contiguous
// run, which is the worst case for block distribution.
Workload synth_clustered(const HeavyTailParams& params, std::uint64_t seed);

Workload workload_from_tasks(std::vector<sched::Task> tasks);

double total_cost_s(const Workload& workload, const CostModel& model, int nppn);

}  // namespace trackforge::sim
