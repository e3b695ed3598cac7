#include "trackforge/sim/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace trackforge::sim {

std::string workload_kind_name(WorkloadKind kind) {
    switch (kind) {
        case WorkloadKind::synthetic_gaussian: return "synthetic_gaussian";
        case WorkloadKind::synthetic_heavy_tail: return "synthetic_heavy_tail";
        case WorkloadKind::synthetic_clustered: return "synthetic_clustered";
        case WorkloadKind::manifest: return "manifest";
    }
    return "unknown";
}

Workload synth_gaussian(const GaussianParams& params, std::uint64_t seed) {
    if (params.n < 1) throw InvalidParams("gaussian workload needs n >= 1");
    if (params.sigma_mb <= 0.0 || params.mean_mb <= 0.0)
        throw InvalidParams("gaussian workload needs positive mean and sigma");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(params.mean_mb, params.sigma_mb);
    Workload out;
    out.provenance = WorkloadKind::synthetic_gaussian;
    out.tasks.reserve(static_cast<std::size_t>(params.n));
    for (int i = 0; i < params.n; ++i) {
        double mb = dist(rng);
        while (mb <= 0.0) mb = dist(rng);
        sched::Task task;
        task.id = i;
        task.size_bytes = static_cast<std::uint64_t>(std::llround(mb * 1e6));
        task.time_key = params.start_epoch_s + static_cast<std::int64_t>(i) * 3600;
        out.tasks.push_back(std::move(task));
    }
    return out;
}

Workload synth_heavy_tail(const HeavyTailParams& params, std::uint64_t seed) {
    if (params.n < 1) throw InvalidParams("heavy-tail workload needs n >= 1");
    if (params.scale_mb <= 0.0) throw InvalidParams("heavy-tail workload needs positive scale");
    if (params.alpha <= 1.0) throw InvalidParams("heavy-tail workload needs alpha > 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Workload out;
    out.provenance = WorkloadKind::synthetic_heavy_tail;
    out.tasks.reserve(static_cast<std::size_t>(params.n));
    for (int i = 0; i < params.n; ++i) {
        // Pareto via inverse CDF; u ∈ (0,1] keeps the size finite.
        double u = 1.0 - unit(rng);
        if (u <= 0.0) u = 1e-12;
        const double mb = params.scale_mb / std::pow(u, 1.0 / params.alpha);
        sched::Task task;
        task.id = i;
        task.size_bytes = static_cast<std::uint64_t>(std::llround(mb * 1e6));
        out.tasks.push_back(std::move(task));
    }
    return out;
}

Workload synth_clustered(const HeavyTailParams& params, std::uint64_t seed) {
    Workload out = synth_heavy_tail(params, seed);
    out.provenance = WorkloadKind::synthetic_clustered;
    std::stable_sort(out.tasks.begin(), out.tasks.end(),
                     [](const sched::Task& a, const sched::Task& b) {
                         return a.size_bytes > b.size_bytes;
                     });
    // Ids follow position so that chronological/id ordering preserves the
    // clustered layout instead of undoing the sort.
    for (std::size_t i = 0; i < out.tasks.size(); ++i)
        out.tasks[i].id = static_cast<sched::TaskId>(i);
    return out;
}

Workload workload_from_tasks(std::vector<sched::Task> tasks) {
    Workload out;
    out.tasks = std::move(tasks);
    out.provenance = WorkloadKind::manifest;
    return out;
}

double total_cost_s(const Workload& workload, const CostModel& model, int nppn) {
    double total = 0.0;
    for (const auto& task : workload.tasks) total += model.cost_s(task.size_bytes, nppn);
    return total;
}

}  // namespace trackforge::sim
