#pragma once

#include <filesystem>
#include <vector>

#include "trackforge/sched/trace.hpp"

namespace trackforge::sim {

struct EcdfPoint {
    double busy_time_s = 0.0;
    double cum_fraction = 0.0;
};

// Load-balance diagnostics over per-worker busy times.
struct TraceMetrics {
    double job_time_s = 0.0;
    double median_worker_busy_s = 0.0;
    double span_s = 0.0;  // max - min busy time
    std::vector<double> sorted_busy_s;
    std::vector<EcdfPoint> ecdf;

    // Fraction of the total busy time held by the busiest p% of workers
    // (k = floor(p*n/100) workers). top_share(0) = 0, top_share(100) = 1.
    double top_share(double percent) const;
};

TraceMetrics trace_metrics(const sched::ScheduleTrace& trace);
TraceMetrics metrics_from_busy_times(std::vector<double> busy, double job_time_s);

// CSV: `busy_time_s,cum_fraction`, one row per worker, sorted ascending.
void write_ecdf_csv(const std::filesystem::path& path, const TraceMetrics& metrics);

}  // namespace trackforge::sim
