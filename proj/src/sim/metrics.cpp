#include "trackforge/sim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "trackforge/util/csv.hpp"

namespace trackforge::sim {

double TraceMetrics::top_share(double percent) const {
    const std::size_t n = sorted_busy_s.size();
    if (n == 0) return 0.0;
    const double total =
        std::accumulate(sorted_busy_s.begin(), sorted_busy_s.end(), 0.0);
    if (total <= 0.0) return percent > 0.0 ? 1.0 : 0.0;
    auto k = static_cast<std::size_t>(
        std::floor(percent * static_cast<double>(n) / 100.0 + 1e-9));
    k = std::min(k, n);
    double top = 0.0;
    for (std::size_t i = 0; i < k; ++i) top += sorted_busy_s[n - 1 - i];
    return top / total;
}

TraceMetrics metrics_from_busy_times(std::vector<double> busy, double job_time_s) {
    if (busy.empty()) throw std::invalid_argument("metrics need at least one worker");
    std::sort(busy.begin(), busy.end());
    TraceMetrics m;
    m.job_time_s = job_time_s;
    const std::size_t n = busy.size();
    m.median_worker_busy_s =
        n % 2 == 1 ? busy[n / 2] : 0.5 * (busy[n / 2 - 1] + busy[n / 2]);
    m.span_s = busy.back() - busy.front();
    m.ecdf.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        m.ecdf.push_back({busy[i], static_cast<double>(i + 1) / static_cast<double>(n)});
    m.sorted_busy_s = std::move(busy);
    return m;
}

TraceMetrics trace_metrics(const sched::ScheduleTrace& trace) {
    return metrics_from_busy_times(sched::worker_busy_times(trace), trace.job_time_s);
}

void write_ecdf_csv(const std::filesystem::path& path, const TraceMetrics& metrics) {
    std::string out = "busy_time_s,cum_fraction\n";
    for (const auto& point : metrics.ecdf) {
        out += util::format_double(point.busy_time_s);
        out += ',';
        out += util::format_double(point.cum_fraction);
        out += '\n';
    }
    util::write_text_file(path, out);
}

}  // namespace trackforge::sim
