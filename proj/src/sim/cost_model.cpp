#include "trackforge/sim/cost_model.hpp"

namespace trackforge::sim {

void CostModel::validate() const {
    if (fixed_overhead_s < 0.0) throw InvalidParams("fixed_overhead_s must be non-negative");
    if (seconds_per_mb <= 0.0) throw InvalidParams("seconds_per_mb must be positive");
    if (node_contention_factor < 0.0) throw InvalidParams("node_contention_factor must be non-negative");
}

double CostModel::multiplier(int nppn) const {
    return 1.0 + node_contention_factor * (static_cast<double>(nppn) - 8.0) / 8.0;
}

double CostModel::cost_s(std::uint64_t size_bytes, int nppn) const {
    const double size_mb = static_cast<double>(size_bytes) / 1e6;
    return (fixed_overhead_s + seconds_per_mb * size_mb) * multiplier(nppn);
}

}  // namespace trackforge::sim
