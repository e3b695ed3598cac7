#pragma once

#include <cstdint>
#include <stdexcept>

namespace trackforge::sim {

struct InvalidParams : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Affine task-cost model with an NPPN contention multiplier:
//   cost = (fixed_overhead_s + seconds_per_mb * size_mb) * (1 + kappa*(nppn-8)/8)
// 1 MB = 1e6 bytes. With the default kappa = 0.25 lower NPPN is cheaper,
// which keeps NPPN a live parameter in sweeps.
struct CostModel {
    double fixed_overhead_s = 0.05;
    double seconds_per_mb = 0.03;
    double node_contention_factor = 0.25;

    // Throws InvalidParams if any field is out of range.
    void validate() const;
    double multiplier(int nppn) const;
    double cost_s(std::uint64_t size_bytes, int nppn) const;
};

}  // namespace trackforge::sim
