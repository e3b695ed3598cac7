#include "trackforge/sched/types.hpp"

namespace trackforge::sched {

ValidatedConfig validate_config(const TriplesConfig& cfg) {
    if (cfg.nodes <= 0 || cfg.nppn <= 0 || cfg.threads_per_process <= 0 ||
        cfg.slots_per_process <= 0 || cfg.slots_per_node <= 0 || cfg.core_allocation <= 0) {
        throw SchedError("triples config fields must be positive");
    }
    const long long slots = static_cast<long long>(cfg.nodes) * cfg.slots_per_node;
    if (slots > cfg.core_allocation) {
        throw AllocationExceeded("requested " + std::to_string(slots) +
                                 " slots exceeds core allocation of " +
                                 std::to_string(cfg.core_allocation));
    }

    ValidatedConfig out;
    out.cfg = cfg;
    out.total_processes = cfg.nodes * cfg.nppn;
    if (out.total_processes < 2) {
        throw ZeroWorkers("need at least 2 processes (one manager, one worker), got " +
                          std::to_string(out.total_processes));
    }
    out.worker_count = out.total_processes - 1;

    if (cfg.nppn > 32) {
        out.warnings.push_back("NPPN " + std::to_string(cfg.nppn) +
                               " exceeds the recommended maximum of 32");
    }
    if (cfg.nppn % 8 != 0) {
        out.warnings.push_back("NPPN " + std::to_string(cfg.nppn) +
                               " is not a multiple of 8");
    }
    return out;
}

const char* ordering_kind_name(OrderingKind kind) {
    switch (kind) {
        case OrderingKind::chronological: return "chronological";
        case OrderingKind::largest_first: return "largest_first";
        case OrderingKind::random: return "random";
    }
    return "unknown";
}

std::optional<OrderingKind> ordering_kind_from_name(const std::string& name) {
    if (name == "chronological") return OrderingKind::chronological;
    if (name == "largest_first") return OrderingKind::largest_first;
    if (name == "random") return OrderingKind::random;
    return std::nullopt;
}

}  // namespace trackforge::sched
