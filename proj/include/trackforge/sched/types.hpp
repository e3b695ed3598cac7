#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trackforge::sched {

using TaskId = std::int64_t;

// Unit of schedulable work. size_bytes drives cost-based ordering and the
// simulator's cost model; time_key (epoch seconds) drives chronological
// ordering; group_key records provenance (leaf directory, aircraft id, ...).
struct Task {
    TaskId id = 0;
    std::uint64_t size_bytes = 0;
    std::optional<double> time_key;
    std::string group_key;
};

// Triples-mode job shape: nodes x processes-per-node x threads-per-process.
// One process acts as the manager, the rest are workers.
struct TriplesConfig {
    int nodes = 1;
    int nppn = 1;
    int threads_per_process = 1;
    int slots_per_process = 1;
    int slots_per_node = 64;
    int core_allocation = 4096;
};

struct ValidatedConfig {
    TriplesConfig cfg;
    int total_processes = 0;
    int worker_count = 0;
    std::vector<std::string> warnings;
};

enum class OrderingKind { chronological, largest_first, random };

struct OrderingPolicy {
    OrderingKind kind = OrderingKind::chronological;
    std::uint64_t seed = 0;  // random only
};

struct ProtocolConfig {
    double poll_interval_s = 0.3;
    int tasks_per_message = 1;
};

struct TaskMessage {
    std::int64_t message_id = 0;
    std::vector<TaskId> task_ids;
};

struct SchedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AllocationExceeded : SchedError {
    using SchedError::SchedError;
};
struct ZeroWorkers : SchedError {
    using SchedError::SchedError;
};
struct MissingTimeKey : SchedError {
    using SchedError::SchedError;
};
struct UnknownWorker : SchedError {
    using SchedError::SchedError;
};
struct DuplicateCompletion : SchedError {
    using SchedError::SchedError;
};
struct WorkerPanic : SchedError {
    TaskId task_id;
    WorkerPanic(TaskId id, const std::string& what)
        : SchedError("task " + std::to_string(id) + ": " + what), task_id(id) {}
};
struct Timeout : SchedError {
    using SchedError::SchedError;
};

// Derives total_processes / worker_count and checks the allocation limits.
// NPPN guidance violations (nppn > 32 or not a multiple of 8) are warnings,
// not errors. Throws AllocationExceeded or ZeroWorkers.
ValidatedConfig validate_config(const TriplesConfig& cfg);

const char* ordering_kind_name(OrderingKind kind);
std::optional<OrderingKind> ordering_kind_from_name(const std::string& name);

}  // namespace trackforge::sched
