#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "trackforge/sched/types.hpp"

namespace trackforge::sched {

enum class TraceMode { static_block, static_cyclic, self_sched };

struct TraceInterval {
    TaskId task_id = 0;
    std::int64_t message_id = -1;
    double start_s = 0;
    double end_s = 0;
};

struct WorkerTimeline {
    int worker_id = 0;
    std::vector<TraceInterval> intervals;
    double busy_s() const;
};

// Per-worker execution timelines plus the job time as seen by the manager
// (for self-scheduling this includes the final polling remainder).
struct ScheduleTrace {
    TraceMode mode = TraceMode::self_sched;
    std::vector<WorkerTimeline> per_worker;
    double job_time_s = 0;
};

const char* trace_mode_name(TraceMode mode);

std::vector<double> worker_busy_times(const ScheduleTrace& trace);

// CSV: header `worker_id,message_id,task_id,start_s,end_s`, one row per
// interval, then a final summary line `job_time_s=<float>`.
void write_trace_csv(const std::filesystem::path& path, const ScheduleTrace& trace);
ScheduleTrace read_trace_csv(const std::filesystem::path& path);

}  // namespace trackforge::sched
