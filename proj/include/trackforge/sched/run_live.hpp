#pragma once

#include <functional>
#include <span>

#include "trackforge/sched/trace.hpp"
#include "trackforge/sched/types.hpp"

namespace trackforge::sched {

struct LiveOptions {
    int worker_count = 1;
    ProtocolConfig protocol;
    double timeout_s = 0;  // 0 disables the wall-clock budget
};

using TaskExecutor = std::function<void(const Task&)>;

// Runs the self-scheduling protocol with real threads in one process: a
// manager on the calling thread and `worker_count` polling workers. Workers
// execute every task of a message sequentially and report once per message.
// Tasks arrive already ordered; chunking into messages happens here using
// protocol.tasks_per_message.
//
// The returned trace holds per-worker busy intervals relative to run start
// and the wall-clock job time as observed by the manager. Throws WorkerPanic
// (with the offending task id) if the executor throws, Timeout if the budget
// is exceeded.
ScheduleTrace run_live(std::span<const Task> ordered_tasks, const LiveOptions& options,
                       const TaskExecutor& executor);

}  // namespace trackforge::sched
