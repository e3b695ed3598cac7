#pragma once

#include <span>
#include <vector>

#include "trackforge/sched/types.hpp"

namespace trackforge::sched {

// Manager/worker self-scheduling protocol, expressed as a deterministic state
// machine so the discrete-event simulator and the live executor share the
// same allocation logic.
//
// Lifecycle: the first step (no events) performs the initial fan-out, sending
// one message to every worker in ascending id order without pausing. Each
// later step marks reporting workers idle and then hands the next pending
// message to each idle worker, again in ascending id order. When every
// message has been completed, the step emits shutdown actions for all workers
// and the state becomes finished. If a step produces no actions, the caller
// is expected to wait one poll interval before stepping again.

struct CompletionEvent {
    int worker_id = 0;
    std::int64_t message_id = 0;
};

enum class ActionKind { send_message, shutdown };

struct ManagerAction {
    ActionKind kind = ActionKind::send_message;
    int worker_id = 0;
    std::int64_t message_id = -1;  // -1 for shutdown
};

enum class WorkerPhase { idle, busy, released };

struct ManagerState {
    std::vector<TaskMessage> messages;
    std::size_t next_message = 0;
    std::size_t completed = 0;
    std::vector<WorkerPhase> workers;
    std::vector<std::int64_t> in_flight;  // message id per worker, -1 if none
    bool started = false;
    bool finished = false;

    int worker_count() const { return static_cast<int>(workers.size()); }
};

ManagerState make_manager_state(std::vector<TaskMessage> messages, int worker_count);

// Pure transition: identical (state, events) always yield identical actions.
// `now` is accepted for symmetry with the timed callers but does not affect
// the decision. Throws UnknownWorker / DuplicateCompletion on protocol
// violations; the run must be aborted in that case.
std::vector<ManagerAction> manager_step(ManagerState& state, double now,
                                        std::span<const CompletionEvent> events);

}  // namespace trackforge::sched
