#include "trackforge/sched/protocol.hpp"

namespace trackforge::sched {

ManagerState make_manager_state(std::vector<TaskMessage> messages, int worker_count) {
    if (worker_count < 1) throw ZeroWorkers("manager needs at least one worker");
    ManagerState st;
    st.messages = std::move(messages);
    st.workers.assign(static_cast<std::size_t>(worker_count), WorkerPhase::idle);
    st.in_flight.assign(static_cast<std::size_t>(worker_count), -1);
    return st;
}

std::vector<ManagerAction> manager_step(ManagerState& st, double /*now*/,
                                        std::span<const CompletionEvent> events) {
    std::vector<ManagerAction> actions;
    if (st.finished) return actions;

    for (const CompletionEvent& ev : events) {
        if (ev.worker_id < 0 || ev.worker_id >= st.worker_count()) {
            throw UnknownWorker("completion from unknown worker " +
                                std::to_string(ev.worker_id));
        }
        const auto w = static_cast<std::size_t>(ev.worker_id);
        if (st.workers[w] != WorkerPhase::busy || st.in_flight[w] != ev.message_id) {
            throw DuplicateCompletion("worker " + std::to_string(ev.worker_id) +
                                      " reported message " + std::to_string(ev.message_id) +
                                      " which it does not hold");
        }
        st.workers[w] = WorkerPhase::idle;
        st.in_flight[w] = -1;
        st.completed += 1;
    }

    st.started = true;
    for (int w = 0; w < st.worker_count() && st.next_message < st.messages.size(); ++w) {
        const auto wi = static_cast<std::size_t>(w);
        if (st.workers[wi] != WorkerPhase::idle) continue;
        const std::int64_t msg_id = st.messages[st.next_message].message_id;
        st.workers[wi] = WorkerPhase::busy;
        st.in_flight[wi] = msg_id;
        st.next_message += 1;
        actions.push_back(ManagerAction{ActionKind::send_message, w, msg_id});
    }

    if (st.completed == st.messages.size()) {
        st.finished = true;
        for (int w = 0; w < st.worker_count(); ++w) {
            st.workers[static_cast<std::size_t>(w)] = WorkerPhase::released;
            actions.push_back(ManagerAction{ActionKind::shutdown, w, -1});
        }
    }
    return actions;
}

}  // namespace trackforge::sched
