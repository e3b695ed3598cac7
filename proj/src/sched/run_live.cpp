#include "trackforge/sched/run_live.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_map>

#include "trackforge/sched/partition.hpp"
#include "trackforge/sched/protocol.hpp"

namespace trackforge::sched {

namespace {

using Clock = std::chrono::steady_clock;

struct Command {
    bool shutdown = false;
    TaskMessage message;
};

struct Mailbox {
    std::mutex mutex;
    std::optional<Command> command;
};

struct CompletionQueue {
    std::mutex mutex;
    std::vector<CompletionEvent> events;
};

double seconds_since(Clock::time_point start, Clock::time_point t) {
    return std::chrono::duration<double>(t - start).count();
}

}  // namespace

ScheduleTrace run_live(std::span<const Task> ordered_tasks, const LiveOptions& options,
                       const TaskExecutor& executor) {
    if (options.worker_count < 1) throw ZeroWorkers("run_live needs at least one worker");
    if (options.protocol.poll_interval_s <= 0) {
        throw SchedError("poll_interval_s must be positive");
    }

    std::unordered_map<TaskId, const Task*> by_id;
    by_id.reserve(ordered_tasks.size());
    for (const Task& t : ordered_tasks) by_id[t.id] = &t;

    const auto n_workers = static_cast<std::size_t>(options.worker_count);
    std::vector<Mailbox> mailboxes(n_workers);
    CompletionQueue completions;
    std::vector<std::vector<TraceInterval>> timelines(n_workers);

    std::atomic<bool> abort{false};
    std::mutex panic_mutex;
    std::optional<WorkerPanic> panic;

    const auto poll = std::chrono::duration<double>(options.protocol.poll_interval_s);
    const Clock::time_point start = Clock::now();

    auto worker_body = [&](int worker_id) {
        const auto w = static_cast<std::size_t>(worker_id);
        while (!abort.load()) {
            std::optional<Command> cmd;
            {
                std::lock_guard lock(mailboxes[w].mutex);
                if (mailboxes[w].command) {
                    cmd = std::move(mailboxes[w].command);
                    mailboxes[w].command.reset();
                }
            }
            if (!cmd) {
                std::this_thread::sleep_for(poll);
                continue;
            }
            if (cmd->shutdown) return;
            for (TaskId id : cmd->message.task_ids) {
                if (abort.load()) return;
                const Task* task = by_id.at(id);
                const auto t0 = Clock::now();
                try {
                    executor(*task);
                } catch (const std::exception& e) {
                    {
                        std::lock_guard lock(panic_mutex);
                        if (!panic) panic.emplace(id, e.what());
                    }
                    abort.store(true);
                    return;
                }
                const auto t1 = Clock::now();
                timelines[w].push_back(TraceInterval{id, cmd->message.message_id,
                                                     seconds_since(start, t0),
                                                     seconds_since(start, t1)});
            }
            {
                std::lock_guard lock(completions.mutex);
                completions.events.push_back(
                    CompletionEvent{worker_id, cmd->message.message_id});
            }
        }
    };

    ManagerState state = make_manager_state(
        chunk_messages(ordered_tasks, options.protocol.tasks_per_message),
        options.worker_count);

    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (int w = 0; w < options.worker_count; ++w) threads.emplace_back(worker_body, w);

    auto dispatch = [&](const std::vector<ManagerAction>& actions) {
        for (const ManagerAction& a : actions) {
            const auto w = static_cast<std::size_t>(a.worker_id);
            Command cmd;
            if (a.kind == ActionKind::shutdown) {
                cmd.shutdown = true;
            } else {
                cmd.message = state.messages[static_cast<std::size_t>(a.message_id)];
            }
            std::lock_guard lock(mailboxes[w].mutex);
            mailboxes[w].command = std::move(cmd);
        }
    };

    double job_time_s = 0;
    bool timed_out = false;
    // Initial fan-out, then poll for completions.
    dispatch(manager_step(state, 0.0, {}));
    if (state.finished) job_time_s = seconds_since(start, Clock::now());
    while (!state.finished) {
        if (abort.load()) break;
        const double elapsed = seconds_since(start, Clock::now());
        if (options.timeout_s > 0 && elapsed > options.timeout_s) {
            timed_out = true;
            abort.store(true);
            break;
        }
        std::vector<CompletionEvent> events;
        {
            std::lock_guard lock(completions.mutex);
            events.swap(completions.events);
        }
        if (events.empty()) {
            std::this_thread::sleep_for(poll);
            continue;
        }
        std::sort(events.begin(), events.end(),
                  [](const CompletionEvent& a, const CompletionEvent& b) {
                      return a.worker_id < b.worker_id;
                  });
        dispatch(manager_step(state, elapsed, events));
        if (state.finished) job_time_s = seconds_since(start, Clock::now());
    }

    for (auto& th : threads) th.join();

    {
        std::lock_guard lock(panic_mutex);
        if (panic) throw *panic;
    }
    if (timed_out) {
        throw Timeout("run_live exceeded wall-clock budget of " +
                      std::to_string(options.timeout_s) + " s");
    }

    ScheduleTrace trace;
    trace.mode = TraceMode::self_sched;
    trace.job_time_s = job_time_s;
    trace.per_worker.resize(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
        trace.per_worker[w].worker_id = static_cast<int>(w);
        trace.per_worker[w].intervals = std::move(timelines[w]);
    }
    return trace;
}

}  // namespace trackforge::sched
