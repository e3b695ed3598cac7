#include "trackforge/sim/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "trackforge/sched/ordering.hpp"
#include "trackforge/sched/partition.hpp"
#include "trackforge/sched/protocol.hpp"

namespace trackforge::sim {

namespace {

constexpr double kEps = 1e-9;

std::vector<double> message_costs(const std::vector<sched::Task>& ordered,
                                  const std::vector<sched::TaskMessage>& messages,
                                  const CostModel& model, int nppn) {
    std::unordered_map<sched::TaskId, double> cost_by_id;
    cost_by_id.reserve(ordered.size());
    for (const auto& task : ordered)
        cost_by_id[task.id] = model.cost_s(task.size_bytes, nppn);
    std::vector<double> out;
    out.reserve(messages.size());
    for (const auto& msg : messages) {
        double total = 0.0;
        for (sched::TaskId id : msg.task_ids) total += cost_by_id.at(id);
        out.push_back(total);
    }
    return out;
}

}  // namespace

sched::ScheduleTrace simulate_static(const Workload& workload, int n_workers,
                                     PartitionKind partition, const CostModel& model,
                                     int nppn) {
    if (n_workers < 1) throw sched::ZeroWorkers("static simulation needs at least one worker");
    sched::ScheduleTrace trace;
    trace.mode = partition == PartitionKind::block ? sched::TraceMode::static_block
                                                   : sched::TraceMode::static_cyclic;
    trace.per_worker.resize(static_cast<std::size_t>(n_workers));

    const auto& tasks = workload.tasks;
    auto execute = [&](int worker, std::size_t index, double& t) {
        const double c = model.cost_s(tasks[index].size_bytes, nppn);
        trace.per_worker[static_cast<std::size_t>(worker)].intervals.push_back(
            {tasks[index].id, -1, t, t + c});
        t += c;
    };

    double job_time = 0.0;
    if (partition == PartitionKind::block) {
        const auto ranges = sched::block_partition(tasks.size(), static_cast<std::size_t>(n_workers));
        for (int w = 0; w < n_workers; ++w) {
            double t = 0.0;
            for (std::size_t i = ranges[static_cast<std::size_t>(w)].begin;
                 i < ranges[static_cast<std::size_t>(w)].end; ++i)
                execute(w, i, t);
            job_time = std::max(job_time, t);
        }
    } else {
        const auto lists = sched::cyclic_partition(tasks.size(), static_cast<std::size_t>(n_workers));
        for (int w = 0; w < n_workers; ++w) {
            double t = 0.0;
            for (std::size_t i : lists[static_cast<std::size_t>(w)]) execute(w, i, t);
            job_time = std::max(job_time, t);
        }
    }
    for (int w = 0; w < n_workers; ++w)
        trace.per_worker[static_cast<std::size_t>(w)].worker_id = w;
    trace.job_time_s = job_time;
    return trace;
}

sched::ScheduleTrace simulate_self_sched(const Workload& workload, int n_workers,
                                         const sched::OrderingPolicy& policy,
                                         const sched::ProtocolConfig& pcfg,
                                         const CostModel& model, int nppn) {
    auto ordered = sched::order_tasks(workload.tasks, policy);
    auto messages = sched::chunk_messages(ordered, pcfg.tasks_per_message);

    std::unordered_map<sched::TaskId, double> cost_by_id;
    cost_by_id.reserve(ordered.size());
    for (const auto& task : ordered)
        cost_by_id[task.id] = model.cost_s(task.size_bytes, nppn);

    auto state = sched::make_manager_state(std::move(messages), n_workers);

    sched::ScheduleTrace trace;
    trace.mode = sched::TraceMode::self_sched;
    trace.per_worker.resize(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w)
        trace.per_worker[static_cast<std::size_t>(w)].worker_id = w;

    const double poll = pcfg.poll_interval_s;

    // Completions grouped by the manager tick that observes them. Tick times
    // are k*poll, so equal ticks compare bitwise-equal; with poll == 0 the key
    // is the exact completion time.
    std::map<double, std::vector<sched::CompletionEvent>> by_obs_time;
    auto obs_time = [&](double end) {
        if (poll <= 0.0) return end;
        return (std::floor(end / poll + kEps) + 1.0) * poll;
    };

    auto dispatch = [&](const std::vector<sched::ManagerAction>& actions, double now) {
        for (const auto& action : actions) {
            if (action.kind != sched::ActionKind::send_message) continue;
            const auto& msg = state.messages[static_cast<std::size_t>(action.message_id)];
            double t = now;  // sends happen at shared poll ticks, so pickup is immediate
            for (sched::TaskId id : msg.task_ids) {
                const double c = cost_by_id.at(id);
                trace.per_worker[static_cast<std::size_t>(action.worker_id)].intervals.push_back(
                    {id, msg.message_id, t, t + c});
                t += c;
            }
            by_obs_time[obs_time(t)].push_back({action.worker_id, msg.message_id});
        }
    };

    dispatch(sched::manager_step(state, 0.0, {}), 0.0);
    double job_time = 0.0;
    while (!state.finished) {
        auto it = by_obs_time.begin();
        const double now = it->first;
        auto events = std::move(it->second);
        by_obs_time.erase(it);
        std::sort(events.begin(), events.end(),
                  [](const sched::CompletionEvent& a, const sched::CompletionEvent& b) {
                      return a.worker_id < b.worker_id;
                  });
        auto actions = sched::manager_step(state, now, events);
        if (state.finished) job_time = now;
        dispatch(actions, now);
    }
    trace.job_time_s = job_time;
    return trace;
}

double oracle_job_time(const Workload& workload, int n_workers,
                       const sched::OrderingPolicy& policy,
                       const sched::ProtocolConfig& pcfg, const CostModel& model,
                       double dt, int nppn) {
    if (pcfg.poll_interval_s <= 0.0)
        throw InvalidParams("oracle requires poll_interval_s > 0");
    if (dt <= 0.0) throw InvalidParams("oracle requires dt > 0");
    if (n_workers < 1) throw sched::ZeroWorkers("oracle needs at least one worker");

    auto ordered = sched::order_tasks(workload.tasks, policy);
    auto messages = sched::chunk_messages(ordered, pcfg.tasks_per_message);
    const auto costs = message_costs(ordered, messages, model, nppn);

    const std::size_t total = costs.size();
    if (total == 0) return 0.0;

    struct WorkerSlot {
        bool busy = false;
        double end_s = 0.0;
        bool assigned = false;  // message handed over but not yet picked up
        double pending_cost = 0.0;
    };
    std::vector<WorkerSlot> slots(static_cast<std::size_t>(n_workers));
    std::size_t next_message = 0;
    std::size_t completed = 0;

    const double poll = pcfg.poll_interval_s;
    double horizon = poll * (static_cast<double>(total) + 2.0) + 1.0;
    for (double c : costs) horizon += c;

    for (std::int64_t step = 0;; ++step) {
        const double t = static_cast<double>(step) * dt;
        if (t > horizon) throw std::logic_error("oracle failed to terminate within horizon");
        const double q = t / poll;
        const bool at_tick = std::fabs(q - std::round(q)) < 1e-6;
        if (!at_tick) continue;

        // Manager: observe completions that happened strictly before this tick.
        for (auto& slot : slots) {
            if (slot.busy && slot.end_s < t - kEps) {
                slot.busy = false;
                ++completed;
            }
        }
        if (completed == total) return t;

        // Manager: hand pending messages to idle workers in ascending id order.
        for (auto& slot : slots) {
            if (next_message >= total) break;
            if (!slot.busy && !slot.assigned) {
                slot.assigned = true;
                slot.pending_cost = costs[next_message++];
            }
        }

        // Workers: pick up assignments at their own tick (same multiples).
        for (auto& slot : slots) {
            if (slot.assigned) {
                slot.assigned = false;
                slot.busy = true;
                slot.end_s = t + slot.pending_cost;
            }
        }
    }
}

}  // namespace trackforge::sim
