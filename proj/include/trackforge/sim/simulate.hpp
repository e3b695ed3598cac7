#pragma once

#include "trackforge/sched/trace.hpp"
#include "trackforge/sched/types.hpp"
#include "trackforge/sim/cost_model.hpp"
#include "trackforge/sim/synth.hpp"

namespace trackforge::sim {

enum class PartitionKind { block, cyclic };

// Batch allocation: the task list is split up front and each worker executes
// its share back-to-back from t=0. There is no manager, so the job time is
// simply the largest per-worker total.
sched::ScheduleTrace simulate_static(const Workload& workload, int n_workers,
                                     PartitionKind partition, const CostModel& model,
                                     int nppn = 8);

// Event-driven replay of the manager/worker protocol with deterministic task
// costs. Latency model: a completion at time t is observed by the manager at
// the next poll tick strictly after t; a message sent at time s starts at the
// worker's first poll tick >= s. Both clocks tick at integer multiples of
// poll_interval_s from t=0; poll_interval_s = 0 removes all latency. The job
// time is the instant the manager observes the final completion.
sched::ScheduleTrace simulate_self_sched(const Workload& workload, int n_workers,
                                         const sched::OrderingPolicy& policy,
                                         const sched::ProtocolConfig& pcfg,
                                         const CostModel& model, int nppn = 8);

// Brute-force time-stepped implementation of the same protocol rules, used to
// cross-check simulate_self_sched on small instances. Scans t = 0, dt, 2*dt,
// ... and applies, in order at each step: worker completions (exact end
// times), manager observation/refill at poll ticks, worker pickup at poll
// ticks. Requires poll_interval_s > 0; dt should divide it.
double oracle_job_time(const Workload& workload, int n_workers,
                       const sched::OrderingPolicy& policy,
                       const sched::ProtocolConfig& pcfg, const CostModel& model,
                       double dt, int nppn = 8);

}  // namespace trackforge::sim
