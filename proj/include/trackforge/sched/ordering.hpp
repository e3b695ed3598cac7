#pragma once

#include <span>
#include <vector>

#include "trackforge/sched/types.hpp"

namespace trackforge::sched {

// Returns a permutation of `tasks` under the given policy. Ties are broken by
// ascending task id, so every policy is deterministic. The random policy uses
// an explicit Fisher-Yates over the id-sorted list, so results are stable
// across platforms. Throws MissingTimeKey for chronological ordering when any
// task lacks a time_key.
std::vector<Task> order_tasks(std::vector<Task> tasks, const OrderingPolicy& policy);

}  // namespace trackforge::sched
