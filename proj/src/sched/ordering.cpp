#include "trackforge/sched/ordering.hpp"

#include <algorithm>
#include <random>

namespace trackforge::sched {

std::vector<Task> order_tasks(std::vector<Task> tasks, const OrderingPolicy& policy) {
    switch (policy.kind) {
        case OrderingKind::chronological: {
            for (const Task& t : tasks) {
                if (!t.time_key) {
                    throw MissingTimeKey("task " + std::to_string(t.id) +
                                         " has no time_key; chronological ordering needs one");
                }
            }
            std::sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) {
                if (*a.time_key != *b.time_key) return *a.time_key < *b.time_key;
                return a.id < b.id;
            });
            break;
        }
        case OrderingKind::largest_first: {
            std::sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) {
                if (a.size_bytes != b.size_bytes) return a.size_bytes > b.size_bytes;
                return a.id < b.id;
            });
            break;
        }
        case OrderingKind::random: {
            std::sort(tasks.begin(), tasks.end(),
                      [](const Task& a, const Task& b) { return a.id < b.id; });
            std::mt19937_64 rng(policy.seed);
            for (std::size_t i = tasks.size(); i > 1; --i) {
                std::size_t j = static_cast<std::size_t>(rng() % i);
                std::swap(tasks[i - 1], tasks[j]);
            }
            break;
        }
    }
    return tasks;
}

}  // namespace trackforge::sched
