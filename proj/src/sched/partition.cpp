#include "trackforge/sched/partition.hpp"

namespace trackforge::sched {

std::vector<IndexRange> block_partition(std::size_t n_tasks, std::size_t n_workers) {
    if (n_workers == 0) throw SchedError("block_partition: n_workers must be >= 1");
    std::vector<IndexRange> ranges(n_workers);
    const std::size_t base = n_tasks / n_workers;
    const std::size_t rem = n_tasks % n_workers;
    std::size_t cursor = 0;
    for (std::size_t w = 0; w < n_workers; ++w) {
        const std::size_t len = base + (w < rem ? 1 : 0);
        ranges[w] = IndexRange{cursor, cursor + len};
        cursor += len;
    }
    return ranges;
}

std::vector<std::vector<std::size_t>> cyclic_partition(std::size_t n_tasks,
                                                       std::size_t n_workers) {
    if (n_workers == 0) throw SchedError("cyclic_partition: n_workers must be >= 1");
    std::vector<std::vector<std::size_t>> out(n_workers);
    for (std::size_t i = 0; i < n_tasks; ++i) {
        out[i % n_workers].push_back(i);
    }
    return out;
}

std::size_t chunk_count(std::size_t n_tasks, int per_message) {
    if (per_message < 1) throw SchedError("tasks_per_message must be >= 1");
    const std::size_t c = static_cast<std::size_t>(per_message);
    return (n_tasks + c - 1) / c;
}

std::vector<TaskMessage> chunk_message_ids(std::span<const TaskId> ordered_ids,
                                           int per_message) {
    const std::size_t n_messages = chunk_count(ordered_ids.size(), per_message);
    const std::size_t c = static_cast<std::size_t>(per_message);
    std::vector<TaskMessage> messages;
    messages.reserve(n_messages);
    for (std::size_t m = 0; m < n_messages; ++m) {
        TaskMessage msg;
        msg.message_id = static_cast<std::int64_t>(m);
        const std::size_t lo = m * c;
        const std::size_t hi = std::min(ordered_ids.size(), lo + c);
        msg.task_ids.assign(ordered_ids.begin() + static_cast<std::ptrdiff_t>(lo),
                            ordered_ids.begin() + static_cast<std::ptrdiff_t>(hi));
        messages.push_back(std::move(msg));
    }
    return messages;
}

std::vector<TaskMessage> chunk_messages(std::span<const Task> ordered_tasks,
                                        int per_message) {
    std::vector<TaskId> ids;
    ids.reserve(ordered_tasks.size());
    for (const Task& t : ordered_tasks) ids.push_back(t.id);
    return chunk_message_ids(ids, per_message);
}

}  // namespace trackforge::sched
