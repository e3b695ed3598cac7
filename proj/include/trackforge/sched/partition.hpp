#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "trackforge/sched/types.hpp"

namespace trackforge::sched {

// Half-open index range [begin, end).
struct IndexRange {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t size() const { return end - begin; }
};

// Contiguous blocks, sizes differing by at most one, earlier workers larger.
// Empty ranges when n_tasks < n_workers.
std::vector<IndexRange> block_partition(std::size_t n_tasks, std::size_t n_workers);

// Round robin: worker w gets indices {w, w + n_workers, w + 2*n_workers, ...}.
std::vector<std::vector<std::size_t>> cyclic_partition(std::size_t n_tasks,
                                                       std::size_t n_workers);

// ceil(n / per_message)
std::size_t chunk_count(std::size_t n_tasks, int per_message);

// Splits an ordered task list into messages of `per_message` tasks (last one
// may be short). Message ids are sequential from 0; order is preserved.
std::vector<TaskMessage> chunk_messages(std::span<const Task> ordered_tasks,
                                        int per_message);
std::vector<TaskMessage> chunk_message_ids(std::span<const TaskId> ordered_ids,
                                           int per_message);

}  // namespace trackforge::sched
