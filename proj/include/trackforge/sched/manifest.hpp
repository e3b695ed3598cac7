#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "trackforge/sched/types.hpp"

namespace trackforge::sched {

// Workload manifest CSV: header `id,size_bytes,time_key,group_key`,
// time_key ISO-8601 or empty.
std::vector<Task> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, std::span<const Task> tasks);

}  // namespace trackforge::sched
