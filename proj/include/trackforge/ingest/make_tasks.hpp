#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "trackforge/sched/types.hpp"

namespace trackforge::ingest {

struct ManifestResult {
    std::vector<sched::Task> tasks;
    std::vector<std::string> warnings;
};

// Builds a workload manifest from a file tree: one task per regular file, in
// sorted relative-path order (ids follow that order), size from the
// filesystem. A stem of the form YYYY-MM-DD-HH becomes the time_key. The
// group_key names the leaf the file belongs to: the parent directory, or for
// `.zip` files the path with the extension dropped (the zip *is* the leaf).
ManifestResult make_tasks(const std::filesystem::path& root);

}  // namespace trackforge::ingest
