#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace trackforge::ingest {

struct ArchiveReport {
    std::size_t zips_written = 0;
    std::size_t empty_leaves = 0;
    std::vector<std::string> failures;  // leaf rel paths that could not be zipped
};

struct ArchiveOptions {
    int workers = 1;
    double poll_interval_s = 0.01;
};

// Leaf directories of an organized tree (<year>/<type>/<seat>/<leaf>),
// sorted by relative path.
std::vector<std::filesystem::path> enumerate_leaf_dirs(
    const std::filesystem::path& organized_root);

// Zips every leaf directory to <archive_root>/<first three tiers>/<leaf>.zip.
// Entry names are the bare file names, sorted, stored with fixed timestamps,
// so reruns produce byte-identical archives. Failed leaves are reported and
// the rest proceed. With workers > 1, leaves are zipped through the
// self-scheduling engine (one task per leaf).
ArchiveReport archive_leaves(const std::filesystem::path& organized_root,
                             const std::filesystem::path& archive_root,
                             const ArchiveOptions& options = {});

// Throws PartialArchive if the report lists failures.
void require_complete(const ArchiveReport& report);

}  // namespace trackforge::ingest
