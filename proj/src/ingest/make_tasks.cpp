#include "trackforge/ingest/make_tasks.hpp"

#include <algorithm>

#include "trackforge/util/timeparse.hpp"

namespace trackforge::ingest {

namespace fs = std::filesystem;

namespace {

bool looks_like_hour_stem(const std::string& stem) {
    // YYYY-MM-DD-HH
    if (stem.size() != 13) return false;
    for (std::size_t i = 0; i < stem.size(); ++i) {
        const bool dash = i == 4 || i == 7 || i == 10;
        if (dash != (stem[i] == '-')) return false;
        if (!dash && (stem[i] < '0' || stem[i] > '9')) return false;
    }
    return true;
}

}  // namespace

ManifestResult make_tasks(const fs::path& root) {
    ManifestResult result;
    std::vector<std::string> rels;
    if (fs::exists(root)) {
        for (const auto& entry : fs::recursive_directory_iterator(root)) {
            if (entry.is_regular_file())
                rels.push_back(fs::relative(entry.path(), root).generic_string());
        }
    }
    std::sort(rels.begin(), rels.end());
    if (rels.empty()) {
        result.warnings.push_back("no files under " + root.string() +
                                  "; manifest is empty");
        return result;
    }

    result.tasks.reserve(rels.size());
    for (std::size_t i = 0; i < rels.size(); ++i) {
        const fs::path rel(rels[i]);
        sched::Task task;
        task.id = static_cast<sched::TaskId>(i);
        task.size_bytes = static_cast<std::uint64_t>(fs::file_size(root / rel));

        const auto stem = rel.stem().string();
        if (looks_like_hour_stem(stem))
            if (const auto t = util::parse_iso8601(stem)) task.time_key = *t;

        if (rel.extension() == ".zip") {
            auto leaf = rel;
            leaf.replace_extension();
            task.group_key = leaf.generic_string();
        } else {
            const auto parent = rel.parent_path().generic_string();
            task.group_key = parent == "." ? std::string{} : parent;
        }
        result.tasks.push_back(std::move(task));
    }
    return result;
}

}  // namespace trackforge::ingest
