#include "trackforge/ingest/archive.hpp"

#include <algorithm>
#include <atomic>

#include "trackforge/ingest/registry.hpp"
#include "trackforge/sched/run_live.hpp"
#include "trackforge/util/csv.hpp"
#include "trackforge/util/zip.hpp"

namespace trackforge::ingest {

namespace fs = std::filesystem;

std::vector<fs::path> enumerate_leaf_dirs(const fs::path& organized_root) {
    std::vector<fs::path> leaves;
    if (!fs::exists(organized_root)) return leaves;
    // year / type / seat / leaf
    for (const auto& year : fs::directory_iterator(organized_root)) {
        if (!year.is_directory()) continue;
        for (const auto& type : fs::directory_iterator(year)) {
            if (!type.is_directory()) continue;
            for (const auto& seat : fs::directory_iterator(type)) {
                if (!seat.is_directory()) continue;
                for (const auto& leaf : fs::directory_iterator(seat)) {
                    if (leaf.is_directory()) leaves.push_back(leaf.path());
                }
            }
        }
    }
    std::sort(leaves.begin(), leaves.end());
    return leaves;
}

namespace {

// Returns false when the leaf holds no regular files.
bool zip_one_leaf(const fs::path& leaf, const fs::path& zip_path) {
    std::vector<util::ZipEntry> entries;
    for (const auto& entry : fs::directory_iterator(leaf)) {
        if (!entry.is_regular_file()) continue;
        entries.push_back({entry.path().filename().string(),
                           util::read_text_file(entry.path())});
    }
    if (entries.empty()) return false;
    util::write_zip(zip_path, std::move(entries));
    return true;
}

}  // namespace

ArchiveReport archive_leaves(const fs::path& organized_root, const fs::path& archive_root,
                             const ArchiveOptions& options) {
    const auto leaves = enumerate_leaf_dirs(organized_root);

    enum class Outcome { written, empty, failed };
    std::vector<Outcome> outcomes(leaves.size(), Outcome::failed);

    auto archive_one = [&](std::size_t index) {
        const auto& leaf = leaves[index];
        const auto rel = fs::relative(leaf, organized_root);
        const auto zip_path = archive_root / rel.parent_path() / (rel.filename().string() + ".zip");
        try {
            fs::create_directories(zip_path.parent_path());
            outcomes[index] = zip_one_leaf(leaf, zip_path) ? Outcome::written : Outcome::empty;
        } catch (const std::exception&) {
            outcomes[index] = Outcome::failed;
        }
    };

    if (options.workers <= 1 || leaves.size() < 2) {
        for (std::size_t i = 0; i < leaves.size(); ++i) archive_one(i);
    } else {
        std::vector<sched::Task> tasks;
        tasks.reserve(leaves.size());
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            sched::Task task;
            task.id = static_cast<sched::TaskId>(i);
            task.group_key = leaves[i].generic_string();
            tasks.push_back(std::move(task));
        }
        sched::LiveOptions live;
        live.worker_count = options.workers;
        live.protocol.poll_interval_s = options.poll_interval_s;
        (void)sched::run_live(tasks, live, [&](const sched::Task& task) {
            archive_one(static_cast<std::size_t>(task.id));
        });
    }

    ArchiveReport report;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        switch (outcomes[i]) {
            case Outcome::written: ++report.zips_written; break;
            case Outcome::empty: ++report.empty_leaves; break;
            case Outcome::failed:
                report.failures.push_back(
                    fs::relative(leaves[i], organized_root).generic_string());
                break;
        }
    }
    return report;
}

void require_complete(const ArchiveReport& report) {
    if (report.failures.empty()) return;
    std::string what = "failed to archive " + std::to_string(report.failures.size()) +
                       " leaf directories (first: " + report.failures.front() + ")";
    throw PartialArchive(what);
}

}  // namespace trackforge::ingest
