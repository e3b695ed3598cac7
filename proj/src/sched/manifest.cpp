#include "trackforge/sched/manifest.hpp"

#include "trackforge/util/csv.hpp"
#include "trackforge/util/timeparse.hpp"

namespace trackforge::sched {

std::vector<Task> read_manifest(const std::filesystem::path& path) {
    util::CsvFile file = util::read_csv(path);
    const std::vector<std::string> expected = {"id", "size_bytes", "time_key", "group_key"};
    if (file.header != expected) {
        throw SchedError("manifest header mismatch in " + path.string());
    }
    std::vector<Task> tasks;
    tasks.reserve(file.rows.size());
    for (const auto& row : file.rows) {
        if (row.size() != 4) throw SchedError("bad manifest row in " + path.string());
        Task t;
        auto id = util::parse_int(row[0]);
        auto size = util::parse_int(row[1]);
        if (!id || !size || *size < 0) {
            throw SchedError("bad manifest row in " + path.string() + ": " +
                             util::join_csv(row));
        }
        t.id = *id;
        t.size_bytes = static_cast<std::uint64_t>(*size);
        if (!row[2].empty()) {
            auto tk = util::parse_iso8601(row[2]);
            if (!tk) throw SchedError("bad time_key '" + row[2] + "' in " + path.string());
            t.time_key = *tk;
        }
        t.group_key = row[3];
        tasks.push_back(std::move(t));
    }
    return tasks;
}

void write_manifest(const std::filesystem::path& path, std::span<const Task> tasks) {
    std::string out = "id,size_bytes,time_key,group_key\n";
    for (const Task& t : tasks) {
        out += std::to_string(t.id);
        out += ',';
        out += std::to_string(t.size_bytes);
        out += ',';
        if (t.time_key) out += util::format_iso8601(*t.time_key);
        out += ',';
        out += t.group_key;
        out += '\n';
    }
    util::write_text_file(path, out);
}

}  // namespace trackforge::sched
