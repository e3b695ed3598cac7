#include "trackforge/sched/trace.hpp"

#include <fstream>

#include "trackforge/util/csv.hpp"

namespace trackforge::sched {

double WorkerTimeline::busy_s() const {
    double total = 0;
    for (const TraceInterval& iv : intervals) total += iv.end_s - iv.start_s;
    return total;
}

const char* trace_mode_name(TraceMode mode) {
    switch (mode) {
        case TraceMode::static_block: return "static_block";
        case TraceMode::static_cyclic: return "static_cyclic";
        case TraceMode::self_sched: return "self_sched";
    }
    return "unknown";
}

std::vector<double> worker_busy_times(const ScheduleTrace& trace) {
    std::vector<double> busy;
    busy.reserve(trace.per_worker.size());
    for (const WorkerTimeline& w : trace.per_worker) busy.push_back(w.busy_s());
    return busy;
}

void write_trace_csv(const std::filesystem::path& path, const ScheduleTrace& trace) {
    std::string out = "worker_id,message_id,task_id,start_s,end_s\n";
    for (const WorkerTimeline& w : trace.per_worker) {
        for (const TraceInterval& iv : w.intervals) {
            out += std::to_string(w.worker_id);
            out += ',';
            out += std::to_string(iv.message_id);
            out += ',';
            out += std::to_string(iv.task_id);
            out += ',';
            out += util::format_double(iv.start_s);
            out += ',';
            out += util::format_double(iv.end_s);
            out += '\n';
        }
    }
    out += "job_time_s=" + util::format_double(trace.job_time_s) + "\n";
    util::write_text_file(path, out);
}

ScheduleTrace read_trace_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchedError("cannot open trace: " + path.string());
    ScheduleTrace trace;
    std::string line;
    bool first = true;
    int max_worker = -1;
    std::vector<std::pair<int, TraceInterval>> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            continue;
        }
        if (line.rfind("job_time_s=", 0) == 0) {
            auto v = util::parse_double(line.substr(11));
            if (!v) throw SchedError("bad job_time_s line in " + path.string());
            trace.job_time_s = *v;
            continue;
        }
        auto fields = util::split_csv_line(line);
        if (fields.size() != 5) throw SchedError("bad trace row: " + line);
        auto wid = util::parse_int(fields[0]);
        auto mid = util::parse_int(fields[1]);
        auto tid = util::parse_int(fields[2]);
        auto start = util::parse_double(fields[3]);
        auto end = util::parse_double(fields[4]);
        if (!wid || !mid || !tid || !start || !end) {
            throw SchedError("bad trace row: " + line);
        }
        TraceInterval iv{*tid, *mid, *start, *end};
        rows.emplace_back(static_cast<int>(*wid), iv);
        max_worker = std::max(max_worker, static_cast<int>(*wid));
    }
    trace.per_worker.resize(static_cast<std::size_t>(max_worker + 1));
    for (int w = 0; w <= max_worker; ++w) {
        trace.per_worker[static_cast<std::size_t>(w)].worker_id = w;
    }
    for (auto& [w, iv] : rows) {
        trace.per_worker[static_cast<std::size_t>(w)].intervals.push_back(iv);
    }
    return trace;
}

}  // namespace trackforge::sched
