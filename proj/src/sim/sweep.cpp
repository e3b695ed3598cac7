#include "trackforge/sim/sweep.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "trackforge/util/csv.hpp"
#include "trackforge/util/hash.hpp"

namespace trackforge::sim {

std::vector<SweepCell> default_sweep_cells() {
    // Rows are total process counts {2048, 1024, 512, 256}; a (row, nppn)
    // cell is feasible when it fits in 64 nodes. Worker count is one less
    // than the process count (the manager takes a slot).
    std::vector<SweepCell> cells;
    for (int processes : {2048, 1024, 512, 256}) {
        for (int nppn : {32, 16, 8}) {
            const int nodes = processes / nppn;
            if (nodes >= 1 && nodes <= 64 && nodes * nppn == processes)
                cells.push_back({processes - 1, nppn});
        }
    }
    return cells;
}

std::vector<SweepRow> benchmark_sweep(const Workload& workload,
                                      const std::vector<SweepCell>& cells,
                                      const std::vector<sched::OrderingPolicy>& policies,
                                      const sched::ProtocolConfig& pcfg,
                                      const CostModel& model, std::uint64_t base_seed) {
    if (cells.empty()) throw std::invalid_argument("sweep needs at least one cell");
    std::vector<SweepRow> rows;
    rows.reserve(cells.size() * policies.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& cell = cells[i];
        for (auto policy : policies) {
            if (policy.kind == sched::OrderingKind::random)
                policy.seed = util::mix_seed(base_seed, static_cast<std::uint64_t>(i));
            const auto trace =
                simulate_self_sched(workload, cell.n_workers, policy, pcfg, model, cell.nppn);
            rows.push_back({sched::ordering_kind_name(policy.kind), cell.n_workers,
                            cell.nppn, pcfg.tasks_per_message, trace.job_time_s});
        }
    }
    return rows;
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
    std::string out = "policy,n_workers,nppn,tasks_per_message,job_time_s\n";
    for (const auto& row : rows) {
        out += row.policy;
        out += ',';
        out += std::to_string(row.n_workers);
        out += ',';
        out += std::to_string(row.nppn);
        out += ',';
        out += std::to_string(row.tasks_per_message);
        out += ',';
        out += util::format_double(row.job_time_s);
        out += '\n';
    }
    util::write_text_file(path, out);
}

std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& path) {
    const auto file = util::read_csv(path);
    const std::vector<std::string> expected = {"policy", "n_workers", "nppn",
                                               "tasks_per_message", "job_time_s"};
    if (file.header != expected)
        throw std::runtime_error("unexpected sweep CSV header in " + path.string());
    std::vector<SweepRow> rows;
    rows.reserve(file.rows.size());
    for (const auto& r : file.rows) {
        const auto n_workers = util::parse_int(r.at(1));
        const auto nppn = util::parse_int(r.at(2));
        const auto tpm = util::parse_int(r.at(3));
        const auto job_time = util::parse_double(r.at(4));
        if (!n_workers || !nppn || !tpm || !job_time)
            throw std::runtime_error("malformed sweep CSV row in " + path.string());
        rows.push_back({r.at(0), static_cast<int>(*n_workers), static_cast<int>(*nppn),
                        static_cast<int>(*tpm), *job_time});
    }
    return rows;
}

std::string render_markdown_tables(const std::vector<SweepRow>& rows) {
    std::vector<std::string> policies;
    std::set<int, std::greater<>> worker_counts;
    std::set<int, std::greater<>> nppns;
    std::map<std::tuple<std::string, int, int>, double> cell_time;
    for (const auto& row : rows) {
        if (std::find(policies.begin(), policies.end(), row.policy) == policies.end())
            policies.push_back(row.policy);
        worker_counts.insert(row.n_workers);
        nppns.insert(row.nppn);
        cell_time.emplace(std::tuple{row.policy, row.n_workers, row.nppn}, row.job_time_s);
    }

    std::string out;
    for (const auto& policy : policies) {
        out += "### ";
        out += policy;
        out += "\n\n| workers |";
        for (int nppn : nppns) out += " NPPN " + std::to_string(nppn) + " |";
        out += "\n|---:|";
        for (std::size_t i = 0; i < nppns.size(); ++i) out += "---:|";
        out += '\n';
        for (int workers : worker_counts) {
            out += "| " + std::to_string(workers) + " |";
            for (int nppn : nppns) {
                const auto it = cell_time.find(std::tuple{policy, workers, nppn});
                out += ' ';
                out += it == cell_time.end() ? "-" : util::format_double(it->second);
                out += " |";
            }
            out += '\n';
        }
        out += '\n';
    }
    return out;
}

}  // namespace trackforge::sim
