#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "trackforge/util/csv.hpp"
#include "trackforge/util/hash.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace trackforge;

#ifndef TRACKFORGE_CLI_PATH
#error "TRACKFORGE_CLI_PATH must point at the trackforge binary"
#endif

namespace {

fs::path temp_dir(const std::string& tag) {
    auto dir = fs::temp_directory_path() / ("trackforge_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// Runs the CLI and returns its exit code; output is captured to `log`.
int run_cli(const std::string& args, const fs::path& log) {
    const std::string command = std::string(TRACKFORGE_CLI_PATH) + " " + args + " > " +
                                log.string() + " 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) { return util::read_text_file(path); }

// A small but complete pipeline fixture: registry, two raw hour files, flat
// terrain, one blanket Class C volume, three aerodromes (two overlapping).
struct Fixture {
    fs::path root;

    explicit Fixture(const std::string& tag) : root(temp_dir(tag)) {
        util::write_text_file(root / "registry.csv",
                              "icao24,type,seats,expiration\n"
                              "AAA001,fixed_wing_single,4,2027-01-01\n"
                              "AAA002,rotorcraft,2,2026-06-30\n");

        std::string hour0 = "time,icao24,lat,lon,alt_msl_ft,ground_speed_kt,"
                            "heading_deg,vert_rate_fpm\n";
        for (int i = 0; i < 40; ++i)
            hour0 += std::to_string(1546300800 + i * 10) + ",aaa001," +
                     util::format_double(40.0 + i * 0.0005) + ",-75.0,1200,,,\n";
        for (int i = 0; i < 12; ++i)
            hour0 += std::to_string(1546300800 + i * 10) + ",ddd999,40.5,-74.9,900,,,\n";
        util::write_text_file(root / "raw/2019-01-01-00.csv", hour0);

        std::string hour1 = "time,icao24,lat,lon,alt_msl_ft,ground_speed_kt,"
                            "heading_deg,vert_rate_fpm\n";
        for (int i = 0; i < 15; ++i)
            hour1 += std::to_string(1546304400 + i * 15) + ",aaa002," +
                     util::format_double(40.2 + i * 0.0004) + ",-75.1,800,,,\n";
        util::write_text_file(root / "raw/2019-01-01-01.csv", hour1);

        std::string dem = "nrows,ncols,origin_lat,origin_lon,cell_deg,nodata\n"
                          "8,8,38,-78,1,-9999\n";
        for (int r = 0; r < 8; ++r) {
            for (int c = 0; c < 8; ++c) dem += (c ? ",100" : "100");
            dem += "\n";
        }
        util::write_text_file(root / "dem.csv", dem);

        util::write_text_file(
            root / "airspace.json",
            R"({"type":"FeatureCollection","features":[)"
            R"({"type":"Feature","properties":{"class":"C","floor_ft_agl":0,)"
            R"("ceiling_ft_agl":10000,"name":"blanket"},)"
            R"("geometry":{"type":"Polygon","coordinates":)"
            R"([[[-77,39],[-73,39],[-73,42],[-77,42],[-77,39]]]}}]})");

        util::write_text_file(root / "aerodromes.csv",
                              "id,lat,lon\n"
                              "alpha,40.0,-75.0\n"
                              "bravo,40.08,-74.95\n"
                              "charlie,40.6,-74.3\n");
    }

    std::string path(const std::string& rel) const { return (root / rel).string(); }
};

}  // namespace

TEST_CASE("organize runs the fixture and is ordering-invariant") {
    Fixture fx("organize");
    const auto log = fx.root / "log.txt";

    const std::string base = "organize --input " + fx.path("raw") + " --registry " +
                             fx.path("registry.csv") + " --year 2019 --workers 3 "
                             "--poll-interval 0.01 ";
    REQUIRE(run_cli(base + "--ordering largest_first --out " + fx.path("o1"), log) == 0);
    REQUIRE(run_cli(base + "--ordering chronological --out " + fx.path("o2"), log) == 0);

    const auto stats = json::parse(slurp(fx.root / "o1/organize_stats.json"));
    CHECK(stats["files_read"] == 2);
    CHECK(stats["rows_invalid"] == 0);
    // Hand-out order never reaches the output bytes.
    CHECK(util::hash_tree(fx.root / "o1/tree") == util::hash_tree(fx.root / "o2/tree"));
    CHECK(fs::is_regular_file(fx.root / "o1/resolved_config.json"));
}

TEST_CASE("organize exits 2 without writing when the registry is missing") {
    Fixture fx("organize_bad");
    const auto log = fx.root / "log.txt";
    const int rc = run_cli("organize --input " + fx.path("raw") + " --registry " +
                               fx.path("nope.csv") + " --out " + fx.path("o"),
                           log);
    CHECK(rc == 2);
    CHECK_FALSE(fs::exists(fx.root / "o"));
}

TEST_CASE("archive produces identical zips across distributions, differing traces") {
    Fixture fx("archive");
    const auto log = fx.root / "log.txt";
    REQUIRE(run_cli("organize --input " + fx.path("raw") + " --registry " +
                        fx.path("registry.csv") + " --out " + fx.path("org"),
                    log) == 0);

    const std::string base = "archive --input " + fx.path("org/tree") +
                             " --workers 2 --poll-interval 0.01 ";
    REQUIRE(run_cli(base + "--distribution block --out " + fx.path("a1"), log) == 0);
    REQUIRE(run_cli(base + "--distribution cyclic --out " + fx.path("a2"), log) == 0);

    CHECK(util::hash_tree(fx.root / "a1/zips") == util::hash_tree(fx.root / "a2/zips"));
    const auto m1 = json::parse(slurp(fx.root / "a1/trace_metrics.json"));
    const auto m2 = json::parse(slurp(fx.root / "a2/trace_metrics.json"));
    CHECK(m1["mode"] == "block");
    CHECK(m2["mode"] == "cyclic");
    CHECK(json::parse(slurp(fx.root / "a1/archive_stats.json"))["zips_written"] == 3);

    // Rerun: byte-identical archives.
    REQUIRE(run_cli(base + "--distribution block --out " + fx.path("a3"), log) == 0);
    CHECK(util::hash_tree(fx.root / "a1/zips") == util::hash_tree(fx.root / "a3/zips"));
}

TEST_CASE("segment processes archives deterministically and counts messages") {
    Fixture fx("segment");
    const auto log = fx.root / "log.txt";
    REQUIRE(run_cli("organize --input " + fx.path("raw") + " --registry " +
                        fx.path("registry.csv") + " --out " + fx.path("org"),
                    log) == 0);
    REQUIRE(run_cli("archive --input " + fx.path("org/tree") + " --out " + fx.path("arc"),
                    log) == 0);

    const std::string base = "segment --archives " + fx.path("arc/zips") + " --dem " +
                             fx.path("dem.csv") + " --airspace " + fx.path("airspace.json") +
                             " --poll-interval 0.01 ";
    REQUIRE(run_cli(base + "--workers 2 --out " + fx.path("s1"), log) == 0);
    REQUIRE(run_cli(base + "--workers 1 --tasks-per-message 2 --out " + fx.path("s2"), log) ==
            0);

    const auto stats1 = json::parse(slurp(fx.root / "s1/segment_stats.json"));
    CHECK(stats1["archives"] == 3);
    CHECK(stats1["aircraft_seen"] == 3);
    CHECK(stats1["segments_kept"] == 3);
    CHECK(stats1["failures"].empty());

    const auto stats2 = json::parse(slurp(fx.root / "s2/segment_stats.json"));
    CHECK(stats2["messages"] == 2);  // ceil(3 / 2)

    // Output bytes independent of worker count and chunking.
    CHECK(util::hash_tree(fx.root / "s1/segments") ==
          util::hash_tree(fx.root / "s2/segments"));
}

TEST_CASE("querygen emits counts and rejects an empty aerodrome list") {
    Fixture fx("querygen");
    const auto log = fx.root / "log.txt";
    REQUIRE(run_cli("querygen --aerodromes " + fx.path("aerodromes.csv") + " --dem " +
                        fx.path("dem.csv") + " --airspace " + fx.path("airspace.json") +
                        " --days 2 --groups 3 --out " + fx.path("qg"),
                    log) == 0);
    const auto stats = json::parse(slurp(fx.root / "qg/querygen_stats.json"));
    CHECK(stats["circles"] == 3);
    CHECK(stats["merged_polygons"] == 2);  // two aerodromes overlap
    const std::size_t boxes = stats["boxes"];
    CHECK(stats["queries"] == boxes * 2);

    const auto queries = util::read_csv(fx.root / "qg/queries.csv");
    CHECK(queries.rows.size() == boxes * 2);

    util::write_text_file(fx.root / "empty.csv", "id,lat,lon\n");
    const int rc = run_cli("querygen --aerodromes " + fx.path("empty.csv") + " --dem " +
                               fx.path("dem.csv") + " --airspace " + fx.path("airspace.json") +
                               " --out " + fx.path("qg2"),
                           log);
    CHECK(rc == 2);
    CHECK_FALSE(fs::exists(fx.root / "qg2"));
}

TEST_CASE("bench writes sweep tables and per-seed rows") {
    Fixture fx("bench");
    const auto log = fx.root / "log.txt";
    REQUIRE(run_cli("bench --workload gaussian --n-tasks 120 --seeds 2 --workers 15 "
                    "--compare block,self --chunk-series 1,8 --out " +
                        fx.path("b"),
                    log) == 0);

    const auto sweep = util::read_csv(fx.root / "b/sweep.csv");
    CHECK(sweep.rows.size() == 9 * 3);  // feasible cells x policies
    const auto seeds = util::read_csv(fx.root / "b/sweep_seeds.csv");
    CHECK(seeds.rows.size() == 2 * 9 * 3);
    CHECK(slurp(fx.root / "b/tables.md").find("| workers |") != std::string::npos);

    const auto compare = util::read_csv(fx.root / "b/compare.csv");
    CHECK(compare.rows.size() == 2);
    const auto chunks = util::read_csv(fx.root / "b/chunk_series.csv");
    CHECK(chunks.rows.size() == 2);

    // Determinism: a rerun reproduces the sweep byte-for-byte.
    REQUIRE(run_cli("bench --workload gaussian --n-tasks 120 --seeds 2 --workers 15 "
                    "--out " + fx.path("b2"),
                    log) == 0);
    CHECK(slurp(fx.root / "b/sweep_seeds.csv") == slurp(fx.root / "b2/sweep_seeds.csv"));
}

TEST_CASE("simulate writes trace, metrics, and ECDF") {
    Fixture fx("simulate");
    const auto log = fx.root / "log.txt";
    REQUIRE(run_cli("simulate --workload heavy_tail --n-tasks 200 --workers 15 "
                    "--ordering largest_first --out " +
                        fx.path("sim"),
                    log) == 0);
    const auto metrics = json::parse(slurp(fx.root / "sim/metrics.json"));
    CHECK(metrics["n_workers"] == 15);
    CHECK(metrics["job_time_s"].get<double>() > 0.0);
    const auto ecdf = util::read_csv(fx.root / "sim/worker_ecdf.csv");
    CHECK(ecdf.rows.size() == 15);

    // Chronological ordering is undefined for the heavy-tail workload.
    const int rc = run_cli("simulate --workload heavy_tail --n-tasks 200 --workers 15 "
                           "--ordering chronological --out " +
                               fx.path("sim2"),
                           log);
    CHECK(rc == 2);
}

TEST_CASE("resolved config snapshots reproduce runs through --config") {
    Fixture fx("config");
    const auto log = fx.root / "log.txt";
    REQUIRE(run_cli("organize --input " + fx.path("raw") + " --registry " +
                        fx.path("registry.csv") + " --workers 2 --out " + fx.path("o1"),
                    log) == 0);
    REQUIRE(run_cli("organize --config " + fx.path("o1/resolved_config.json") + " --out " +
                        fx.path("o2"),
                    log) == 0);
    CHECK(util::hash_tree(fx.root / "o1/tree") == util::hash_tree(fx.root / "o2/tree"));

    // Flags override the config file.
    REQUIRE(run_cli("organize --config " + fx.path("o1/resolved_config.json") +
                        " --ceiling 1000 --out " + fx.path("o3"),
                    log) == 0);
    const auto stats = json::parse(slurp(fx.root / "o3/organize_stats.json"));
    CHECK(stats["rows_dropped_ceiling"] == 40);  // aaa001 flies at 1200 ft
}

TEST_CASE("usage errors exit 2") {
    Fixture fx("usage");
    const auto log = fx.root / "log.txt";
    CHECK(run_cli("bogus", log) == 2);
    CHECK(run_cli("simulate --workload unknown --out " + fx.path("x"), log) == 2);
    CHECK(run_cli("bench --workload gaussian", log) == 2);  // --out missing
    CHECK(run_cli("--help", log) == 0);
}
