#pragma once

#include <filesystem>
#include <string>

#include "trackforge/ingest/registry.hpp"

namespace trackforge::ingest {

// Four-tier layout <year>/<type>/<seat-bucket>/<leaf>. Every tier stays well
// under 1000 distinct directories: one year per run, 6 types (+ `unknown`),
// 6 seat buckets (+ `_`), and 256 two-hex-digit leaves.
struct HierarchyPath {
    int year = 0;
    std::string type_dir;
    std::string seat_dir;
    std::string leaf_dir;

    std::filesystem::path rel_path() const;
};

// {0, 1, 2-3, 4-9, 10-50, 51+}
std::string seat_bucket(int seats);

HierarchyPath hierarchy_path(const RegistryRecord& record, int year);

// Observations whose address is not in the registry: <year>/unknown/_/<xx>.
HierarchyPath unknown_hierarchy_path(const std::string& icao24, int year);

}  // namespace trackforge::ingest
