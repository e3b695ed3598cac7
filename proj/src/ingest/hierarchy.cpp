#include "trackforge/ingest/hierarchy.hpp"

namespace trackforge::ingest {

std::filesystem::path HierarchyPath::rel_path() const {
    return std::filesystem::path(std::to_string(year)) / type_dir / seat_dir / leaf_dir;
}

std::string seat_bucket(int seats) {
    if (seats <= 0) return "0";
    if (seats == 1) return "1";
    if (seats <= 3) return "2-3";
    if (seats <= 9) return "4-9";
    if (seats <= 50) return "10-50";
    return "51+";
}

HierarchyPath hierarchy_path(const RegistryRecord& record, int year) {
    HierarchyPath path;
    path.year = year;
    path.type_dir = aircraft_type_name(record.type);
    path.seat_dir = seat_bucket(record.seats);
    path.leaf_dir = record.icao24.substr(0, 2);
    return path;
}

HierarchyPath unknown_hierarchy_path(const std::string& icao24, int year) {
    HierarchyPath path;
    path.year = year;
    path.type_dir = "unknown";
    path.seat_dir = "_";
    path.leaf_dir = icao24.substr(0, 2);
    return path;
}

}  // namespace trackforge::ingest
