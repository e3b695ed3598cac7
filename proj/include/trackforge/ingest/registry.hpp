#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trackforge::ingest {

struct IngestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnreadableFile : IngestError {
    using IngestError::IngestError;
};
struct SchemaMismatch : IngestError {
    using IngestError::IngestError;
};
struct PartialArchive : IngestError {
    using IngestError::IngestError;
};

enum class AircraftType {
    fixed_wing_single,
    fixed_wing_multi,
    rotorcraft,
    glider,
    balloon,
    other,
};

const char* aircraft_type_name(AircraftType type);
std::optional<AircraftType> aircraft_type_from_name(const std::string& name);

struct RegistryRecord {
    std::string icao24;  // six lowercase hex digits
    AircraftType type = AircraftType::other;
    int seats = 0;
    std::int64_t expiration_day = 0;  // days since 1970-01-01
};

struct RegistryReject {
    std::string file;
    std::size_t line = 0;  // 1-based, header is line 1
    std::string reason;
};

struct RegistryParseResult {
    std::vector<RegistryRecord> records;  // sorted by icao24, one per address
    std::vector<RegistryReject> rejects;
};

// Registry CSV: header `icao24,type,seats,expiration`, expiration being a
// YYYY-MM-DD date. Addresses are lowercased before validation. Rows that fail
// validation land in the rejects report; duplicate addresses keep the record
// with the latest expiration (later row wins ties). Throws UnreadableFile or
// SchemaMismatch per file.
RegistryParseResult parse_registry(const std::vector<std::filesystem::path>& files);

class Registry {
public:
    Registry() = default;
    explicit Registry(std::vector<RegistryRecord> records);

    const RegistryRecord* find(const std::string& icao24) const;
    std::size_t size() const { return by_icao_.size(); }

private:
    std::map<std::string, RegistryRecord> by_icao_;
};

}  // namespace trackforge::ingest
