#include "trackforge/ingest/registry.hpp"

#include <algorithm>
#include <cctype>

#include "trackforge/util/csv.hpp"
#include "trackforge/util/timeparse.hpp"

namespace trackforge::ingest {

namespace {

bool is_icao24(const std::string& s) {
    if (s.size() != 6) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    });
}

std::string to_lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

// "YYYY-MM-DD" -> epoch day
std::optional<std::int64_t> parse_date(const std::string& text) {
    const auto epoch = util::parse_iso8601(text);
    if (!epoch || text.size() != 10) return std::nullopt;
    return static_cast<std::int64_t>(*epoch) / 86400;
}

}  // namespace

const char* aircraft_type_name(AircraftType type) {
    switch (type) {
        case AircraftType::fixed_wing_single: return "fixed_wing_single";
        case AircraftType::fixed_wing_multi: return "fixed_wing_multi";
        case AircraftType::rotorcraft: return "rotorcraft";
        case AircraftType::glider: return "glider";
        case AircraftType::balloon: return "balloon";
        case AircraftType::other: return "other";
    }
    return "other";
}

std::optional<AircraftType> aircraft_type_from_name(const std::string& name) {
    for (const auto type :
         {AircraftType::fixed_wing_single, AircraftType::fixed_wing_multi,
          AircraftType::rotorcraft, AircraftType::glider, AircraftType::balloon,
          AircraftType::other}) {
        if (name == aircraft_type_name(type)) return type;
    }
    return std::nullopt;
}

RegistryParseResult parse_registry(const std::vector<std::filesystem::path>& files) {
    RegistryParseResult result;
    std::map<std::string, RegistryRecord> best;

    for (const auto& file : files) {
        util::CsvFile csv;
        try {
            csv = util::read_csv(file);
        } catch (const std::exception& e) {
            throw UnreadableFile(e.what());
        }
        const std::vector<std::string> expected = {"icao24", "type", "seats", "expiration"};
        if (csv.header != expected)
            throw SchemaMismatch("registry header mismatch in " + file.string());

        for (std::size_t i = 0; i < csv.rows.size(); ++i) {
            const auto& row = csv.rows[i];
            const std::size_t line = i + 2;
            auto reject = [&](const std::string& reason) {
                result.rejects.push_back({file.string(), line, reason});
            };
            if (row.size() != 4) {
                reject("expected 4 fields, got " + std::to_string(row.size()));
                continue;
            }
            RegistryRecord record;
            record.icao24 = to_lower(row[0]);
            if (!is_icao24(record.icao24)) {
                reject("invalid icao24 '" + row[0] + "'");
                continue;
            }
            const auto type = aircraft_type_from_name(row[1]);
            if (!type) {
                reject("unknown aircraft type '" + row[1] + "'");
                continue;
            }
            record.type = *type;
            const auto seats = util::parse_int(row[2]);
            if (!seats || *seats < 0) {
                reject("invalid seat count '" + row[2] + "'");
                continue;
            }
            record.seats = static_cast<int>(*seats);
            const auto day = parse_date(row[3]);
            if (!day) {
                reject("invalid expiration date '" + row[3] + "'");
                continue;
            }
            record.expiration_day = *day;

            const auto it = best.find(record.icao24);
            if (it == best.end() || record.expiration_day >= it->second.expiration_day)
                best[record.icao24] = record;
        }
    }

    result.records.reserve(best.size());
    for (auto& [icao, record] : best) result.records.push_back(std::move(record));
    return result;
}

Registry::Registry(std::vector<RegistryRecord> records) {
    for (auto& record : records) {
        auto key = record.icao24;
        by_icao_.emplace(std::move(key), std::move(record));
    }
}

const RegistryRecord* Registry::find(const std::string& icao24) const {
    const auto it = by_icao_.find(icao24);
    return it == by_icao_.end() ? nullptr : &it->second;
}

}  // namespace trackforge::ingest
