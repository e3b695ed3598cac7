#include "trackforge/ingest/observation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "trackforge/ingest/registry.hpp"
#include "trackforge/util/csv.hpp"

namespace trackforge::ingest {

namespace {

bool valid_icao_text(const std::string& s) {
    if (s.size() != 6) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isxdigit(c) != 0;
    });
}

std::optional<std::optional<double>> parse_optional(const std::string& field) {
    if (field.empty()) return std::optional<double>{};
    const auto value = util::parse_double(field);
    if (!value || !std::isfinite(*value)) return std::nullopt;
    return std::optional<double>{*value};
}

}  // namespace

std::optional<Observation> parse_observation_row(std::span<const std::string> fields) {
    if (fields.size() != 8) return std::nullopt;
    Observation obs;
    const auto time = util::parse_double(fields[0]);
    if (!time || !std::isfinite(*time)) return std::nullopt;
    obs.time_s = *time;

    obs.icao24 = fields[1];
    for (auto& c : obs.icao24)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (!valid_icao_text(obs.icao24)) return std::nullopt;

    const auto lat = util::parse_double(fields[2]);
    const auto lon = util::parse_double(fields[3]);
    if (!lat || !lon) return std::nullopt;
    if (*lat < -90.0 || *lat > 90.0) return std::nullopt;
    if (*lon < -180.0 || *lon >= 180.0) return std::nullopt;
    obs.lat_deg = *lat;
    obs.lon_deg = *lon;

    const auto alt = parse_optional(fields[4]);
    const auto gs = parse_optional(fields[5]);
    const auto heading = parse_optional(fields[6]);
    const auto vr = parse_optional(fields[7]);
    if (!alt || !gs || !heading || !vr) return std::nullopt;
    obs.alt_msl_ft = *alt;
    obs.ground_speed_kt = *gs;
    obs.heading_deg = *heading;
    obs.vert_rate_fpm = *vr;
    return obs;
}

namespace {

ObservationFile from_csv(const util::CsvFile& csv, const std::string& label) {
    if (util::join_csv(csv.header) != kObservationHeader)
        throw SchemaMismatch("observation header mismatch in " + label);

    ObservationFile out;
    out.rows.reserve(csv.rows.size());
    for (const auto& row : csv.rows) {
        if (auto obs = parse_observation_row(row))
            out.rows.push_back(std::move(*obs));
        else
            ++out.invalid_rows;
    }
    return out;
}

}  // namespace

ObservationFile parse_observations_text(std::string_view text, const std::string& label) {
    return from_csv(util::parse_csv_text(text), label);
}

ObservationFile read_observations(const std::filesystem::path& path) {
    util::CsvFile csv;
    try {
        csv = util::read_csv(path);
    } catch (const std::exception& e) {
        throw UnreadableFile(e.what());
    }
    return from_csv(csv, path.string());
}

void write_observations(const std::filesystem::path& path,
                        std::span<const Observation> rows) {
    std::string out(kObservationHeader);
    out += '\n';
    auto field = [](const std::optional<double>& v) {
        return v ? util::format_double(*v) : std::string{};
    };
    for (const auto& obs : rows) {
        out += util::format_double(obs.time_s);
        out += ',';
        out += obs.icao24;
        out += ',';
        out += util::format_double(obs.lat_deg);
        out += ',';
        out += util::format_double(obs.lon_deg);
        out += ',';
        out += field(obs.alt_msl_ft);
        out += ',';
        out += field(obs.ground_speed_kt);
        out += ',';
        out += field(obs.heading_deg);
        out += ',';
        out += field(obs.vert_rate_fpm);
        out += '\n';
    }
    util::write_text_file(path, out);
}

}  // namespace trackforge::ingest
