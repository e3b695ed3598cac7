#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trackforge::util {

// Minimal CSV support. Fields in every format this project reads or writes
// (ids, numbers, ISO timestamps, path-like keys) never contain commas,
// quotes, or newlines, so no quoting layer is implemented.
std::vector<std::string> split_csv_line(std::string_view line);
std::string join_csv(const std::vector<std::string>& fields);

struct CsvFile {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvFile parse_csv_text(std::string_view text);

// Reads an entire CSV file; the first line becomes `header`.
// Throws std::runtime_error if the file cannot be opened.
CsvFile read_csv(const std::filesystem::path& path);

// Shortest round-trip representation of a double (std::to_chars).
// Used for all numeric CSV output so reruns are byte-identical.
std::string format_double(double value);

std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

// Writes `content` to `path` atomically enough for our purposes
// (parent directories created first).
void write_text_file(const std::filesystem::path& path, std::string_view content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace trackforge::util
