#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace trackforge::util {

struct ZipError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZipEntry {
    std::string name;
    std::string data;
};

// Deterministic zip writer: entries are stored uncompressed, sorted by name,
// with a fixed 1980-01-01 timestamp, so rewriting the same content yields a
// byte-identical archive. Readable by any standard zip tool.
void write_zip(const std::filesystem::path& path, std::vector<ZipEntry> entries);

// Reads a store-method zip produced by write_zip (or any tool that stores
// uncompressed entries). CRCs are verified. Throws ZipError on damage.
std::vector<ZipEntry> read_zip(const std::filesystem::path& path);

std::vector<std::string> zip_entry_names(const std::filesystem::path& path);

}  // namespace trackforge::util
