#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>

namespace trackforge::util {

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ull);

// Order-independent-of-traversal digest of a directory tree: FNV over
// "<relative path>\n<content>" of every regular file, visited in sorted
// relative-path order. Two trees hash equal iff same files, same bytes.
std::uint64_t hash_tree(const std::filesystem::path& root);

// splitmix64; used to derive per-cell seeds from a global seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace trackforge::util
