#include "trackforge/util/hash.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "trackforge/util/csv.hpp"

namespace trackforge::util {

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t hash_tree(const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    if (fs::exists(root)) {
        for (const auto& entry : fs::recursive_directory_iterator(root)) {
            if (entry.is_regular_file()) files.push_back(entry.path());
        }
    }
    std::vector<std::string> rels;
    rels.reserve(files.size());
    for (const auto& p : files) rels.push_back(fs::relative(p, root).generic_string());
    std::sort(rels.begin(), rels.end());

    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& rel : rels) {
        h = fnv1a(rel, h);
        h = fnv1a("\n", h);
        h = fnv1a(read_text_file(root / rel), h);
    }
    return h;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace trackforge::util
