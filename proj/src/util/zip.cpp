#include "trackforge/util/zip.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "trackforge/util/csv.hpp"

namespace trackforge::util {

namespace {

constexpr std::uint32_t kLocalSig = 0x04034b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kEndSig = 0x06054b50;
// DOS date for 1980-01-01, time 00:00:00.
constexpr std::uint16_t kDosDate = 0x0021;
constexpr std::uint16_t kDosTime = 0;

void put16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put32(std::string& out, std::uint32_t v) {
    put16(out, static_cast<std::uint16_t>(v & 0xffff));
    put16(out, static_cast<std::uint16_t>((v >> 16) & 0xffff));
}

std::uint16_t get16(const std::string& s, std::size_t pos) {
    return static_cast<std::uint16_t>(static_cast<unsigned char>(s[pos]) |
                                      (static_cast<unsigned char>(s[pos + 1]) << 8));
}

std::uint32_t get32(const std::string& s, std::size_t pos) {
    return static_cast<std::uint32_t>(get16(s, pos)) |
           (static_cast<std::uint32_t>(get16(s, pos + 2)) << 16);
}

std::uint32_t crc_of(const std::string& data) {
    return static_cast<std::uint32_t>(
        ::crc32(0L, reinterpret_cast<const Bytef*>(data.data()),
                static_cast<uInt>(data.size())));
}

}  // namespace

void write_zip(const std::filesystem::path& path, std::vector<ZipEntry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const ZipEntry& a, const ZipEntry& b) { return a.name < b.name; });

    std::string out;
    std::string central;
    for (const ZipEntry& e : entries) {
        const std::uint32_t offset = static_cast<std::uint32_t>(out.size());
        const std::uint32_t crc = crc_of(e.data);
        const std::uint32_t size = static_cast<std::uint32_t>(e.data.size());

        put32(out, kLocalSig);
        put16(out, 10);  // version needed
        put16(out, 0);   // flags
        put16(out, 0);   // method: store
        put16(out, kDosTime);
        put16(out, kDosDate);
        put32(out, crc);
        put32(out, size);
        put32(out, size);
        put16(out, static_cast<std::uint16_t>(e.name.size()));
        put16(out, 0);  // extra length
        out += e.name;
        out += e.data;

        put32(central, kCentralSig);
        put16(central, 20);  // version made by
        put16(central, 10);  // version needed
        put16(central, 0);
        put16(central, 0);
        put16(central, kDosTime);
        put16(central, kDosDate);
        put32(central, crc);
        put32(central, size);
        put32(central, size);
        put16(central, static_cast<std::uint16_t>(e.name.size()));
        put16(central, 0);  // extra
        put16(central, 0);  // comment
        put16(central, 0);  // disk number
        put16(central, 0);  // internal attrs
        put32(central, 0);  // external attrs
        put32(central, offset);
        central += e.name;
    }

    const std::uint32_t cd_offset = static_cast<std::uint32_t>(out.size());
    out += central;
    put32(out, kEndSig);
    put16(out, 0);
    put16(out, 0);
    put16(out, static_cast<std::uint16_t>(entries.size()));
    put16(out, static_cast<std::uint16_t>(entries.size()));
    put32(out, static_cast<std::uint32_t>(central.size()));
    put32(out, cd_offset);
    put16(out, 0);  // comment length

    write_text_file(path, out);
}

std::vector<ZipEntry> read_zip(const std::filesystem::path& path) {
    std::string buf;
    try {
        buf = read_text_file(path);
    } catch (const std::runtime_error& e) {
        throw ZipError(e.what());
    }
    if (buf.size() < 22) throw ZipError("zip too small: " + path.string());

    // Locate the end-of-central-directory record (no comment in our archives,
    // but scan backwards anyway for tool compatibility).
    std::size_t eocd = std::string::npos;
    const std::size_t scan_limit = buf.size() >= 66000 ? buf.size() - 66000 : 0;
    for (std::size_t pos = buf.size() - 22 + 1; pos-- > scan_limit;) {
        if (get32(buf, pos) == kEndSig) {
            eocd = pos;
            break;
        }
    }
    if (eocd == std::string::npos) throw ZipError("no end-of-central-directory: " + path.string());

    const std::uint16_t n_entries = get16(buf, eocd + 10);
    std::size_t pos = get32(buf, eocd + 16);

    std::vector<ZipEntry> entries;
    entries.reserve(n_entries);
    for (std::uint16_t i = 0; i < n_entries; ++i) {
        if (pos + 46 > buf.size() || get32(buf, pos) != kCentralSig) {
            throw ZipError("corrupt central directory: " + path.string());
        }
        const std::uint16_t method = get16(buf, pos + 10);
        const std::uint32_t crc = get32(buf, pos + 16);
        const std::uint32_t csize = get32(buf, pos + 20);
        const std::uint32_t usize = get32(buf, pos + 24);
        const std::uint16_t name_len = get16(buf, pos + 28);
        const std::uint16_t extra_len = get16(buf, pos + 30);
        const std::uint16_t comment_len = get16(buf, pos + 32);
        const std::uint32_t local_off = get32(buf, pos + 42);
        if (pos + 46 + name_len > buf.size()) throw ZipError("truncated central entry");
        std::string name = buf.substr(pos + 46, name_len);
        pos += 46 + name_len + extra_len + comment_len;

        if (method != 0) {
            throw ZipError("unsupported compression method in " + path.string() +
                           " entry " + name);
        }
        if (local_off + 30 > buf.size() || get32(buf, local_off) != kLocalSig) {
            throw ZipError("corrupt local header for entry " + name);
        }
        const std::uint16_t lname = get16(buf, local_off + 26);
        const std::uint16_t lextra = get16(buf, local_off + 28);
        const std::size_t data_off = local_off + 30 + lname + lextra;
        if (data_off + csize > buf.size()) throw ZipError("truncated entry data: " + name);
        std::string data = buf.substr(data_off, csize);
        if (data.size() != usize || crc_of(data) != crc) {
            throw ZipError("CRC mismatch in entry " + name);
        }
        entries.push_back(ZipEntry{std::move(name), std::move(data)});
    }
    return entries;
}

std::vector<std::string> zip_entry_names(const std::filesystem::path& path) {
    std::vector<std::string> names;
    for (auto& e : read_zip(path)) names.push_back(e.name);
    return names;
}

}  // namespace trackforge::util
