#include "trackforge/util/timeparse.hpp"

#include <cmath>
#include <cstdio>

namespace trackforge::util {

// Howard Hinnant's civil date algorithms.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& year, int& month, int& day) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    month = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    year = static_cast<int>(y + (month <= 2));
}

std::int64_t epoch_from_civil(int year, int month, int day, int hour, int minute, int second) {
    return days_from_civil(year, month, day) * 86400 + hour * 3600 + minute * 60 + second;
}

namespace {

bool parse_fixed_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    int value = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        char c = s[i];
        if (c < '0' || c > '9') return false;
        value = value * 10 + (c - '0');
    }
    out = value;
    return true;
}

}  // namespace

std::optional<double> parse_iso8601(std::string_view t) {
    int y, mo, d;
    if (!parse_fixed_int(t, 0, 4, y) || t.size() < 10 || t[4] != '-' || t[7] != '-' ||
        !parse_fixed_int(t, 5, 2, mo) || !parse_fixed_int(t, 8, 2, d)) {
        return std::nullopt;
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31) return std::nullopt;
    if (t.size() == 10) {
        return static_cast<double>(epoch_from_civil(y, mo, d));
    }
    // "YYYY-MM-DD-HH"
    if (t.size() == 13 && t[10] == '-') {
        int h;
        if (!parse_fixed_int(t, 11, 2, h) || h > 23) return std::nullopt;
        return static_cast<double>(epoch_from_civil(y, mo, d, h));
    }
    if (t.size() < 19 || (t[10] != 'T' && t[10] != ' ')) return std::nullopt;
    int h, mi, se;
    if (t[13] != ':' || t[16] != ':' || !parse_fixed_int(t, 11, 2, h) ||
        !parse_fixed_int(t, 14, 2, mi) || !parse_fixed_int(t, 17, 2, se)) {
        return std::nullopt;
    }
    if (h > 23 || mi > 59 || se > 60) return std::nullopt;
    if (t.size() == 20 && t[19] != 'Z') return std::nullopt;
    if (t.size() > 20) return std::nullopt;
    return static_cast<double>(epoch_from_civil(y, mo, d, h, mi, se));
}

std::string format_iso8601(double epoch_s) {
    std::int64_t s = static_cast<std::int64_t>(std::floor(epoch_s));
    std::int64_t day = s >= 0 ? s / 86400 : (s - 86399) / 86400;
    int sec_of_day = static_cast<int>(s - day * 86400);
    int y, mo, d;
    civil_from_days(day, y, mo, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, mo, d,
                  sec_of_day / 3600, (sec_of_day / 60) % 60, sec_of_day % 60);
    return buf;
}

std::string format_date(std::int64_t epoch_day) {
    int y, mo, d;
    civil_from_days(epoch_day, y, mo, d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, mo, d);
    return buf;
}

}  // namespace trackforge::util
