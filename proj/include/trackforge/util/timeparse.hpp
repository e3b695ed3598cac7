#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace trackforge::util {

// Civil-date arithmetic on the proleptic Gregorian calendar, UTC only.
std::int64_t days_from_civil(int year, int month, int day);
void civil_from_days(std::int64_t days, int& year, int& month, int& day);

std::int64_t epoch_from_civil(int year, int month, int day,
                              int hour = 0, int minute = 0, int second = 0);

// Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM:SS[Z]", "YYYY-MM-DD HH:MM:SS",
// and the raw-file stem form "YYYY-MM-DD-HH". Returns epoch seconds.
std::optional<double> parse_iso8601(std::string_view text);

// "YYYY-MM-DDTHH:MM:SSZ" (fractional seconds truncated).
std::string format_iso8601(double epoch_s);
// "YYYY-MM-DD"
std::string format_date(std::int64_t epoch_day);

}  // namespace trackforge::util
