#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace spt {

using Date = std::chrono::year_month_day;

// Strict ISO-8601 calendar date (YYYY-MM-DD). Returns nullopt on any
// malformed or non-existent date.
std::optional<Date> parse_date(std::string_view text);

std::string format_date(const Date& date);

// Last calendar day of the month `offset` months after `start`'s month.
Date month_end(const Date& start, int offset);

}  // namespace spt
