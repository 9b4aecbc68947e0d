#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tsflow::detail {

// Broken-down ISO-8601 instant. Fields below the written precision default
// to their minimum.
struct CivilTime {
  int year = 0;
  int month = 1;
  int day = 1;
  int hour = 0;
  int minute = 0;
  int second = 0;
  char separator = 'T';
  // Number of leading components written: 1=year .. 6=second.
  int precision = 1;
  bool utc_suffix = false;
};

inline bool read_fixed(std::string_view s, std::size_t pos, std::size_t width, int &out) {
  if (pos + width > s.size()) {
    return false;
  }
  for (std::size_t i = pos; i < pos + width; ++i) {
    if (s[i] < '0' || s[i] > '9') {
      return false;
    }
  }
  const auto res = std::from_chars(s.data() + pos, s.data() + pos + width, out);
  return res.ec == std::errc{};
}

inline int days_in_month(int y, int m) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  return m == 2 && leap ? 29 : kDays[m - 1];
}

inline std::optional<CivilTime> parse_civil(std::string_view s) {
  CivilTime t;
  if (!read_fixed(s, 0, 4, t.year)) {
    return std::nullopt;
  }
  std::size_t pos = 4;
  auto expect = [&](char c) {
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  };
  if (pos < s.size()) {
    if (!expect('-') || !read_fixed(s, pos, 2, t.month)) return std::nullopt;
    pos += 2;
    t.precision = 2;
  }
  if (pos < s.size()) {
    if (!expect('-') || !read_fixed(s, pos, 2, t.day)) return std::nullopt;
    pos += 2;
    t.precision = 3;
  }
  if (pos < s.size()) {
    if (s[pos] != 'T' && s[pos] != ' ') return std::nullopt;
    t.separator = s[pos++];
    if (!read_fixed(s, pos, 2, t.hour)) return std::nullopt;
    pos += 2;
    if (!expect(':') || !read_fixed(s, pos, 2, t.minute)) return std::nullopt;
    pos += 2;
    t.precision = 5;
    if (pos < s.size() && s[pos] == ':') {
      ++pos;
      if (!read_fixed(s, pos, 2, t.second)) return std::nullopt;
      pos += 2;
      t.precision = 6;
    }
    if (pos < s.size() && s[pos] == 'Z') {
      t.utc_suffix = true;
      ++pos;
    }
  }
  if (pos != s.size()) {
    return std::nullopt;
  }
  if (t.month < 1 || t.month > 12 || t.day < 1 || t.day > days_in_month(t.year, t.month) ||
      t.hour > 23 || t.minute > 59 || t.second > 60) {
    return std::nullopt;
  }
  return t;
}

// Days since 1970-01-01 (proleptic Gregorian).
inline std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const int yoe = static_cast<int>(y - era * 400);
  const int doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const int doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline std::int64_t to_epoch_seconds(const CivilTime &t) {
  return days_from_civil(t.year, t.month, t.day) * 86400 + t.hour * 3600 + t.minute * 60 + t.second;
}

} // namespace tsflow::detail
