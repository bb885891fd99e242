// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_CORE_TIME_HPP
#define HONEYCLUST_CORE_TIME_HPP

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <optional>
#include <string>

#include "honeyclust/core/errors.hpp"

namespace honeyclust {

// All timestamps are UTC microseconds since the Unix epoch. One integer
// clock keeps interval binning and DTW alignment exact.
using Instant = std::int64_t;
using Duration = std::int64_t;

inline constexpr Duration kMicrosecond = 1;
inline constexpr Duration kSecond = 1'000'000;
inline constexpr Duration kMinute = 60 * kSecond;
inline constexpr Duration kHour = 60 * kMinute;
inline constexpr Duration kDay = 24 * kHour;

inline Duration seconds_to_duration(double s) {
  return static_cast<Duration>(s * static_cast<double>(kSecond) + (s >= 0 ? 0.5 : -0.5));
}

inline double duration_to_seconds(Duration d) {
  return static_cast<double>(d) / static_cast<double>(kSecond);
}

namespace detail {

inline bool parse_fixed_digits(const char*& p, int n, long long& out) {
  long long v = 0;
  for (int i = 0; i < n; ++i) {
    if (*p < '0' || *p > '9') return false;
    v = v * 10 + (*p - '0');
    ++p;
  }
  out = v;
  return true;
}

// Days since epoch for a civil date, valid for years 1970..9999.
inline long long days_from_civil(long long y, long long m, long long d) {
  y -= m <= 2;
  const long long era = (y >= 0 ? y : y - 399) / 400;
  const long long yoe = y - era * 400;
  const long long doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const long long doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

inline void civil_from_days(long long z, long long& y, long long& m, long long& d) {
  z += 719468;
  const long long era = (z >= 0 ? z : z - 146096) / 146097;
  const long long doe = z - era * 146097;
  const long long yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = yoe + era * 400;
  const long long doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const long long mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y += (m <= 2);
}

}  // namespace detail

/// Parses an RFC 3339 timestamp ("2020-01-02T03:04:05.678901Z", offsets
/// allowed) to UTC microseconds. Fractional digits beyond six are truncated.
inline std::optional<Instant> parse_rfc3339(const std::string& s) {
  const char* p = s.c_str();
  long long year, mon, day, hour, min, sec;
  if (!detail::parse_fixed_digits(p, 4, year) || *p++ != '-') return std::nullopt;
  if (!detail::parse_fixed_digits(p, 2, mon) || *p++ != '-') return std::nullopt;
  if (!detail::parse_fixed_digits(p, 2, day)) return std::nullopt;
  if (*p != 'T' && *p != 't' && *p != ' ') return std::nullopt;
  ++p;
  if (!detail::parse_fixed_digits(p, 2, hour) || *p++ != ':') return std::nullopt;
  if (!detail::parse_fixed_digits(p, 2, min) || *p++ != ':') return std::nullopt;
  if (!detail::parse_fixed_digits(p, 2, sec)) return std::nullopt;
  if (mon < 1 || mon > 12 || day < 1 || day > 31 || hour > 23 || min > 59 || sec > 60)
    return std::nullopt;

  long long micros = 0;
  if (*p == '.') {
    ++p;
    int digits = 0;
    while (*p >= '0' && *p <= '9') {
      if (digits < 6) micros = micros * 10 + (*p - '0');
      ++digits;
      ++p;
    }
    if (digits == 0) return std::nullopt;
    while (digits < 6) { micros *= 10; ++digits; }
  }

  long long offset_s = 0;
  if (*p == 'Z' || *p == 'z') {
    ++p;
  } else if (*p == '+' || *p == '-') {
    const int sign = (*p == '-') ? -1 : 1;
    ++p;
    long long oh, om;
    if (!detail::parse_fixed_digits(p, 2, oh) || *p++ != ':') return std::nullopt;
    if (!detail::parse_fixed_digits(p, 2, om)) return std::nullopt;
    offset_s = sign * (oh * 3600 + om * 60);
  } else {
    return std::nullopt;
  }
  if (*p != '\0') return std::nullopt;

  const long long days = detail::days_from_civil(year, mon, day);
  const long long total_s = days * 86400 + hour * 3600 + min * 60 + sec - offset_s;
  return total_s * kSecond + micros;
}

/// Formats UTC microseconds as "YYYY-MM-DDThh:mm:ss.ffffffZ".
inline std::string format_rfc3339(Instant t) {
  long long total_s = t / kSecond;
  long long micros = t % kSecond;
  if (micros < 0) { micros += kSecond; total_s -= 1; }
  long long days = total_s / 86400;
  long long sod = total_s % 86400;
  if (sod < 0) { sod += 86400; days -= 1; }
  long long y, m, d;
  detail::civil_from_days(days, y, m, d);
  char buf[72];
  std::snprintf(buf, sizeof(buf), "%04lld-%02lld-%02lldT%02lld:%02lld:%02lld.%06lldZ",
                y, m, d, sod / 3600, (sod / 60) % 60, sod % 60, micros);
  return buf;
}

inline Instant parse_rfc3339_or_throw(const std::string& s) {
  auto t = parse_rfc3339(s);
  if (!t) throw DataError("bad RFC 3339 timestamp: \"" + s + "\"");
  return *t;
}

}  // namespace honeyclust

#endif  // HONEYCLUST_CORE_TIME_HPP
