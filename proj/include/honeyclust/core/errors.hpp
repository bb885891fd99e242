// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_CORE_ERRORS_HPP
#define HONEYCLUST_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace honeyclust {

/// Bad user input: unreadable files, malformed config values, unknown options.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or inconsistent data encountered while parsing or aggregating.
class DataError : public std::runtime_error {
public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A strict-mode parse failure, carrying the 1-based input line number.
class MalformedLine : public DataError {
public:
  MalformedLine(std::size_t line_no, const std::string& why)
      : DataError("malformed line " + std::to_string(line_no) + ": " + why),
        line_no(line_no) {}
  std::size_t line_no;
};

/// An internal contract was violated; indicates a bug, not bad input.
class InvariantError : public std::logic_error {
public:
  explicit InvariantError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace honeyclust

#endif  // HONEYCLUST_CORE_ERRORS_HPP
