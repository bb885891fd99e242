// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_PROFILE_COMMANDS_HPP
#define HONEYCLUST_PROFILE_COMMANDS_HPP

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "honeyclust/ingest/session.hpp"

namespace honeyclust::profile {

namespace cmd_detail {

/// Splits a raw shell line into statements on ';', '&&', '||', '|' and
/// newlines, honoring single/double quotes and backslash escapes. A statement
/// with an unterminated quote is reported via `unparsable` and dropped.
inline std::vector<std::string> split_statements(const std::string& raw,
                                                 std::size_t* unparsable) {
  std::vector<std::string> statements;
  std::string cur;
  char quote = 0;
  bool escaped = false;
  bool bad = false;
  auto flush = [&] {
    if (quote != 0) {
      bad = true;
      quote = 0;
    }
    if (bad) {
      if (unparsable) ++*unparsable;
    } else if (!cur.empty()) {
      statements.push_back(cur);
    }
    cur.clear();
    bad = false;
  };

  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    if (escaped) {
      cur += c;
      escaped = false;
      continue;
    }
    if (quote == '\'') {
      if (c == '\'') quote = 0;
      cur += c;
      continue;
    }
    if (quote == '"') {
      if (c == '\\') escaped = true;
      if (c == '"') quote = 0;
      cur += c;
      continue;
    }
    switch (c) {
      case '\\': escaped = true; cur += c; break;
      case '\'': quote = '\''; cur += c; break;
      case '"': quote = '"'; cur += c; break;
      case ';':
      case '\n':
        flush();
        break;
      case '&':
        if (i + 1 < raw.size() && raw[i + 1] == '&') {
          flush();
          ++i;
        } else {
          cur += c;
        }
        break;
      case '|':
        // both '||' and a single pipe separate statements; both sides matter
        if (i + 1 < raw.size() && raw[i + 1] == '|') ++i;
        flush();
        break;
      default:
        cur += c;
    }
  }
  flush();
  return statements;
}

inline std::vector<std::string> tokenize(const std::string& statement) {
  std::vector<std::string> tokens;
  std::string cur;
  char quote = 0;
  bool escaped = false;
  bool any = false;
  for (char c : statement) {
    if (escaped) {
      cur += c;
      escaped = false;
      any = true;
      continue;
    }
    if (quote != 0) {
      if (c == quote) {
        quote = 0;
      } else if (quote == '"' && c == '\\') {
        escaped = true;
      } else {
        cur += c;
      }
      continue;
    }
    if (c == '\'' || c == '"') {
      quote = c;
      any = true;
    } else if (c == '\\') {
      escaped = true;
      any = true;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      if (any && !cur.empty()) tokens.push_back(cur);
      cur.clear();
      any = false;
    } else {
      cur += c;
      any = true;
    }
  }
  if (any && !cur.empty()) tokens.push_back(cur);
  return tokens;
}

inline bool is_env_assignment(std::string_view t) {
  if (t.empty()) return false;
  const char c0 = t[0];
  if (!(std::isalpha(static_cast<unsigned char>(c0)) || c0 == '_')) return false;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const char c = t[i];
    if (c == '=') return true;
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return false;
}

inline bool is_redirection(std::string_view t) {
  std::size_t i = 0;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
  if (i >= t.size()) return false;
  if (t[i] == '&') ++i;  // &> and 2>&1 forms
  if (i >= t.size() || (t[i] != '>' && t[i] != '<')) return false;
  return true;
}

inline std::string basename_of(std::string_view path) {
  while (path.size() > 1 && path.back() == '/') path.remove_suffix(1);
  const auto slash = path.rfind('/');
  if (slash == std::string_view::npos) return std::string(path);
  return std::string(path.substr(slash + 1));
}

}  // namespace cmd_detail

/// Reduces a raw command line to the binaries it executes: statements split on
/// ';', '&&', '||', '|' and newlines; per statement, the first token after
/// stripping 'sudo', environment assignments and redirections; paths reduced
/// to their basename except relative executions ("./x.sh"), kept verbatim.
inline std::vector<std::string> normalize_command(const std::string& raw,
                                                  std::size_t* unparsable = nullptr) {
  std::vector<std::string> out;
  for (const auto& stmt : cmd_detail::split_statements(raw, unparsable)) {
    const auto tokens = cmd_detail::tokenize(stmt);
    std::string binary;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const auto& t = tokens[i];
      if (t == "sudo") continue;
      if (cmd_detail::is_env_assignment(t)) continue;
      if (cmd_detail::is_redirection(t)) {
        // a bare operator consumes the following target token
        if ((t.back() == '>' || t.back() == '<') && i + 1 < tokens.size()) ++i;
        continue;
      }
      binary = t;
      break;
    }
    if (binary.empty()) continue;
    if (binary.rfind("./", 0) == 0) {
      out.push_back(binary);
    } else if (binary.find('/') != std::string::npos) {
      const auto base = cmd_detail::basename_of(binary);
      if (!base.empty()) out.push_back(base);
    } else {
      out.push_back(binary);
    }
  }
  return out;
}

/// Session-level normalization: binaries from every command, in order.
inline std::vector<std::string> normalize_commands(
    const std::vector<ingest::CommandEvent>& commands, std::size_t* unparsable = nullptr) {
  std::vector<std::string> out;
  for (const auto& c : commands) {
    auto part = normalize_command(c.raw, unparsable);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace honeyclust::profile

#endif  // HONEYCLUST_PROFILE_COMMANDS_HPP
