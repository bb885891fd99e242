// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_PROFILE_CAPABILITY_HPP
#define HONEYCLUST_PROFILE_CAPABILITY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "honeyclust/core/errors.hpp"

namespace honeyclust::profile {

/// Maps binary names to capability bit vectors. The vocabulary order is fixed
/// and versioned: it defines bit positions, so partitions are only comparable
/// across runs that share a map version.
class CapabilityMap {
public:
  CapabilityMap() = default;

  static CapabilityMap from_json(const nlohmann::json& j) {
    CapabilityMap m;
    m.version_ = j.at("version").get<int>();
    m.vocabulary_ = j.at("vocabulary").get<std::vector<std::string>>();
    if (m.vocabulary_.empty() || m.vocabulary_.size() > 64)
      throw ConfigError("capability map vocabulary must hold 1..64 tags");
    std::map<std::string, int> pos;
    for (std::size_t i = 0; i < m.vocabulary_.size(); ++i)
      pos[m.vocabulary_[i]] = static_cast<int>(i);
    for (const auto& [binary, tags] : j.at("binaries").items()) {
      std::uint64_t bits = 0;
      for (const auto& tag : tags) {
        const auto it = pos.find(tag.get<std::string>());
        if (it == pos.end())
          throw ConfigError("capability map: tag not in vocabulary: " + tag.get<std::string>());
        bits |= std::uint64_t{1} << it->second;
      }
      m.binaries_[binary] = bits;
    }
    return m;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["version"] = version_;
    j["vocabulary"] = vocabulary_;
    auto& bins = j["binaries"] = nlohmann::json::object();
    for (const auto& [name, bits] : binaries_) {
      auto tags = nlohmann::json::array();
      for (std::size_t i = 0; i < vocabulary_.size(); ++i)
        if (bits & (std::uint64_t{1} << i)) tags.push_back(vocabulary_[i]);
      bins[name] = std::move(tags);
    }
    return j;
  }

  int version() const { return version_; }
  std::size_t vocabulary_size() const { return vocabulary_.size(); }
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }

  /// Bit vector for a binary; unknown binaries map to the zero vector.
  std::uint64_t embed(const std::string& binary) const {
    const auto it = binaries_.find(binary);
    return it == binaries_.end() ? 0 : it->second;
  }

  bool has(const std::string& binary) const { return binaries_.count(binary) > 0; }

private:
  int version_ = 0;
  std::vector<std::string> vocabulary_;
  std::map<std::string, std::uint64_t> binaries_;
};

/// One capability vector per executed binary, order preserved.
inline std::vector<std::uint64_t> embed_session(const std::vector<std::string>& binaries,
                                                const CapabilityMap& cap_map) {
  std::vector<std::uint64_t> out;
  out.reserve(binaries.size());
  for (const auto& b : binaries) out.push_back(cap_map.embed(b));
  return out;
}

/// The shipped default map (data/capability_map.json carries the same
/// content). Tags follow the GTFOBins function taxonomy.
inline const char* default_capability_map_text() {
  return R"json({
  "version": 1,
  "vocabulary": ["shell", "command", "reverse-shell", "bind-shell", "file-upload",
                 "file-download", "file-write", "file-read", "library-load",
                 "suid", "sudo", "limited-suid"],
  "binaries": {
    "ash":     ["shell", "command", "file-write", "file-read", "suid", "sudo"],
    "at":      ["shell", "command", "sudo"],
    "awk":     ["shell", "command", "file-read", "file-write", "suid", "sudo"],
    "base32":  ["file-read", "suid", "sudo", "limited-suid"],
    "base64":  ["file-read", "suid", "sudo", "limited-suid"],
    "bash":    ["shell", "command", "reverse-shell", "file-upload", "file-download",
                "file-write", "file-read", "library-load", "suid", "sudo"],
    "busybox": ["shell", "command", "file-upload", "file-download", "file-write",
                "file-read", "suid", "sudo"],
    "cat":     ["file-read", "suid", "sudo", "limited-suid"],
    "cc":      ["shell", "command", "file-read", "file-write", "sudo"],
    "chmod":   ["suid", "sudo"],
    "chown":   ["suid", "sudo"],
    "cp":      ["file-write", "file-read", "suid", "sudo", "limited-suid"],
    "crontab": ["command", "sudo"],
    "curl":    ["file-upload", "file-download", "file-read", "file-write", "suid", "sudo"],
    "dash":    ["shell", "command", "file-write", "file-read", "suid", "sudo"],
    "dd":      ["file-write", "file-read", "suid", "sudo"],
    "diff":    ["file-read", "suid", "sudo"],
    "docker":  ["shell", "file-upload", "file-download", "file-write", "file-read",
                "suid", "sudo"],
    "echo":    ["file-write", "suid", "sudo"],
    "env":     ["shell", "command", "suid", "sudo"],
    "expect":  ["shell", "command", "suid", "sudo"],
    "find":    ["shell", "command", "suid", "sudo"],
    "ftp":     ["shell", "file-upload", "file-download", "sudo"],
    "gawk":    ["shell", "command", "file-read", "file-write", "suid", "sudo"],
    "gcc":     ["shell", "command", "file-read", "file-write", "sudo"],
    "gdb":     ["shell", "command", "file-upload", "file-download", "file-write",
                "file-read", "library-load", "suid", "sudo"],
    "grep":    ["file-read", "suid", "sudo"],
    "head":    ["file-read", "suid", "sudo"],
    "hexdump": ["file-read", "suid", "sudo"],
    "ip":      ["shell", "file-read", "suid", "sudo", "limited-suid"],
    "ksh":     ["shell", "command", "file-write", "file-read", "suid", "sudo"],
    "ld.so":   ["shell", "library-load", "suid", "sudo"],
    "ldconfig": ["library-load", "suid", "sudo"],
    "less":    ["shell", "file-read", "file-write", "suid", "sudo"],
    "ln":      ["sudo"],
    "lua":     ["shell", "command", "file-upload", "file-download", "file-write",
                "file-read", "suid", "sudo"],
    "make":    ["shell", "command", "file-write", "suid", "sudo"],
    "man":     ["shell", "command", "sudo"],
    "more":    ["file-read", "suid", "sudo"],
    "mount":   ["command", "sudo"],
    "mv":      ["file-write", "suid", "sudo"],
    "mysql":   ["shell", "command", "sudo"],
    "nano":    ["file-read", "file-write", "suid", "sudo"],
    "nc":      ["reverse-shell", "bind-shell", "file-upload", "file-download",
                "sudo", "limited-suid"],
    "ncat":    ["reverse-shell", "bind-shell", "file-upload", "file-download",
                "sudo", "limited-suid"],
    "nice":    ["shell", "command", "suid", "sudo"],
    "node":    ["shell", "command", "reverse-shell", "bind-shell", "file-upload",
                "file-download", "file-write", "file-read", "suid", "sudo"],
    "nohup":   ["shell", "command", "suid", "sudo"],
    "od":      ["file-read", "suid", "sudo"],
    "openssl": ["reverse-shell", "file-upload", "file-download", "file-write",
                "file-read", "library-load", "suid", "sudo"],
    "perl":    ["shell", "command", "reverse-shell", "file-read", "suid", "sudo"],
    "php":     ["shell", "command", "reverse-shell", "file-upload", "file-download",
                "file-write", "file-read", "suid", "sudo"],
    "pico":    ["file-read", "file-write", "suid", "sudo"],
    "pip":     ["shell", "command", "sudo"],
    "pip3":    ["shell", "command", "sudo"],
    "psql":    ["shell", "command", "sudo"],
    "python":  ["shell", "command", "reverse-shell", "bind-shell", "file-upload",
                "file-download", "file-write", "file-read", "library-load", "suid", "sudo"],
    "python2": ["shell", "command", "reverse-shell", "bind-shell", "file-upload",
                "file-download", "file-write", "file-read", "library-load", "suid", "sudo"],
    "python3": ["shell", "command", "reverse-shell", "bind-shell", "file-upload",
                "file-download", "file-write", "file-read", "library-load", "suid", "sudo"],
    "rsync":   ["shell", "command", "file-upload", "file-download", "file-write",
                "file-read", "suid", "sudo"],
    "ruby":    ["shell", "command", "reverse-shell", "file-upload", "file-download",
                "file-write", "file-read", "library-load", "suid", "sudo"],
    "scp":     ["shell", "file-upload", "file-download", "sudo", "limited-suid"],
    "screen":  ["shell", "file-write", "sudo"],
    "sed":     ["command", "file-read", "file-write", "suid", "sudo"],
    "service": ["command", "sudo"],
    "sh":      ["shell", "command", "file-write", "file-read", "suid", "sudo"],
    "socat":   ["shell", "reverse-shell", "bind-shell", "file-upload", "file-download",
                "file-write", "file-read", "suid", "sudo"],
    "sort":    ["file-read", "suid", "sudo"],
    "sqlite3": ["shell", "command", "file-read", "file-write", "sudo"],
    "ssh":     ["shell", "file-read", "sudo"],
    "strace":  ["shell", "command", "suid", "sudo"],
    "systemctl": ["command", "suid", "sudo"],
    "tac":     ["file-read", "suid", "sudo"],
    "tail":    ["file-read", "suid", "sudo"],
    "tar":     ["shell", "command", "file-read", "file-write", "suid", "sudo"],
    "tee":     ["file-write", "suid", "sudo"],
    "telnet":  ["shell", "reverse-shell", "sudo"],
    "tftp":    ["file-upload", "file-download", "suid", "sudo"],
    "timeout": ["shell", "command", "suid", "sudo"],
    "tmux":    ["shell", "sudo"],
    "unzip":   ["file-write", "sudo", "limited-suid"],
    "vi":      ["shell", "command", "file-read", "file-write", "suid", "sudo"],
    "vim":     ["shell", "command", "file-read", "file-write", "suid", "sudo"],
    "watch":   ["shell", "command", "suid", "sudo"],
    "wget":    ["file-upload", "file-download", "file-write", "suid", "sudo", "limited-suid"],
    "whois":   ["file-upload", "file-download"],
    "xargs":   ["shell", "command", "suid", "sudo"],
    "xxd":     ["file-read", "file-write", "suid", "sudo"],
    "zip":     ["shell", "command", "file-read", "sudo"],
    "zsh":     ["shell", "command", "file-write", "file-read", "suid", "sudo"]
  }
})json";
}

inline const CapabilityMap& default_capability_map() {
  static const CapabilityMap map =
      CapabilityMap::from_json(nlohmann::json::parse(default_capability_map_text()));
  return map;
}

}  // namespace honeyclust::profile

#endif  // HONEYCLUST_PROFILE_CAPABILITY_HPP
