// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_CORE_TEXTIO_HPP
#define HONEYCLUST_CORE_TEXTIO_HPP

#include <zlib.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "honeyclust/core/errors.hpp"

namespace honeyclust {

inline bool has_gzip_suffix(const std::string& path) {
  return path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
}

/// Reads a whole text file into lines, transparently inflating files with a
/// ".gz" suffix or a gzip magic header. Trailing '\r' is stripped.
inline std::vector<std::string> read_lines(const std::string& path) {
  std::string data;
  {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    data = ss.str();
  }
  const bool gz = has_gzip_suffix(path) ||
                  (data.size() >= 2 && static_cast<unsigned char>(data[0]) == 0x1f &&
                   static_cast<unsigned char>(data[1]) == 0x8b);
  if (gz) {
    gzFile f = gzopen(path.c_str(), "rb");
    if (!f) throw ConfigError("cannot open gzip file: " + path);
    std::string out;
    char buf[1 << 16];
    int n;
    while ((n = gzread(f, buf, sizeof(buf))) > 0) out.append(buf, static_cast<std::size_t>(n));
    const bool bad = n < 0;
    gzclose(f);
    if (bad) throw DataError("gzip decompression failed: " + path);
    data = std::move(out);
  }
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t nl = data.find('\n', pos);
    if (nl == std::string::npos) nl = data.size();
    std::size_t end = nl;
    if (end > pos && data[end - 1] == '\r') --end;
    lines.emplace_back(data.substr(pos, end - pos));
    pos = nl + 1;
  }
  return lines;
}

/// Writes text to `path` atomically (tmp file + rename). Gzip-compresses when
/// the path ends in ".gz".
inline void write_text_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp";
  if (has_gzip_suffix(path)) {
    // Raw deflate with a zeroed header mtime; gzopen would stamp the current
    // time and identical runs would no longer be byte-identical.
    z_stream zs{};
    if (deflateInit2(&zs, 9, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK)
      throw DataError("deflateInit2 failed");
    gz_header hdr{};
    hdr.os = 255;
    deflateSetHeader(&zs, &hdr);
    std::string out;
    out.resize(deflateBound(&zs, static_cast<uLong>(content.size())) + 32);
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(content.data()));
    zs.avail_in = static_cast<uInt>(content.size());
    zs.next_out = reinterpret_cast<Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = deflate(&zs, Z_FINISH);
    const std::size_t produced = out.size() - zs.avail_out;
    deflateEnd(&zs);
    if (rc != Z_STREAM_END) throw DataError("gzip write failed: " + tmp);
    out.resize(produced);
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw ConfigError("cannot create output file: " + tmp);
    o << out;
    o.close();
    if (!o) throw DataError("write failed: " + tmp);
  } else {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot create output file: " + tmp);
    out << content;
    out.close();
    if (!out) throw DataError("write failed: " + tmp);
  }
  fs::rename(tmp, target);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace honeyclust

#endif  // HONEYCLUST_CORE_TEXTIO_HPP
