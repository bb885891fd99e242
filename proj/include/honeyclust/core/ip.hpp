// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_CORE_IP_HPP
#define HONEYCLUST_CORE_IP_HPP

#include <arpa/inet.h>

#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <functional>
#include <optional>
#include <string>

namespace honeyclust {

/// An IPv4 or IPv6 address with a total order (v4 first, then by numeric
/// value). The order fixes consensus sweep order and all serialized output.
class IpAddr {
public:
  IpAddr() = default;

  static std::optional<IpAddr> parse(const std::string& s) {
    IpAddr ip;
    in_addr a4{};
    if (inet_pton(AF_INET, s.c_str(), &a4) == 1) {
      ip.v4_ = true;
      std::memcpy(ip.bytes_.data() + 12, &a4, 4);
      return ip;
    }
    in6_addr a6{};
    if (inet_pton(AF_INET6, s.c_str(), &a6) == 1) {
      ip.v4_ = false;
      std::memcpy(ip.bytes_.data(), &a6, 16);
      return ip;
    }
    return std::nullopt;
  }

  std::string to_string() const {
    char buf[INET6_ADDRSTRLEN] = {0};
    if (v4_) {
      in_addr a4{};
      std::memcpy(&a4, bytes_.data() + 12, 4);
      inet_ntop(AF_INET, &a4, buf, sizeof(buf));
    } else {
      in6_addr a6{};
      std::memcpy(&a6, bytes_.data(), 16);
      inet_ntop(AF_INET6, &a6, buf, sizeof(buf));
    }
    return buf;
  }

  bool is_v4() const { return v4_; }

  friend std::strong_ordering operator<=>(const IpAddr& a, const IpAddr& b) {
    if (a.v4_ != b.v4_) return a.v4_ ? std::strong_ordering::less : std::strong_ordering::greater;
    const int c = std::memcmp(a.bytes_.data(), b.bytes_.data(), 16);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend bool operator==(const IpAddr& a, const IpAddr& b) {
    return a.v4_ == b.v4_ && a.bytes_ == b.bytes_;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto b : bytes_) { h ^= b; h *= 1099511628211ull; }
    h ^= static_cast<std::uint64_t>(v4_);
    return static_cast<std::size_t>(h);
  }

private:
  std::array<std::uint8_t, 16> bytes_{};
  bool v4_ = true;
};

}  // namespace honeyclust

template <>
struct std::hash<honeyclust::IpAddr> {
  std::size_t operator()(const honeyclust::IpAddr& ip) const { return ip.hash(); }
};

#endif  // HONEYCLUST_CORE_IP_HPP
