// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_PROFILE_PORTS_HPP
#define HONEYCLUST_PROFILE_PORTS_HPP

#include "honeyclust/core/errors.hpp"

namespace honeyclust::profile {

enum class PortClass { web, mail, unusual };

/// Outbound port taxonomy: web {80, 443}, mail {25, 110, 465, 587, 993},
/// everything else unusual.
inline PortClass classify_port(int port) {
  if (port < 1 || port > 65535) throw DataError("port out of range: " + std::to_string(port));
  switch (port) {
    case 80:
    case 443:
      return PortClass::web;
    case 25:
    case 110:
    case 465:
    case 587:
    case 993:
      return PortClass::mail;
    default:
      return PortClass::unusual;
  }
}

inline const char* port_class_name(PortClass c) {
  switch (c) {
    case PortClass::web: return "web";
    case PortClass::mail: return "mail";
    default: return "unusual";
  }
}

}  // namespace honeyclust::profile

#endif  // HONEYCLUST_PROFILE_PORTS_HPP
