// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_PROFILE_COMMON_CREDENTIALS_HPP
#define HONEYCLUST_PROFILE_COMMON_CREDENTIALS_HPP

#include <set>
#include <string>
#include <utility>

namespace honeyclust::profile {

using Credential = std::pair<std::string, std::string>;  // (username, password)

/// The default filter of commonly tried credentials: the top-100 list seen on
/// the honeypots (a few entries repeat in the source list; the set collapses
/// them). Used to keep mass-guessed logins out of the credential-sharing graph.
inline const std::set<Credential>& common_credentials() {
  static const std::set<Credential> creds = {
      {"admin", ""},
      {"admin", "admin"},
      {"admin", "admin123"},
      {"admin", "123456"},
      {"pi", "raspberry"},
      {"pi", "raspberryraspberry993311"},
      {"admin", "password"},
      {"root", "admin"},
      {"support", "support"},
      {"root", "root"},
      {"root", "123456"},
      {"user", "user"},
      {"ubnt", "ubnt"},
      {"root", "1234"},
      {"root", "password"},
      {"root", "12345"},
      {"test", "test"},
      {"admin", "1234"},
      {"admin", "12345"},
      {"root", "111111"},
      {"admin", "&"},
      {"user", "1234"},
      {"ubuntu", "ubuntu"},
      {"admin", "default"},
      {"service", "service"},
      {"root", "default"},
      {"root", "000000"},
      {"root", "welc0me"},
      {"root", "123"},
      {"root", "ubnt"},
      {"root", "0000"},
      {"root", "uClinux"},
      {"admin", "admin1234"},
      {"root", "Zte521"},
      {"root", "system"},
      {"root", "dreambox"},
      {"default", "default"},
      {"root", "openelec"},
      {"postgres", "postgres"},
      {"root", "1"},
      {"guest", "guest"},
      {"root", "raspberrypi"},
      {"osmc", "osmc"},
      {"admin", "1111"},
      {"admin", "7ujMko0admin"},
      {"oracle", "oracle"},
      {"admin", "aerohive"},
      {"root", "waldo"},
      {"root", "seiko2005"},
      {"root", "rpitc"},
      {"root", "nosoup4u"},
      {"admin", "motorola"},
      {"root", "anko"},
      {"root", "toor"},
      {"admin", "changeme"},
      {"root", "12345678"},
      {"admin", "pfsense"},
      {"root", "admintrup"},
      {"root", "!@"},
      {"root", "xmhdipc"},
      {"guest", "123456"},
      {"test", "123456"},
      {"admin", "manager"},
      {"user", "1"},
      {"usuario", "usuario"},
      {"admin", "123"},
      {"ftpuser", "ftpuser"},
      {"root", "root123"},
      {"vyatta", "vyatta"},
      {"ftp", "ftp"},
      {"debian", "temppwd"},
      {"root", "123456789"},
      {"admin", "admin1"},
      {"operator", "operator"},
      {"root", "P@ssw0rd"},
      {"bananapi", "bananapi"},
      {"xbian", "raspberry"},
      {"root", "abcd1234"},
      {"root", "1q2w3e4r"},
      {"vyos", "vyos"},
      {"root", "1234567"},
      {"root", "qazwsxedc"},
      {"root", "test"},
      {"1234", "1234"},
      {"support", "support123"},
      {"root", "abc123"},
      {"root", "1qaz2wsx"},
      {"pi", "bananapi"},
      {"testuser", "testuser"},
      {"hadoop", "123123"},
      {"root", "p@ssw0rd"},
      {"postgres", "123456"},
      {"backup", "backup"},
      {"git", "git"},
      {"ftp", "123456"},
      {"username", "password"},
      {"root", "root1234"},
  };
  return creds;
}

}  // namespace honeyclust::profile

#endif  // HONEYCLUST_PROFILE_COMMON_CREDENTIALS_HPP
