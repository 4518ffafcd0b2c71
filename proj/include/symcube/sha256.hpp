#ifndef SYMCUBE_SHA256_HPP
#define SYMCUBE_SHA256_HPP

#include <string>
#include <string_view>

namespace symcube {

// SHA-256 digest of a byte string, returned as lowercase hex.
std::string sha256_hex(std::string_view data);

}  // namespace symcube

#endif
