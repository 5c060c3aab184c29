#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace gradetree::detail {

class Fnv1a64 {
 public:
  void update(std::string_view bytes) {
    for (unsigned char c : bytes) {
      hash_ ^= c;
      hash_ *= 0x100000001b3ULL;
    }
  }
  // Field separator that cannot occur inside a CSV cell or JSON-decoded name.
  void separator() { update(std::string_view("\x1f", 1)); }

  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_));
    return "fnv1a64:" + std::string(buf);
  }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace gradetree::detail
