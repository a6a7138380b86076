#include "vecsub/filter.hpp"

#include <cstdlib>

namespace vecsub {

std::int64_t support_cap() {
  static std::int64_t cap = [] {
    if (const char* env = std::getenv("VECSUB_SUPPORT_CAP")) {
      char* end = nullptr;
      long long v = std::strtoll(env, &end, 10);
      if (end != env && v > 0) return std::int64_t(v);
    }
    return std::int64_t(1) << 26;
  }();
  return cap;
}

}  // namespace vecsub
