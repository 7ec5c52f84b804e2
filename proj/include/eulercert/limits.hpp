#pragma once

#include <cstdint>

namespace eulercert {

/// Process-wide enumeration bounds. Defaults suit every fixture group.
struct Limits {
  static constexpr std::uint64_t kDefaultElementBound = 1'000'000;
  static constexpr std::size_t kDefaultClassBound = 60;

  static std::uint64_t element_bound();
  static void set_element_bound(std::uint64_t bound);
  static std::size_t class_bound();
  static void set_class_bound(std::size_t bound);
};

}  // namespace eulercert
