#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace pipedp {

// Cell combiner catalog. All members are associative on the value ranges the
// solvers produce; none is assumed to have an identity element, so every
// accumulation starts from an assignment.
enum class OpKind : std::uint8_t { min, max, saturating_add, modular_add };

inline constexpr std::int64_t kModulus = 2147483647;  // 2^31 - 1

struct SemigroupOp {
  OpKind kind = OpKind::min;

  std::int64_t apply(std::int64_t a, std::int64_t b) const;
  std::string_view name() const;

  static SemigroupOp from_name(std::string_view name);
  static const std::array<SemigroupOp, 4>& catalog();

  bool operator==(const SemigroupOp&) const = default;
};

}  // namespace pipedp
