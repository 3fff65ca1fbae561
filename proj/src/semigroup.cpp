#include "pipedp/semigroup.hpp"

#include <algorithm>
#include <limits>

#include "pipedp/error.hpp"

namespace pipedp {

namespace {

std::int64_t saturating_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    return b > 0 ? std::numeric_limits<std::int64_t>::max()
                 : std::numeric_limits<std::int64_t>::min();
  }
  return out;
}

std::int64_t normalize_mod(std::int64_t a) {
  std::int64_t r = a % kModulus;
  return r < 0 ? r + kModulus : r;
}

}  // namespace

std::int64_t SemigroupOp::apply(std::int64_t a, std::int64_t b) const {
  switch (kind) {
    case OpKind::min:
      return std::min(a, b);
    case OpKind::max:
      return std::max(a, b);
    case OpKind::saturating_add:
      return saturating_add(a, b);
    case OpKind::modular_add:
      return (normalize_mod(a) + normalize_mod(b)) % kModulus;
  }
  fail(errc::invalid_params, "unknown operator kind");
}

std::string_view SemigroupOp::name() const {
  switch (kind) {
    case OpKind::min:
      return "min";
    case OpKind::max:
      return "max";
    case OpKind::saturating_add:
      return "saturating-add";
    case OpKind::modular_add:
      return "modular-add";
  }
  return "?";
}

SemigroupOp SemigroupOp::from_name(std::string_view name) {
  for (const SemigroupOp& op : catalog()) {
    if (op.name() == name) return op;
  }
  fail(errc::invalid_params, "unknown operator name: " + std::string(name));
}

const std::array<SemigroupOp, 4>& SemigroupOp::catalog() {
  static const std::array<SemigroupOp, 4> ops = {
      SemigroupOp{OpKind::min},
      SemigroupOp{OpKind::max},
      SemigroupOp{OpKind::saturating_add},
      SemigroupOp{OpKind::modular_add},
  };
  return ops;
}

const char* errc_name(errc code) {
  switch (code) {
    case errc::non_decreasing_offsets:
      return "NonDecreasingOffsets";
    case errc::non_positive_offset:
      return "NonPositiveOffset";
    case errc::init_length_mismatch:
      return "InitLengthMismatch";
    case errc::table_too_small:
      return "TableTooSmall";
    case errc::coord_out_of_range:
      return "CoordOutOfRange";
    case errc::address_out_of_range:
      return "AddressOutOfRange";
    case errc::base_cell_has_no_deps:
      return "BaseCellHasNoDeps";
    case errc::too_large_for_brute_force:
      return "TooLargeForBruteForce";
    case errc::stall_livelock:
      return "StallLivelock";
    case errc::weight_overflow:
      return "WeightOverflow";
    case errc::invalid_params:
      return "InvalidParams";
  }
  return "UnknownError";
}

}  // namespace pipedp
