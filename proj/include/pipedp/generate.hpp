#pragma once

#include <cstdint>

#include "pipedp/mcm.hpp"
#include "pipedp/sdp.hpp"

namespace pipedp {

inline constexpr std::int64_t kInitValueRange = std::int64_t{1} << 20;

struct SdpGenParams {
  std::int64_t n = 64;
  std::int64_t k = 4;
  SemigroupOp op{OpKind::min};
  std::uint64_t seed = 0;
  bool consecutive = false;   // offsets (k, k-1, ..., 1)
  std::int64_t a1_cap = 0;    // 0: default 2k; otherwise max offset value
};

/// Deterministic instance from the seed: offsets drawn distinct-decreasing in
/// [1, a1_cap] with the cap itself as a_1, initial values uniform in
/// [0, 2^20).
SdpInstance generate_sdp(const SdpGenParams& params);

struct McmGenParams {
  std::int64_t n = 8;
  std::uint64_t seed = 0;
  std::int64_t dims_min = 1;
  std::int64_t dims_max = 50;
};

McmInstance generate_mcm(const McmGenParams& params);

}  // namespace pipedp
