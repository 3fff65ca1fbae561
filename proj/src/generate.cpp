#include "pipedp/generate.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "pipedp/error.hpp"

namespace pipedp {

namespace {

// mt19937_64 output is pinned by the standard; draw with plain modulo so
// generated instances are byte-identical on every platform.
std::int64_t bounded(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

SdpInstance generate_sdp(const SdpGenParams& params) {
  if (params.k < 1) fail(errc::invalid_params, "k must be >= 1");
  SdpInstance inst;
  inst.n = params.n;
  inst.op = params.op;
  std::mt19937_64 rng(params.seed);

  if (params.consecutive) {
    for (std::int64_t a = params.k; a >= 1; --a) inst.offsets.offsets.push_back(a);
  } else {
    const std::int64_t cap = params.a1_cap > 0 ? params.a1_cap : 2 * params.k;
    if (cap < params.k) fail(errc::invalid_params, "offset cap smaller than k");
    std::unordered_set<std::int64_t> chosen{cap};  // a_1 is always the cap
    while (static_cast<std::int64_t>(chosen.size()) < params.k) {
      chosen.insert(bounded(rng, 1, cap - 1));
    }
    inst.offsets.offsets.assign(chosen.begin(), chosen.end());
    std::sort(inst.offsets.offsets.begin(), inst.offsets.offsets.end(), std::greater<>());
  }

  const std::int64_t a1 = inst.offsets.a1();
  if (inst.n <= a1) fail(errc::invalid_params, "n must exceed the largest offset");
  for (std::int64_t i = 0; i < a1; ++i) {
    inst.init.push_back(bounded(rng, 0, kInitValueRange - 1));
  }
  return validate(inst);
}

McmInstance generate_mcm(const McmGenParams& params) {
  if (params.n < 1) fail(errc::invalid_params, "n must be >= 1");
  if (params.dims_min < 1 || params.dims_min > params.dims_max) {
    fail(errc::invalid_params, "bad dimension range");
  }
  McmInstance inst;
  std::mt19937_64 rng(params.seed);
  for (std::int64_t i = 0; i <= params.n; ++i) {
    inst.dims.push_back(bounded(rng, params.dims_min, params.dims_max));
  }
  return validate(inst);
}

}  // namespace pipedp
