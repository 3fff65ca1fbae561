#pragma once

#include <stdexcept>
#include <string>

namespace pipedp {

enum class errc {
  non_decreasing_offsets,
  non_positive_offset,
  init_length_mismatch,
  table_too_small,
  coord_out_of_range,
  address_out_of_range,
  base_cell_has_no_deps,
  too_large_for_brute_force,
  stall_livelock,
  weight_overflow,
  invalid_params,
};

const char* errc_name(errc code);

/// Library-wide exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace pipedp
