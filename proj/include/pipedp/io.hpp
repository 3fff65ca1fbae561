#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "pipedp/analysis.hpp"
#include "pipedp/engine.hpp"
#include "pipedp/mcm.hpp"
#include "pipedp/sdp.hpp"

namespace pipedp {

// Line-oriented instance formats, bit-exact on round-trip:
//   sdp n k opname        |  mcm n
//   a_1 .. a_k            |  p_0 .. p_n
//   init_0 .. init_{a1-1} |
void write_sdp_instance(std::ostream& out, const SdpInstance& instance);
void write_mcm_instance(std::ostream& out, const McmInstance& instance);

std::string to_text(const SdpInstance& instance);
std::string to_text(const McmInstance& instance);

enum class InstanceKind : std::uint8_t { sdp, mcm };

struct ParsedInstance {
  InstanceKind kind = InstanceKind::sdp;
  std::optional<SdpInstance> sdp;
  std::optional<McmInstance> mcm;
};

ParsedInstance read_instance(std::istream& in);
ParsedInstance read_instance_file(const std::string& path);

/// One record per line: `head substep lane kind address`, canonical order.
std::string trace_to_text(const PipelineTrace& trace);

nlohmann::json to_json(const ConflictReport& report);
nlohmann::json to_json(const HazardReport& report);

}  // namespace pipedp
