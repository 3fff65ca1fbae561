#include "pipedp/io.hpp"

#include <fstream>
#include <sstream>

#include "pipedp/error.hpp"

namespace pipedp {

void write_sdp_instance(std::ostream& out, const SdpInstance& instance) {
  out << "sdp " << instance.n << ' ' << instance.offsets.k() << ' ' << instance.op.name() << '\n';
  for (std::size_t i = 0; i < instance.offsets.offsets.size(); ++i) {
    out << (i ? " " : "") << instance.offsets.offsets[i];
  }
  out << '\n';
  for (std::size_t i = 0; i < instance.init.size(); ++i) {
    out << (i ? " " : "") << instance.init[i];
  }
  out << '\n';
}

void write_mcm_instance(std::ostream& out, const McmInstance& instance) {
  out << "mcm " << instance.n() << '\n';
  for (std::size_t i = 0; i < instance.dims.size(); ++i) {
    out << (i ? " " : "") << instance.dims[i];
  }
  out << '\n';
}

std::string to_text(const SdpInstance& instance) {
  std::ostringstream out;
  write_sdp_instance(out, instance);
  return out.str();
}

std::string to_text(const McmInstance& instance) {
  std::ostringstream out;
  write_mcm_instance(out, instance);
  return out.str();
}

namespace {

std::int64_t parse_int(std::istream& in, const char* what) {
  std::int64_t value;
  if (!(in >> value)) fail(errc::invalid_params, std::string("malformed instance: missing ") + what);
  return value;
}

}  // namespace

ParsedInstance read_instance(std::istream& in) {
  std::string header;
  if (!(in >> header)) fail(errc::invalid_params, "empty instance file");
  ParsedInstance parsed;
  if (header == "sdp") {
    parsed.kind = InstanceKind::sdp;
    SdpInstance inst;
    inst.n = parse_int(in, "n");
    const std::int64_t k = parse_int(in, "k");
    std::string opname;
    if (!(in >> opname)) fail(errc::invalid_params, "malformed instance: missing operator name");
    inst.op = SemigroupOp::from_name(opname);
    for (std::int64_t i = 0; i < k; ++i) inst.offsets.offsets.push_back(parse_int(in, "offset"));
    const std::int64_t a1 = inst.offsets.offsets.empty() ? 0 : inst.offsets.a1();
    for (std::int64_t i = 0; i < a1; ++i) inst.init.push_back(parse_int(in, "initial value"));
    validate(inst);
    parsed.sdp = std::move(inst);
  } else if (header == "mcm") {
    parsed.kind = InstanceKind::mcm;
    McmInstance inst;
    const std::int64_t n = parse_int(in, "n");
    for (std::int64_t i = 0; i <= n; ++i) inst.dims.push_back(parse_int(in, "dimension"));
    validate(inst);
    parsed.mcm = std::move(inst);
  } else {
    fail(errc::invalid_params, "unknown instance header: " + header);
  }
  return parsed;
}

ParsedInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::invalid_params, "cannot open instance file: " + path);
  return read_instance(in);
}

std::string trace_to_text(const PipelineTrace& trace) {
  std::ostringstream out;
  for (const AccessRecord& r : trace.records) {
    out << r.head << ' ' << r.substep << ' ' << r.lane << ' '
        << (r.kind == AccessKind::read ? "read" : "write") << ' ' << r.address << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const ConflictReport& report) {
  nlohmann::json groups = nlohmann::json::array();
  for (const ConflictGroup& g : report.groups) {
    groups.push_back({{"head", g.head},
                      {"substep", g.substep},
                      {"kind", g.kind == AccessKind::read ? "read" : "write"},
                      {"address", g.address},
                      {"lanes", g.lanes}});
  }
  return {{"max_group_size", report.max_group_size},
          {"groups", std::move(groups)},
          {"per_step_cost", {{"first_head", report.first_head}, {"cost", report.per_step_cost}}}};
}

nlohmann::json to_json(const HazardReport& report) {
  nlohmann::json hazards = nlohmann::json::array();
  for (const HazardRecord& h : report.hazards) {
    hazards.push_back({{"head", h.head},
                       {"substep", h.substep},
                       {"lane", h.lane},
                       {"address", h.address},
                       {"finalization_head", h.finalization_head},
                       {"finalization_substep", h.finalization_substep}});
  }
  return {{"hazards", std::move(hazards)}};
}

}  // namespace pipedp
