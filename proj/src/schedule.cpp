#include "dtc/schedule.hpp"

#include "dtc/error.hpp"

#include <json.hpp>

#include <array>
#include <cstdio>

namespace dtc {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::array<std::pair<InstrKind, std::string_view>, 8> kKindNames{{
    {InstrKind::Activate, "activate"},
    {InstrKind::Move, "move"},
    {InstrKind::Park, "park"},
    {InstrKind::BigMove, "bigmove"},
    {InstrKind::Deactivate, "deactivate"},
    {InstrKind::OneQubit, "1q"},
    {InstrKind::RemoteCZ, "rcz"},
    {InstrKind::LocalCZ, "lcz"},
}};

Zone parse_zone(std::string_view tag) {
  if (tag == "S") {
    return Zone::Storage;
  }
  if (tag == "E") {
    return Zone::Entanglement;
  }
  if (tag == "P") {
    return Zone::Parking;
  }
  throw ParseError("unknown zone tag '" + std::string(tag) + "'", 1, 1);
}

Json site_json(const Site& s) { return Json::array({zone_tag(s.zone), s.col, s.row}); }

Site site_from(const Json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw ParseError("site must be [zone, col, row]", 1, 1);
  }
  return {parse_zone(j[0].get<std::string>()), j[1].get<int>(), j[2].get<int>()};
}

Json sites_json(const std::vector<Site>& sites) {
  Json out = Json::array();
  for (const auto& s : sites) {
    out.push_back(site_json(s));
  }
  return out;
}

std::vector<Site> sites_from(const Json& j) {
  std::vector<Site> out;
  for (const auto& e : j) {
    out.push_back(site_from(e));
  }
  return out;
}

std::string hex64(std::uint64_t v) {
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(v));
  return buf.data();
}

std::string geometry_text(const GeometrySpec& g) {
  return "storage_cols=" + std::to_string(g.storage_cols) +
         ";storage_rows=" + std::to_string(g.storage_rows) +
         ";ent_cols=" + std::to_string(g.ent_cols) + ";ent_rows=" + std::to_string(g.ent_rows);
}

} // namespace

std::string_view instr_name(InstrKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) {
      return name;
    }
  }
  return "?";
}

InstrKind parse_instr_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) {
      return k;
    }
  }
  throw ParseError("unknown instruction kind '" + std::string(name) + "'", 1, 1);
}

bool is_motion(InstrKind kind) {
  switch (kind) {
  case InstrKind::Activate:
  case InstrKind::Move:
  case InstrKind::Park:
  case InstrKind::BigMove:
  case InstrKind::Deactivate:
    return true;
  default:
    return false;
  }
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t config_hash(const HardwareConfig& cfg) {
  return fnv1a(format_config(cfg) + geometry_text(cfg.geometry));
}

std::uint64_t circuit_hash(const Circuit& c) { return fnv1a(format_circuit(c)); }

std::string schedule_to_json(const Schedule& s) {
  Json doc;
  doc["version"] = Schedule::kVersion;
  doc["mode"] = s.mode;
  doc["config_hash"] = hex64(config_hash(s.config));
  doc["circuit_hash"] = hex64(circuit_hash(s.circuit));
  doc["config"] = format_config(s.config);
  const auto& g = s.config.geometry;
  doc["geometry"] = {{"storage_cols", g.storage_cols},
                     {"storage_rows", g.storage_rows},
                     {"ent_cols", g.ent_cols},
                     {"ent_rows", g.ent_rows}};
  doc["circuit"] = format_circuit(s.circuit);
  doc["num_qubits"] = s.circuit.num_qubits;
  doc["num_atoms"] = s.num_atoms;
  doc["initial"] = sites_json(s.initial);
  doc["config_us"] = s.config_us;
  doc["total_us"] = s.total_us;
  Json stages = Json::array();
  for (const auto& st : s.stages) {
    stages.push_back({{"stage", st.stage},
                      {"two_qubit", st.two_qubit},
                      {"start_us", st.start_us},
                      {"end_us", st.end_us}});
  }
  doc["stages"] = std::move(stages);
  Json instrs = Json::array();
  for (const auto& in : s.instructions) {
    Json j;
    j["kind"] = instr_name(in.kind);
    j["atoms"] = in.atoms;
    j["sites"] = sites_json(in.sites);
    if (!in.from.empty()) {
      j["from"] = sites_json(in.from);
    }
    j["start_us"] = in.start_us;
    j["duration_us"] = in.duration_us;
    if (in.kind == InstrKind::RemoteCZ) {
      j["L"] = in.hops;
      j["chain"] = sites_json(in.chain);
    }
    if (in.batch >= 0) {
      j["batch"] = in.batch;
    }
    if (in.gate >= 0) {
      j["gate"] = in.gate;
    }
    j["stage"] = in.stage;
    instrs.push_back(std::move(j));
  }
  doc["instructions"] = std::move(instrs);
  return doc.dump(1) + "\n";
}

Schedule schedule_from_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("schedule JSON: ") + e.what(), 1,
                     static_cast<int>(e.byte));
  }
  try {
    if (doc.at("version").get<int>() != Schedule::kVersion) {
      throw ParseError("unsupported schedule version", 1, 1);
    }
    Schedule s;
    s.mode = doc.at("mode").get<std::string>();
    s.config = load_config_text(doc.at("config").get<std::string>());
    const auto& g = doc.at("geometry");
    s.config.geometry.storage_cols = g.at("storage_cols").get<int>();
    s.config.geometry.storage_rows = g.at("storage_rows").get<int>();
    s.config.geometry.ent_cols = g.at("ent_cols").get<int>();
    s.config.geometry.ent_rows = g.at("ent_rows").get<int>();
    s.config.validate();
    s.circuit = parse_circuit(doc.at("circuit").get<std::string>());
    if (doc.at("config_hash").get<std::string>() != hex64(config_hash(s.config)) ||
        doc.at("circuit_hash").get<std::string>() != hex64(circuit_hash(s.circuit))) {
      throw ParseError("schedule header hash does not match its contents", 1, 1);
    }
    s.num_atoms = doc.at("num_atoms").get<int>();
    s.initial = sites_from(doc.at("initial"));
    s.config_us = doc.at("config_us").get<double>();
    s.total_us = doc.at("total_us").get<double>();
    for (const auto& st : doc.at("stages")) {
      s.stages.push_back({st.at("stage").get<int>(), st.at("two_qubit").get<bool>(),
                          st.at("start_us").get<double>(), st.at("end_us").get<double>()});
    }
    for (const auto& j : doc.at("instructions")) {
      Instruction in;
      in.kind = parse_instr_kind(j.at("kind").get<std::string>());
      in.atoms = j.at("atoms").get<std::vector<int>>();
      in.sites = sites_from(j.at("sites"));
      if (j.contains("from")) {
        in.from = sites_from(j.at("from"));
      }
      in.start_us = j.at("start_us").get<double>();
      in.duration_us = j.at("duration_us").get<double>();
      if (j.contains("L")) {
        in.hops = j.at("L").get<int>();
        in.chain = sites_from(j.at("chain"));
      }
      in.batch = j.value("batch", -1);
      in.gate = j.value("gate", -1);
      in.stage = j.at("stage").get<int>();
      s.instructions.push_back(std::move(in));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("schedule JSON: ") + e.what(), 1, 1);
  }
}

} // namespace dtc
