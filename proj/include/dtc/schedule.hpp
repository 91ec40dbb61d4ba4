#pragma once

#include "dtc/circuit.hpp"
#include "dtc/hardware.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dtc {

enum class InstrKind : std::uint8_t {
  Activate,
  Move,
  Park,
  BigMove,
  Deactivate,
  OneQubit,
  RemoteCZ,
  LocalCZ,
};

[[nodiscard]] std::string_view instr_name(InstrKind kind);
[[nodiscard]] InstrKind parse_instr_kind(std::string_view name);
[[nodiscard]] bool is_motion(InstrKind kind);

/// One timed hardware operation.
///
/// For motion kinds `from[i] -> sites[i]` is the path of `atoms[i]`. For
/// gates `sites` holds the gate qubits' sites (control first for RemoteCZ),
/// and `chain` the relay sites of a RemoteCZ.
struct Instruction {
  InstrKind kind = InstrKind::OneQubit;
  std::vector<int> atoms;
  std::vector<Site> sites;
  std::vector<Site> from;
  std::vector<Site> chain;
  double start_us = 0.0;
  double duration_us = 0.0;
  int hops = -1;  ///< relay hop count of a RemoteCZ
  int batch = -1; ///< motion batch id
  int gate = -1;  ///< index of the realized circuit gate
  int stage = -1; ///< circuit stage, -1 for configuration

  [[nodiscard]] double end_us() const { return start_us + duration_us; }

  bool operator==(const Instruction&) const = default;
};

/// Time window spent on one circuit stage.
struct StageSpan {
  int stage = 0;
  bool two_qubit = false;
  double start_us = 0.0;
  double end_us = 0.0;

  bool operator==(const StageSpan&) const = default;
};

struct Schedule {
  static constexpr int kVersion = 1;

  std::string mode;
  HardwareConfig config; ///< with the cropped geometry actually used
  Circuit circuit;
  int num_atoms = 0;     ///< data qubits first, then ancillas
  std::vector<Site> initial; ///< per atom
  std::vector<Instruction> instructions;
  std::vector<StageSpan> stages;
  double config_us = 0.0; ///< end of the configuration phase
  double total_us = 0.0;

  bool operator==(const Schedule&) const = default;
};

/// 64-bit FNV-1a.
[[nodiscard]] std::uint64_t fnv1a(std::string_view text);
[[nodiscard]] std::uint64_t config_hash(const HardwareConfig& cfg);
[[nodiscard]] std::uint64_t circuit_hash(const Circuit& c);

/// Versioned JSON document; identical schedules serialize to identical bytes.
[[nodiscard]] std::string schedule_to_json(const Schedule& s);
/// Throws ParseError on malformed input or a version mismatch.
[[nodiscard]] Schedule schedule_from_json(std::string_view text);

} // namespace dtc
