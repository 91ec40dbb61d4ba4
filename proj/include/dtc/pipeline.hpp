#pragma once

#include "dtc/circuit.hpp"
#include "dtc/hardware.hpp"
#include "dtc/schedule.hpp"
#include "dtc/validate.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dtc {

enum class CompileMode : std::uint8_t { Static, Dynamic, AodBaseline };

[[nodiscard]] std::string_view mode_name(CompileMode mode);
/// Accepts "static", "dynamic" and "aod-baseline". Throws ConfigError.
[[nodiscard]] CompileMode parse_mode(std::string_view name);

/// Per two-qubit stage summary.
struct StageReport {
  int stage = 0;
  bool dt = false;       ///< relay transport used in this stage
  int dt_pairs = 0;
  int aod_pairs = 0;
  int channel_sites = 0;
  double backbone_reuse = 0.0;
  double span_us = 0.0;
};

struct CompileReport {
  std::string mode;
  int num_qubits = 0;
  int num_atoms = 0;
  int num_stages = 0;
  int two_qubit_stages = 0;
  double total_us = 0.0;
  double entangling_us = 0.0; ///< summed spans of two-qubit stages
  double config_us = 0.0;
  double move_us = 0.0;       ///< summed duration of motion batches
  int move_batches = 0;
  int fallback_batches = 0;
  int one_qubit_gates = 0;
  int remote_cz = 0;
  int local_cz = 0;
  int hop_total = 0;
  int max_hops = 0;
  int dt_pairs = 0;
  int aod_pairs = 0;
  std::map<std::string, int> reasons;
  std::vector<StageReport> stages;
  FidelityReport fidelity;

  /// Largest backbone reuse over consecutive relay stages.
  [[nodiscard]] double max_backbone_reuse() const;
};

[[nodiscard]] std::string report_to_json(const CompileReport& r);

struct CompileResult {
  Schedule schedule;
  CompileReport report;
};

/// Fixed mapping: every qubit parks at its entanglement target for the whole
/// run and all two-qubit gates are remote CZs over a static relay network.
[[nodiscard]] CompileResult compile_static(const Circuit& c, const HardwareConfig& hw);

/// Per-stage relay channels built from flying ancillas and pre-use qubits,
/// with AOD shuttling for pairs the channel does not serve well.
[[nodiscard]] CompileResult compile_dynamic(const Circuit& c, const HardwareConfig& hw);

/// Movement-only reference: pairs are shuttled next to each other for local
/// CZs and returned to storage after every two-qubit stage.
[[nodiscard]] CompileResult compile_aod_baseline(const Circuit& c, const HardwareConfig& hw);

[[nodiscard]] CompileResult compile(const Circuit& c, const HardwareConfig& hw,
                                    CompileMode mode);

} // namespace dtc
