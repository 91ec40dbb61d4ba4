#pragma once

#include "dtc/schedule.hpp"

#include <string>
#include <vector>

namespace dtc {

struct Diagnostic {
  int instruction = -1; ///< -1 for schedule-level findings
  std::string category;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

/// Replays `s` against its own geometry. Categories: order, overlap,
/// position, collision, crossing, clearance, chain, local-cz, duration,
/// coverage, total. Empty result means the schedule is legal.
[[nodiscard]] std::vector<Diagnostic> validate_schedule(const Schedule& s);

/// Product-form estimate; `total` equals the product of the five factors.
struct FidelityReport {
  double gate = 1.0;
  double dt_hop = 1.0;
  double transfer = 1.0;
  double idle = 1.0;
  double crosstalk = 1.0;
  double total = 1.0;

  int one_qubit_gates = 0;
  int two_qubit_gates = 0;
  int hop_sum = 0;       ///< sum of L over remote CZs
  int transfers = 0;     ///< pickups plus drop-offs
  int pulse_events = 0;  ///< Rydberg pulse windows
  long long idle_exposures = 0; ///< idle zone qubits summed over pulse events
  double idle_us = 0.0;  ///< summed idle time of data qubits
};

[[nodiscard]] FidelityReport fidelity_report(const Schedule& s);

[[nodiscard]] std::string fidelity_to_json(const FidelityReport& f);
/// Header `factor,value,count` plus one row per factor and a total row.
[[nodiscard]] std::string fidelity_to_csv(const FidelityReport& f);

} // namespace dtc
