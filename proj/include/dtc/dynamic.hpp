#pragma once

#include "dtc/channels.hpp"
#include "dtc/routing.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace dtc {

enum class AtomRole : std::uint8_t { Idle, Channel, Reserve, PreUse };

/// Flying atoms available to the per-stage planner: ancillas (global atom
/// ids at or above the qubit count) and pre-use data qubits harvested into
/// the channel until their first gate.
struct AncillaPool {
  std::vector<int> ancillas;
  std::map<int, int> release_stage; ///< pre-use qubit -> stage of its first gate
  std::set<int> harvested;          ///< pre-use qubits currently on the channel
  std::map<int, AtomRole> role;

  [[nodiscard]] bool is_ancilla(int atom) const;
  /// Harvested qubits whose release stage is `stage`.
  [[nodiscard]] std::vector<int> due_for_release(int stage) const;
};

/// Per-pair outcome of the planner.
struct PairDecision {
  QubitPair pair;
  bool dt = false;
  PairReason reason = PairReason::TooExpensive;
  std::vector<Cell> chain; ///< relay cells, control side first
  int hops = 0;            ///< chain length minus one
  double dt_estimate = 0.0;
  double aod_estimate = 0.0;
};

struct DTStagePlan {
  DTChannel channel;
  PairClassification classification;
  std::vector<PairDecision> decisions;
  std::vector<MoveVector> moves;  ///< endpoint alignment, ancilla assignment, evictions
  std::vector<double> weights;    ///< routing priority, parallel to moves
  std::map<int, Cell> endpoint_cells;
  double backbone_reuse = 0.0;    ///< share of backbone cells kept from the previous channel
};

/// Static inputs of the planner shared by every stage.
struct PlannerContext {
  const HardwareConfig* hw = nullptr;
  int num_qubits = 0;
  std::map<int, Site> home; ///< reserved storage site of every atom
};

/// Where the planner would put a storage endpoint for anchor selection:
/// the nearest usable column at the first entanglement row.
[[nodiscard]] Cell storage_projection(const GeometrySpec& g, const Site& s);

/// Per-stage channel planning: grid, channel update, eligibility, branches,
/// Hungarian ancilla assignment and the TooExp / Infeasible post-check with
/// the two-leg fallback. Does not mutate `state`; the caller routes
/// `plan.moves`. `pool` roles are updated to the planned assignment.
[[nodiscard]] DTStagePlan plan_dt_stage(const Stage& stage, const MappingState& state,
                                        const DTChannel& prev, AncillaPool& pool,
                                        const PlannerContext& ctx);

/// Backbone for `anchor`: the free cells of the lattice column next to it.
[[nodiscard]] std::vector<Cell> backbone_for_anchor(const WeightedLattice& grid,
                                                    int anchor);

} // namespace dtc
