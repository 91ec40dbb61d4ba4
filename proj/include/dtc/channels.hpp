#pragma once

#include "dtc/circuit.hpp"
#include "dtc/hardware.hpp"
#include "dtc/layout.hpp"
#include "dtc/optim.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

namespace dtc {

[[nodiscard]] inline Site ent_site(Cell c) { return {Zone::Entanglement, c.col, c.row}; }
[[nodiscard]] inline Cell ent_cell(const Site& s) { return {s.col, s.row}; }

/// Lattice over the entanglement zone with unit step costs.
[[nodiscard]] WeightedLattice ent_lattice(const GeometrySpec& g, double h_cost = 1.0,
                                          double v_cost = 1.0);

/// A relay structure in the entanglement zone: a backbone plus per-endpoint
/// branches, with the atoms that currently occupy it.
struct DTChannel {
  std::vector<Cell> backbone;
  std::map<int, std::vector<Cell>> branches; ///< endpoint qubit -> cells
  int anchor = -1;                           ///< anchor column, -1 if none
  std::set<int> channel_atoms;               ///< atoms on backbone or branches
  std::set<int> reserve_atoms;               ///< idle ancillas kept nearby

  [[nodiscard]] std::set<Cell> cells() const;
  [[nodiscard]] bool empty() const { return backbone.empty(); }

  bool operator==(const DTChannel&) const = default;
};

enum class PairReason : std::uint8_t { NearChain, CheapAlign, TooExpensive, Infeasible, TwoLeg };

[[nodiscard]] std::string_view reason_name(PairReason r);

struct PairClassification {
  std::vector<QubitPair> dt;
  std::vector<QubitPair> aod;
  std::map<QubitPair, PairReason> reason;

  /// dt and aod are disjoint and together hold exactly `pairs`.
  [[nodiscard]] bool partitions(const std::vector<QubitPair>& pairs) const;
};

// ---------------------------------------------------------------------------
// Static topology

/// Adjacent usable columns are paired; an odd leftover column maps to its
/// nearest paired column. Throws GeometryError with fewer than two columns.
[[nodiscard]] std::map<int, int> pairing_map(const GeometrySpec& g);

struct StaticTopology {
  std::vector<DTChannel> channels; ///< one per occupied column pair
  std::vector<Cell> links;         ///< cells joining neighbouring channels
  std::set<Cell> cells;            ///< every relay cell
  int ancillas_needed = 0;
};

/// Builds one channel per occupied column pair plus links so that every
/// pair of qubits is joined by a relay path. Qubit cells are never used.
/// Throws InfeasibleError if the free cells cannot connect all qubits.
[[nodiscard]] StaticTopology configure_static_channels(const std::map<int, Site>& targets,
                                                       const GeometrySpec& g);

/// Relay chain between the channel cells next to `a` and next to `b`,
/// using only `relays`. Empty result when no chain exists.
[[nodiscard]] std::vector<Cell> relay_chain(const GeometrySpec& g,
                                            const std::set<Cell>& relays, Cell a, Cell b);

/// Every cell of `relays` is reachable from every other, and each endpoint
/// in `endpoints` touches at least one relay.
[[nodiscard]] bool relays_connected(const std::set<Cell>& relays,
                                    const std::vector<Cell>& endpoints);

// ---------------------------------------------------------------------------
// Per-stage planning primitives

/// DT is used for `stage` when a qubit persists from `prev`, or when two of
/// its pairs touch a common column band (`band` maps qubit -> band).
[[nodiscard]] bool dt_enabled(const Stage& stage, const Stage* prev,
                              const std::map<int, int>* band = nullptr);

/// Position of a stage endpoint as seen by the planner.
struct EndpointView {
  int qubit = 0;
  Cell cell;             ///< current cell, or its projection when in storage
  bool in_storage = false;
};

/// Eligibility against the current channel cells. An endpoint is near when
/// within r_near steps of a relay cell; cheap when some free cell within
/// c_max steps is near (storage endpoints are cheap when any free near cell
/// exists, since they are loaded anyway).
[[nodiscard]] PairClassification
classify_pairs(const std::vector<QubitPair>& pairs, const std::set<Cell>& relays,
               const std::map<int, EndpointView>& endpoints, const std::set<Cell>& occupied,
               const GeometrySpec& g, const ChannelParams& cp);

/// Candidate set: the previous anchor and its usable neighbours, plus the
/// three usable columns with the largest endpoint weight. The winner minimizes
/// the summed lattice cost from each endpoint to its projection on the
/// candidate column; the previous anchor is kept within the hysteresis slack.
[[nodiscard]] int select_anchor_column(const std::vector<QubitPair>& pairs,
                                       const std::map<int, EndpointView>& endpoints,
                                       std::optional<int> prev_anchor,
                                       const WeightedLattice& grid, const GeometrySpec& g,
                                       const ChannelParams& cp);

/// Cells from the endpoint's neighbour to the nearest backbone cell, the
/// backbone cell excluded; vertical steps cost twice as much. Empty when the
/// endpoint already touches the backbone. Throws InfeasibleError when no
/// obstacle-free branch exists.
[[nodiscard]] std::vector<Cell> find_branch(const WeightedLattice& grid, Cell endpoint,
                                            const std::vector<Cell>& backbone);

/// L-shaped relay path from `a` to `b` through one corner, both legs free.
/// None when a and b share a row or column, or both corners are blocked.
[[nodiscard]] std::optional<std::vector<Cell>>
two_leg_fallback(Cell a, Cell b, const WeightedLattice& grid);

} // namespace dtc
