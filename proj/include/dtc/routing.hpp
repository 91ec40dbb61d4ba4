#pragma once

#include "dtc/hardware.hpp"
#include "dtc/layout.hpp"
#include "dtc/optim.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace dtc {

/// Requested relocation of one atom. Atom ids are global: data qubits first,
/// ancillas after them.
struct MoveVector {
  int atom = 0;
  Site src;
  Site dst;
  double distance = 0.0; ///< straight-line src-dst distance, um

  bool operator==(const MoveVector&) const = default;
};

[[nodiscard]] MoveVector make_move(const GeometrySpec& g, int atom, const Site& src,
                                   const Site& dst);

enum class PrimitiveKind : std::uint8_t { Activate, Move, Park, BigMove, Deactivate };

[[nodiscard]] std::string_view primitive_name(PrimitiveKind kind);

/// One AOD operation acting on a set of atoms in parallel. `from`/`to` are
/// parallel to `atoms`; Activate and Deactivate have from == to.
struct MovePrimitive {
  PrimitiveKind kind = PrimitiveKind::Move;
  std::vector<int> atoms;
  std::vector<Site> from;
  std::vector<Site> to;
  double duration = 0.0;
};

/// Primitives that run back to back as one hardware step.
struct MoveBatch {
  std::vector<MovePrimitive> primitives;
  std::vector<MoveVector> moves; ///< completed or started by this batch
  bool fallback = false;

  [[nodiscard]] double duration() const;
};

/// Pairwise move conflicts: shared endpoints, AOD order violations and
/// trajectories passing within `clearance` of the other move's endpoints or
/// of any stationary atom.
[[nodiscard]] ConflictGraph build_conflict_graph(std::span<const MoveVector> moves,
                                                 const MappingState& m,
                                                 const GeometrySpec& g,
                                                 double clearance);

/// True when the AOD can carry both moves together without reordering
/// its rows or columns.
[[nodiscard]] bool aod_order_compatible(const GeometrySpec& g, const MoveVector& a,
                                        const MoveVector& b);

/// Realizes `moves` as parallel batches, updating `m` as batches complete.
/// `weight` (parallel to `moves`, optional) steers the MIS towards urgent
/// moves. Blocked moves are routed through the parking row. Throws
/// RoutingError when a move can never complete.
[[nodiscard]] std::vector<MoveBatch> schedule_moves(std::vector<MoveVector> moves,
                                                    MappingState& m,
                                                    const HardwareConfig& hw,
                                                    std::vector<double> weight = {});

/// First half of the parking detour (Activate, Park into the parking row).
/// Returns the batch and the parking site used; `m` is updated.
[[nodiscard]] std::pair<MoveBatch, Site> staged_fallback(const MoveVector& move,
                                                         MappingState& m,
                                                         const HardwareConfig& hw);

/// Second half of the detour (Park re-pickup, BigMove, Deactivate) for an
/// atom currently held at `parked`.
[[nodiscard]] MoveBatch complete_fallback(const MoveVector& move, const Site& parked,
                                          MappingState& m, const HardwareConfig& hw);

} // namespace dtc
