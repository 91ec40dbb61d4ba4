#pragma once

#include "dtc/circuit.hpp"
#include "dtc/hardware.hpp"

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace dtc {

/// Where every atom currently sits. Data qubits and ancillas live in separate
/// maps but share one occupancy set, so no two atoms can collide.
class MappingState {
public:
  MappingState() = default;
  explicit MappingState(GeometrySpec g) : geometry_(std::move(g)) {}

  void place_qubit(int q, const Site& s);
  void place_ancilla(int a, const Site& s);
  /// Moves whichever atom occupies `from` to `to`.
  void relocate(const Site& from, const Site& to);
  void remove_ancilla(int a);

  [[nodiscard]] bool occupied(const Site& s) const { return occupancy_.contains(s); }
  [[nodiscard]] const Site& qubit_site(int q) const { return qubits_.at(q); }
  [[nodiscard]] const Site& ancilla_site(int a) const { return ancillas_.at(a); }
  [[nodiscard]] bool has_qubit(int q) const { return qubits_.contains(q); }
  [[nodiscard]] bool has_ancilla(int a) const { return ancillas_.contains(a); }
  [[nodiscard]] const std::map<int, Site>& qubits() const { return qubits_; }
  [[nodiscard]] const std::map<int, Site>& ancillas() const { return ancillas_; }
  [[nodiscard]] const std::set<Site>& occupancy() const { return occupancy_; }

  /// Qubit at `s`, if any.
  [[nodiscard]] std::optional<int> qubit_at(const Site& s) const;
  /// Ancilla at `s`, if any.
  [[nodiscard]] std::optional<int> ancilla_at(const Site& s) const;

private:
  void claim(const Site& s, int owner);
  void release(const Site& s);

  std::optional<GeometrySpec> geometry_;
  std::map<int, Site> qubits_;
  std::map<int, Site> ancillas_;
  std::set<Site> occupancy_;
  std::map<Site, int> owner_; // qubit q as q, ancilla a as -(a + 1)
};

/// Usable-column entanglement sites at or below ent_first_row_y, sorted by
/// (column, row).
[[nodiscard]] std::vector<Site> entanglement_target_sites(const GeometrySpec& g);

/// Qubit indices by descending priority, ties by ascending index.
[[nodiscard]] std::vector<int> priority_order(const PriorityTable& pri);

/// Greedy priority-first matching of qubits onto sorted target sites.
/// Throws GeometryError when there are fewer sites than qubits.
[[nodiscard]] std::map<int, Site>
assign_entanglement_targets(const PriorityTable& pri, const GeometrySpec& g);

/// Column-dominant cost of parking a qubit whose entanglement target is
/// `target` at storage site `s`.
[[nodiscard]] double storage_cost(const Site& s, const Site& target,
                                  const GeometrySpec& g, const LayoutWeights& w);

/// Greedy minimum-cost storage matching in descending priority order; the
/// cheapest free site wins, ties by (column, row). Throws GeometryError when
/// storage is too small.
[[nodiscard]] std::map<int, Site>
assign_storage_sites(const std::map<int, Site>& targets, const PriorityTable& pri,
                     const GeometrySpec& g, const LayoutWeights& w = {},
                     const std::set<Site>& excluded = {});

/// Cheapest free storage site for an atom headed towards `target`.
[[nodiscard]] std::optional<Site>
cheapest_storage_site(const Site& target, const GeometrySpec& g,
                      const LayoutWeights& w, const std::set<Site>& taken);

} // namespace dtc
