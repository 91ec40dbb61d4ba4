#include "dtc/layout.hpp"

#include "dtc/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace dtc {

namespace {

std::string describe(const Site& s) {
  return std::string(zone_tag(s.zone)) + "(" + std::to_string(s.col) + "," +
         std::to_string(s.row) + ")";
}

} // namespace

void MappingState::claim(const Site& s, int owner) {
  if (geometry_ && !geometry_->contains(s)) {
    throw GeometryError("site " + describe(s) + " is outside the geometry");
  }
  if (!occupancy_.insert(s).second) {
    throw GeometryError("site " + describe(s) + " is already occupied");
  }
  owner_[s] = owner;
}

void MappingState::release(const Site& s) {
  occupancy_.erase(s);
  owner_.erase(s);
}

void MappingState::place_qubit(int q, const Site& s) {
  if (const auto it = qubits_.find(q); it != qubits_.end()) {
    release(it->second);
  }
  claim(s, q);
  qubits_[q] = s;
}

void MappingState::place_ancilla(int a, const Site& s) {
  if (const auto it = ancillas_.find(a); it != ancillas_.end()) {
    release(it->second);
  }
  claim(s, -(a + 1));
  ancillas_[a] = s;
}

void MappingState::relocate(const Site& from, const Site& to) {
  const auto it = owner_.find(from);
  if (it == owner_.end()) {
    throw GeometryError("no atom at " + describe(from));
  }
  const int owner = it->second;
  if (owner >= 0) {
    place_qubit(owner, to);
  } else {
    place_ancilla(-owner - 1, to);
  }
}

void MappingState::remove_ancilla(int a) {
  const auto it = ancillas_.find(a);
  if (it == ancillas_.end()) {
    return;
  }
  release(it->second);
  ancillas_.erase(it);
}

std::optional<int> MappingState::qubit_at(const Site& s) const {
  const auto it = owner_.find(s);
  if (it == owner_.end() || it->second < 0) {
    return std::nullopt;
  }
  return it->second;
}

std::optional<int> MappingState::ancilla_at(const Site& s) const {
  const auto it = owner_.find(s);
  if (it == owner_.end() || it->second >= 0) {
    return std::nullopt;
  }
  return -it->second - 1;
}

// ---------------------------------------------------------------------------

std::vector<Site> entanglement_target_sites(const GeometrySpec& g) {
  std::vector<Site> out;
  for (const int c : g.usable_columns()) {
    for (int r = g.ent_first_row_y; r < g.ent_rows; ++r) {
      out.push_back({Zone::Entanglement, c, r});
    }
  }
  return out;
}

std::vector<int> priority_order(const PriorityTable& pri) {
  std::vector<int> order(pri.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return pri[static_cast<std::size_t>(a)] > pri[static_cast<std::size_t>(b)];
  });
  return order;
}

std::map<int, Site> assign_entanglement_targets(const PriorityTable& pri,
                                                const GeometrySpec& g) {
  const auto sites = entanglement_target_sites(g);
  if (sites.size() < pri.size()) {
    throw GeometryError("entanglement zone has " + std::to_string(sites.size()) +
                        " target sites for " + std::to_string(pri.size()) +
                        " qubits");
  }
  std::map<int, Site> out;
  std::size_t next = 0;
  for (const int q : priority_order(pri)) {
    out[q] = sites[next++];
  }
  return out;
}

double storage_cost(const Site& s, const Site& target, const GeometrySpec& g,
                    const LayoutWeights& w) {
  const Point target_pos = g.position(target);
  const int target_col = g.nearest_storage_col(target_pos.x);
  const double first_row_y = g.ent_row_y(g.ent_first_row_y);
  const double vertical = std::abs(first_row_y - g.position(s).y);
  constexpr int row_ref = 0;
  return w.w_col * std::abs(s.col - target_col) + w.w_row * std::abs(s.row - row_ref) +
         w.w_ent * vertical;
}

std::optional<Site> cheapest_storage_site(const Site& target, const GeometrySpec& g,
                                          const LayoutWeights& w,
                                          const std::set<Site>& taken) {
  std::optional<Site> best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (const Site& s : g.storage_sites()) {
    if (taken.contains(s)) {
      continue;
    }
    const double c = storage_cost(s, target, g, w);
    if (c < best_cost) {
      best_cost = c;
      best = s;
    }
  }
  return best;
}

std::map<int, Site> assign_storage_sites(const std::map<int, Site>& targets,
                                         const PriorityTable& pri,
                                         const GeometrySpec& g,
                                         const LayoutWeights& w,
                                         const std::set<Site>& excluded) {
  const auto free_sites = static_cast<std::size_t>(g.storage_capacity()) -
                          static_cast<std::size_t>(std::count_if(
                              excluded.begin(), excluded.end(), [&](const Site& s) {
                                return s.zone == Zone::Storage && g.contains(s);
                              }));
  if (free_sites < targets.size()) {
    throw GeometryError("storage zone has " + std::to_string(free_sites) +
                        " free sites for " + std::to_string(targets.size()) +
                        " qubits");
  }
  std::set<Site> taken = excluded;
  std::map<int, Site> out;
  for (const int q : priority_order(pri)) {
    const auto it = targets.find(q);
    if (it == targets.end()) {
      continue;
    }
    const auto site = cheapest_storage_site(it->second, g, w, taken);
    out[q] = *site;
    taken.insert(*site);
  }
  return out;
}

} // namespace dtc
