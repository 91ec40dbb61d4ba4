#include "dtc/channels.hpp"

#include "dtc/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

namespace dtc {

WeightedLattice ent_lattice(const GeometrySpec& g, double h_cost, double v_cost) {
  return WeightedLattice(g.ent_cols, g.ent_rows, h_cost, v_cost);
}

std::set<Cell> DTChannel::cells() const {
  std::set<Cell> out(backbone.begin(), backbone.end());
  for (const auto& [q, cells] : branches) {
    out.insert(cells.begin(), cells.end());
  }
  return out;
}

std::string_view reason_name(PairReason r) {
  switch (r) {
  case PairReason::NearChain:
    return "near-chain";
  case PairReason::CheapAlign:
    return "cheap-align";
  case PairReason::TooExpensive:
    return "too-expensive";
  case PairReason::Infeasible:
    return "infeasible";
  case PairReason::TwoLeg:
    return "two-leg";
  }
  return "?";
}

bool PairClassification::partitions(const std::vector<QubitPair>& pairs) const {
  std::vector<QubitPair> all = dt;
  all.insert(all.end(), aod.begin(), aod.end());
  std::vector<QubitPair> want = pairs;
  std::sort(all.begin(), all.end());
  std::sort(want.begin(), want.end());
  return all == want;
}

// ---------------------------------------------------------------------------
// Static topology

std::map<int, int> pairing_map(const GeometrySpec& g) {
  const auto cols = g.usable_columns();
  if (cols.size() < 2) {
    throw GeometryError("pairing needs at least two usable columns");
  }
  std::map<int, int> out;
  std::size_t i = 0;
  for (; i + 1 < cols.size(); i += 2) {
    out[cols[i]] = cols[i + 1];
    out[cols[i + 1]] = cols[i];
  }
  if (i < cols.size()) {
    // the nearest paired column is the one just before the leftover
    out[cols[i]] = cols[i - 1];
  }
  return out;
}

namespace {

std::vector<Cell> free_neighbours(const WeightedLattice& grid, Cell c) {
  std::vector<Cell> out;
  for (const Cell n : grid.neighbors(c)) {
    if (!grid.blocked(n)) {
      out.push_back(n);
    }
  }
  return out;
}

// Preferred relay next to a qubit: right, left, up, down.
std::optional<Cell> terminal_for(const WeightedLattice& grid, Cell q) {
  for (const Cell n : {Cell{q.col + 1, q.row}, Cell{q.col - 1, q.row},
                       Cell{q.col, q.row - 1}, Cell{q.col, q.row + 1}}) {
    if (grid.contains(n) && !grid.blocked(n)) {
      return n;
    }
  }
  return std::nullopt;
}

// Shortest free path from any cell of `from` to any cell of `to`.
std::optional<std::vector<Cell>> connect(const WeightedLattice& grid,
                                         const std::set<Cell>& from,
                                         const std::set<Cell>& to) {
  const std::vector<Cell> sources(from.begin(), from.end());
  auto path = lattice_search(grid, sources, [&](Cell c) { return to.contains(c); });
  if (!path) {
    return std::nullopt;
  }
  return path->cells;
}

} // namespace

StaticTopology configure_static_channels(const std::map<int, Site>& targets,
                                         const GeometrySpec& g) {
  auto grid = ent_lattice(g);
  std::vector<Cell> qubit_cells;
  for (const auto& [q, s] : targets) {
    if (s.zone != Zone::Entanglement) {
      throw GeometryError("static channels need entanglement-zone targets");
    }
    grid.set_obstacle(ent_cell(s));
    qubit_cells.push_back(ent_cell(s));
  }
  std::sort(qubit_cells.begin(), qubit_cells.end());

  const auto pmap = pairing_map(g);
  const auto group_of = [&](int col) {
    const auto it = pmap.find(col);
    if (it == pmap.end()) {
      return col;
    }
    const int partner = it->second;
    if (pmap.at(partner) == col) {
      return std::min(col, partner);
    }
    return std::min(partner, pmap.at(partner));
  };
  std::map<int, std::vector<Cell>> groups;
  for (const Cell c : qubit_cells) {
    groups[group_of(c.col)].push_back(c);
  }

  StaticTopology topo;
  for (const auto& [key, members] : groups) {
    DTChannel ch;
    ch.anchor = key;
    std::set<Cell> cells;
    for (const Cell q : members) {
      const auto t = terminal_for(grid, q);
      if (!t) {
        throw InfeasibleError("qubit at (" + std::to_string(q.col) + "," +
                              std::to_string(q.row) + ") has no free relay neighbour");
      }
      if (cells.contains(*t)) {
        continue;
      }
      if (cells.empty()) {
        cells.insert(*t);
        ch.backbone.push_back(*t);
        continue;
      }
      const auto path = connect(grid, {*t}, cells);
      if (!path) {
        throw InfeasibleError("not enough free sites to join a column pair channel");
      }
      for (const Cell c : *path) {
        if (cells.insert(c).second) {
          ch.backbone.push_back(c);
        }
      }
    }
    if (!topo.cells.empty()) {
      const auto path = connect(grid, cells, topo.cells);
      if (!path) {
        throw InfeasibleError("not enough free sites to link neighbouring channels");
      }
      for (std::size_t i = 1; i + 1 < path->size(); ++i) {
        topo.links.push_back((*path)[i]);
      }
    }
    topo.cells.insert(cells.begin(), cells.end());
    topo.channels.push_back(std::move(ch));
  }
  topo.cells.insert(topo.links.begin(), topo.links.end());
  if (!relays_connected(topo.cells, qubit_cells)) {
    throw InfeasibleError("static channels leave some qubits disconnected");
  }
  topo.ancillas_needed = static_cast<int>(topo.cells.size());
  return topo;
}

std::vector<Cell> relay_chain(const GeometrySpec& g, const std::set<Cell>& relays, Cell a,
                              Cell b) {
  auto grid = ent_lattice(g);
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) {
      if (!relays.contains(Cell{c, r})) {
        grid.set_obstacle(Cell{c, r});
      }
    }
  }
  std::vector<Cell> sources;
  for (const Cell n : grid.neighbors(a)) {
    if (relays.contains(n)) {
      sources.push_back(n);
    }
  }
  auto path = lattice_search(grid, sources, [&](Cell c) {
    return relays.contains(c) && adjacent(c, b);
  });
  if (!path) {
    return {};
  }
  return path->cells;
}

bool relays_connected(const std::set<Cell>& relays, const std::vector<Cell>& endpoints) {
  for (const Cell e : endpoints) {
    const bool touches = std::any_of(relays.begin(), relays.end(),
                                     [&](Cell r) { return adjacent(r, e); });
    if (!touches) {
      return false;
    }
  }
  if (relays.empty()) {
    return true;
  }
  std::set<Cell> seen{*relays.begin()};
  std::deque<Cell> open{*relays.begin()};
  while (!open.empty()) {
    const Cell c = open.front();
    open.pop_front();
    for (const Cell n : {Cell{c.col, c.row - 1}, Cell{c.col, c.row + 1},
                         Cell{c.col - 1, c.row}, Cell{c.col + 1, c.row}}) {
      if (relays.contains(n) && seen.insert(n).second) {
        open.push_back(n);
      }
    }
  }
  return seen.size() == relays.size();
}

// ---------------------------------------------------------------------------
// Per-stage primitives

bool dt_enabled(const Stage& stage, const Stage* prev, const std::map<int, int>* band) {
  if (prev != nullptr) {
    std::set<int> before;
    for (const auto& [a, b] : prev->pairs) {
      before.insert(a);
      before.insert(b);
    }
    for (const auto& [a, b] : stage.pairs) {
      if (before.contains(a) || before.contains(b)) {
        return true;
      }
    }
  }
  if (band == nullptr || stage.pairs.size() < 2) {
    return false;
  }
  const auto band_of = [&](int q) {
    const auto it = band->find(q);
    return it == band->end() ? -1 : it->second;
  };
  std::set<int> seen;
  for (const auto& [a, b] : stage.pairs) {
    std::set<int> mine;
    for (const int q : {a, b}) {
      if (const int bq = band_of(q); bq >= 0) {
        mine.insert(bq);
      }
    }
    for (const int bq : mine) {
      if (!seen.insert(bq).second) {
        return true;
      }
    }
  }
  return false;
}

PairClassification classify_pairs(const std::vector<QubitPair>& pairs,
                                  const std::set<Cell>& relays,
                                  const std::map<int, EndpointView>& endpoints,
                                  const std::set<Cell>& occupied, const GeometrySpec& g,
                                  const ChannelParams& cp) {
  const auto near_relay = [&](Cell c) {
    return std::any_of(relays.begin(), relays.end(),
                       [&](Cell r) { return manhattan(r, c) <= cp.r_near; });
  };
  // Free cells next to the channel, where an endpoint could be aligned.
  std::vector<Cell> docks;
  for (int r = 0; r < g.ent_rows; ++r) {
    for (int c = 0; c < g.ent_cols; ++c) {
      const Cell cell{c, r};
      if (!occupied.contains(cell) && !relays.contains(cell) && near_relay(cell)) {
        docks.push_back(cell);
      }
    }
  }
  enum class Fit { Near, Cheap, Far };
  const auto fit = [&](int q) {
    const auto& e = endpoints.at(q);
    if (e.in_storage) {
      return docks.empty() ? Fit::Far : Fit::Cheap;
    }
    if (near_relay(e.cell)) {
      return Fit::Near;
    }
    const bool cheap = std::any_of(docks.begin(), docks.end(),
                                   [&](Cell d) { return manhattan(d, e.cell) <= cp.c_max; });
    return cheap ? Fit::Cheap : Fit::Far;
  };
  PairClassification out;
  for (const auto& p : pairs) {
    const Fit a = relays.empty() ? Fit::Far : fit(p.first);
    const Fit b = relays.empty() ? Fit::Far : fit(p.second);
    if (a == Fit::Far || b == Fit::Far) {
      out.aod.push_back(p);
      out.reason[p] = PairReason::TooExpensive;
    } else {
      out.dt.push_back(p);
      out.reason[p] = a == Fit::Near && b == Fit::Near ? PairReason::NearChain
                                                       : PairReason::CheapAlign;
    }
  }
  return out;
}

int select_anchor_column(const std::vector<QubitPair>& pairs,
                         const std::map<int, EndpointView>& endpoints,
                         std::optional<int> prev_anchor, const WeightedLattice& grid,
                         const GeometrySpec& g, const ChannelParams& cp) {
  std::map<int, int> weight;
  for (const auto& [a, b] : pairs) {
    ++weight[a];
    ++weight[b];
  }
  std::map<int, double> density;
  for (const auto& [q, w] : weight) {
    const Cell c = endpoints.at(q).cell;
    density[g.nearest_usable_col(c.col * g.ent_col_pitch)] += w;
  }
  std::vector<std::pair<int, double>> ranked(density.begin(), density.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& x, const auto& y) { return x.second > y.second; });

  std::set<int> candidates;
  for (std::size_t i = 0; i < ranked.size() && i < 3; ++i) {
    candidates.insert(ranked[i].first);
  }
  if (prev_anchor) {
    for (const int c : {*prev_anchor - g.column_modulus, *prev_anchor,
                        *prev_anchor + g.column_modulus}) {
      if (g.usable_column(c)) {
        candidates.insert(c);
      }
    }
  }
  if (candidates.empty()) {
    candidates.insert(g.usable_columns().front());
  }

  constexpr double unreachable = 1e6;
  const auto cost_of = [&](int col) {
    double total = 0.0;
    for (const auto& [q, w] : weight) {
      const Cell from = endpoints.at(q).cell;
      const Cell to{col, std::clamp(from.row, 0, grid.rows() - 1)};
      const Cell sources[] = {from};
      const auto path = lattice_search(grid, sources, [to](Cell c) { return c == to; });
      total += path ? path->cost : unreachable;
    }
    return total;
  };

  std::optional<int> best;
  double best_cost = std::numeric_limits<double>::infinity();
  std::map<int, double> costs;
  const auto closeness = [&](int c) { return prev_anchor ? std::abs(c - *prev_anchor) : 0; };
  for (const int c : candidates) {
    const double cost = cost_of(c);
    costs[c] = cost;
    if (!best || cost < best_cost ||
        (cost == best_cost && closeness(c) < closeness(*best))) {
      best = c;
      best_cost = cost;
    }
  }
  if (prev_anchor && costs.contains(*prev_anchor) &&
      costs.at(*prev_anchor) <= best_cost * (1.0 + cp.anchor_hysteresis)) {
    return *prev_anchor;
  }
  return *best;
}

std::vector<Cell> find_branch(const WeightedLattice& grid, Cell endpoint,
                              const std::vector<Cell>& backbone) {
  if (backbone.empty()) {
    throw InfeasibleError("cannot branch to an empty backbone");
  }
  const std::set<Cell> spine(backbone.begin(), backbone.end());
  for (const Cell n : grid.neighbors(endpoint)) {
    if (spine.contains(n)) {
      return {};
    }
  }
  std::vector<Cell> sources;
  for (const Cell n : free_neighbours(grid, endpoint)) {
    sources.push_back(n);
  }
  const auto path =
      lattice_search(grid, sources, [&](Cell c) { return spine.contains(c); });
  if (!path) {
    throw InfeasibleError("no obstacle-free branch to the backbone");
  }
  std::vector<Cell> out = path->cells;
  out.pop_back();
  return out;
}

std::optional<std::vector<Cell>> two_leg_fallback(Cell a, Cell b,
                                                  const WeightedLattice& grid) {
  if (a.row == b.row || a.col == b.col) {
    return std::nullopt;
  }
  const auto leg = [](Cell from, Cell to, std::vector<Cell>& out) {
    const int dc = to.col > from.col ? 1 : (to.col < from.col ? -1 : 0);
    const int dr = to.row > from.row ? 1 : (to.row < from.row ? -1 : 0);
    Cell c = from;
    while (c != to) {
      c.col += dc;
      c.row += dr;
      out.push_back(c);
    }
  };
  for (const Cell corner : {Cell{b.col, a.row}, Cell{a.col, b.row}}) {
    std::vector<Cell> path{a};
    leg(a, corner, path);
    leg(corner, b, path);
    const bool clear = std::none_of(path.begin(), path.end(),
                                    [&](Cell c) { return grid.blocked(c); });
    if (clear) {
      return path;
    }
  }
  return std::nullopt;
}

} // namespace dtc
