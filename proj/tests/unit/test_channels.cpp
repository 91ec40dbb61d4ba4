#include "dtc/channels.hpp"
#include "dtc/error.hpp"

#include <doctest.h>

#include <deque>
#include <limits>

using namespace dtc;

namespace {

GeometrySpec with_usable_columns(int k) {
  GeometrySpec g;
  g.ent_cols = g.column_residue + g.column_modulus * (k - 1) + 1;
  return g;
}

// Breadth-first reachability between two qubit cells through relay cells only.
bool relay_reachable(const std::set<Cell>& relays, Cell a, Cell b) {
  std::set<Cell> seen;
  std::deque<Cell> open;
  for (const Cell r : relays) {
    if (adjacent(r, a)) {
      seen.insert(r);
      open.push_back(r);
    }
  }
  while (!open.empty()) {
    const Cell c = open.front();
    open.pop_front();
    if (adjacent(c, b)) {
      return true;
    }
    for (const Cell n : {Cell{c.col, c.row - 1}, Cell{c.col, c.row + 1}, Cell{c.col - 1, c.row},
                         Cell{c.col + 1, c.row}}) {
      if (relays.contains(n) && seen.insert(n).second) {
        open.push_back(n);
      }
    }
  }
  return false;
}

EndpointView at(int q, Cell c) { return {q, c, false}; }

} // namespace

TEST_CASE("pairing_map examples") {
  CHECK(pairing_map(with_usable_columns(2)) == std::map<int, int>{{4, 16}, {16, 4}});
  CHECK(pairing_map(with_usable_columns(4)) ==
        std::map<int, int>{{4, 16}, {16, 4}, {28, 40}, {40, 28}});
  const auto odd = pairing_map(with_usable_columns(3));
  CHECK(odd.at(4) == 16);
  CHECK(odd.at(16) == 4);
  CHECK(odd.at(28) == 16);
  CHECK_THROWS_AS((void)pairing_map(with_usable_columns(1)), GeometryError);
}

TEST_CASE("pairing_map is a fixed-point-free involution on even counts") {
  for (int k = 2; k <= 40; ++k) {
    const auto g = with_usable_columns(k);
    const auto cols = g.usable_columns();
    REQUIRE(static_cast<int>(cols.size()) == k);
    const auto p = pairing_map(g);
    CHECK(p.size() == cols.size());
    for (const int c : cols) {
      const int partner = p.at(c);
      CHECK(partner != c);
      CHECK(g.usable_column(partner));
      if (k % 2 == 0) {
        CHECK(p.at(partner) == c);
      }
    }
  }
}

TEST_CASE("static channels for two qubits in one column pair") {
  const auto g = crop_grid(2, GeometrySpec{});
  const auto targets = assign_entanglement_targets({1.0, 0.5}, g);
  const auto topo = configure_static_channels(targets, g);
  CHECK(topo.channels.size() == 1);
  CHECK(topo.ancillas_needed == static_cast<int>(topo.cells.size()));
  const Cell a = ent_cell(targets.at(0));
  const Cell b = ent_cell(targets.at(1));
  CHECK(relay_reachable(topo.cells, a, b));
  const auto chain = relay_chain(g, topo.cells, a, b);
  REQUIRE_FALSE(chain.empty());
  CHECK(adjacent(chain.front(), a));
  CHECK(adjacent(chain.back(), b));
}

TEST_CASE("static channels connect every qubit pair and avoid qubit cells") {
  for (const int n : {4, 7, 8, 12, 20}) {
    const auto g = crop_grid(n, GeometrySpec{});
    PriorityTable pri(static_cast<std::size_t>(n), 1.0);
    const auto targets = assign_entanglement_targets(pri, g);
    const auto topo = configure_static_channels(targets, g);
    for (const auto& [q, s] : targets) {
      CHECK_FALSE(topo.cells.contains(ent_cell(s)));
    }
    for (const auto& ch : topo.channels) {
      for (const Cell c : ch.cells()) {
        CHECK(topo.cells.contains(c));
      }
    }
    if (n >= 7) {
      CHECK(topo.channels.size() >= 2);
    }
    for (const auto& [qa, sa] : targets) {
      for (const auto& [qb, sb] : targets) {
        if (qa < qb) {
          const Cell a = ent_cell(sa);
          const Cell b = ent_cell(sb);
          CHECK(relay_reachable(topo.cells, a, b));
          const auto chain = relay_chain(g, topo.cells, a, b);
          REQUIRE_FALSE(chain.empty());
          for (std::size_t i = 1; i < chain.size(); ++i) {
            CHECK(adjacent(chain[i - 1], chain[i]));
          }
        }
      }
    }
  }
}

TEST_CASE("a qubit on a would-be channel cell is routed around") {
  const auto g = crop_grid(4, GeometrySpec{});
  PriorityTable pri(4, 1.0);
  auto targets = assign_entanglement_targets(pri, g);
  const auto plain = configure_static_channels(targets, g);
  REQUIRE_FALSE(plain.cells.empty());
  // Move qubit 3 onto a relay cell of the unperturbed topology.
  const Cell taken = *plain.cells.begin();
  targets[3] = ent_site(taken);
  const auto topo = configure_static_channels(targets, g);
  CHECK_FALSE(topo.cells.contains(taken));
  for (int q = 0; q < 3; ++q) {
    CHECK(relay_reachable(topo.cells, ent_cell(targets.at(q)), ent_cell(targets.at(3))));
  }
}

TEST_CASE("relays_connected requires contiguity and endpoint contact") {
  const std::set<Cell> line{{1, 0}, {2, 0}, {3, 0}};
  CHECK(relays_connected(line, {{0, 0}, {4, 0}}));
  CHECK_FALSE(relays_connected(line, {{0, 0}, {6, 0}}));
  const std::set<Cell> broken{{1, 0}, {3, 0}};
  CHECK_FALSE(relays_connected(broken, {{0, 0}}));
}

TEST_CASE("dt_enabled examples") {
  const Stage first{0, {}, {{0, 1}}};
  const Stage persists{1, {}, {{0, 2}}};
  const Stage disjoint{1, {}, {{2, 3}}};
  CHECK_FALSE(dt_enabled(first, nullptr));
  CHECK(dt_enabled(persists, &first));
  CHECK_FALSE(dt_enabled(disjoint, &first));

  const Stage two{0, {}, {{0, 1}, {2, 3}}};
  const std::map<int, int> shared{{0, 4}, {1, 4}, {2, 4}, {3, 16}};
  const std::map<int, int> apart{{0, 4}, {1, 4}, {2, 16}, {3, 16}};
  CHECK(dt_enabled(two, nullptr, &shared));
  CHECK_FALSE(dt_enabled(two, nullptr, &apart));
}

TEST_CASE("classify_pairs reasons") {
  auto g = crop_grid(20, GeometrySpec{});
  const ChannelParams cp;
  // A vertical backbone down column 10.
  std::set<Cell> relays;
  for (int r = 0; r < g.ent_rows; ++r) {
    relays.insert({10, r});
  }
  const std::map<int, EndpointView> ends{
      {0, at(0, {9, 0})}, {1, at(1, {11, 2})},  // adjacent
      {2, at(2, {7, 1})}, {3, at(3, {13, 1})},  // two steps from a dock
      {4, at(4, {4, 1})}, {5, at(5, {9, 1})},   // far on one side
      {6, {6, {0, 0}, true}}, {7, at(7, {11, 0})}};
  std::set<Cell> occupied;
  for (const auto& [q, e] : ends) {
    if (!e.in_storage) {
      occupied.insert(e.cell);
    }
  }
  const std::vector<QubitPair> pairs{{0, 1}, {2, 3}, {4, 5}, {6, 7}};
  const auto cls = classify_pairs(pairs, relays, ends, occupied, g, cp);
  CHECK(cls.partitions(pairs));
  CHECK(cls.reason.at({0, 1}) == PairReason::NearChain);
  CHECK(cls.reason.at({2, 3}) == PairReason::CheapAlign);
  CHECK(cls.reason.at({4, 5}) == PairReason::TooExpensive);
  CHECK(cls.reason.at({6, 7}) == PairReason::CheapAlign);
  CHECK(cls.dt == std::vector<QubitPair>{{0, 1}, {2, 3}, {6, 7}});
  CHECK(cls.aod == std::vector<QubitPair>{{4, 5}});

  const auto none = classify_pairs(pairs, {}, ends, occupied, g, cp);
  CHECK(none.dt.empty());
  CHECK(none.partitions(pairs));
  CHECK_FALSE(none.partitions({{0, 1}}));
}

TEST_CASE("select_anchor_column examples") {
  const auto g = crop_grid(20, GeometrySpec{});
  const ChannelParams cp;
  const auto grid = ent_lattice(g, 1.0, 2.0);
  const auto cols = g.usable_columns();
  REQUIRE(cols.size() >= 3);

  const std::map<int, EndpointView> stacked{{0, at(0, {cols[1], 0})},
                                            {1, at(1, {cols[1], 2})}};
  CHECK(select_anchor_column({{0, 1}}, stacked, std::nullopt, grid, g, cp) == cols[1]);

  // Symmetric between the first two usable columns.
  const std::map<int, EndpointView> sym{{0, at(0, {cols[0], 1})}, {1, at(1, {cols[1], 1})}};
  CHECK(select_anchor_column({{0, 1}}, sym, std::nullopt, grid, g, cp) == cols[0]);

  // The previous anchor survives when within the hysteresis slack.
  const std::map<int, EndpointView> lean{{0, at(0, {cols[1], 0})},
                                         {1, at(1, {cols[1], 1})},
                                         {2, at(2, {cols[1] - 1, 2})},
                                         {3, at(3, {cols[1], 2})}};
  const int fresh = select_anchor_column({{0, 1}, {2, 3}}, lean, std::nullopt, grid, g, cp);
  CHECK(fresh == cols[1]);
  // Cost at cols[1] is 1; cols[0] costs far more, so it is not retained.
  CHECK(select_anchor_column({{0, 1}, {2, 3}}, lean, cols[0], grid, g, cp) == cols[1]);
  ChannelParams loose = cp;
  loose.anchor_hysteresis = 1e9;
  CHECK(select_anchor_column({{0, 1}, {2, 3}}, lean, cols[0], grid, g, loose) == cols[0]);
}

TEST_CASE("find_branch examples and shortest-path oracle") {
  WeightedLattice grid(12, 5, 1.0, 2.0);
  const std::vector<Cell> backbone{{6, 0}, {6, 1}, {6, 2}, {6, 3}, {6, 4}};
  for (const Cell c : backbone) {
    grid.set_obstacle(c);
  }
  CHECK(find_branch(grid, {5, 2}, backbone).empty());
  const auto straight = find_branch(grid, {2, 2}, backbone);
  CHECK(straight == std::vector<Cell>{{3, 2}, {4, 2}, {5, 2}});

  // Wall the endpoint's row so the branch has to detour vertically.
  grid.set_obstacle({4, 2});
  grid.set_obstacle({2, 2});
  const Cell endpoint{2, 2};
  const auto detour = find_branch(grid, endpoint, backbone);
  REQUIRE_FALSE(detour.empty());
  CHECK(adjacent(detour.front(), endpoint));
  CHECK(adjacent(detour.back(), Cell{6, detour.back().row}));
  double walked = 0.0;
  for (std::size_t i = 1; i < detour.size(); ++i) {
    REQUIRE(adjacent(detour[i - 1], detour[i]));
    walked += detour[i].row == detour[i - 1].row ? 1.0 : 2.0;
  }
  walked += 1.0; // final horizontal step onto the backbone
  double oracle = std::numeric_limits<double>::infinity();
  for (const Cell start : grid.neighbors(endpoint)) {
    if (grid.blocked(start)) {
      continue;
    }
    for (const Cell b : backbone) {
      try {
        oracle = std::min(oracle, grid_shortest_path(grid, start, b).cost);
      } catch (const InfeasibleError&) {
      }
    }
  }
  CHECK(walked == doctest::Approx(oracle));

  WeightedLattice sealed(5, 1);
  sealed.set_obstacle({1, 0});
  CHECK_THROWS_AS((void)find_branch(sealed, {0, 0}, {{4, 0}}), InfeasibleError);
  CHECK_THROWS_AS((void)find_branch(sealed, {0, 0}, {}), InfeasibleError);
}

TEST_CASE("two_leg_fallback examples") {
  WeightedLattice grid(8, 8);
  CHECK_FALSE(two_leg_fallback({0, 0}, {5, 0}, grid).has_value());
  const auto path = two_leg_fallback({0, 0}, {3, 4}, grid);
  REQUIRE(path.has_value());
  CHECK(path->size() - 1 == 7);
  CHECK(path->front() == Cell{0, 0});
  CHECK(path->back() == Cell{3, 4});
  for (std::size_t i = 1; i < path->size(); ++i) {
    CHECK(adjacent((*path)[i - 1], (*path)[i]));
  }
  grid.set_obstacle({3, 0});
  grid.set_obstacle({0, 4});
  CHECK_FALSE(two_leg_fallback({0, 0}, {3, 4}, grid).has_value());
}
