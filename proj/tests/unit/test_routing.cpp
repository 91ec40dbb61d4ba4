#include "dtc/error.hpp"
#include "dtc/routing.hpp"

#include <doctest.h>

#include <algorithm>
#include <limits>
#include <random>
#include <set>

using namespace dtc;

namespace {

HardwareConfig test_hw(int n) {
  HardwareConfig hw;
  hw.geometry = crop_grid(n, GeometrySpec{});
  return hw;
}

Site ent(int c, int r) { return {Zone::Entanglement, c, r}; }
Site sto(int c, int r) { return {Zone::Storage, c, r}; }

std::vector<Site> every_site(const GeometrySpec& g) {
  auto out = g.storage_sites();
  for (int r = 0; r < g.ent_rows; ++r) {
    for (int c = 0; c < g.ent_cols; ++c) {
      out.push_back(ent(c, r));
    }
  }
  return out;
}

// Replays primitives on a copy of the start state and checks the per-batch
// invariants; returns the final state.
MappingState replay(const MappingState& start, const std::vector<MoveBatch>& batches,
                    const HardwareConfig& hw) {
  MappingState m = start;
  for (const auto& b : batches) {
    for (const auto& p : b.primitives) {
      REQUIRE(p.atoms.size() == p.from.size());
      REQUIRE(p.atoms.size() == p.to.size());
      if (p.kind == PrimitiveKind::Activate || p.kind == PrimitiveKind::Deactivate) {
        CHECK(p.from == p.to);
        CHECK(p.duration == doctest::Approx(hw.timing.t_xfer));
        continue;
      }
      std::vector<MoveVector> mv;
      double longest = 0.0;
      for (std::size_t i = 0; i < p.atoms.size(); ++i) {
        mv.push_back(make_move(hw.geometry, p.atoms[i], p.from[i], p.to[i]));
        longest = std::max(longest, mv.back().distance);
      }
      for (std::size_t i = 0; i < mv.size(); ++i) {
        for (std::size_t j = i + 1; j < mv.size(); ++j) {
          CHECK(aod_order_compatible(hw.geometry, mv[i], mv[j]));
        }
      }
      if (p.kind == PrimitiveKind::Move || p.kind == PrimitiveKind::BigMove) {
        CHECK(p.duration == doctest::Approx(aod_motion_time(longest, hw.timing)));
      }
      for (std::size_t i = 0; i < mv.size(); ++i) {
        if (mv[i].src != mv[i].dst) {
          m.relocate(mv[i].src, mv[i].dst);
        }
      }
    }
  }
  return m;
}

} // namespace

TEST_CASE("conflict graph examples") {
  const auto hw = test_hw(9);
  const auto& g = hw.geometry;
  MappingState m(g);
  m.place_qubit(0, ent(0, 0));
  m.place_qubit(1, ent(10, 2));
  m.place_qubit(2, ent(3, 1));
  m.place_qubit(3, ent(8, 1));

  SUBCASE("order-preserving moves in separate regions do not conflict") {
    const std::vector<MoveVector> mv{make_move(g, 0, ent(0, 0), ent(1, 0)),
                                     make_move(g, 1, ent(10, 2), ent(11, 2))};
    CHECK(build_conflict_graph(mv, m, g, 2.0).edge_count() == 0);
  }
  SUBCASE("column swap conflicts") {
    const std::vector<MoveVector> mv{make_move(g, 2, ent(3, 1), ent(9, 1)),
                                     make_move(g, 3, ent(8, 1), ent(2, 1))};
    CHECK_FALSE(aod_order_compatible(g, mv[0], mv[1]));
    CHECK(build_conflict_graph(mv, m, g, 2.0).has_edge(0, 1));
  }
  SUBCASE("shared destination conflicts") {
    const std::vector<MoveVector> mv{make_move(g, 0, ent(0, 0), ent(5, 0)),
                                     make_move(g, 1, ent(10, 2), ent(5, 0))};
    CHECK(build_conflict_graph(mv, m, g, 2.0).has_edge(0, 1));
  }
}

TEST_CASE("a path grazing a stationary atom is flagged") {
  const auto hw = test_hw(9);
  const auto& g = hw.geometry;
  const Site src = ent(0, 0);
  const Site dst = ent(6, 0);
  const auto path = move_path(g, src, dst);
  // The stationary site nearest to the path, excluding its endpoints.
  std::optional<Site> grazed;
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& s : every_site(g)) {
    if (s == src || s == dst) {
      continue;
    }
    const double d = path_point_distance(path, g.position(s));
    if (d > 1e-6 && d < gap) {
      gap = d;
      grazed = s;
    }
  }
  REQUIRE(grazed.has_value());
  MappingState m(g);
  m.place_qubit(0, src);
  m.place_qubit(1, *grazed);
  m.place_qubit(2, ent(12, 2));
  const std::vector<MoveVector> mv{make_move(g, 0, src, dst), make_move(g, 2, ent(12, 2), ent(13, 2))};
  // Passing within one micron of the clearance radius still conflicts.
  CHECK(build_conflict_graph(mv, m, g, gap + 1.0).has_edge(0, 1));
  CHECK(build_conflict_graph(mv, m, g, gap * 0.5).edge_count() == 0);
}

TEST_CASE("independent moves share one batch") {
  const auto hw = test_hw(9);
  const auto& g = hw.geometry;
  MappingState m(g);
  std::vector<MoveVector> mv;
  for (int c = 0; c < 3; ++c) {
    m.place_qubit(c, sto(c, 0));
    mv.push_back(make_move(g, c, sto(c, 0), ent(4 * c + 4, 1)));
  }
  const MappingState start = m;
  const auto batches = schedule_moves(mv, m, hw);
  REQUIRE(batches.size() == 1);
  CHECK(batches[0].primitives.size() == 3);
  CHECK(batches[0].duration() ==
        doctest::Approx(2 * hw.timing.t_xfer +
                        aod_motion_time(std::max({mv[0].distance, mv[1].distance, mv[2].distance}),
                                        hw.timing)));
  const auto end = replay(start, batches, hw);
  CHECK(end.occupancy() == m.occupancy());
}

TEST_CASE("crossing moves run in two batches") {
  const auto hw = test_hw(9);
  const auto& g = hw.geometry;
  MappingState m(g);
  m.place_qubit(0, ent(0, 1));
  m.place_qubit(1, ent(6, 1));
  const std::vector<MoveVector> mv{make_move(g, 0, ent(0, 1), ent(8, 2)),
                                   make_move(g, 1, ent(6, 1), ent(2, 2))};
  const auto batches = schedule_moves(mv, m, hw);
  CHECK(batches.size() == 2);
  CHECK(m.qubit_site(0) == ent(8, 2));
  CHECK(m.qubit_site(1) == ent(2, 2));
}

TEST_CASE("a two-atom swap is resolved through the parking row") {
  const auto hw = test_hw(9);
  const auto& g = hw.geometry;
  MappingState m(g);
  m.place_qubit(0, ent(4, 1));
  m.place_qubit(1, ent(4, 2));
  const MappingState start = m;
  const std::vector<MoveVector> mv{make_move(g, 0, ent(4, 1), ent(4, 2)),
                                   make_move(g, 1, ent(4, 2), ent(4, 1))};
  const auto batches = schedule_moves(mv, m, hw);
  CHECK(std::any_of(batches.begin(), batches.end(), [](const MoveBatch& b) { return b.fallback; }));
  bool parked = false;
  for (const auto& b : batches) {
    for (const auto& p : b.primitives) {
      parked = parked || p.kind == PrimitiveKind::Park;
    }
  }
  CHECK(parked);
  CHECK(m.qubit_site(0) == ent(4, 2));
  CHECK(m.qubit_site(1) == ent(4, 1));
  const auto end = replay(start, batches, hw);
  CHECK(end.qubits() == m.qubits());
}

TEST_CASE("a destination held by a stationary atom is a routing error") {
  const auto hw = test_hw(9);
  const auto& g = hw.geometry;
  MappingState m(g);
  m.place_qubit(0, ent(4, 1));
  m.place_qubit(1, ent(4, 2));
  const std::vector<MoveVector> mv{make_move(g, 0, ent(4, 1), ent(4, 2))};
  CHECK_THROWS_AS((void)schedule_moves(mv, m, hw), RoutingError);
}

TEST_CASE("invalid move lists are rejected") {
  const auto hw = test_hw(9);
  const auto& g = hw.geometry;
  MappingState m(g);
  m.place_qubit(0, ent(4, 1));
  m.place_qubit(1, ent(5, 1));
  const std::vector<MoveVector> twice{make_move(g, 0, ent(4, 1), ent(8, 1)),
                                      make_move(g, 1, ent(5, 1), ent(8, 1))};
  CHECK_THROWS_AS((void)schedule_moves(twice, m, hw), Error);
  const std::vector<MoveVector> empty_src{make_move(g, 2, ent(9, 1), ent(9, 2))};
  CHECK_THROWS_AS((void)schedule_moves(empty_src, m, hw), Error);
  const std::vector<MoveVector> trivial{make_move(g, 0, ent(4, 1), ent(4, 1))};
  CHECK(schedule_moves(trivial, m, hw).empty());
}

TEST_CASE("staged fallback parks then completes") {
  const auto hw = test_hw(9);
  const auto& g = hw.geometry;
  MappingState m(g);
  m.place_qubit(0, sto(0, 0));
  const auto mv = make_move(g, 0, sto(0, 0), ent(4, 1));
  const auto [first, parked] = staged_fallback(mv, m, hw);
  CHECK(parked.zone == Zone::Parking);
  CHECK(m.qubit_site(0) == parked);
  REQUIRE(first.primitives.size() == 2);
  CHECK(first.primitives[0].kind == PrimitiveKind::Activate);
  CHECK(first.primitives[1].kind == PrimitiveKind::Park);
  const auto second = complete_fallback(mv, parked, m, hw);
  REQUIRE(second.primitives.size() == 3);
  CHECK(second.primitives[0].kind == PrimitiveKind::Park);
  CHECK(second.primitives[1].kind == PrimitiveKind::BigMove);
  CHECK(second.primitives[2].kind == PrimitiveKind::Deactivate);
  CHECK(m.qubit_site(0) == ent(4, 1));
}

TEST_CASE("staged fallback fails when every parking site is taken") {
  const auto hw = test_hw(4);
  const auto& g = hw.geometry;
  MappingState m(g);
  int atom = 1;
  for (const auto& p : g.parking_sites()) {
    m.place_qubit(atom++, p);
  }
  m.place_qubit(0, sto(0, 0));
  CHECK_THROWS_AS((void)staged_fallback(make_move(g, 0, sto(0, 0), ent(4, 1)), m, hw),
                  RoutingError);
}

TEST_CASE("random move sets reach their targets with legal batches") {
  std::mt19937_64 rng(555);
  int fallbacks = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 6 + trial % 10;
    const auto hw = test_hw(n);
    const auto& g = hw.geometry;
    auto sites = every_site(g);
    std::shuffle(sites.begin(), sites.end(), rng);
    const int atoms = std::min<int>(n + 4, static_cast<int>(sites.size()) / 3);
    MappingState m(g);
    for (int a = 0; a < atoms; ++a) {
      m.place_qubit(a, sites[static_cast<std::size_t>(a)]);
    }
    // The first half of the atoms move to fresh or vacated sites.
    const int movers = atoms / 2;
    std::vector<Site> pool(sites.begin(), sites.begin() + movers);
    pool.insert(pool.end(), sites.begin() + atoms, sites.end());
    std::shuffle(pool.begin(), pool.end(), rng);
    if (trial % 3 == 0) {
      // Cyclic rotation among the movers forces at least one deadlock.
      for (int a = 0; a < movers; ++a) {
        pool[static_cast<std::size_t>(a)] = sites[static_cast<std::size_t>((a + 1) % movers)];
      }
    }
    std::vector<MoveVector> mv;
    std::map<int, Site> want;
    for (int a = 0; a < movers; ++a) {
      const Site dst = pool[static_cast<std::size_t>(a)];
      mv.push_back(make_move(g, a, sites[static_cast<std::size_t>(a)], dst));
      want[a] = dst;
    }
    for (int a = movers; a < atoms; ++a) {
      want[a] = sites[static_cast<std::size_t>(a)];
    }
    const MappingState start = m;
    std::vector<MoveBatch> batches;
    try {
      batches = schedule_moves(mv, m, hw);
    } catch (const RoutingError& e) {
      FAIL("unexpected routing error: " << e.what());
    }
    CHECK(m.qubits() == want);
    CHECK(replay(start, batches, hw).qubits() == want);
    fallbacks += static_cast<int>(
        std::count_if(batches.begin(), batches.end(), [](const MoveBatch& b) { return b.fallback; }));
    MappingState again = start;
    const auto repeat = schedule_moves(mv, again, hw);
    REQUIRE(repeat.size() == batches.size());
    for (std::size_t i = 0; i < repeat.size(); ++i) {
      CHECK(repeat[i].moves == batches[i].moves);
    }
  }
  CHECK(fallbacks > 0);
}
