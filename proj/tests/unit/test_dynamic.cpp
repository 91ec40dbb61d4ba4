#include "dtc/dynamic.hpp"
#include "dtc/error.hpp"

#include <doctest.h>

#include <algorithm>

using namespace dtc;

namespace {

// Data qubits at their storage homes plus an idle ancilla pool, arranged the
// way the dynamic compiler starts.
struct Fixture {
  HardwareConfig hw;
  MappingState state;
  AncillaPool pool;
  PlannerContext ctx;

  explicit Fixture(int n, int ancillas = -1)
      : hw(), state(GeometrySpec{}) {
    const int k = ancillas < 0 ? 2 * n + 4 : ancillas;
    hw.geometry = with_storage_capacity(crop_grid(n, GeometrySpec{}), n + k);
    state = MappingState(hw.geometry);
    const PriorityTable pri(static_cast<std::size_t>(n), 1.0);
    const auto targets = assign_entanglement_targets(pri, hw.geometry);
    const auto homes = assign_storage_sites(targets, pri, hw.geometry, hw.layout);
    ctx = PlannerContext{&hw, n, {}};
    std::set<Site> taken;
    for (const auto& [q, s] : homes) {
      state.place_qubit(q, s);
      ctx.home[q] = s;
      taken.insert(s);
    }
    const Site centre{Zone::Entanglement, hw.geometry.usable_columns().front(),
                      hw.geometry.ent_first_row_y};
    for (int a = n; a < n + k; ++a) {
      const auto home = cheapest_storage_site(centre, hw.geometry, hw.layout, taken);
      REQUIRE(home.has_value());
      taken.insert(*home);
      state.place_ancilla(a, *home);
      ctx.home[a] = *home;
      pool.ancillas.push_back(a);
      pool.role[a] = AtomRole::Idle;
    }
  }

  void apply(const DTStagePlan& plan) {
    (void)schedule_moves(plan.moves, state, hw);
  }
};

const Site& site_of(const MappingState& m, int atom) {
  return m.has_qubit(atom) ? m.qubit_site(atom) : m.ancilla_site(atom);
}

void check_plan(const Fixture& f, const Stage& stage, const DTStagePlan& plan) {
  CHECK(plan.classification.partitions(stage.pairs));
  CHECK(plan.weights.size() == plan.moves.size());
  CHECK(plan.decisions.size() == stage.pairs.size());
  std::set<int> movers;
  for (const auto& mv : plan.moves) {
    CHECK(site_of(f.state, mv.atom) == mv.src);
    CHECK(movers.insert(mv.atom).second);
  }
  for (const auto& d : plan.decisions) {
    CHECK(plan.classification.reason.at(d.pair) == d.reason);
    if (!d.dt) {
      continue;
    }
    REQUIRE_FALSE(d.chain.empty());
    CHECK(d.hops == static_cast<int>(d.chain.size()) - 1);
    CHECK(adjacent(d.chain.front(), plan.endpoint_cells.at(d.pair.first)));
    CHECK(adjacent(d.chain.back(), plan.endpoint_cells.at(d.pair.second)));
    for (std::size_t i = 1; i < d.chain.size(); ++i) {
      CHECK(adjacent(d.chain[i - 1], d.chain[i]));
    }
    if (d.reason == PairReason::TooExpensive || d.reason == PairReason::Infeasible) {
      CHECK_FALSE(d.dt);
    }
  }
}

} // namespace

TEST_CASE("pool bookkeeping") {
  AncillaPool pool;
  pool.ancillas = {10, 11};
  pool.release_stage = {{2, 5}, {3, 7}, {4, 5}};
  pool.harvested = {2, 3};
  CHECK(pool.is_ancilla(10));
  CHECK_FALSE(pool.is_ancilla(2));
  CHECK(pool.due_for_release(5) == std::vector<int>{2});
  CHECK(pool.due_for_release(4).empty());
  CHECK(pool.due_for_release(7) == std::vector<int>{2, 3});
}

TEST_CASE("storage_projection lands on a usable column at the first row") {
  const auto g = crop_grid(12, GeometrySpec{});
  for (const auto& s : g.storage_sites()) {
    const Cell c = storage_projection(g, s);
    CHECK(g.usable_column(c.col));
    CHECK(c.row == g.ent_first_row_y);
  }
}

TEST_CASE("backbone_for_anchor runs down the column next to the anchor") {
  const auto g = crop_grid(8, GeometrySpec{});
  auto grid = ent_lattice(g, 1.0, 2.0);
  const int anchor = g.usable_columns().front();
  const auto spine = backbone_for_anchor(grid, anchor);
  REQUIRE_FALSE(spine.empty());
  for (std::size_t i = 1; i < spine.size(); ++i) {
    CHECK(adjacent(spine[i - 1], spine[i]));
  }
  for (const Cell c : spine) {
    CHECK(std::abs(c.col - anchor) <= 1);
    CHECK_FALSE(grid.blocked(c));
  }
}

TEST_CASE("plan_dt_stage keeps the partition and emits connected chains") {
  Fixture f(6);
  const Stage first{0, {}, {{0, 1}, {2, 3}}};
  const auto plan = plan_dt_stage(first, f.state, DTChannel{}, f.pool, f.ctx);
  check_plan(f, first, plan);
  CHECK_FALSE(plan.channel.empty());
  for (const int a : plan.channel.channel_atoms) {
    CHECK(f.pool.role.at(a) != AtomRole::Reserve);
  }
  for (const int a : plan.channel.reserve_atoms) {
    CHECK_FALSE(plan.channel.channel_atoms.contains(a));
  }
}

TEST_CASE("an unchanged stage reuses the channel without moves") {
  Fixture f(6);
  const Stage stage{0, {}, {{0, 1}, {2, 3}}};
  const auto first = plan_dt_stage(stage, f.state, DTChannel{}, f.pool, f.ctx);
  f.apply(first);
  const auto again = plan_dt_stage(stage, f.state, first.channel, f.pool, f.ctx);
  check_plan(f, stage, again);
  CHECK(again.moves.empty());
  CHECK(again.channel.backbone == first.channel.backbone);
  CHECK(again.channel.branches == first.channel.branches);
  CHECK(again.backbone_reuse == doctest::Approx(1.0));
}

TEST_CASE("a sliding pair keeps most of the backbone") {
  Fixture f(6);
  const Stage s0{0, {}, {{0, 1}}};
  const Stage s1{1, {}, {{0, 2}}};
  const Stage s2{2, {}, {{0, 3}}};
  const auto p0 = plan_dt_stage(s0, f.state, DTChannel{}, f.pool, f.ctx);
  f.apply(p0);
  const auto p1 = plan_dt_stage(s1, f.state, p0.channel, f.pool, f.ctx);
  check_plan(f, s1, p1);
  f.apply(p1);
  const auto p2 = plan_dt_stage(s2, f.state, p1.channel, f.pool, f.ctx);
  check_plan(f, s2, p2);
  CHECK(p1.backbone_reuse > 0.5);
  CHECK(p2.backbone_reuse > 0.5);
  CHECK(p1.channel.anchor == p0.channel.anchor);
}

TEST_CASE("plan_dt_stage is deterministic") {
  Fixture a(8);
  Fixture b(8);
  const Stage stage{0, {}, {{0, 5}, {1, 6}, {2, 7}}};
  const auto pa = plan_dt_stage(stage, a.state, DTChannel{}, a.pool, a.ctx);
  const auto pb = plan_dt_stage(stage, b.state, DTChannel{}, b.pool, b.ctx);
  CHECK(pa.channel == pb.channel);
  REQUIRE(pa.moves.size() == pb.moves.size());
  for (std::size_t i = 0; i < pa.moves.size(); ++i) {
    CHECK(pa.moves[i].atom == pb.moves[i].atom);
    CHECK(pa.moves[i].dst == pb.moves[i].dst);
  }
  CHECK(a.pool.role == b.pool.role);
}

TEST_CASE("without ancillas every pair falls back to direct shuttling") {
  Fixture f(4, 0);
  const Stage stage{0, {}, {{0, 1}}};
  const auto plan = plan_dt_stage(stage, f.state, DTChannel{}, f.pool, f.ctx);
  check_plan(f, stage, plan);
  CHECK(plan.classification.dt.empty());
  CHECK(plan.classification.aod == stage.pairs);
}
