#include "dtc/dynamic.hpp"

#include "dtc/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

namespace dtc {

bool AncillaPool::is_ancilla(int atom) const {
  return std::binary_search(ancillas.begin(), ancillas.end(), atom);
}

std::vector<int> AncillaPool::due_for_release(int stage) const {
  std::vector<int> out;
  for (const int q : harvested) {
    const auto it = release_stage.find(q);
    if (it != release_stage.end() && it->second <= stage) {
      out.push_back(q);
    }
  }
  return out;
}

Cell storage_projection(const GeometrySpec& g, const Site& s) {
  return {g.nearest_usable_col(g.position(s).x), g.ent_first_row_y};
}

std::vector<Cell> backbone_for_anchor(const WeightedLattice& grid, int anchor) {
  const int col = anchor + 1 < grid.cols() ? anchor + 1 : anchor - 1;
  std::vector<Cell> best;
  std::vector<Cell> run;
  for (int r = 0; r <= grid.rows(); ++r) {
    const Cell c{col, r};
    if (r < grid.rows() && !grid.blocked(c)) {
      run.push_back(c);
      continue;
    }
    if (run.size() > best.size()) {
      best = run;
    }
    run.clear();
  }
  return best;
}

namespace {

// Branch cost from every free cell to the nearest relay, over free cells.
std::vector<double> distance_to_relays(const WeightedLattice& grid,
                                       const std::set<Cell>& relays) {
  const auto total = static_cast<std::size_t>(grid.cols() * grid.rows());
  std::vector<double> dist(total, std::numeric_limits<double>::infinity());
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  for (const Cell r : relays) {
    dist[static_cast<std::size_t>(grid.id(r))] = 0.0;
    open.emplace(0.0, grid.id(r));
  }
  while (!open.empty()) {
    const auto [d, id] = open.top();
    open.pop();
    if (d > dist[static_cast<std::size_t>(id)]) {
      continue;
    }
    const Cell u = grid.cell(id);
    for (const Cell v : grid.neighbors(u)) {
      if (grid.blocked(v) || relays.contains(v)) {
        continue;
      }
      const double step = v.col == u.col ? grid.vertical_cost() : grid.horizontal_cost();
      auto& dv = dist[static_cast<std::size_t>(grid.id(v))];
      if (d + step < dv) {
        dv = d + step;
        open.emplace(dv, grid.id(v));
      }
    }
  }
  return dist;
}

bool touches(const std::set<Cell>& relays, Cell c, int reach) {
  return std::any_of(relays.begin(), relays.end(),
                     [&](Cell r) { return manhattan(r, c) <= reach; });
}

struct Draft {
  WeightedLattice grid;
  std::set<Cell> relays;
  std::map<int, std::vector<Cell>> branches;
  std::map<int, Cell> cells;      // endpoint -> cell during the stage
  std::set<int> moved;            // endpoints that need an alignment or load move
};

} // namespace

DTStagePlan plan_dt_stage(const Stage& stage, const MappingState& state,
                          const DTChannel& prev, AncillaPool& pool,
                          const PlannerContext& ctx) {
  const HardwareConfig& hw = *ctx.hw;
  const GeometrySpec& g = hw.geometry;
  const ChannelParams& cp = hw.channel;
  const TimingParams& tp = hw.timing;
  DTStagePlan plan;

  // BuildGrid: data qubits in the zone are obstacles, harvested ones are relays.
  Draft d{ent_lattice(g, 1.0, 2.0), {}, {}, {}, {}};
  for (const auto& [q, s] : state.qubits()) {
    if (s.zone == Zone::Entanglement && !pool.harvested.contains(q)) {
      d.grid.set_obstacle(ent_cell(s));
    }
  }
  std::map<int, EndpointView> views;
  for (const auto& [a, b] : stage.pairs) {
    for (const int q : {a, b}) {
      const Site& s = state.qubit_site(q);
      views[q] = s.zone == Zone::Entanglement
                     ? EndpointView{q, ent_cell(s), false}
                     : EndpointView{q, storage_projection(g, s), true};
    }
  }

  // UpdateChan: keep the backbone column when the anchor holds, keep branches
  // of endpoints that did not move and are still unobstructed.
  const std::optional<int> prev_anchor =
      prev.anchor >= 0 ? std::optional<int>(prev.anchor) : std::nullopt;
  const int anchor = select_anchor_column(stage.pairs, views, prev_anchor, d.grid, g, cp);
  const auto backbone = backbone_for_anchor(d.grid, anchor);
  plan.channel.anchor = anchor;
  plan.channel.backbone = backbone;
  if (!backbone.empty()) {
    const std::set<Cell> before(prev.backbone.begin(), prev.backbone.end());
    const auto kept = std::count_if(backbone.begin(), backbone.end(),
                                    [&](Cell c) { return before.contains(c); });
    plan.backbone_reuse = static_cast<double>(kept) / static_cast<double>(backbone.size());
  }
  d.relays.insert(backbone.begin(), backbone.end());
  const std::set<Cell> spine(backbone.begin(), backbone.end());
  for (const auto& [q, cells] : prev.branches) {
    const auto v = views.find(q);
    if (cells.empty() || v == views.end() || v->second.in_storage) {
      continue;
    }
    const bool clear = std::none_of(cells.begin(), cells.end(), [&](Cell c) {
      return d.grid.blocked(c) || spine.contains(c);
    });
    if (clear && adjacent(cells.front(), v->second.cell) && touches(spine, cells.back(), 1)) {
      d.branches[q] = cells;
      d.relays.insert(cells.begin(), cells.end());
    }
  }

  // Eligibility.
  std::set<Cell> occupied;
  for (const Site& s : state.occupancy()) {
    if (s.zone == Zone::Entanglement && !d.relays.contains(ent_cell(s))) {
      occupied.insert(ent_cell(s));
    }
  }
  plan.classification = backbone.empty()
                            ? classify_pairs(stage.pairs, {}, views, occupied, g, cp)
                            : classify_pairs(stage.pairs, d.relays, views, occupied, g, cp);

  // Endpoint placement and FindBranch, one pair at a time.
  const auto free_cell = [&](Cell c) {
    return !d.grid.blocked(c) && !d.relays.contains(c) && !occupied.contains(c);
  };
  const auto place = [&](int q) -> bool {
    const EndpointView& v = views.at(q);
    Cell cell = v.cell;
    if (!v.in_storage && touches(d.relays, v.cell, cp.r_near)) {
      // already next to the channel
    } else if (!v.in_storage) {
      std::optional<Cell> dock;
      for (int r = 0; r < g.ent_rows; ++r) {
        for (int c = 0; c < g.ent_cols; ++c) {
          const Cell x{c, r};
          if (manhattan(x, v.cell) > cp.c_max || !free_cell(x) ||
              !touches(d.relays, x, cp.r_near)) {
            continue;
          }
          if (!dock || manhattan(x, v.cell) < manhattan(*dock, v.cell)) {
            dock = x;
          }
        }
      }
      if (!dock) {
        return false;
      }
      cell = *dock;
      d.moved.insert(q);
    } else {
      const auto dist = distance_to_relays(d.grid, d.relays);
      const Point from = g.position(state.qubit_site(q));
      std::optional<Cell> best;
      std::tuple<double, double> best_key{};
      for (int r = 0; r < g.ent_rows; ++r) {
        for (int c = 0; c < g.ent_cols; ++c) {
          const Cell x{c, r};
          if (!free_cell(x)) {
            continue;
          }
          double branch = std::numeric_limits<double>::infinity();
          if (touches(d.relays, x, 1)) {
            branch = 0.0;
          } else {
            for (const Cell n : d.grid.neighbors(x)) {
              if (!d.grid.blocked(n)) {
                branch = std::min(branch, dist[static_cast<std::size_t>(d.grid.id(n))]);
              }
            }
          }
          if (!std::isfinite(branch)) {
            continue;
          }
          const std::tuple<double, double> key{branch, distance(from, g.position(ent_site(x)))};
          if (!best || key < best_key) {
            best = x;
            best_key = key;
          }
        }
      }
      if (!best) {
        return false;
      }
      cell = *best;
      d.moved.insert(q);
    }
    d.cells[q] = cell;
    d.grid.set_obstacle(cell);
    if (!touches(d.relays, cell, 1)) {
      const std::vector<Cell> attach(d.relays.begin(), d.relays.end());
      try {
        auto branch = find_branch(d.grid, cell, attach);
        d.relays.insert(branch.begin(), branch.end());
        d.branches[q] = std::move(branch);
      } catch (const InfeasibleError&) {
        return false;
      }
    }
    return true;
  };

  for (const auto& p : plan.classification.aod) {
    plan.decisions.push_back({p, false, plan.classification.reason.at(p), {}, 0, 0.0, 0.0});
  }
  std::vector<QubitPair> accepted;
  for (const auto& p : plan.classification.dt) {
    Draft saved = d;
    if (backbone.empty() || !place(p.first) || !place(p.second)) {
      d = std::move(saved);
      plan.decisions.push_back({p, false, PairReason::Infeasible, {}, 0, 0.0, 0.0});
      continue;
    }
    accepted.push_back(p);
  }

  // Post-check: TooExp / Infeasible, then the two-leg pattern or demotion.
  const auto align_time = [&](int q) {
    if (!d.moved.contains(q)) {
      return 0.0;
    }
    const Point from = g.position(state.qubit_site(q));
    return aod_move_duration(distance(from, g.position(ent_site(d.cells.at(q)))), tp);
  };
  std::vector<PairDecision> dt_ok;
  std::set<int> dropped;
  for (const auto& p : accepted) {
    PairDecision dec{p, true, plan.classification.reason.at(p), {}, 0, 0.0, 0.0};
    const double d_uv = distance(g.position(state.qubit_site(p.first)),
                                 g.position(state.qubit_site(p.second)));
    dec.aod_estimate = 2.0 * aod_move_duration(d_uv, tp) + tp.t_2pi;
    const double align = std::max(align_time(p.first), align_time(p.second));
    const Cell cu = d.cells.at(p.first);
    const Cell cv = d.cells.at(p.second);
    dec.chain = relay_chain(g, d.relays, cu, cv);
    bool infeasible = dec.chain.empty();
    if (!infeasible) {
      dec.hops = static_cast<int>(dec.chain.size()) - 1;
      dec.dt_estimate = remote_cz_duration(dec.hops, tp) + align;
    }
    if (infeasible || dec.dt_estimate >= dec.aod_estimate) {
      std::optional<std::vector<Cell>> best;
      for (const Cell a : d.grid.neighbors(cu)) {
        for (const Cell b : d.grid.neighbors(cv)) {
          if (d.grid.blocked(a) || d.grid.blocked(b)) {
            continue;
          }
          auto path = two_leg_fallback(a, b, d.grid);
          if (path && (!best || path->size() < best->size())) {
            best = std::move(path);
          }
        }
      }
      const int legs = best ? static_cast<int>(best->size()) - 1 : 0;
      if (best && remote_cz_duration(legs, tp) + align < dec.aod_estimate) {
        dec.reason = PairReason::TwoLeg;
        dec.chain = *best;
        dec.hops = legs;
        dec.dt_estimate = remote_cz_duration(legs, tp) + align;
        auto& extra = d.branches[p.first];
        extra.insert(extra.end(), best->begin(), best->end());
        d.relays.insert(best->begin(), best->end());
      } else {
        dec.dt = false;
        dec.reason = infeasible ? PairReason::Infeasible : PairReason::TooExpensive;
        dropped.insert(p.first);
        dropped.insert(p.second);
      }
    }
    (dec.dt ? dt_ok : plan.decisions).push_back(dec);
  }

  // Drop branches that served only demoted endpoints when the surviving
  // chains do not need them.
  if (!dropped.empty()) {
    std::set<Cell> pruned(backbone.begin(), backbone.end());
    std::map<int, std::vector<Cell>> kept_branches;
    for (const auto& [q, cells] : d.branches) {
      if (!dropped.contains(q)) {
        pruned.insert(cells.begin(), cells.end());
        kept_branches[q] = cells;
      }
    }
    const bool intact = std::all_of(dt_ok.begin(), dt_ok.end(), [&](const PairDecision& x) {
      return relay_chain(g, pruned, d.cells.at(x.pair.first), d.cells.at(x.pair.second)) ==
             x.chain;
    });
    if (intact) {
      d.relays = std::move(pruned);
      d.branches = std::move(kept_branches);
    }
    for (const int q : dropped) {
      d.cells.erase(q);
      d.moved.erase(q);
    }
  }
  plan.decisions.insert(plan.decisions.end(), dt_ok.begin(), dt_ok.end());
  std::stable_sort(plan.decisions.begin(), plan.decisions.end(),
                   [&](const PairDecision& a, const PairDecision& b) {
                     const auto idx = [&](const QubitPair& p) {
                       return std::find(stage.pairs.begin(), stage.pairs.end(), p) -
                              stage.pairs.begin();
                     };
                     return idx(a.pair) < idx(b.pair);
                   });
  std::vector<int> candidates;
  for (const int a : pool.ancillas) {
    candidates.push_back(a);
  }
  for (const int q : pool.harvested) {
    candidates.push_back(q);
  }
  std::sort(candidates.begin(), candidates.end());
  // Too few atoms to staff the relays: every pair is shuttled instead.
  if (candidates.size() < d.relays.size()) {
    for (auto& dec : plan.decisions) {
      if (dec.dt) {
        dec.dt = false;
        dec.reason = PairReason::Infeasible;
        dec.chain.clear();
        dec.hops = 0;
      }
    }
    d.relays.clear();
    d.branches.clear();
    d.cells.clear();
    d.moved.clear();
    plan.channel.backbone.clear();
    plan.backbone_reuse = 0.0;
  }
  plan.classification.dt.clear();
  plan.classification.aod.clear();
  for (const auto& dec : plan.decisions) {
    (dec.dt ? plan.classification.dt : plan.classification.aod).push_back(dec.pair);
    plan.classification.reason[dec.pair] = dec.reason;
  }
  plan.channel.branches = d.branches;
  plan.endpoint_cells = d.cells;

  // BuildCost + Hungarian over channel/reserve atoms, harvested qubits and
  // fresh storage ancillas.
  const std::vector<Cell> required(d.relays.begin(), d.relays.end());
  const auto site_of = [&](int atom) {
    return atom < ctx.num_qubits ? state.qubit_site(atom) : state.ancilla_site(atom);
  };
  std::map<int, Site> assigned;
  if (!required.empty()) {
    CostMatrix cost(candidates.size(), required.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const Site from = site_of(candidates[i]);
      const double fresh = from.zone == Zone::Storage ? cp.lambda_new : 0.0;
      for (std::size_t j = 0; j < required.size(); ++j) {
        cost(i, j) = distance(g.position(from), g.position(ent_site(required[j]))) + fresh;
      }
    }
    const auto match = hungarian(cost);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (match.row_to_col[i] >= 0) {
        assigned[candidates[i]] = ent_site(required[static_cast<std::size_t>(match.row_to_col[i])]);
      }
    }
  }

  // EmitMoves.
  const auto add_move = [&](int atom, const Site& from, const Site& to, double w) {
    if (from != to) {
      plan.moves.push_back(make_move(g, atom, from, to));
      plan.weights.push_back(w);
    }
  };
  for (const auto& [q, cell] : d.cells) {
    if (d.moved.contains(q)) {
      add_move(q, state.qubit_site(q), ent_site(cell), 2.0);
    }
  }
  std::set<Cell> docks;
  for (const auto& [q, cell] : d.cells) {
    docks.insert(cell);
  }
  std::vector<std::pair<int, int>> idle; // (distance to backbone, ancilla)
  for (const int atom : candidates) {
    const Site from = site_of(atom);
    if (const auto it = assigned.find(atom); it != assigned.end()) {
      add_move(atom, from, it->second, 1.0);
      plan.channel.channel_atoms.insert(atom);
      pool.role[atom] = pool.harvested.contains(atom) ? AtomRole::PreUse : AtomRole::Channel;
      continue;
    }
    if (pool.harvested.contains(atom)) {
      add_move(atom, from, ctx.home.at(atom), 1.0);
      pool.harvested.erase(atom);
      pool.role[atom] = AtomRole::Idle;
      continue;
    }
    if (from.zone != Zone::Entanglement) {
      pool.role[atom] = AtomRole::Idle;
      continue;
    }
    const Cell c = ent_cell(from);
    if (d.relays.contains(c) || docks.contains(c)) {
      add_move(atom, from, ctx.home.at(atom), 1.0);
      pool.role[atom] = AtomRole::Idle;
      continue;
    }
    int gap = std::numeric_limits<int>::max();
    for (const Cell b : backbone) {
      gap = std::min(gap, manhattan(b, c));
    }
    idle.emplace_back(gap, atom);
  }
  std::sort(idle.begin(), idle.end());
  for (std::size_t i = 0; i < idle.size(); ++i) {
    const int atom = idle[i].second;
    if (static_cast<int>(i) < cp.reserve_limit) {
      plan.channel.reserve_atoms.insert(atom);
      pool.role[atom] = AtomRole::Reserve;
    } else {
      add_move(atom, site_of(atom), ctx.home.at(atom), 1.0);
      pool.role[atom] = AtomRole::Idle;
    }
  }
  return plan;
}

} // namespace dtc
