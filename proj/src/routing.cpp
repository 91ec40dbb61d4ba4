#include "dtc/routing.hpp"

#include "dtc/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>

namespace dtc {

namespace {

constexpr double kEps = 1e-9;

int sign(double v) {
  if (v > kEps) {
    return 1;
  }
  if (v < -kEps) {
    return -1;
  }
  return 0;
}

std::string describe(const MoveVector& mv) {
  return "atom " + std::to_string(mv.atom) + " " + std::string(zone_tag(mv.src.zone)) +
         "(" + std::to_string(mv.src.col) + "," + std::to_string(mv.src.row) + ")->" +
         std::string(zone_tag(mv.dst.zone)) + "(" + std::to_string(mv.dst.col) + "," +
         std::to_string(mv.dst.row) + ")";
}

bool too_close(const std::vector<Point>& path, Point p, double clearance) {
  return path_point_distance(path, p) < clearance - kEps;
}

// Path of src->dst stays clear of every occupied site except the source.
bool path_clear(const GeometrySpec& g, const MappingState& m, const Site& src,
                const Site& dst, double clearance) {
  const auto path = move_path(g, src, dst);
  return std::none_of(m.occupancy().begin(), m.occupancy().end(), [&](const Site& s) {
    return s != src && too_close(path, g.position(s), clearance);
  });
}

MovePrimitive primitive(PrimitiveKind kind, const std::vector<MoveVector>& moves,
                        bool displaced, double duration) {
  MovePrimitive p;
  p.kind = kind;
  p.duration = duration;
  const bool at_dst = kind == PrimitiveKind::Deactivate;
  for (const auto& mv : moves) {
    p.atoms.push_back(mv.atom);
    p.from.push_back(displaced || !at_dst ? mv.src : mv.dst);
    p.to.push_back(displaced || at_dst ? mv.dst : mv.src);
  }
  return p;
}

MoveBatch parallel_batch(const std::vector<MoveVector>& moves, const TimingParams& tp) {
  double longest = 0.0;
  for (const auto& mv : moves) {
    longest = std::max(longest, mv.distance);
  }
  MoveBatch b;
  b.moves = moves;
  b.primitives.push_back(primitive(PrimitiveKind::Activate, moves, false, tp.t_xfer));
  b.primitives.push_back(
      primitive(PrimitiveKind::Move, moves, true, aod_motion_time(longest, tp)));
  b.primitives.push_back(primitive(PrimitiveKind::Deactivate, moves, false, tp.t_xfer));
  return b;
}

} // namespace

MoveVector make_move(const GeometrySpec& g, int atom, const Site& src, const Site& dst) {
  return {atom, src, dst, distance(g.position(src), g.position(dst))};
}

std::string_view primitive_name(PrimitiveKind kind) {
  switch (kind) {
  case PrimitiveKind::Activate:
    return "activate";
  case PrimitiveKind::Move:
    return "move";
  case PrimitiveKind::Park:
    return "park";
  case PrimitiveKind::BigMove:
    return "bigmove";
  case PrimitiveKind::Deactivate:
    return "deactivate";
  }
  return "?";
}

double MoveBatch::duration() const {
  double t = 0.0;
  for (const auto& p : primitives) {
    t += p.duration;
  }
  return t;
}

bool aod_order_compatible(const GeometrySpec& g, const MoveVector& a,
                          const MoveVector& b) {
  const Point as = g.position(a.src);
  const Point bs = g.position(b.src);
  const Point ad = g.position(a.dst);
  const Point bd = g.position(b.dst);
  return sign(as.x - bs.x) == sign(ad.x - bd.x) && sign(as.y - bs.y) == sign(ad.y - bd.y);
}

ConflictGraph build_conflict_graph(std::span<const MoveVector> moves,
                                   const MappingState& m, const GeometrySpec& g,
                                   double clearance) {
  const std::size_t n = moves.size();
  ConflictGraph graph(n);
  std::set<Site> moving;
  for (const auto& mv : moves) {
    moving.insert(mv.src);
  }
  std::vector<std::vector<Point>> paths;
  std::vector<char> hits_stationary(n, 0);
  paths.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    paths.push_back(move_path(g, moves[i].src, moves[i].dst));
    for (const Site& s : m.occupancy()) {
      if (!moving.contains(s) && too_close(paths[i], g.position(s), clearance)) {
        hits_stationary[i] = 1;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& a = moves[i];
      const auto& b = moves[j];
      const bool shared = a.src == b.src || a.dst == b.dst || a.src == b.dst ||
                          a.dst == b.src;
      const bool order = !aod_order_compatible(g, a, b);
      const bool near =
          too_close(paths[i], g.position(b.src), clearance) ||
          too_close(paths[i], g.position(b.dst), clearance) ||
          too_close(paths[j], g.position(a.src), clearance) ||
          too_close(paths[j], g.position(a.dst), clearance);
      if (shared || order || near || hits_stationary[i] != 0 || hits_stationary[j] != 0) {
        graph.add_edge(i, j);
      }
    }
  }
  return graph;
}

std::pair<MoveBatch, Site> staged_fallback(const MoveVector& move, MappingState& m,
                                           const HardwareConfig& hw) {
  const auto& g = hw.geometry;
  const double target_x = g.position(move.dst).x;
  std::optional<Site> best;
  double best_gap = std::numeric_limits<double>::infinity();
  for (const Site& p : g.parking_sites()) {
    if (m.occupied(p) || !path_clear(g, m, move.src, p, hw.routing.clearance)) {
      continue;
    }
    const double gap = std::abs(g.position(p).x - target_x);
    if (gap < best_gap - kEps) {
      best_gap = gap;
      best = p;
    }
  }
  if (!best) {
    throw RoutingError("no free parking site for " + describe(move));
  }
  const auto& tp = hw.timing;
  const MoveVector leg = make_move(g, move.atom, move.src, *best);
  MoveBatch b;
  b.fallback = true;
  b.moves = {move};
  b.primitives.push_back(primitive(PrimitiveKind::Activate, {leg}, false, tp.t_xfer));
  b.primitives.push_back(primitive(PrimitiveKind::Park, {leg}, true,
                                   tp.t_xfer + aod_motion_time(leg.distance, tp)));
  m.relocate(move.src, *best);
  return {b, *best};
}

MoveBatch complete_fallback(const MoveVector& move, const Site& parked, MappingState& m,
                            const HardwareConfig& hw) {
  const auto& tp = hw.timing;
  const MoveVector leg = make_move(hw.geometry, move.atom, parked, move.dst);
  MoveBatch b;
  b.fallback = true;
  b.moves = {move};
  b.primitives.push_back(primitive(PrimitiveKind::Park, {leg}, false, tp.t_xfer));
  b.primitives.push_back(
      primitive(PrimitiveKind::BigMove, {leg}, true, aod_motion_time(leg.distance, tp)));
  b.primitives.push_back(primitive(PrimitiveKind::Deactivate, {leg}, false, tp.t_xfer));
  m.relocate(parked, move.dst);
  return b;
}

std::vector<MoveBatch> schedule_moves(std::vector<MoveVector> moves, MappingState& m,
                                      const HardwareConfig& hw,
                                      std::vector<double> weight) {
  const auto& g = hw.geometry;
  const double clearance = hw.routing.clearance;
  if (!weight.empty() && weight.size() != moves.size()) {
    throw Error("move weights must parallel the move list");
  }
  if (weight.empty()) {
    weight.assign(moves.size(), 1.0);
  }

  struct Pending {
    MoveVector mv;
    double weight;
    std::optional<Site> parked;
  };
  std::vector<Pending> pending;
  std::set<Site> destinations;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const auto& mv = moves[i];
    if (!g.contains(mv.src) || !g.contains(mv.dst)) {
      throw RoutingError("move leaves the geometry: " + describe(mv));
    }
    if (!m.occupied(mv.src)) {
      throw RoutingError("no atom at source of " + describe(mv));
    }
    if (!destinations.insert(mv.dst).second) {
      throw RoutingError("two moves share destination: " + describe(mv));
    }
    if (mv.src != mv.dst) {
      pending.push_back({mv, weight[i], std::nullopt});
    }
  }

  std::vector<MoveBatch> out;
  std::size_t parks = 0;
  while (!pending.empty()) {
    const auto current = [](const Pending& p) { return p.parked ? *p.parked : p.mv.src; };
    std::vector<std::size_t> ready;
    std::vector<std::size_t> ready_parked;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      const auto& p = pending[i];
      if (m.occupied(p.mv.dst) || !path_clear(g, m, current(p), p.mv.dst, clearance)) {
        continue;
      }
      (p.parked ? ready_parked : ready).push_back(i);
    }

    std::vector<std::size_t> done;
    if (!ready.empty()) {
      std::vector<MoveVector> cand;
      std::vector<double> w;
      for (const auto i : ready) {
        cand.push_back(pending[i].mv);
        w.push_back(pending[i].weight);
      }
      const auto graph = build_conflict_graph(cand, m, g, clearance);
      const auto chosen = greedy_mis(graph, w);
      std::vector<MoveVector> members;
      for (const auto k : chosen) {
        members.push_back(cand[k]);
        done.push_back(ready[k]);
      }
      out.push_back(parallel_batch(members, hw.timing));
      for (const auto& mv : members) {
        m.relocate(mv.src, mv.dst);
      }
    } else if (!ready_parked.empty()) {
      const auto i = ready_parked.front();
      out.push_back(complete_fallback(pending[i].mv, *pending[i].parked, m, hw));
      done.push_back(i);
    } else {
      // Nothing can move directly: every blocker must itself be pending,
      // otherwise the request can never complete.
      std::set<Site> sources;
      for (const auto& p : pending) {
        sources.insert(current(p));
      }
      for (const auto& p : pending) {
        if (m.occupied(p.mv.dst) && !sources.contains(p.mv.dst)) {
          throw RoutingError("destination held by a stationary atom: " + describe(p.mv));
        }
      }
      std::optional<std::size_t> victim;
      for (std::size_t i = 0; i < pending.size() && !victim; ++i) {
        if (pending[i].parked) {
          continue;
        }
        for (const auto& other : pending) {
          if (other.mv.dst == pending[i].mv.src) {
            victim = i;
            break;
          }
        }
      }
      for (std::size_t i = 0; i < pending.size() && !victim; ++i) {
        if (!pending[i].parked) {
          victim = i;
        }
      }
      if (!victim || ++parks > 2 * moves.size() + 2) {
        throw RoutingError("routing livelock at " + describe(pending.front().mv));
      }
      auto [batch, site] = staged_fallback(pending[*victim].mv, m, hw);
      out.push_back(std::move(batch));
      pending[*victim].parked = site;
    }

    std::sort(done.rbegin(), done.rend());
    for (const auto i : done) {
      pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  return out;
}

} // namespace dtc
