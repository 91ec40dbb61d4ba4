#include "dtc/pipeline.hpp"

#include "dtc/channels.hpp"
#include "dtc/dynamic.hpp"
#include "dtc/error.hpp"
#include "dtc/layout.hpp"
#include "dtc/routing.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>

namespace dtc {

namespace {

constexpr std::array<std::pair<CompileMode, std::string_view>, 3> kModeNames{{
    {CompileMode::Static, "static"},
    {CompileMode::Dynamic, "dynamic"},
    {CompileMode::AodBaseline, "aod-baseline"},
}};

InstrKind instr_kind(PrimitiveKind k) {
  switch (k) {
  case PrimitiveKind::Activate:
    return InstrKind::Activate;
  case PrimitiveKind::Move:
    return InstrKind::Move;
  case PrimitiveKind::Park:
    return InstrKind::Park;
  case PrimitiveKind::BigMove:
    return InstrKind::BigMove;
  case PrimitiveKind::Deactivate:
    return InstrKind::Deactivate;
  }
  return InstrKind::Move;
}

/// Appends timed instructions on a single global clock while tracking where
/// every atom is.
class Builder {
public:
  Builder(const Circuit& c, const HardwareConfig& hw, CompileMode mode, int num_atoms)
      : state_(hw.geometry) {
    s_.mode = std::string(mode_name(mode));
    s_.config = hw;
    s_.circuit = c;
    s_.num_atoms = num_atoms;
    s_.initial.resize(static_cast<std::size_t>(num_atoms));
  }

  [[nodiscard]] int num_qubits() const { return s_.circuit.num_qubits; }
  [[nodiscard]] const HardwareConfig& hw() const { return s_.config; }
  [[nodiscard]] const GeometrySpec& geometry() const { return s_.config.geometry; }
  [[nodiscard]] MappingState& state() { return state_; }
  [[nodiscard]] double now() const { return now_; }
  [[nodiscard]] CompileReport& report() { return report_; }

  void place(int atom, const Site& site) {
    s_.initial[static_cast<std::size_t>(atom)] = site;
    if (atom < num_qubits()) {
      state_.place_qubit(atom, site);
    } else {
      state_.place_ancilla(atom, site);
    }
  }

  [[nodiscard]] const Site& site_of(int atom) const {
    return atom < num_qubits() ? state_.qubit_site(atom) : state_.ancilla_site(atom);
  }

  void route(std::vector<MoveVector> moves, std::vector<double> weights, int stage) {
    if (moves.empty()) {
      return;
    }
    const auto batches = schedule_moves(std::move(moves), state_, s_.config, std::move(weights));
    for (const auto& b : batches) {
      const int id = next_batch_++;
      ++report_.move_batches;
      report_.fallback_batches += b.fallback ? 1 : 0;
      report_.move_us += b.duration();
      for (const auto& p : b.primitives) {
        Instruction in;
        in.kind = instr_kind(p.kind);
        in.atoms = p.atoms;
        in.from = p.from;
        in.sites = p.to;
        in.start_us = now_;
        in.duration_us = p.duration;
        in.batch = id;
        in.stage = stage;
        now_ += p.duration;
        s_.instructions.push_back(std::move(in));
      }
    }
  }

  /// Every single-qubit gate of the stage as one parallel pulse window.
  void one_qubit_layer(const Stage& st) {
    bool any = false;
    for (const std::size_t gi : st.gates) {
      const Gate& gate = s_.circuit.gates[gi];
      if (gate.two_qubit()) {
        continue;
      }
      Instruction in;
      in.kind = InstrKind::OneQubit;
      in.atoms = {gate.q0};
      in.sites = {site_of(gate.q0)};
      in.start_us = now_;
      in.duration_us = s_.config.timing.t_1q;
      in.gate = static_cast<int>(gi);
      in.stage = st.index;
      s_.instructions.push_back(std::move(in));
      ++report_.one_qubit_gates;
      any = true;
    }
    if (any) {
      now_ += s_.config.timing.t_1q;
    }
  }

  void remote(std::size_t gi, const std::vector<Cell>& chain, int stage) {
    const Gate& gate = s_.circuit.gates[gi];
    Instruction in;
    in.kind = InstrKind::RemoteCZ;
    in.atoms = {gate.q0, gate.q1};
    in.sites = {site_of(gate.q0), site_of(gate.q1)};
    for (const Cell c : chain) {
      in.chain.push_back(ent_site(c));
    }
    in.hops = static_cast<int>(chain.size()) - 1;
    in.start_us = now_;
    in.duration_us = remote_cz_duration(in.hops, s_.config.timing);
    in.gate = static_cast<int>(gi);
    in.stage = stage;
    now_ += in.duration_us;
    ++report_.remote_cz;
    report_.hop_total += in.hops;
    report_.max_hops = std::max(report_.max_hops, in.hops);
    s_.instructions.push_back(std::move(in));
  }

  /// Local CZs fired by one global pulse.
  void local_group(const std::vector<std::size_t>& gates, int stage) {
    if (gates.empty()) {
      return;
    }
    for (const std::size_t gi : gates) {
      const Gate& gate = s_.circuit.gates[gi];
      Instruction in;
      in.kind = InstrKind::LocalCZ;
      in.atoms = {gate.q0, gate.q1};
      in.sites = {site_of(gate.q0), site_of(gate.q1)};
      in.start_us = now_;
      in.duration_us = s_.config.timing.t_2pi;
      in.gate = static_cast<int>(gi);
      in.stage = stage;
      s_.instructions.push_back(std::move(in));
      ++report_.local_cz;
    }
    now_ += s_.config.timing.t_2pi;
  }

  void mark_config_end() { s_.config_us = now_; }

  void add_span(const Stage& st, double start) {
    s_.stages.push_back({st.index, st.has_two_qubit(), start, now_});
  }

  CompileResult finish() {
    s_.total_us = now_;
    CompileResult out{std::move(s_), std::move(report_)};
    CompileReport& r = out.report;
    const Schedule& s = out.schedule;
    r.mode = s.mode;
    r.num_qubits = s.circuit.num_qubits;
    r.num_atoms = s.num_atoms;
    r.num_stages = static_cast<int>(s.stages.size());
    r.total_us = s.total_us;
    r.config_us = s.config_us;
    for (const auto& span : s.stages) {
      if (!span.two_qubit) {
        continue;
      }
      ++r.two_qubit_stages;
      r.entangling_us += span.end_us - span.start_us;
      for (auto& sr : r.stages) {
        if (sr.stage == span.stage) {
          sr.span_us = span.end_us - span.start_us;
        }
      }
    }
    r.fidelity = fidelity_report(s);
    return out;
  }

private:
  Schedule s_;
  MappingState state_;
  CompileReport report_;
  double now_ = 0.0;
  int next_batch_ = 0;
};

std::vector<std::size_t> two_qubit_gates(const Circuit& c, const Stage& st) {
  std::vector<std::size_t> out;
  for (const std::size_t gi : st.gates) {
    if (c.gates[gi].two_qubit()) {
      out.push_back(gi);
    }
  }
  return out;
}

void prepare(const Circuit& c, const HardwareConfig& hw) {
  c.validate();
  hw.validate();
  if (c.num_qubits < 1) {
    throw ConfigError("circuit has no qubits");
  }
}

} // namespace

std::string_view mode_name(CompileMode mode) {
  for (const auto& [m, name] : kModeNames) {
    if (m == mode) {
      return name;
    }
  }
  return "?";
}

CompileMode parse_mode(std::string_view name) {
  for (const auto& [m, n] : kModeNames) {
    if (n == name) {
      return m;
    }
  }
  throw ConfigError("unknown mode '" + std::string(name) +
                    "' (expected static, dynamic or aod-baseline)");
}

double CompileReport::max_backbone_reuse() const {
  double best = 0.0;
  for (const auto& s : stages) {
    if (s.dt) {
      best = std::max(best, s.backbone_reuse);
    }
  }
  return best;
}

std::string report_to_json(const CompileReport& r) {
  nlohmann::ordered_json j;
  j["mode"] = r.mode;
  j["num_qubits"] = r.num_qubits;
  j["num_atoms"] = r.num_atoms;
  j["num_stages"] = r.num_stages;
  j["two_qubit_stages"] = r.two_qubit_stages;
  j["total_us"] = r.total_us;
  j["entangling_us"] = r.entangling_us;
  j["config_us"] = r.config_us;
  j["move_us"] = r.move_us;
  j["move_batches"] = r.move_batches;
  j["fallback_batches"] = r.fallback_batches;
  j["one_qubit_gates"] = r.one_qubit_gates;
  j["remote_cz"] = r.remote_cz;
  j["local_cz"] = r.local_cz;
  j["hop_total"] = r.hop_total;
  j["max_hops"] = r.max_hops;
  j["dt_pairs"] = r.dt_pairs;
  j["aod_pairs"] = r.aod_pairs;
  j["reasons"] = r.reasons;
  j["max_backbone_reuse"] = r.max_backbone_reuse();
  auto stages = nlohmann::ordered_json::array();
  for (const auto& s : r.stages) {
    stages.push_back({{"stage", s.stage},
                      {"dt", s.dt},
                      {"dt_pairs", s.dt_pairs},
                      {"aod_pairs", s.aod_pairs},
                      {"channel_sites", s.channel_sites},
                      {"backbone_reuse", s.backbone_reuse},
                      {"span_us", s.span_us}});
  }
  j["stages"] = std::move(stages);
  j["fidelity"] = nlohmann::ordered_json::parse(fidelity_to_json(r.fidelity));
  return j.dump(1) + "\n";
}

CompileResult compile_static(const Circuit& c, const HardwareConfig& hw0) {
  prepare(c, hw0);
  const int n = c.num_qubits;
  const auto stages = asap_schedule(c);
  const auto pri = priority_scores(c, stages);

  HardwareConfig hw = hw0;
  hw.geometry = crop_grid(n, hw0.geometry);
  const auto targets = assign_entanglement_targets(pri, hw.geometry);
  const auto topo = configure_static_channels(targets, hw.geometry);
  hw.geometry = with_storage_capacity(hw.geometry, n + topo.ancillas_needed);
  const GeometrySpec& g = hw.geometry;

  const auto homes = assign_storage_sites(targets, pri, g, hw.layout);
  std::set<Site> taken;
  for (const auto& [q, s] : homes) {
    taken.insert(s);
  }
  Builder b(c, hw, CompileMode::Static, n + topo.ancillas_needed);
  std::vector<MoveVector> moves;
  for (const auto& [q, s] : homes) {
    b.place(q, s);
    moves.push_back(make_move(g, q, s, targets.at(q)));
  }
  int atom = n;
  for (const Cell cell : topo.cells) {
    const auto home = cheapest_storage_site(ent_site(cell), g, hw.layout, taken);
    if (!home) {
      throw GeometryError("storage too small for the relay ancillas");
    }
    taken.insert(*home);
    b.place(atom, *home);
    moves.push_back(make_move(g, atom, *home, ent_site(cell)));
    ++atom;
  }
  b.route(std::move(moves), {}, -1);
  b.mark_config_end();

  for (const auto& st : stages) {
    const double start = b.now();
    b.one_qubit_layer(st);
    const auto cz = two_qubit_gates(c, st);
    for (const std::size_t gi : cz) {
      const Gate& gate = c.gates[gi];
      const auto chain = relay_chain(g, topo.cells, ent_cell(targets.at(gate.q0)),
                                     ent_cell(targets.at(gate.q1)));
      if (chain.empty()) {
        throw InfeasibleError("no relay chain between qubits " + std::to_string(gate.q0) +
                              " and " + std::to_string(gate.q1));
      }
      b.remote(gi, chain, st.index);
    }
    if (!cz.empty()) {
      auto& r = b.report();
      r.dt_pairs += static_cast<int>(cz.size());
      r.stages.push_back({st.index, true, static_cast<int>(cz.size()), 0,
                          static_cast<int>(topo.cells.size()), 1.0, 0.0});
    }
    b.add_span(st, start);
  }
  return b.finish();
}

CompileResult compile_aod_baseline(const Circuit& c, const HardwareConfig& hw0) {
  prepare(c, hw0);
  const int n = c.num_qubits;
  const auto stages = asap_schedule(c);
  const auto pri = priority_scores(c, stages);

  HardwareConfig hw = hw0;
  hw.geometry = crop_grid(n, hw0.geometry);
  const GeometrySpec& g = hw.geometry;
  const auto targets = assign_entanglement_targets(pri, g);
  const auto homes = assign_storage_sites(targets, pri, g, hw.layout);

  Builder b(c, hw, CompileMode::AodBaseline, n);
  for (const auto& [q, s] : homes) {
    b.place(q, s);
  }
  b.mark_config_end();

  const auto usable = g.usable_columns();
  const double mid_x =
      g.storage_x0() + g.storage_pitch * static_cast<double>(g.storage_cols - 1) / 2.0;
  const int centre = static_cast<int>(
      std::find(usable.begin(), usable.end(), g.nearest_usable_col(mid_x)) - usable.begin());
  const int first = g.ent_first_row_y;

  for (const auto& st : stages) {
    const double start = b.now();
    b.one_qubit_layer(st);
    auto cz = two_qubit_gates(c, st);
    if (!cz.empty()) {
      const auto mean_x = [&](std::size_t gi) {
        const Gate& gate = c.gates[gi];
        return g.position(homes.at(gate.q0)).x + g.position(homes.at(gate.q1)).x;
      };
      std::stable_sort(cz.begin(), cz.end(),
                       [&](std::size_t a, std::size_t b2) { return mean_x(a) < mean_x(b2); });
      const int m = static_cast<int>(cz.size());
      if (m > static_cast<int>(usable.size())) {
        throw GeometryError("not enough usable columns for one stage of local CZs");
      }
      const int lo = std::clamp(centre - m / 2, 0, static_cast<int>(usable.size()) - m);
      std::vector<MoveVector> in;
      std::vector<MoveVector> out;
      for (int i = 0; i < m; ++i) {
        const Gate& gate = c.gates[cz[static_cast<std::size_t>(i)]];
        const int col = usable[static_cast<std::size_t>(lo + i)];
        int near = gate.q0;
        int far = gate.q1;
        if (homes.at(far).row < homes.at(near).row) {
          std::swap(near, far);
        }
        // The qubit nearer the gap takes the deeper row so AOD order holds.
        const Site deep{Zone::Entanglement, col, first + 1};
        const Site shallow{Zone::Entanglement, col, first};
        in.push_back(make_move(g, near, homes.at(near), deep));
        in.push_back(make_move(g, far, homes.at(far), shallow));
        out.push_back(make_move(g, near, deep, homes.at(near)));
        out.push_back(make_move(g, far, shallow, homes.at(far)));
      }
      b.route(std::move(in), {}, st.index);
      b.local_group(cz, st.index);
      b.route(std::move(out), {}, st.index);
      auto& r = b.report();
      r.aod_pairs += m;
      r.stages.push_back({st.index, false, 0, m, 0, 0.0, 0.0});
    }
    b.add_span(st, start);
  }
  return b.finish();
}

namespace {

/// Picks a vertically adjacent pair of free cells for every gate and returns
/// the moves that bring both qubits there.
std::vector<MoveVector> shuttle_moves(const Circuit& c, const std::vector<std::size_t>& gates,
                                      const MappingState& state, const DTChannel& channel,
                                      const GeometrySpec& g) {
  const auto cells = channel.cells();
  const int spine = channel.anchor >= 0 ? channel.anchor + 1 : -1;
  std::set<Site> claimed;
  std::vector<MoveVector> moves;
  for (const std::size_t gi : gates) {
    const Gate& gate = c.gates[gi];
    const Site su = state.qubit_site(gate.q0);
    const Site sv = state.qubit_site(gate.q1);
    const auto usable = [&](const Site& s) {
      return !claimed.contains(s) && !cells.contains(ent_cell(s)) && s.col != spine &&
             (!state.occupied(s) || s == su || s == sv);
    };
    double best = std::numeric_limits<double>::infinity();
    std::pair<Site, Site> slot;
    for (int col = 0; col < g.ent_cols; ++col) {
      for (int row = 0; row + 1 < g.ent_rows; ++row) {
        const Site a{Zone::Entanglement, col, row};
        const Site b{Zone::Entanglement, col, row + 1};
        if (!usable(a) || !usable(b)) {
          continue;
        }
        const double straight =
            distance(g.position(su), g.position(a)) + distance(g.position(sv), g.position(b));
        const double swapped =
            distance(g.position(su), g.position(b)) + distance(g.position(sv), g.position(a));
        if (straight < best) {
          best = straight;
          slot = {a, b};
        }
        if (swapped < best) {
          best = swapped;
          slot = {b, a};
        }
      }
    }
    if (!std::isfinite(best)) {
      throw InfeasibleError("no free site pair for a local CZ between qubits " +
                            std::to_string(gate.q0) + " and " + std::to_string(gate.q1));
    }
    claimed.insert(slot.first);
    claimed.insert(slot.second);
    if (su != slot.first) {
      moves.push_back(make_move(g, gate.q0, su, slot.first));
    }
    if (sv != slot.second) {
      moves.push_back(make_move(g, gate.q1, sv, slot.second));
    }
  }
  return moves;
}

} // namespace

CompileResult compile_dynamic(const Circuit& c, const HardwareConfig& hw0) {
  prepare(c, hw0);
  const int n = c.num_qubits;
  const int pool_size = 2 * n + 4;
  const auto stages = asap_schedule(c);
  const auto pri = priority_scores(c, stages);
  const auto gate_stage = stage_of_gates(c, stages);

  HardwareConfig hw = hw0;
  hw.geometry = with_storage_capacity(crop_grid(n, hw0.geometry), n + pool_size);
  const GeometrySpec& g = hw.geometry;
  const auto targets = assign_entanglement_targets(pri, g);
  const auto homes = assign_storage_sites(targets, pri, g, hw.layout);

  const double mid_x =
      g.storage_x0() + g.storage_pitch * static_cast<double>(g.storage_cols - 1) / 2.0;
  const int centre = g.nearest_usable_col(mid_x);
  const Site centre_site{Zone::Entanglement, centre, g.ent_first_row_y};

  Builder b(c, hw, CompileMode::Dynamic, n + pool_size);
  PlannerContext ctx{&b.hw(), n, {}};
  std::set<Site> taken;
  for (const auto& [q, s] : homes) {
    b.place(q, s);
    ctx.home[q] = s;
    taken.insert(s);
  }
  AncillaPool pool;
  for (int k = 0; k < pool_size; ++k) {
    const int atom = n + k;
    const auto home = cheapest_storage_site(centre_site, g, hw.layout, taken);
    if (!home) {
      throw GeometryError("storage too small for the ancilla pool");
    }
    taken.insert(*home);
    b.place(atom, *home);
    ctx.home[atom] = *home;
    pool.ancillas.push_back(atom);
    pool.role[atom] = AtomRole::Idle;
  }

  std::map<int, int> band;
  for (const auto& [q, s] : homes) {
    band[q] = g.nearest_usable_col(g.position(s).x);
  }
  std::vector<bool> dt_stage(stages.size(), false);
  std::vector<int> next_two_qubit(stages.size(), -1);
  {
    const Stage* prev = nullptr;
    for (const auto& st : stages) {
      if (st.has_two_qubit()) {
        dt_stage[static_cast<std::size_t>(st.index)] = dt_enabled(st, prev, &band);
        prev = &st;
      }
    }
    int next = -1;
    for (auto i = static_cast<int>(stages.size()) - 1; i >= 0; --i) {
      next_two_qubit[static_cast<std::size_t>(i)] = next;
      if (stages[static_cast<std::size_t>(i)].has_two_qubit()) {
        next = i;
      }
    }
  }
  const auto first_dt = std::find(dt_stage.begin(), dt_stage.end(), true);

  // Configuration: qubits idle until after the first relay stage are loaded
  // onto the initial backbone, the latest-needed ones first.
  DTChannel channel;
  if (first_dt != dt_stage.end()) {
    const int first = static_cast<int>(first_dt - dt_stage.begin());
    std::vector<int> first_use(static_cast<std::size_t>(n), std::numeric_limits<int>::max());
    for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
      for (const int q : {c.gates[gi].q0, c.gates[gi].q1}) {
        if (q >= 0) {
          auto& f = first_use[static_cast<std::size_t>(q)];
          f = std::min(f, gate_stage[gi]);
        }
      }
    }
    std::vector<int> idle;
    for (int q = 0; q < n; ++q) {
      if (first_use[static_cast<std::size_t>(q)] > first) {
        idle.push_back(q);
      }
    }
    std::stable_sort(idle.begin(), idle.end(), [&](int a, int b2) {
      return first_use[static_cast<std::size_t>(a)] > first_use[static_cast<std::size_t>(b2)];
    });
    channel.anchor = centre;
    channel.backbone = backbone_for_anchor(ent_lattice(g, 1.0, 2.0), centre);
    std::vector<MoveVector> load;
    for (std::size_t i = 0; i < idle.size() && i < channel.backbone.size(); ++i) {
      const int q = idle[i];
      load.push_back(make_move(g, q, homes.at(q), ent_site(channel.backbone[i])));
      pool.harvested.insert(q);
      pool.release_stage[q] = first_use[static_cast<std::size_t>(q)];
      pool.role[q] = AtomRole::PreUse;
      channel.channel_atoms.insert(q);
    }
    b.route(std::move(load), {}, -1);
  }
  b.mark_config_end();

  for (const auto& st : stages) {
    const double start = b.now();
    std::vector<MoveVector> release;
    for (const int q : pool.due_for_release(st.index)) {
      release.push_back(make_move(g, q, b.site_of(q), ctx.home.at(q)));
      pool.harvested.erase(q);
      pool.role[q] = AtomRole::Idle;
      channel.channel_atoms.erase(q);
    }
    b.route(std::move(release), {}, st.index);
    b.one_qubit_layer(st);

    const auto cz = two_qubit_gates(c, st);
    if (!cz.empty()) {
      StageReport sr;
      sr.stage = st.index;
      std::vector<std::size_t> shuttled;
      if (dt_stage[static_cast<std::size_t>(st.index)]) {
        auto plan = plan_dt_stage(st, b.state(), channel, pool, ctx);
        b.route(plan.moves, plan.weights, st.index);
        channel = plan.channel;
        sr.dt = true;
        sr.backbone_reuse = plan.backbone_reuse;
        sr.channel_sites = static_cast<int>(channel.cells().size());
        for (const auto& dec : plan.decisions) {
          const auto gi = *std::find_if(cz.begin(), cz.end(), [&](std::size_t x) {
            const Gate& gate = c.gates[x];
            return (gate.q0 == dec.pair.first && gate.q1 == dec.pair.second) ||
                   (gate.q0 == dec.pair.second && gate.q1 == dec.pair.first);
          });
          ++b.report().reasons[std::string(reason_name(dec.reason))];
          if (!dec.dt) {
            shuttled.push_back(gi);
            continue;
          }
          auto chain = dec.chain;
          if (c.gates[gi].q0 != dec.pair.first) {
            std::reverse(chain.begin(), chain.end());
          }
          b.remote(gi, chain, st.index);
          ++sr.dt_pairs;
        }
        for (const std::size_t gi : cz) {
          const Gate& gate = c.gates[gi];
          const bool decided =
              std::any_of(plan.decisions.begin(), plan.decisions.end(), [&](const auto& dec) {
                return dec.pair == QubitPair{gate.q0, gate.q1} ||
                       dec.pair == QubitPair{gate.q1, gate.q0};
              });
          if (!decided) {
            shuttled.push_back(gi);
          }
        }
      } else {
        shuttled = cz;
      }
      if (!shuttled.empty()) {
        b.route(shuttle_moves(c, shuttled, b.state(), channel, g), {}, st.index);
        b.local_group(shuttled, st.index);
      }
      sr.aod_pairs = static_cast<int>(shuttled.size());
      b.report().dt_pairs += sr.dt_pairs;
      b.report().aod_pairs += sr.aod_pairs;
      b.report().stages.push_back(sr);
    }

    // Loaded qubits that the next two-qubit stage does not need go home.
    std::set<int> keep;
    if (const int nx = next_two_qubit[static_cast<std::size_t>(st.index)]; nx >= 0) {
      for (const auto& [a, b2] : stages[static_cast<std::size_t>(nx)].pairs) {
        keep.insert(a);
        keep.insert(b2);
      }
    }
    std::vector<MoveVector> back;
    for (const auto& [q, s] : b.state().qubits()) {
      if (s.zone == Zone::Entanglement && !pool.harvested.contains(q) && !keep.contains(q)) {
        back.push_back(make_move(g, q, s, ctx.home.at(q)));
      }
    }
    b.route(std::move(back), {}, st.index);
    b.add_span(st, start);
  }
  return b.finish();
}

CompileResult compile(const Circuit& c, const HardwareConfig& hw, CompileMode mode) {
  switch (mode) {
  case CompileMode::Static:
    return compile_static(c, hw);
  case CompileMode::Dynamic:
    return compile_dynamic(c, hw);
  case CompileMode::AodBaseline:
    return compile_aod_baseline(c, hw);
  }
  throw ConfigError("unknown compile mode");
}

} // namespace dtc
