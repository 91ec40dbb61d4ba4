#include "dtc/validate.hpp"

#include "dtc/routing.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace dtc {

namespace {

constexpr double kTimeEps = 1e-9;

std::string site_text(const Site& s) {
  return std::string(zone_tag(s.zone)) + "(" + std::to_string(s.col) + "," +
         std::to_string(s.row) + ")";
}

bool lattice_adjacent(const Site& a, const Site& b) {
  return a.zone == Zone::Entanglement && b.zone == Zone::Entanglement &&
         std::abs(a.col - b.col) + std::abs(a.row - b.row) == 1;
}

/// Atom positions during a replay.
class Replay {
public:
  explicit Replay(const Schedule& s) {
    for (std::size_t a = 0; a < s.initial.size(); ++a) {
      at_[static_cast<int>(a)] = s.initial[a];
      if (!who_.emplace(s.initial[a], static_cast<int>(a)).second) {
        initial_collision_ = true;
      }
    }
  }

  [[nodiscard]] bool initial_collision() const { return initial_collision_; }
  [[nodiscard]] std::optional<Site> where(int atom) const {
    const auto it = at_.find(atom);
    return it == at_.end() ? std::nullopt : std::optional<Site>(it->second);
  }
  [[nodiscard]] std::optional<int> who(const Site& s) const {
    const auto it = who_.find(s);
    return it == who_.end() ? std::nullopt : std::optional<int>(it->second);
  }
  [[nodiscard]] const std::map<int, Site>& positions() const { return at_; }

  /// Moves every atom of a primitive at once; returns false on collision.
  bool apply(const std::vector<int>& atoms, const std::vector<Site>& to) {
    for (const int a : atoms) {
      who_.erase(at_.at(a));
    }
    bool ok = true;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      at_[atoms[i]] = to[i];
      if (!who_.emplace(to[i], atoms[i]).second) {
        ok = false;
      }
    }
    return ok;
  }

private:
  std::map<int, Site> at_;
  std::map<Site, int> who_;
  bool initial_collision_ = false;
};

struct Checker {
  const Schedule& s;
  std::vector<Diagnostic> out;

  void flag(int idx, std::string category, std::string message) {
    out.push_back({idx, std::move(category), std::move(message)});
  }
};

void check_motion(Checker& c, Replay& r, const Instruction& in, int idx) {
  const auto& g = c.s.config.geometry;
  if (in.from.size() != in.atoms.size() || in.sites.size() != in.atoms.size()) {
    c.flag(idx, "position", "motion needs one source and one target per atom");
    return;
  }
  for (std::size_t i = 0; i < in.atoms.size(); ++i) {
    const auto here = r.where(in.atoms[i]);
    if (!here || *here != in.from[i]) {
      c.flag(idx, "position",
             "atom " + std::to_string(in.atoms[i]) + " is not at " + site_text(in.from[i]));
      return;
    }
    if (!g.contains(in.sites[i])) {
      c.flag(idx, "position", "target " + site_text(in.sites[i]) + " is outside the geometry");
      return;
    }
  }
  const bool displaced = in.from != in.sites;
  if ((in.kind == InstrKind::Activate || in.kind == InstrKind::Deactivate) && displaced) {
    c.flag(idx, "position", "activate/deactivate must not displace atoms");
  }
  if (!displaced) {
    return;
  }
  std::vector<MoveVector> moves;
  for (std::size_t i = 0; i < in.atoms.size(); ++i) {
    moves.push_back(make_move(g, in.atoms[i], in.from[i], in.sites[i]));
  }
  const double clearance = c.s.config.routing.clearance;
  std::set<int> members(in.atoms.begin(), in.atoms.end());
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const auto path = move_path(g, moves[i].src, moves[i].dst);
    for (const auto& [atom, site] : r.positions()) {
      if (members.contains(atom)) {
        continue;
      }
      if (path_point_distance(path, g.position(site)) < clearance - kTimeEps) {
        c.flag(idx, "clearance",
               "atom " + std::to_string(moves[i].atom) + " passes within clearance of atom " +
                   std::to_string(atom) + " at " + site_text(site));
      }
    }
    for (std::size_t j = 0; j < moves.size(); ++j) {
      if (i == j) {
        continue;
      }
      if (j > i && !aod_order_compatible(g, moves[i], moves[j])) {
        c.flag(idx, "crossing",
               "atoms " + std::to_string(moves[i].atom) + " and " +
                   std::to_string(moves[j].atom) + " change AOD order");
      }
      for (const Site& end : {moves[j].src, moves[j].dst}) {
        if (path_point_distance(path, g.position(end)) < clearance - kTimeEps) {
          c.flag(idx, "clearance",
                 "atom " + std::to_string(moves[i].atom) + " passes within clearance of " +
                     site_text(end));
        }
      }
    }
  }
  if (!r.apply(in.atoms, in.sites)) {
    c.flag(idx, "collision", "two atoms share a site after the move");
  }
}

void check_remote(Checker& c, const Replay& r, const Instruction& in, int idx) {
  if (in.atoms.size() != 2 || in.sites.size() != 2) {
    c.flag(idx, "chain", "remote CZ needs control and target");
    return;
  }
  for (std::size_t i = 0; i < 2; ++i) {
    if (r.where(in.atoms[i]) != in.sites[i]) {
      c.flag(idx, "position", "gate qubit " + std::to_string(in.atoms[i]) + " is not at " +
                                  site_text(in.sites[i]));
    }
  }
  if (in.chain.empty()) {
    c.flag(idx, "chain", "remote CZ without relay chain");
    return;
  }
  if (in.hops != static_cast<int>(in.chain.size()) - 1) {
    c.flag(idx, "chain", "hop count does not match chain length");
  }
  if (!lattice_adjacent(in.sites[0], in.chain.front())) {
    c.flag(idx, "chain", "control is not next to the first relay");
  }
  if (!lattice_adjacent(in.sites[1], in.chain.back())) {
    c.flag(idx, "chain", "target relay neighbour is not next to the target");
  }
  for (std::size_t i = 0; i < in.chain.size(); ++i) {
    const auto holder = r.who(in.chain[i]);
    if (!holder || *holder == in.atoms[0] || *holder == in.atoms[1]) {
      c.flag(idx, "chain", "relay site " + site_text(in.chain[i]) + " is empty");
    }
    if (i > 0 && !lattice_adjacent(in.chain[i - 1], in.chain[i])) {
      c.flag(idx, "chain", "gap in relay chain at " + site_text(in.chain[i]));
    }
  }
  if (std::abs(in.duration_us - remote_cz_duration(std::max(0, in.hops), c.s.config.timing)) >
      1e-9) {
    c.flag(idx, "duration", "remote CZ duration does not match its hop count");
  }
}

} // namespace

std::vector<Diagnostic> validate_schedule(const Schedule& s) {
  Checker c{s, {}};
  const int n = s.circuit.num_qubits;
  if (static_cast<int>(s.initial.size()) != s.num_atoms || s.num_atoms < n) {
    c.flag(-1, "position", "initial mapping does not cover every atom");
    return c.out;
  }
  Replay r(s);
  if (r.initial_collision()) {
    c.flag(-1, "collision", "initial mapping places two atoms on one site");
  }
  for (const Site& site : s.initial) {
    if (!s.config.geometry.contains(site)) {
      c.flag(-1, "position", "initial site " + site_text(site) + " is outside the geometry");
    }
  }

  std::map<int, double> busy_until;
  std::vector<int> seen(s.circuit.gates.size(), 0);
  std::vector<double> gate_start(s.circuit.gates.size(), 0.0);
  std::vector<double> gate_end(s.circuit.gates.size(), 0.0);
  double prev_start = 0.0;
  double latest = 0.0;
  const auto& tp = s.config.timing;

  for (std::size_t k = 0; k < s.instructions.size(); ++k) {
    const auto& in = s.instructions[k];
    const int idx = static_cast<int>(k);
    if (in.start_us < prev_start - kTimeEps || in.duration_us < 0.0) {
      c.flag(idx, "order", "instructions must start in non-decreasing time order");
    }
    prev_start = std::max(prev_start, in.start_us);
    latest = std::max(latest, in.end_us());

    std::vector<int> involved = in.atoms;
    if (in.kind == InstrKind::RemoteCZ) {
      for (const Site& site : in.chain) {
        if (const auto h = r.who(site)) {
          involved.push_back(*h);
        }
      }
    }
    for (const int a : involved) {
      if (a < 0 || a >= s.num_atoms) {
        c.flag(idx, "position", "unknown atom " + std::to_string(a));
        continue;
      }
      auto& until = busy_until[a];
      if (in.start_us < until - kTimeEps) {
        c.flag(idx, "overlap", "atom " + std::to_string(a) + " is already busy");
      }
      until = std::max(until, in.end_us());
    }

    if (is_motion(in.kind)) {
      check_motion(c, r, in, idx);
    } else if (in.kind == InstrKind::RemoteCZ) {
      check_remote(c, r, in, idx);
    } else if (in.kind == InstrKind::LocalCZ) {
      if (in.atoms.size() != 2 || in.sites.size() != 2 ||
          r.where(in.atoms[0]) != in.sites[0] || r.where(in.atoms[1]) != in.sites[1]) {
        c.flag(idx, "position", "local CZ qubits are not where recorded");
      } else if (!lattice_adjacent(in.sites[0], in.sites[1])) {
        c.flag(idx, "local-cz", "local CZ pair is not at facilitation pitch");
      }
      if (std::abs(in.duration_us - tp.t_2pi) > 1e-9) {
        c.flag(idx, "duration", "local CZ must last one 2pi pulse");
      }
    } else if (in.kind == InstrKind::OneQubit) {
      if (in.atoms.size() != 1 || in.sites.size() != 1 || r.where(in.atoms[0]) != in.sites[0]) {
        c.flag(idx, "position", "single-qubit pulse target is not where recorded");
      }
    }

    if (in.kind == InstrKind::OneQubit || in.kind == InstrKind::RemoteCZ ||
        in.kind == InstrKind::LocalCZ) {
      if (in.gate < 0 || in.gate >= static_cast<int>(s.circuit.gates.size())) {
        c.flag(idx, "coverage", "gate instruction without a circuit gate");
        continue;
      }
      const auto gi = static_cast<std::size_t>(in.gate);
      const Gate& gate = s.circuit.gates[gi];
      ++seen[gi];
      gate_start[gi] = in.start_us;
      gate_end[gi] = in.end_us();
      std::vector<int> want{gate.q0};
      if (gate.two_qubit()) {
        want.push_back(gate.q1);
      }
      std::vector<int> got = in.atoms;
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      if (want != got || gate.two_qubit() == (in.kind == InstrKind::OneQubit)) {
        c.flag(idx, "coverage", "instruction does not realize gate " + std::to_string(in.gate));
      }
    }
  }

  std::vector<double> qubit_ready(static_cast<std::size_t>(n), 0.0);
  for (std::size_t gi = 0; gi < s.circuit.gates.size(); ++gi) {
    if (seen[gi] != 1) {
      c.flag(-1, "coverage",
             "gate " + std::to_string(gi) + " realized " + std::to_string(seen[gi]) + " times");
      continue;
    }
    const Gate& gate = s.circuit.gates[gi];
    for (const int q : {gate.q0, gate.q1}) {
      if (q < 0) {
        continue;
      }
      auto& ready = qubit_ready[static_cast<std::size_t>(q)];
      if (gate_start[gi] < ready - kTimeEps) {
        c.flag(-1, "coverage", "gate " + std::to_string(gi) + " runs before its predecessor");
      }
      ready = std::max(ready, gate_end[gi]);
    }
  }
  if (std::abs(latest - s.total_us) > 1e-6) {
    c.flag(-1, "total", "total duration differs from the last instruction end");
  }
  return c.out;
}

FidelityReport fidelity_report(const Schedule& s) {
  FidelityReport f;
  const auto& fp = s.config.fidelity;
  const int n = s.circuit.num_qubits;
  Replay r(s);
  std::vector<double> busy(static_cast<std::size_t>(n), 0.0);

  // Rydberg pulse events: CZ records sharing a start time.
  std::map<double, std::set<int>> pulses;
  std::map<double, long long> idle_at_pulse;

  for (const auto& in : s.instructions) {
    for (const int a : in.atoms) {
      if (a >= 0 && a < n) {
        busy[static_cast<std::size_t>(a)] += in.duration_us;
      }
    }
    switch (in.kind) {
    case InstrKind::OneQubit:
      ++f.one_qubit_gates;
      break;
    case InstrKind::RemoteCZ:
    case InstrKind::LocalCZ: {
      ++f.two_qubit_gates;
      if (in.kind == InstrKind::RemoteCZ) {
        f.hop_sum += std::max(0, in.hops);
      }
      auto& group = pulses[in.start_us];
      group.insert(in.atoms.begin(), in.atoms.end());
      // Zone occupancy does not change within a pulse window, so counting
      // at the last record of the group is exact.
      long long idle = 0;
      for (const auto& [atom, site] : r.positions()) {
        if (atom < n && site.zone == Zone::Entanglement && !group.contains(atom)) {
          ++idle;
        }
      }
      idle_at_pulse[in.start_us] = idle;
      break;
    }
    case InstrKind::Activate:
    case InstrKind::Deactivate:
    case InstrKind::Park:
      f.transfers += static_cast<int>(in.atoms.size());
      [[fallthrough]];
    default:
      if (is_motion(in.kind) && in.from != in.sites) {
        r.apply(in.atoms, in.sites);
      }
      break;
    }
  }
  f.pulse_events = static_cast<int>(pulses.size());
  for (const auto& [t, idle] : idle_at_pulse) {
    f.idle_exposures += idle;
  }
  for (int q = 0; q < n; ++q) {
    f.idle_us += std::max(0.0, s.total_us - busy[static_cast<std::size_t>(q)]);
  }
  f.gate = std::pow(fp.f_1q, f.one_qubit_gates) * std::pow(fp.f_2q, f.two_qubit_gates);
  f.dt_hop = std::pow(fp.f_hop, 2.0 * f.hop_sum);
  f.transfer = std::pow(fp.f_xfer, f.transfers);
  f.idle = std::exp(-f.idle_us / fp.t2);
  f.crosstalk = std::pow(fp.f_xtalk, static_cast<double>(f.idle_exposures));
  f.total = f.gate * f.dt_hop * f.transfer * f.idle * f.crosstalk;
  return f;
}

std::string fidelity_to_json(const FidelityReport& f) {
  nlohmann::ordered_json j;
  j["total"] = f.total;
  j["gate"] = f.gate;
  j["dt_hop"] = f.dt_hop;
  j["transfer"] = f.transfer;
  j["idle"] = f.idle;
  j["crosstalk"] = f.crosstalk;
  j["one_qubit_gates"] = f.one_qubit_gates;
  j["two_qubit_gates"] = f.two_qubit_gates;
  j["hop_sum"] = f.hop_sum;
  j["transfers"] = f.transfers;
  j["pulse_events"] = f.pulse_events;
  j["idle_exposures"] = f.idle_exposures;
  j["idle_us"] = f.idle_us;
  return j.dump(1) + "\n";
}

std::string fidelity_to_csv(const FidelityReport& f) {
  std::ostringstream out;
  out.precision(17);
  out << "factor,value,count\n"
      << "gate," << f.gate << ',' << f.one_qubit_gates + f.two_qubit_gates << '\n'
      << "dt_hop," << f.dt_hop << ',' << 2 * f.hop_sum << '\n'
      << "transfer," << f.transfer << ',' << f.transfers << '\n'
      << "idle," << f.idle << ',' << f.idle_us << '\n'
      << "crosstalk," << f.crosstalk << ',' << f.idle_exposures << '\n'
      << "total," << f.total << ",\n";
  return out.str();
}

} // namespace dtc
