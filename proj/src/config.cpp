#include "dtc/error.hpp"
#include "dtc/hardware.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace dtc {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view text, const std::string& key, int line) {
  double v = 0.0;
  const auto t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() ||
      !std::isfinite(v)) {
    throw ConfigError("line " + std::to_string(line) + ": '" + key +
                      "' expects a number, got '" + std::string(t) + "'");
  }
  return v;
}

int parse_int(std::string_view text, const std::string& key, int line) {
  int v = 0;
  const auto t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError("line " + std::to_string(line) + ": '" + key +
                      "' expects an integer, got '" + std::string(t) + "'");
  }
  return v;
}

using Setter = std::function<void(HardwareConfig&, std::string_view, int)>;

template <typename T> Setter real_field(T HardwareConfig::*group, double T::*field, const char* key) {
  return [=](HardwareConfig& c, std::string_view v, int line) {
    (c.*group).*field = parse_real(v, key, line);
  };
}

template <typename T> Setter int_field(T HardwareConfig::*group, int T::*field, const char* key) {
  return [=](HardwareConfig& c, std::string_view v, int line) {
    (c.*group).*field = parse_int(v, key, line);
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  using H = HardwareConfig;
  static const std::map<std::string, Setter, std::less<>> table = {
      {"storage_pitch", real_field(&H::geometry, &GeometrySpec::storage_pitch, "storage_pitch")},
      {"ent_col_pitch", real_field(&H::geometry, &GeometrySpec::ent_col_pitch, "ent_col_pitch")},
      {"zone_gap", real_field(&H::geometry, &GeometrySpec::zone_gap, "zone_gap")},
      {"column_modulus", int_field(&H::geometry, &GeometrySpec::column_modulus, "column_modulus")},
      {"column_residue", int_field(&H::geometry, &GeometrySpec::column_residue, "column_residue")},
      {"ent_first_row_y", int_field(&H::geometry, &GeometrySpec::ent_first_row_y, "ent_first_row_y")},
      {"ent_row_pitches",
       [](H& c, std::string_view v, int line) {
         std::vector<double> out;
         std::size_t start = 0;
         while (start <= v.size()) {
           const auto comma = v.find(',', start);
           const auto piece = v.substr(start, comma == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : comma - start);
           out.push_back(parse_real(piece, "ent_row_pitches", line));
           if (comma == std::string_view::npos) {
             break;
           }
           start = comma + 1;
         }
         c.geometry.ent_row_pitches = std::move(out);
       }},
      {"t_pi", real_field(&H::timing, &TimingParams::t_pi, "t_pi")},
      {"t_2pi", real_field(&H::timing, &TimingParams::t_2pi, "t_2pi")},
      {"t_hop", real_field(&H::timing, &TimingParams::t_hop, "t_hop")},
      {"tau_sw", real_field(&H::timing, &TimingParams::tau_sw, "tau_sw")},
      {"t_1q", real_field(&H::timing, &TimingParams::t_1q, "t_1q")},
      {"aod_accel", real_field(&H::timing, &TimingParams::aod_accel, "aod_accel")},
      {"t_xfer", real_field(&H::timing, &TimingParams::t_xfer, "t_xfer")},
      {"f_2q", real_field(&H::fidelity, &FidelityParams::f_2q, "f_2q")},
      {"f_1q", real_field(&H::fidelity, &FidelityParams::f_1q, "f_1q")},
      {"f_hop", real_field(&H::fidelity, &FidelityParams::f_hop, "f_hop")},
      {"f_xfer", real_field(&H::fidelity, &FidelityParams::f_xfer, "f_xfer")},
      {"t2", real_field(&H::fidelity, &FidelityParams::t2, "t2")},
      {"f_xtalk", real_field(&H::fidelity, &FidelityParams::f_xtalk, "f_xtalk")},
      {"w_col", real_field(&H::layout, &LayoutWeights::w_col, "w_col")},
      {"w_row", real_field(&H::layout, &LayoutWeights::w_row, "w_row")},
      {"w_ent", real_field(&H::layout, &LayoutWeights::w_ent, "w_ent")},
      {"r_near", int_field(&H::channel, &ChannelParams::r_near, "r_near")},
      {"c_max", int_field(&H::channel, &ChannelParams::c_max, "c_max")},
      {"lambda_new", real_field(&H::channel, &ChannelParams::lambda_new, "lambda_new")},
      {"anchor_hysteresis", real_field(&H::channel, &ChannelParams::anchor_hysteresis, "anchor_hysteresis")},
      {"reserve_limit", int_field(&H::channel, &ChannelParams::reserve_limit, "reserve_limit")},
      {"clearance", real_field(&H::routing, &RoutingParams::clearance, "clearance")},
  };
  return table;
}

} // namespace

HardwareConfig load_config_text(std::string_view text) {
  HardwareConfig cfg;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    auto line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos
                                                                : nl - start);
    ++line_no;
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                        std::string(key) + "'");
    }
    it->second(cfg, line.substr(eq + 1), line_no);
  }
  cfg.validate();
  return cfg;
}

HardwareConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_config_text(buf.str());
}

namespace {

// Shortest text that reads back to the same double.
std::string num(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), res.ptr};
}

} // namespace

std::string format_config(const HardwareConfig& c) {
  std::ostringstream out;
  const auto& g = c.geometry;
  out << "storage_pitch = " << num(g.storage_pitch) << '\n';
  out << "ent_row_pitches = ";
  for (std::size_t i = 0; i < g.ent_row_pitches.size(); ++i) {
    out << (i != 0U ? "," : "") << num(g.ent_row_pitches[i]);
  }
  out << '\n';
  out << "ent_col_pitch = " << num(g.ent_col_pitch) << '\n'
      << "zone_gap = " << num(g.zone_gap) << '\n'
      << "column_modulus = " << num(g.column_modulus) << '\n'
      << "column_residue = " << num(g.column_residue) << '\n'
      << "ent_first_row_y = " << num(g.ent_first_row_y) << '\n'
      << "t_pi = " << num(c.timing.t_pi) << '\n'
      << "t_2pi = " << num(c.timing.t_2pi) << '\n'
      << "t_hop = " << num(c.timing.t_hop) << '\n'
      << "tau_sw = " << num(c.timing.tau_sw) << '\n'
      << "t_1q = " << num(c.timing.t_1q) << '\n'
      << "aod_accel = " << num(c.timing.aod_accel) << '\n'
      << "t_xfer = " << num(c.timing.t_xfer) << '\n'
      << "f_2q = " << num(c.fidelity.f_2q) << '\n'
      << "f_1q = " << num(c.fidelity.f_1q) << '\n'
      << "f_hop = " << num(c.fidelity.f_hop) << '\n'
      << "f_xfer = " << num(c.fidelity.f_xfer) << '\n'
      << "t2 = " << num(c.fidelity.t2) << '\n'
      << "f_xtalk = " << num(c.fidelity.f_xtalk) << '\n'
      << "w_col = " << num(c.layout.w_col) << '\n'
      << "w_row = " << num(c.layout.w_row) << '\n'
      << "w_ent = " << num(c.layout.w_ent) << '\n'
      << "r_near = " << num(c.channel.r_near) << '\n'
      << "c_max = " << num(c.channel.c_max) << '\n'
      << "lambda_new = " << num(c.channel.lambda_new) << '\n'
      << "anchor_hysteresis = " << num(c.channel.anchor_hysteresis) << '\n'
      << "reserve_limit = " << num(c.channel.reserve_limit) << '\n'
      << "clearance = " << num(c.routing.clearance) << '\n';
  return out.str();
}

} // namespace dtc
