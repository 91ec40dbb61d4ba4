#include "dtc/hardware.hpp"

#include "dtc/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dtc {

std::string_view zone_tag(Zone zone) {
  switch (zone) {
  case Zone::Storage:
    return "S";
  case Zone::Entanglement:
    return "E";
  case Zone::Parking:
    return "P";
  }
  return "?";
}

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

double point_segment_distance(Point p, Point a, Point b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) {
    return distance(p, a);
  }
  const double t =
      std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  return distance(p, Point{a.x + t * dx, a.y + t * dy});
}

// ---------------------------------------------------------------------------
// GeometrySpec

void GeometrySpec::validate() const {
  if (!(storage_pitch > 0.0) || !(ent_col_pitch > 0.0) || !(zone_gap > 0.0)) {
    throw ConfigError("geometry pitches and zone gap must be positive");
  }
  if (ent_row_pitches.empty()) {
    throw ConfigError("entanglement row pitch profile must not be empty");
  }
  for (const double p : ent_row_pitches) {
    if (!(p > 0.0)) {
      throw ConfigError("entanglement row pitches must be positive");
    }
  }
  if (column_modulus < 1 || column_residue < 0 ||
      column_residue >= column_modulus) {
    throw ConfigError("column rule needs 0 <= residue < modulus");
  }
  if (ent_first_row_y < 0) {
    throw ConfigError("ent_first_row_y must be non-negative");
  }
  if (storage_cols < 1 || storage_rows < 1 || ent_cols < 1 || ent_rows < 1) {
    throw ConfigError("grids must be non-empty");
  }
}

bool GeometrySpec::usable_column(int col) const {
  return col >= 0 && col < ent_cols && col % column_modulus == column_residue;
}

std::vector<int> GeometrySpec::usable_columns() const {
  std::vector<int> out;
  for (int c = column_residue; c < ent_cols; c += column_modulus) {
    out.push_back(c);
  }
  return out;
}

bool GeometrySpec::contains(const Site& s) const {
  switch (s.zone) {
  case Zone::Storage:
    return s.col >= 0 && s.col < storage_cols && s.row >= 0 &&
           s.row < storage_rows;
  case Zone::Entanglement:
    return s.col >= 0 && s.col < ent_cols && s.row >= 0 && s.row < ent_rows;
  case Zone::Parking:
    return s.col >= 0 && s.col < parking_cols() && s.row == 0;
  }
  return false;
}

double GeometrySpec::ent_row_y(int row) const {
  double y = 0.0;
  const auto n = ent_row_pitches.size();
  for (int i = 0; i < row; ++i) {
    y += ent_row_pitches[static_cast<std::size_t>(i) % n];
  }
  return y;
}

double GeometrySpec::storage_x0() const {
  const double ent_extent = (ent_cols - 1) * ent_col_pitch;
  const double storage_extent = (storage_cols - 1) * storage_pitch;
  return std::max(0.0, std::round((ent_extent - storage_extent) / 2.0));
}

Point GeometrySpec::position(const Site& s) const {
  switch (s.zone) {
  case Zone::Storage:
    return {storage_x0() + s.col * storage_pitch,
            -zone_gap - s.row * storage_pitch};
  case Zone::Entanglement:
    return {s.col * ent_col_pitch, ent_row_y(s.row)};
  case Zone::Parking:
    return {s.col * ent_col_pitch, -zone_gap / 2.0};
  }
  return {};
}

std::optional<Site> GeometrySpec::site_at(Point p) const {
  constexpr double eps = 1e-9;
  std::optional<Site> guess;
  if (p.y >= -eps) {
    const int col = static_cast<int>(std::lround(p.x / ent_col_pitch));
    // rows are monotone in y; scan is fine for the grid sizes we crop
    for (int r = 0; r < ent_rows; ++r) {
      if (std::abs(ent_row_y(r) - p.y) <= eps) {
        guess = Site{Zone::Entanglement, col, r};
        break;
      }
    }
  } else if (std::abs(p.y + zone_gap / 2.0) <= eps) {
    guess = Site{Zone::Parking,
                 static_cast<int>(std::lround(p.x / ent_col_pitch)), 0};
  } else if (p.y <= -zone_gap + eps) {
    guess = Site{Zone::Storage,
                 static_cast<int>(std::lround((p.x - storage_x0()) / storage_pitch)),
                 static_cast<int>(std::lround((-zone_gap - p.y) / storage_pitch))};
  }
  if (!guess || !contains(*guess)) {
    return std::nullopt;
  }
  const Point back = position(*guess);
  if (std::abs(back.x - p.x) > eps || std::abs(back.y - p.y) > eps) {
    return std::nullopt;
  }
  return guess;
}

double GeometrySpec::transit_y() const { return -zone_gap * 0.75; }

int GeometrySpec::nearest_storage_col(double x) const {
  const auto c = static_cast<int>(std::lround((x - storage_x0()) / storage_pitch));
  return std::clamp(c, 0, storage_cols - 1);
}

int GeometrySpec::nearest_usable_col(double x) const {
  const auto cols = usable_columns();
  if (cols.empty()) {
    throw GeometryError("geometry has no usable entanglement column");
  }
  int best = cols.front();
  for (const int c : cols) {
    if (std::abs(c * ent_col_pitch - x) < std::abs(best * ent_col_pitch - x)) {
      best = c;
    }
  }
  return best;
}

std::vector<Site> GeometrySpec::storage_sites() const {
  std::vector<Site> out;
  out.reserve(static_cast<std::size_t>(storage_capacity()));
  for (int c = 0; c < storage_cols; ++c) {
    for (int r = 0; r < storage_rows; ++r) {
      out.push_back({Zone::Storage, c, r});
    }
  }
  return out;
}

std::vector<Site> GeometrySpec::parking_sites() const {
  std::vector<Site> out;
  for (int c = 0; c < parking_cols(); ++c) {
    out.push_back({Zone::Parking, c, 0});
  }
  return out;
}

namespace {

double lane_offset(const GeometrySpec& g, Zone zone) {
  return zone == Zone::Storage ? g.storage_pitch / 2.0 : g.ent_col_pitch / 2.0;
}

} // namespace

std::vector<Point> move_path(const GeometrySpec& g, const Site& from,
                             const Site& to) {
  const Point a = g.position(from);
  const Point b = g.position(to);
  const double lane_a = a.x + lane_offset(g, from.zone);
  const double lane_b = b.x + lane_offset(g, to.zone);
  const double transit = g.transit_y();
  return {a, {lane_a, a.y}, {lane_a, transit}, {lane_b, transit}, {lane_b, b.y}, b};
}

double path_point_distance(const std::vector<Point>& path, Point p) {
  if (path.size() == 1) {
    return distance(path.front(), p);
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    best = std::min(best, point_segment_distance(p, path[i], path[i + 1]));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Parameters

void TimingParams::validate() const {
  if (!(t_pi > 0) || !(t_2pi > 0) || !(t_hop > 0) || !(t_1q > 0) ||
      !(aod_accel > 0) || !(t_xfer > 0)) {
    throw ConfigError("timing parameters must be strictly positive");
  }
  if (!(tau_sw >= 0)) {
    throw ConfigError("tau_sw must be non-negative");
  }
}

void FidelityParams::validate() const {
  for (const double f : {f_2q, f_1q, f_hop, f_xfer, f_xtalk}) {
    if (!(f > 0.0 && f <= 1.0)) {
      throw ConfigError("fidelities must lie in (0, 1]");
    }
  }
  if (!(t2 > 0.0)) {
    throw ConfigError("T2 must be positive");
  }
}

void HardwareConfig::validate() const {
  geometry.validate();
  timing.validate();
  fidelity.validate();
  if (!(layout.w_col >= 0) || !(layout.w_row >= 0) || !(layout.w_ent >= 0)) {
    throw ConfigError("layout weights must be non-negative");
  }
  if (channel.r_near < 0 || channel.c_max < 0 || !(channel.lambda_new >= 0) ||
      !(channel.anchor_hysteresis >= 0) || channel.reserve_limit < 0) {
    throw ConfigError("channel parameters must be non-negative");
  }
  if (!(routing.clearance > 0)) {
    throw ConfigError("clearance must be positive");
  }
}

// ---------------------------------------------------------------------------
// Duration models

double remote_cz_duration(int hops, const TimingParams& tp) {
  if (hops < 0) {
    throw Error("hop count must be non-negative");
  }
  return 2.0 * tp.t_pi + 2.0 * hops * tp.hop_time() + tp.t_2pi;
}

double aod_motion_time(double distance_um, const TimingParams& tp) {
  if (distance_um < 0) {
    throw Error("move distance must be non-negative");
  }
  return 2.0 * std::sqrt(distance_um / tp.aod_accel);
}

double aod_move_duration(double distance_um, const TimingParams& tp) {
  return 2.0 * tp.t_xfer + aod_motion_time(distance_um, tp);
}

// ---------------------------------------------------------------------------
// Cropping

GeometrySpec crop_grid(int n_qubits, const GeometrySpec& tmpl) {
  if (n_qubits < 1) {
    throw GeometryError("crop_grid needs at least one qubit");
  }
  GeometrySpec g = tmpl;
  g.storage_cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_qubits))));
  const int margin = (n_qubits + 1) / 2;
  g.storage_rows = 1;
  while (g.storage_capacity() < n_qubits + margin) {
    ++g.storage_rows;
  }
  const int usable = std::max(2, (n_qubits + 1) / 2);
  const int last_usable = g.column_residue + (usable - 1) * g.column_modulus;
  g.ent_cols = last_usable + 2;
  g.ent_rows = g.ent_first_row_y + 2;
  return g;
}

GeometrySpec with_storage_capacity(GeometrySpec g, int needed) {
  while (g.storage_capacity() < needed) {
    ++g.storage_rows;
  }
  return g;
}

} // namespace dtc
