#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dtc {

enum class Zone : std::uint8_t { Storage, Entanglement, Parking };

[[nodiscard]] std::string_view zone_tag(Zone zone);

/// A trap site addressed by zone, column and row.
///
/// Storage rows are counted away from the entanglement zone (row 0 borders
/// the inter-zone gap); entanglement rows are counted downwards from the row
/// nearest the gap. The parking row has a single row index 0.
struct Site {
  Zone zone = Zone::Storage;
  int col = 0;
  int row = 0;

  auto operator<=>(const Site&) const = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

[[nodiscard]] double distance(Point a, Point b);
[[nodiscard]] double point_segment_distance(Point p, Point a, Point b);

struct GeometrySpec {
  double storage_pitch = 6.0;                      ///< um
  std::vector<double> ent_row_pitches{4, 8, 5, 7}; ///< repeating row spacing, um
  double ent_col_pitch = 4.0;                      ///< um
  double zone_gap = 10.0;                          ///< um
  int column_modulus = 12;
  int column_residue = 4;
  int ent_first_row_y = 1;

  int storage_cols = 1;
  int storage_rows = 2;
  int ent_cols = 17;
  int ent_rows = 3;

  /// Throws ConfigError on non-positive pitches, bad residue or empty grids.
  void validate() const;

  [[nodiscard]] bool usable_column(int col) const;
  [[nodiscard]] std::vector<int> usable_columns() const;

  [[nodiscard]] bool contains(const Site& s) const;
  [[nodiscard]] int storage_capacity() const { return storage_cols * storage_rows; }
  [[nodiscard]] int parking_cols() const { return ent_cols; }

  [[nodiscard]] double ent_row_y(int row) const;
  [[nodiscard]] double storage_x0() const;
  [[nodiscard]] Point position(const Site& s) const;
  /// Exact inverse of position() on the sites of this geometry.
  [[nodiscard]] std::optional<Site> site_at(Point p) const;

  /// y of the transit row used by AOD trajectories; lies inside the gap,
  /// between the storage zone and the parking row.
  [[nodiscard]] double transit_y() const;

  /// Storage column whose x is closest to `x`, clamped to the grid.
  [[nodiscard]] int nearest_storage_col(double x) const;
  /// Usable entanglement column whose x is closest to `x`.
  [[nodiscard]] int nearest_usable_col(double x) const;

  [[nodiscard]] std::vector<Site> storage_sites() const;
  [[nodiscard]] std::vector<Site> parking_sites() const;

  bool operator==(const GeometrySpec&) const = default;
};

/// Piecewise-linear trajectory followed by an AOD-held atom from `from` to
/// `to`: a half-pitch step into the interstitial lane of the source zone,
/// along the lane to the transit row, across, and down the destination lane.
[[nodiscard]] std::vector<Point> move_path(const GeometrySpec& g,
                                           const Site& from, const Site& to);

[[nodiscard]] double path_point_distance(const std::vector<Point>& path,
                                         Point p);

struct TimingParams {
  double t_pi = 0.167;   ///< us
  double t_2pi = 0.334;  ///< us
  double t_hop = 0.256;  ///< us, includes the detuning switch
  double tau_sw = 0.0;   ///< us, extra switch time on top of t_hop
  double t_1q = 0.1;     ///< us
  double aod_accel = 0.02; ///< um/us^2
  double t_xfer = 15.0;  ///< us per pickup or drop-off

  void validate() const;
  [[nodiscard]] double hop_time() const { return t_hop + tau_sw; }

  bool operator==(const TimingParams&) const = default;
};

struct FidelityParams {
  double f_2q = 0.995;
  double f_1q = 0.9999;
  double f_hop = 0.999;
  double f_xfer = 0.999;
  double t2 = 1.5e6; ///< us
  double f_xtalk = 0.998;

  void validate() const;

  bool operator==(const FidelityParams&) const = default;
};

/// Column-dominant placement cost weights.
struct LayoutWeights {
  double w_col = 1000.0;
  double w_row = 10.0;
  double w_ent = 1.0;

  bool operator==(const LayoutWeights&) const = default;
};

/// Knobs of the per-stage DT planner.
struct ChannelParams {
  int r_near = 1;                  ///< lattice steps
  int c_max = 3;                   ///< lattice steps
  double lambda_new = 10.0;        ///< um-equivalent penalty for fresh ancilla
  double anchor_hysteresis = 0.05; ///< relative cost slack for the old anchor
  int reserve_limit = 4;           ///< idle ancilla kept inside the zone

  bool operator==(const ChannelParams&) const = default;
};

struct RoutingParams {
  double clearance = 2.0; ///< um

  bool operator==(const RoutingParams&) const = default;
};

struct HardwareConfig {
  GeometrySpec geometry;
  TimingParams timing;
  FidelityParams fidelity;
  LayoutWeights layout;
  ChannelParams channel;
  RoutingParams routing;

  void validate() const;

  bool operator==(const HardwareConfig&) const = default;
};

/// Parses flat `key = value` text (`#` comments). Every key is optional and
/// unknown keys are rejected. Grid dimensions are not configurable; they are
/// produced by crop_grid.
[[nodiscard]] HardwareConfig load_config_text(std::string_view text);
[[nodiscard]] HardwareConfig load_config(const std::filesystem::path& path);
/// Canonical `key = value` dump that load_config_text accepts.
[[nodiscard]] std::string format_config(const HardwareConfig& cfg);

/// 2 t_pi + 2 L T_hop + t_2pi.
[[nodiscard]] double remote_cz_duration(int hops, const TimingParams& tp);

/// 2 t_xfer + 2 sqrt(d / a): bang-bang motion plus pickup and drop-off.
[[nodiscard]] double aod_move_duration(double distance_um, const TimingParams& tp);

/// Motion part of aod_move_duration only.
[[nodiscard]] double aod_motion_time(double distance_um, const TimingParams& tp);

/// Sizes the storage and entanglement grids for `n_qubits`; every other
/// field is copied from `tmpl`.
[[nodiscard]] GeometrySpec crop_grid(int n_qubits, const GeometrySpec& tmpl);

/// Copy of `g` with storage rows added until `needed` sites fit.
[[nodiscard]] GeometrySpec with_storage_capacity(GeometrySpec g, int needed);

} // namespace dtc
