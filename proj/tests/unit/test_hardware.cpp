#include "dtc/error.hpp"
#include "dtc/hardware.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

using namespace dtc;

TEST_CASE("remote_cz_duration at default timing") {
  const TimingParams tp;
  CHECK(remote_cz_duration(0, tp) == doctest::Approx(0.668).epsilon(1e-12));
  CHECK(remote_cz_duration(1, tp) == doctest::Approx(1.180).epsilon(1e-12));
  CHECK(remote_cz_duration(5, tp) == doctest::Approx(3.228).epsilon(1e-12));
  CHECK_THROWS_AS((void)remote_cz_duration(-1, tp), Error);
}

TEST_CASE("remote_cz_duration is affine with slope twice the hop time") {
  TimingParams tp;
  tp.tau_sw = 0.044;
  for (int hops = 0; hops <= 100; ++hops) {
    const double expected = 2 * tp.t_pi + 2 * hops * (tp.t_hop + tp.tau_sw) + tp.t_2pi;
    CHECK(std::abs(remote_cz_duration(hops, tp) - expected) < 1e-9);
  }
}

TEST_CASE("aod_move_duration follows the kinematic model") {
  const TimingParams tp;
  CHECK(aod_move_duration(0.0, tp) == doctest::Approx(30.0));
  CHECK(aod_move_duration(2.0, tp) == doctest::Approx(50.0));
  CHECK(aod_move_duration(110.0, tp) == doctest::Approx(178.3).epsilon(1e-3));
  CHECK(aod_motion_time(110.0, tp) == doctest::Approx(aod_move_duration(110.0, tp) - 30.0));
  double prev = 0.0;
  for (double d = 0.0; d < 300.0; d += 0.37) {
    const double t = aod_move_duration(d, tp);
    CHECK(t >= prev);
    prev = t;
  }
  CHECK_THROWS_AS((void)aod_move_duration(-1.0, tp), Error);
}

TEST_CASE("relay hop is much faster than any nonzero shuttle round trip") {
  const TimingParams tp;
  CHECK(aod_move_duration(1e-6, tp) >= 25.0 * remote_cz_duration(1, tp));
}

TEST_CASE("crop_grid sizing rule") {
  const GeometrySpec tmpl;
  for (const int n : {1, 2, 5, 10, 17, 50, 100}) {
    const auto g = crop_grid(n, tmpl);
    CHECK(g.storage_cols == static_cast<int>(std::ceil(std::sqrt(n))));
    CHECK(g.storage_capacity() >= n + (n + 1) / 2);
    CHECK(static_cast<int>(g.usable_columns().size()) >= (n + 1) / 2);
    CHECK(g.ent_rows == tmpl.ent_first_row_y + 2);
    CHECK_NOTHROW(g.validate());
  }
  const auto one = crop_grid(1, tmpl);
  CHECK(one.storage_cols == 1);
  CHECK(one.storage_rows == 2);
  CHECK(crop_grid(10, tmpl).storage_capacity() >= 15);
  CHECK(crop_grid(100, tmpl).storage_capacity() >= 150);
  CHECK_THROWS_AS((void)crop_grid(0, tmpl), GeometryError);
}

TEST_CASE("usable columns follow the modulus rule") {
  GeometrySpec g;
  g.ent_cols = 40;
  CHECK(g.usable_columns() == std::vector<int>{4, 16, 28});
  CHECK(g.usable_column(16));
  CHECK_FALSE(g.usable_column(15));
}

TEST_CASE("site coordinates are injective and invert exactly") {
  auto g = crop_grid(20, GeometrySpec{});
  std::vector<Site> sites = g.storage_sites();
  const auto park = g.parking_sites();
  sites.insert(sites.end(), park.begin(), park.end());
  for (int r = 0; r < g.ent_rows; ++r) {
    for (int c = 0; c < g.ent_cols; ++c) {
      sites.push_back({Zone::Entanglement, c, r});
    }
  }
  std::set<std::pair<double, double>> seen;
  for (const auto& s : sites) {
    REQUIRE(g.contains(s));
    const Point p = g.position(s);
    CHECK(seen.emplace(p.x, p.y).second);
    const auto back = g.site_at(p);
    REQUIRE(back.has_value());
    CHECK(*back == s);
  }
  CHECK_FALSE(g.site_at({-1000.0, -1000.0}).has_value());
}

TEST_CASE("entanglement rows repeat the pitch profile") {
  GeometrySpec g;
  g.ent_rows = 9;
  const double pitches[] = {4, 8, 5, 7};
  for (int r = 1; r < g.ent_rows; ++r) {
    CHECK(g.ent_row_y(r) - g.ent_row_y(r - 1) == doctest::Approx(pitches[(r - 1) % 4]));
  }
  CHECK(g.position({Zone::Entanglement, 3, 0}).x == doctest::Approx(3 * g.ent_col_pitch));
}

TEST_CASE("transit row lies between storage and parking") {
  const auto g = crop_grid(9, GeometrySpec{});
  const double storage_y = g.position({Zone::Storage, 0, 0}).y;
  const double park_y = g.position({Zone::Parking, 0, 0}).y;
  CHECK(g.transit_y() > storage_y);
  CHECK(g.transit_y() < park_y);
  CHECK(park_y < g.position({Zone::Entanglement, 0, 0}).y);
}

TEST_CASE("move_path starts and ends on the sites") {
  const auto g = crop_grid(9, GeometrySpec{});
  const Site a{Zone::Storage, 1, 2};
  const Site b{Zone::Entanglement, 16, 1};
  const auto path = move_path(g, a, b);
  REQUIRE(path.size() >= 2);
  CHECK(distance(path.front(), g.position(a)) < 1e-12);
  CHECK(distance(path.back(), g.position(b)) < 1e-12);
  CHECK(path_point_distance(path, g.position(a)) < 1e-12);
}

TEST_CASE("load_config_text defaults, overrides and errors") {
  CHECK(load_config_text("") == HardwareConfig{});
  const auto cfg = load_config_text("# comment\nt_pi = 0.2\nent_row_pitches = 3, 6\n");
  CHECK(cfg.timing.t_pi == 0.2);
  CHECK(cfg.geometry.ent_row_pitches == std::vector<double>{3, 6});
  CHECK_THROWS_AS((void)load_config_text("f_2q = 1.5"), ConfigError);
  CHECK_THROWS_AS((void)load_config_text("f_2q = 0"), ConfigError);
  CHECK_THROWS_AS((void)load_config_text("bogus = 1"), ConfigError);
  CHECK_THROWS_AS((void)load_config_text("t_pi 0.2"), ConfigError);
  CHECK_THROWS_AS((void)load_config_text("t_pi = fast"), ConfigError);
  CHECK_THROWS_AS((void)load_config_text("column_residue = 12"), ConfigError);
  CHECK_THROWS_AS((void)load_config("/nonexistent/dtc.cfg"), ConfigError);
}

TEST_CASE("format_config round-trips every field") {
  HardwareConfig cfg;
  cfg.timing.t_hop = 0.1 + 0.2;
  cfg.fidelity.f_xtalk = 0.9975;
  cfg.channel.reserve_limit = 7;
  cfg.geometry.ent_row_pitches = {4.5, 8.25};
  cfg.routing.clearance = 1.75;
  const auto back = load_config_text(format_config(cfg));
  CHECK(back == cfg);
  CHECK(format_config(back) == format_config(cfg));
}
