#include "dtc/render.hpp"

#include <algorithm>
#include <sstream>

namespace dtc {

namespace {

struct Frame {
  double min_x = 0.0;
  double min_y = 0.0;
  double scale = 1.0;
  double margin = 20.0;

  [[nodiscard]] double x(double v) const { return margin + (v - min_x) * scale; }
  [[nodiscard]] double y(double v) const { return margin + (v - min_y) * scale; }
};

std::vector<Site> all_sites(const GeometrySpec& g) {
  std::vector<Site> out = g.storage_sites();
  const auto park = g.parking_sites();
  out.insert(out.end(), park.begin(), park.end());
  for (int r = 0; r < g.ent_rows; ++r) {
    for (int c = 0; c < g.ent_cols; ++c) {
      out.push_back({Zone::Entanglement, c, r});
    }
  }
  return out;
}

const char* zone_colour(Zone z) {
  switch (z) {
  case Zone::Storage:
    return "#9bb7d4";
  case Zone::Entanglement:
    return "#e3a6a1";
  case Zone::Parking:
    return "#c8c8c8";
  }
  return "#000";
}

} // namespace

std::string render_svg(const Schedule& s, const RenderOptions& opt) {
  const GeometrySpec& g = s.config.geometry;
  const auto sites = all_sites(g);
  Frame f;
  f.scale = opt.scale;
  double max_x = 0.0;
  double max_y = 0.0;
  bool first = true;
  for (const Site& site : sites) {
    const Point p = g.position(site);
    if (first) {
      f.min_x = max_x = p.x;
      f.min_y = max_y = p.y;
      first = false;
    }
    f.min_x = std::min(f.min_x, p.x);
    f.min_y = std::min(f.min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  const double width = 2 * f.margin + (max_x - f.min_x) * f.scale;
  const double height = 2 * f.margin + (max_y - f.min_y) * f.scale;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const Site& site : sites) {
    const Point p = g.position(site);
    out << "<circle cx=\"" << f.x(p.x) << "\" cy=\"" << f.y(p.y) << "\" r=\"2\" fill=\""
        << zone_colour(site.zone) << "\"/>\n";
  }
  if (opt.trajectories) {
    for (const auto& in : s.instructions) {
      if (!is_motion(in.kind) || in.from == in.sites ||
          (opt.stage >= 0 && in.stage != opt.stage)) {
        continue;
      }
      for (std::size_t i = 0; i < in.atoms.size(); ++i) {
        out << "<polyline fill=\"none\" stroke=\""
            << (in.atoms[i] < s.circuit.num_qubits ? "#1f5fa8" : "#d08a1a")
            << "\" stroke-width=\"0.8\" stroke-opacity=\"0.5\" points=\"";
        for (const Point p : move_path(g, in.from[i], in.sites[i])) {
          out << f.x(p.x) << ',' << f.y(p.y) << ' ';
        }
        out << "\"/>\n";
      }
    }
  }
  if (opt.chains) {
    for (const auto& in : s.instructions) {
      if (in.kind != InstrKind::RemoteCZ || (opt.stage >= 0 && in.stage != opt.stage)) {
        continue;
      }
      out << "<polyline fill=\"none\" stroke=\"#b8261b\" stroke-width=\"1.5\" points=\"";
      std::vector<Site> path{in.sites[0]};
      path.insert(path.end(), in.chain.begin(), in.chain.end());
      path.push_back(in.sites[1]);
      for (const Site& site : path) {
        const Point p = g.position(site);
        out << f.x(p.x) << ',' << f.y(p.y) << ' ';
      }
      out << "\"/>\n";
    }
  }
  for (std::size_t a = 0; a < s.initial.size(); ++a) {
    const Point p = g.position(s.initial[a]);
    const bool data = static_cast<int>(a) < s.circuit.num_qubits;
    out << "<circle cx=\"" << f.x(p.x) << "\" cy=\"" << f.y(p.y) << "\" r=\"" << (data ? 5 : 3.5)
        << "\" fill=\"" << (data ? "#1f5fa8" : "#d08a1a") << "\"/>\n";
    if (data) {
      out << "<text x=\"" << f.x(p.x) + 6 << "\" y=\"" << f.y(p.y) - 6
          << "\" font-size=\"9\" font-family=\"monospace\">" << a << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

} // namespace dtc
