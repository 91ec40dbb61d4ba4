#pragma once

#include "dtc/schedule.hpp"

#include <string>

namespace dtc {

struct RenderOptions {
  double scale = 8.0;    ///< pixels per um
  int stage = -1;        ///< draw only this stage's motion and chains, -1 for all
  bool trajectories = true;
  bool chains = true;
};

/// SVG picture of the trap sites, the initial atom placement, AOD
/// trajectories and relay chains of `s`.
[[nodiscard]] std::string render_svg(const Schedule& s, const RenderOptions& opt = {});

} // namespace dtc
