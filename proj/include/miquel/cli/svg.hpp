#pragma once

#include <set>
#include <string>
#include <vector>

#include "miquel/pattern.hpp"

namespace miquel::cli {

/// Layer names, in drawing order.
inline const std::vector<std::string> kLayers = {"circles", "hyperbola", "quartic", "foci",
                                                 "neutral", "orbit",     "points"};

struct RenderOptions {
  int width = 800;
  double stroke = 1.0;
  std::set<std::string> layers{kLayers.begin(), kLayers.end()};
  int samples_per_branch = 400;
};

/// SVG 1.1 drawing of a pattern, its curves and an optional trail of E.
/// A layer whose construction fails is left out and named in a comment.
/// The output depends only on the arguments.
std::string render_svg(const Pattern22& S, const std::vector<Point2>& trail, const RenderOptions& options,
                       double tol = kDefaultTol);

}  // namespace miquel::cli
