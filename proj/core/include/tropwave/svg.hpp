#pragma once

#include <string>
#include <vector>

#include "tropwave/curve.hpp"

namespace tropwave {

struct SvgOptions {
  double size = 480;  // pixels of the longer side
  double margin = 16;
  bool tint_faces = true;
};

/// Domain outline, faces tinted by monomial, edges stroked proportionally to
/// their weight and the given points marked. Coordinates are printed with four
/// decimals and elements are emitted in a fixed order, so equal inputs give
/// byte-identical output.
std::string render_svg(const TropicalSeries& f, const std::vector<Point>& points = {}, const SvgOptions& opt = {});

}  // namespace tropwave
