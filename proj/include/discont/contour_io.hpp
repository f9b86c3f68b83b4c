#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "discont/field.hpp"

namespace discont {

/// One contour per line: `closed` or `open`, then space-separated `x,y` pairs.
std::string contours_to_text(const std::vector<Contour>& contours);
std::vector<Contour> contours_from_text(std::string_view text);

/// SVG document in pixel units; closed contours become polygons, open ones
/// polylines, through pixel centres.
std::string contours_to_svg(const std::vector<Contour>& contours, int width, int height);

}  // namespace discont
