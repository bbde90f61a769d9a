#pragma once

#include "msaft/raster.hpp"

namespace msaft {

// CIELAB (D65 white point). L in [0,100].
struct Lab {
  double L = 0, a = 0, b = 0;
};

// H in [0,360), S and V in [0,1].
struct Hsv {
  double h = 0, s = 0, v = 0;
};

Lab rgb_to_lab(Rgb p);
Hsv rgb_to_hsv(Rgb p);
Rgb hsv_to_rgb(Hsv c);

double lab_distance(const Lab& x, const Lab& y);

// Rec.601 luma, used for gradient features and corner detection.
double luminance(Rgb p);

}  // namespace msaft
