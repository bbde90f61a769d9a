#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace msaft {

struct Rgb {
  uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

// 8-bit color raster, row-major, top-left origin.
struct RgbRaster {
  int width = 0;
  int height = 0;
  std::vector<Rgb> pixels;       // width*height
  double gsd = 0.0;              // meters/pixel, 0 = unknown (config metadata)

  RgbRaster() = default;
  RgbRaster(int w, int h, Rgb fill = {});

  Rgb& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
  const Rgb& at(int x, int y) const {
    return pixels[static_cast<size_t>(y) * width + x];
  }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }
};

// 32-bit height raster in meters; cells equal to `nodata` carry no data and
// are excluded from every statistic.
struct HeightRaster {
  int width = 0;
  int height = 0;
  std::vector<float> values;     // width*height
  float nodata = -9999.0f;

  HeightRaster() = default;
  HeightRaster(int w, int h, float fill = 0.0f, float nodata_value = -9999.0f);

  float& at(int x, int y) { return values[static_cast<size_t>(y) * width + x]; }
  float at(int x, int y) const {
    return values[static_cast<size_t>(y) * width + x];
  }
  bool is_nodata(int x, int y) const { return at(x, y) == nodata; }
};

// 8-bit single-channel raster (normalized DSM intensity).
struct GrayRaster {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> values;

  GrayRaster() = default;
  GrayRaster(int w, int h, uint8_t fill = 0);

  uint8_t at(int x, int y) const {
    return values[static_cast<size_t>(y) * width + x];
  }
};

struct AlignmentReport {
  bool aligned = false;
  std::array<int, 2> vis_dims{0, 0};
  std::array<int, 2> dsm_dims{0, 0};
  std::string message;
};

// --- file IO -------------------------------------------------------------
// VIS: binary PPM "P6\n<w> <h>\n255\n" + 3wh bytes.
// DSM: "DSMF 1\n<w> <h>\n<nodata>\n" + wh little-endian IEEE-754 f32,
//      row-major, top-left origin.
RgbRaster load_vis(const std::string& path);
void save_vis(const RgbRaster& img, const std::string& path);

HeightRaster load_dsm(const std::string& path);
void save_dsm(const HeightRaster& dsm, const std::string& path);

AlignmentReport validate_alignment(const RgbRaster& vis,
                                   const HeightRaster& dsm);

// --- resampling ------------------------------------------------------------
enum class ResampleMode { Down, DownThenUp };

// factor >= 1. Down = area averaging to ceil(dim/factor); DownThenUp runs the
// area average and then bilinear-interpolates back to the original dimensions.
RgbRaster resample(const RgbRaster& img, double factor, ResampleMode mode);
HeightRaster resample(const HeightRaster& dsm, double factor,
                      ResampleMode mode);

}  // namespace msaft
