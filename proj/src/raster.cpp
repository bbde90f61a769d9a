#include "msaft/raster.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "msaft/errors.hpp"

namespace msaft {

RgbRaster::RgbRaster(int w, int h, Rgb fill)
    : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill) {
  if (w < 1 || h < 1) throw std::invalid_argument("raster dims must be >= 1");
}

HeightRaster::HeightRaster(int w, int h, float fill, float nodata_value)
    : width(w),
      height(h),
      values(static_cast<size_t>(w) * h, fill),
      nodata(nodata_value) {
  if (w < 1 || h < 1) throw std::invalid_argument("raster dims must be >= 1");
}

GrayRaster::GrayRaster(int w, int h, uint8_t fill)
    : width(w), height(h), values(static_cast<size_t>(w) * h, fill) {
  if (w < 1 || h < 1) throw std::invalid_argument("raster dims must be >= 1");
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Header tokenizer that tracks the byte offset for error messages.
// Skips whitespace and '#' comments between tokens.
struct HeaderScanner {
  const std::string& data;
  size_t pos = 0;

  void skip_space_and_comments() {
    while (pos < data.size()) {
      const char c = data[pos];
      if (c == '#') {
        while (pos < data.size() && data[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else {
        break;
      }
    }
  }

  long next_int(const std::string& what, const std::string& path) {
    skip_space_and_comments();
    const size_t start = pos;
    long v = 0;
    auto [p, ec] = std::from_chars(data.data() + pos,
                                   data.data() + data.size(), v);
    if (ec != std::errc() || p == data.data() + pos)
      throw InputError(path + ": malformed header, expected " + what +
                       " at byte offset " + std::to_string(start));
    pos = static_cast<size_t>(p - data.data());
    return v;
  }

  double next_real(const std::string& what, const std::string& path) {
    skip_space_and_comments();
    const size_t start = pos;
    double v = 0;
    auto [p, ec] = std::from_chars(data.data() + pos,
                                   data.data() + data.size(), v);
    if (ec != std::errc() || p == data.data() + pos)
      throw InputError(path + ": malformed header, expected " + what +
                       " at byte offset " + std::to_string(start));
    pos = static_cast<size_t>(p - data.data());
    return v;
  }
};

std::string fmt_real(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

float load_le_f32(const char* p) {
  const auto b = reinterpret_cast<const unsigned char*>(p);
  const uint32_t u = static_cast<uint32_t>(b[0]) |
                     (static_cast<uint32_t>(b[1]) << 8) |
                     (static_cast<uint32_t>(b[2]) << 16) |
                     (static_cast<uint32_t>(b[3]) << 24);
  return std::bit_cast<float>(u);
}

void store_le_f32(float v, char* p) {
  const uint32_t u = std::bit_cast<uint32_t>(v);
  p[0] = static_cast<char>(u & 0xff);
  p[1] = static_cast<char>((u >> 8) & 0xff);
  p[2] = static_cast<char>((u >> 16) & 0xff);
  p[3] = static_cast<char>((u >> 24) & 0xff);
}

}  // namespace

RgbRaster load_vis(const std::string& path) {
  const std::string data = read_file(path);
  if (data.size() < 2 || data[0] != 'P' || data[1] != '6') {
    if (data.size() >= 2 && data[0] == 'P')
      throw InputError(path + ": unsupported format \"" +
                       data.substr(0, 2) + "\" (want P6)");
    throw InputError(path + ": unsupported format, missing P6 magic");
  }
  HeaderScanner sc{data, 2};
  const long w = sc.next_int("width", path);
  const long h = sc.next_int("height", path);
  const long maxval = sc.next_int("maxval", path);
  if (w < 1 || h < 1)
    throw InputError(path + ": invalid dimensions " + std::to_string(w) +
                     "x" + std::to_string(h));
  if (maxval != 255)
    throw InputError(path + ": unsupported maxval " + std::to_string(maxval) +
                     " (want 255)");
  if (sc.pos >= data.size() ||
      !std::isspace(static_cast<unsigned char>(data[sc.pos])))
    throw InputError(path + ": malformed header at byte offset " +
                     std::to_string(sc.pos));
  ++sc.pos;  // single whitespace byte before payload
  const size_t need = static_cast<size_t>(w) * h * 3;
  if (data.size() - sc.pos < need)
    throw InputError(path + ": truncated pixel data, need " +
                     std::to_string(need) + " bytes at byte offset " +
                     std::to_string(sc.pos) + ", have " +
                     std::to_string(data.size() - sc.pos));
  RgbRaster img(static_cast<int>(w), static_cast<int>(h));
  std::memcpy(img.pixels.data(), data.data() + sc.pos, need);
  return img;
}

void save_vis(const RgbRaster& img, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open file for writing: " + path);
  f << "P6\n" << img.width << " " << img.height << "\n255\n";
  f.write(reinterpret_cast<const char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size() * 3));
  if (!f) throw InputError("write failed: " + path);
}

HeightRaster load_dsm(const std::string& path) {
  const std::string data = read_file(path);
  if (data.size() < 6 || data.compare(0, 4, "DSMF") != 0)
    throw InputError(path + ": bad magic, want DSMF");
  HeaderScanner sc{data, 4};
  const long version = sc.next_int("version", path);
  if (version != 1)
    throw InputError(path + ": unsupported DSMF version " +
                     std::to_string(version));
  const long w = sc.next_int("width", path);
  const long h = sc.next_int("height", path);
  const double nodata = sc.next_real("nodata", path);
  if (w < 1 || h < 1)
    throw InputError(path + ": invalid dimensions " + std::to_string(w) +
                     "x" + std::to_string(h));
  if (sc.pos >= data.size() || data[sc.pos] != '\n')
    throw InputError(path + ": malformed header at byte offset " +
                     std::to_string(sc.pos));
  ++sc.pos;
  const size_t need = static_cast<size_t>(w) * h * 4;
  if (data.size() - sc.pos != need)
    throw InputError(path + ": payload size mismatch, header declares " +
                     std::to_string(w) + "x" + std::to_string(h) + " (" +
                     std::to_string(need) + " bytes), have " +
                     std::to_string(data.size() - sc.pos));
  HeightRaster dsm(static_cast<int>(w), static_cast<int>(h), 0.0f,
                   static_cast<float>(nodata));
  for (size_t i = 0; i < dsm.values.size(); ++i)
    dsm.values[i] = load_le_f32(data.data() + sc.pos + i * 4);
  for (float v : dsm.values)
    if (v != dsm.nodata && !std::isfinite(v))
      throw InputError(path + ": non-finite height value");
  return dsm;
}

void save_dsm(const HeightRaster& dsm, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open file for writing: " + path);
  f << "DSMF 1\n"
    << dsm.width << " " << dsm.height << "\n"
    << fmt_real(dsm.nodata) << "\n";
  std::vector<char> buf(dsm.values.size() * 4);
  for (size_t i = 0; i < dsm.values.size(); ++i)
    store_le_f32(dsm.values[i], buf.data() + i * 4);
  f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!f) throw InputError("write failed: " + path);
}

AlignmentReport validate_alignment(const RgbRaster& vis,
                                   const HeightRaster& dsm) {
  AlignmentReport rep;
  rep.vis_dims = {vis.width, vis.height};
  rep.dsm_dims = {dsm.width, dsm.height};
  rep.aligned = vis.width == dsm.width && vis.height == dsm.height;
  std::ostringstream ss;
  if (rep.aligned) {
    ss << "aligned " << vis.width << "x" << vis.height;
  } else {
    ss << "misaligned: VIS " << vis.width << "x" << vis.height << " vs DSM "
       << dsm.width << "x" << dsm.height;
  }
  rep.message = ss.str();
  return rep;
}

// --- resampling ------------------------------------------------------------

namespace {

struct Span {
  int begin;
  int end;                    // source cells [begin, end)
  std::vector<double> wt;     // fractional coverage per cell
};

// Coverage weights of destination cell i for source interval [i*f, (i+1)*f).
std::vector<Span> make_spans(int src_dim, int dst_dim, double f) {
  std::vector<Span> spans(dst_dim);
  for (int i = 0; i < dst_dim; ++i) {
    const double lo = i * f;
    const double hi = std::min((i + 1) * f, static_cast<double>(src_dim));
    Span s;
    s.begin = static_cast<int>(std::floor(lo));
    s.end = std::min(src_dim, static_cast<int>(std::ceil(hi)));
    for (int c = s.begin; c < s.end; ++c) {
      const double w =
          std::min<double>(c + 1, hi) - std::max<double>(c, lo);
      s.wt.push_back(std::max(0.0, w));
    }
    spans[i] = std::move(s);
  }
  return spans;
}

int ceil_div_dim(int dim, double f) {
  return std::max(1, static_cast<int>(std::ceil(dim / f)));
}

RgbRaster area_down(const RgbRaster& img, double f) {
  const int dw = ceil_div_dim(img.width, f);
  const int dh = ceil_div_dim(img.height, f);
  const auto xs = make_spans(img.width, dw, f);
  const auto ys = make_spans(img.height, dh, f);
  RgbRaster out(dw, dh);
  out.gsd = img.gsd * f;
  for (int j = 0; j < dh; ++j) {
    for (int i = 0; i < dw; ++i) {
      double acc[3] = {0, 0, 0};
      double wsum = 0;
      for (size_t yy = 0; yy < ys[j].wt.size(); ++yy) {
        for (size_t xx = 0; xx < xs[i].wt.size(); ++xx) {
          const double w = ys[j].wt[yy] * xs[i].wt[xx];
          const Rgb& p = img.at(xs[i].begin + static_cast<int>(xx),
                                ys[j].begin + static_cast<int>(yy));
          acc[0] += w * p.r;
          acc[1] += w * p.g;
          acc[2] += w * p.b;
          wsum += w;
        }
      }
      Rgb q;
      q.r = static_cast<uint8_t>(
          std::clamp(std::floor(acc[0] / wsum + 0.5), 0.0, 255.0));
      q.g = static_cast<uint8_t>(
          std::clamp(std::floor(acc[1] / wsum + 0.5), 0.0, 255.0));
      q.b = static_cast<uint8_t>(
          std::clamp(std::floor(acc[2] / wsum + 0.5), 0.0, 255.0));
      out.at(i, j) = q;
    }
  }
  return out;
}

HeightRaster area_down(const HeightRaster& src, double f) {
  const int dw = ceil_div_dim(src.width, f);
  const int dh = ceil_div_dim(src.height, f);
  const auto xs = make_spans(src.width, dw, f);
  const auto ys = make_spans(src.height, dh, f);
  HeightRaster out(dw, dh, 0.0f, src.nodata);
  for (int j = 0; j < dh; ++j) {
    for (int i = 0; i < dw; ++i) {
      double acc = 0, wsum = 0;
      for (size_t yy = 0; yy < ys[j].wt.size(); ++yy) {
        for (size_t xx = 0; xx < xs[i].wt.size(); ++xx) {
          const float v = src.at(xs[i].begin + static_cast<int>(xx),
                                 ys[j].begin + static_cast<int>(yy));
          if (v == src.nodata) continue;
          const double w = ys[j].wt[yy] * xs[i].wt[xx];
          acc += w * v;
          wsum += w;
        }
      }
      out.at(i, j) = wsum > 0 ? static_cast<float>(acc / wsum) : src.nodata;
    }
  }
  return out;
}

struct BilinearTap {
  int i0, i1;
  double f0, f1;  // weights for i0/i1
};

BilinearTap tap(double src_coord, int src_dim) {
  double s = src_coord;
  if (s < 0) s = 0;
  if (s > src_dim - 1) s = src_dim - 1;
  const int i0 = static_cast<int>(std::floor(s));
  const int i1 = std::min(i0 + 1, src_dim - 1);
  const double fr = s - i0;
  return {i0, i1, 1.0 - fr, fr};
}

RgbRaster bilinear_up(const RgbRaster& src, int dw, int dh, double gsd) {
  RgbRaster out(dw, dh);
  out.gsd = gsd;
  const double sx = static_cast<double>(src.width) / dw;
  const double sy = static_cast<double>(src.height) / dh;
  for (int j = 0; j < dh; ++j) {
    const BilinearTap ty = tap((j + 0.5) * sy - 0.5, src.height);
    for (int i = 0; i < dw; ++i) {
      const BilinearTap tx = tap((i + 0.5) * sx - 0.5, src.width);
      double acc[3] = {0, 0, 0};
      const Rgb* ps[4] = {&src.at(tx.i0, ty.i0), &src.at(tx.i1, ty.i0),
                          &src.at(tx.i0, ty.i1), &src.at(tx.i1, ty.i1)};
      const double ws[4] = {tx.f0 * ty.f0, tx.f1 * ty.f0, tx.f0 * ty.f1,
                            tx.f1 * ty.f1};
      for (int k = 0; k < 4; ++k) {
        acc[0] += ws[k] * ps[k]->r;
        acc[1] += ws[k] * ps[k]->g;
        acc[2] += ws[k] * ps[k]->b;
      }
      out.at(i, j) = {
          static_cast<uint8_t>(std::clamp(std::floor(acc[0] + 0.5), 0.0, 255.0)),
          static_cast<uint8_t>(std::clamp(std::floor(acc[1] + 0.5), 0.0, 255.0)),
          static_cast<uint8_t>(std::clamp(std::floor(acc[2] + 0.5), 0.0, 255.0))};
    }
  }
  return out;
}

HeightRaster bilinear_up(const HeightRaster& src, int dw, int dh) {
  HeightRaster out(dw, dh, 0.0f, src.nodata);
  const double sx = static_cast<double>(src.width) / dw;
  const double sy = static_cast<double>(src.height) / dh;
  for (int j = 0; j < dh; ++j) {
    const BilinearTap ty = tap((j + 0.5) * sy - 0.5, src.height);
    for (int i = 0; i < dw; ++i) {
      const BilinearTap tx = tap((i + 0.5) * sx - 0.5, src.width);
      const float vs[4] = {src.at(tx.i0, ty.i0), src.at(tx.i1, ty.i0),
                           src.at(tx.i0, ty.i1), src.at(tx.i1, ty.i1)};
      const double ws[4] = {tx.f0 * ty.f0, tx.f1 * ty.f0, tx.f0 * ty.f1,
                            tx.f1 * ty.f1};
      double acc = 0, wsum = 0;
      for (int k = 0; k < 4; ++k) {
        if (vs[k] == src.nodata) continue;
        acc += ws[k] * vs[k];
        wsum += ws[k];
      }
      out.at(i, j) = wsum > 0 ? static_cast<float>(acc / wsum) : src.nodata;
    }
  }
  return out;
}

void check_factor(double f) {
  if (!(f >= 1.0)) throw std::invalid_argument("resample factor must be >= 1");
}

}  // namespace

RgbRaster resample(const RgbRaster& img, double factor, ResampleMode mode) {
  check_factor(factor);
  if (factor == 1.0) return img;
  RgbRaster down = area_down(img, factor);
  if (mode == ResampleMode::Down) return down;
  return bilinear_up(down, img.width, img.height, img.gsd);
}

HeightRaster resample(const HeightRaster& dsm, double factor,
                      ResampleMode mode) {
  check_factor(factor);
  if (factor == 1.0) return dsm;
  HeightRaster down = area_down(dsm, factor);
  if (mode == ResampleMode::Down) return down;
  return bilinear_up(down, dsm.width, dsm.height);
}

}  // namespace msaft
