// Raster rendering: intensity heatmap (white -> yellow -> orange, normalized
// per time row) with flux-line overlays in red, written as 8-bit RGB PNG.
// Time increases upward: the top pixel row is t_max.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include <zlib.h>

#include "dslit/errors.hpp"
#include "dslit/fields.hpp"
#include "dslit/trajectories.hpp"

namespace dslit {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
};

struct Image {
  int width = 0;
  int height = 0;
  std::vector<Rgb> pixels;  // row-major, top row first

  Rgb& at(int row, int col) { return pixels[static_cast<std::size_t>(row) * width + col]; }
  const Rgb& at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
};

/// Fixed control points at u = 0, 0.5, 1: white, yellow, orange; linear in
/// between.
inline Rgb heat_color(double u) {
  u = std::clamp(u, 0.0, 1.0);
  const auto lerp = [](double a, double b, double w) {
    return static_cast<std::uint8_t>(std::lround(a + (b - a) * w));
  };
  if (u <= 0.5) {
    const double w = u / 0.5;
    return {255, 255, lerp(255, 0, w)};          // white -> yellow
  }
  const double w = (u - 0.5) / 0.5;
  return {255, lerp(255, 165, w), 0};            // yellow -> orange
}

/// Heatmap of an intensity grid. Row i of the grid (time t_i) maps to pixel
/// row height-1-i scaled to the image height; each time row is normalized by
/// its own maximum.
inline Image render_heatmap(const FieldGrid<double>& grid, int width, int height) {
  Image img{width, height, std::vector<Rgb>(static_cast<std::size_t>(width) * height)};
  const auto& spec = grid.spec;
  std::vector<double> row(width);
  for (int py = 0; py < height; ++py) {
    // top pixel row = t_max
    const double ti = (height == 1) ? 0.0
                                    : static_cast<double>(height - 1 - py) *
                                          (spec.nt - 1) / (height - 1);
    const int i = static_cast<int>(std::lround(ti));
    double row_max = 0.0;
    for (int px = 0; px < width; ++px) {
      const double xj = (width == 1) ? 0.0
                                     : static_cast<double>(px) * (spec.nx - 1) /
                                           (width - 1);
      const int j = static_cast<int>(std::lround(xj));
      row[px] = grid.at(i, j);
      row_max = std::max(row_max, row[px]);
    }
    for (int px = 0; px < width; ++px)
      img.at(py, px) = heat_color(row_max > 0.0 ? row[px] / row_max : 0.0);
  }
  return img;
}

/// Draws flux lines in red over a heatmap rendered from `spec` coordinates.
inline void overlay_trajectories(Image& img, const GridSpec& spec,
                                 const std::vector<Trajectory>& trajs) {
  const Rgb red{255, 0, 0};
  const auto to_col = [&](double x) {
    return (x - spec.x_min) / (spec.x_max - spec.x_min) * (img.width - 1);
  };
  const auto to_row = [&](double t) {
    return (img.height - 1) -
           (t - spec.t_min) / (spec.t_max - spec.t_min) * (img.height - 1);
  };
  const auto plot = [&](int row, int col) {
    if (row >= 0 && row < img.height && col >= 0 && col < img.width)
      img.at(row, col) = red;
  };
  for (const auto& tr : trajs) {
    for (std::size_t k = 0; k + 1 < tr.size(); ++k) {
      double c0 = to_col(tr.positions[k]);
      double r0 = to_row(tr.times[k]);
      double c1 = to_col(tr.positions[k + 1]);
      double r1 = to_row(tr.times[k + 1]);
      const int steps =
          1 + static_cast<int>(std::max(std::abs(c1 - c0), std::abs(r1 - r0)));
      for (int s = 0; s <= steps; ++s) {
        const double w = static_cast<double>(s) / steps;
        plot(static_cast<int>(std::lround(r0 + (r1 - r0) * w)),
             static_cast<int>(std::lround(c0 + (c1 - c0) * w)));
      }
    }
  }
}

namespace detail {

inline void append_be32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>((v >> 24) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>(v & 0xff));
}

inline void append_chunk(std::string& out, const char type[4],
                         const std::string& payload) {
  append_be32(out, static_cast<std::uint32_t>(payload.size()));
  std::string body(type, 4);
  body += payload;
  out += body;
  const auto crc =
      crc32(0L, reinterpret_cast<const Bytef*>(body.data()), body.size());
  append_be32(out, static_cast<std::uint32_t>(crc));
}

}  // namespace detail

/// Encodes the image as an 8-bit RGB PNG (filter 0 scanlines, zlib level 6).
inline std::string encode_png(const Image& img) {
  std::string png("\x89PNG\r\n\x1a\n", 8);

  std::string ihdr;
  detail::append_be32(ihdr, static_cast<std::uint32_t>(img.width));
  detail::append_be32(ihdr, static_cast<std::uint32_t>(img.height));
  ihdr.push_back(8);   // bit depth
  ihdr.push_back(2);   // color type: truecolor RGB
  ihdr.push_back(0);   // compression
  ihdr.push_back(0);   // filter
  ihdr.push_back(0);   // interlace
  detail::append_chunk(png, "IHDR", ihdr);

  std::string raw;
  raw.reserve(static_cast<std::size_t>(img.height) * (1 + 3 * img.width));
  for (int row = 0; row < img.height; ++row) {
    raw.push_back(0);  // filter type none
    for (int col = 0; col < img.width; ++col) {
      const Rgb& p = img.at(row, col);
      raw.push_back(static_cast<char>(p.r));
      raw.push_back(static_cast<char>(p.g));
      raw.push_back(static_cast<char>(p.b));
    }
  }
  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::string compressed(bound, '\0');
  if (compress2(reinterpret_cast<Bytef*>(compressed.data()), &bound,
                reinterpret_cast<const Bytef*>(raw.data()),
                static_cast<uLong>(raw.size()), 6) != Z_OK)
    throw IoError("PNG compression failed");
  compressed.resize(bound);
  detail::append_chunk(png, "IDAT", compressed);
  detail::append_chunk(png, "IEND", "");
  return png;
}

}  // namespace dslit
