#include "specfilt/render.hpp"

#include "specfilt/basis.hpp"
#include "specfilt/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace specfilt::render {

namespace {

constexpr double kPi = std::numbers::pi;

double hls_channel(double m1, double m2, double hue) {
  hue -= std::floor(hue);
  if (hue < 1.0 / 6.0) return m1 + (m2 - m1) * hue * 6.0;
  if (hue < 0.5) return m2;
  if (hue < 2.0 / 3.0) return m1 + (m2 - m1) * (2.0 / 3.0 - hue) * 6.0;
  return m1;
}

std::uint8_t to_byte(double v) {
  const double c = std::clamp(v, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::lround(c * 255.0));
}

void append_number(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  out += buf;
}

}  // namespace

void Region::validate() const {
  if (!(re_max > re_min) || !(im_max > im_min)) throw std::invalid_argument("region: empty rectangle");
}

filters::Complex pixel_coordinate(const Region& region, std::size_t width, std::size_t height, std::size_t x,
                                  std::size_t y) {
  const double re = region.re_min + (static_cast<double>(x) + 0.5) * (region.re_max - region.re_min) / width;
  const double im = region.im_max - (static_cast<double>(y) + 0.5) * (region.im_max - region.im_min) / height;
  return {re, im};
}

Rgb hls_to_rgb(double hue_degrees, double lightness, double saturation) {
  if (saturation == 0.0) {
    const auto v = to_byte(lightness);
    return {v, v, v};
  }
  const double m2 = lightness <= 0.5 ? lightness * (1.0 + saturation) : lightness + saturation - lightness * saturation;
  const double m1 = 2.0 * lightness - m2;
  const double h = hue_degrees / 360.0;
  return {to_byte(hls_channel(m1, m2, h + 1.0 / 3.0)), to_byte(hls_channel(m1, m2, h)),
          to_byte(hls_channel(m1, m2, h - 1.0 / 3.0))};
}

double hue_of(filters::Complex value) {
  const double h = (std::arg(value) + kPi) * 180.0 / kPi;
  return std::fmod(h, 360.0);
}

double lightness_of(filters::Complex value) { return (2.0 / kPi) * std::atan(std::abs(value)); }

ColorField domain_coloring(const std::function<filters::Complex(filters::Complex)>& f, const Region& region,
                           std::size_t width, std::size_t height) {
  region.validate();
  if (width < 16 || height < 16) throw std::invalid_argument("domain_coloring: resolution must be at least 16x16");
  ColorField field;
  field.width = width;
  field.height = height;
  field.region = region;
  field.hue.resize(width * height);
  field.lightness.resize(width * height);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const filters::Complex v = f(pixel_coordinate(region, width, height, x, y));
      field.hue[y * width + x] = hue_of(v);
      field.lightness[y * width + x] = lightness_of(v);
    }
  }
  return field;
}

ColorField domain_coloring(const filters::FilterDesign& design, const Region& region, std::size_t width,
                           std::size_t height) {
  return domain_coloring([&](filters::Complex z) { return filters::characteristic_polynomial(design, z); }, region,
                         width, height);
}

Image to_image(const ColorField& field) {
  Image img;
  img.width = field.width;
  img.height = field.height;
  img.rgb.resize(3 * field.width * field.height);
  for (std::size_t p = 0; p < field.width * field.height; ++p) {
    const Rgb c = hls_to_rgb(field.hue[p], field.lightness[p], 1.0);
    img.rgb[3 * p] = c.r;
    img.rgb[3 * p + 1] = c.g;
    img.rgb[3 * p + 2] = c.b;
  }
  return img;
}

std::string ppm_bytes(const Image& image) {
  std::string out = "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(image.rgb.data()), image.rgb.size());
  return out;
}

void write_ppm(const Image& image, const std::string& path) { write_text(path, ppm_bytes(image)); }

std::vector<double> uniform_grid(double horizon, std::size_t points) {
  if (points < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
  if (!(horizon > 0.0)) throw std::invalid_argument("uniform_grid: horizon must be positive");
  std::vector<double> grid(points);
  for (std::size_t k = 0; k < points; ++k) grid[k] = horizon * static_cast<double>(k) / static_cast<double>(points - 1);
  return grid;
}

std::string signal_csv(const std::vector<std::pair<std::string, SpectralVec>>& series, std::span<const double> grid) {
  std::vector<std::vector<double>> columns;
  std::string out = "t";
  for (const auto& [label, vec] : series) {
    if (!series.empty() && vec.horizon() != series.front().second.horizon()) {
      throw std::invalid_argument("signal_csv: series disagree on the horizon");
    }
    out += ',';
    out += label;
    const basis::BasisSpec spec{vec.horizon(), vec.size(), basis::Extension::Natural};
    columns.push_back(basis::reconstruct(spec, vec, grid));
  }
  out += '\n';
  for (std::size_t k = 0; k < grid.size(); ++k) {
    append_number(out, grid[k]);
    for (const auto& col : columns) {
      out += ',';
      append_number(out, col[k]);
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw IoError("failed writing '" + path + "'");
}

}  // namespace specfilt::render
