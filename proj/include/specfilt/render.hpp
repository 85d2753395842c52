#pragma once

// Domain-coloring images of characteristic polynomials and CSV sampling of
// reconstructed signals.

#include "specfilt/filters.hpp"
#include "specfilt/types.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace specfilt::render {

struct Region {
  double re_min = -2.0;
  double re_max = 2.0;
  double im_min = -2.0;
  double im_max = 2.0;

  void validate() const;
};

/// Complex coordinate of the centre of pixel (x, y); row 0 is the top (max Im).
filters::Complex pixel_coordinate(const Region& region, std::size_t width, std::size_t height, std::size_t x,
                                  std::size_t y);

/// Hue in degrees [0, 360), lightness and saturation in [0, 1].
struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
};
Rgb hls_to_rgb(double hue_degrees, double lightness, double saturation);

/// hue = (arg f + pi) * 180 / pi mod 360, lightness = (2 / pi) atan |f|.
double hue_of(filters::Complex value);
double lightness_of(filters::Complex value);

/// Per-pixel hue and lightness, row-major from the top row.
struct ColorField {
  std::size_t width = 0;
  std::size_t height = 0;
  Region region;
  std::vector<double> hue;
  std::vector<double> lightness;

  double hue_at(std::size_t x, std::size_t y) const { return hue[y * width + x]; }
  double lightness_at(std::size_t x, std::size_t y) const { return lightness[y * width + x]; }
};

/// Throws std::invalid_argument for resolutions below 16 x 16.
ColorField domain_coloring(const std::function<filters::Complex(filters::Complex)>& f, const Region& region,
                           std::size_t width, std::size_t height);
/// Colors the characteristic polynomial of the unit-cutoff prototype.
ColorField domain_coloring(const filters::FilterDesign& design, const Region& region, std::size_t width,
                           std::size_t height);

struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> rgb;  ///< 3 bytes per pixel, row-major
};

/// Saturation is fixed at 1.
Image to_image(const ColorField& field);

/// Binary 8-bit PPM (P6).
std::string ppm_bytes(const Image& image);
void write_ppm(const Image& image, const std::string& path);

/// n >= 2 equally spaced points on [0, T], endpoints included.
std::vector<double> uniform_grid(double horizon, std::size_t points);

/// Columns t, then one per series, each value printed with 9 significant
/// digits. All series must share the horizon.
std::string signal_csv(const std::vector<std::pair<std::string, SpectralVec>>& series, std::span<const double> grid);

/// Writes `content` to `path`; throws IoError on failure.
void write_text(const std::string& path, const std::string& content);

}  // namespace specfilt::render
