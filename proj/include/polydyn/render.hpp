#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "polydyn/parampoly.hpp"

namespace polydyn {

enum class Palette { GrayscaleG, Binary };

struct RenderSpec {
  int degree = 2;
  ParamPoly marked;  // a(t)
  std::complex<double> center{0, 0};
  double width = 4;
  int w = 64, h = 64;
  int budget = 500;
  Palette palette = Palette::GrayscaleG;

  void validate() const;
  // Pixel (x, y) samples its top-left corner; y grows downwards.
  std::complex<double> pixel_t(int x, int y) const;
  // Pixel containing t, or {-1, -1} when t is outside the viewport.
  std::pair<int, int> pixel_of(std::complex<double> t) const;
};

struct Image {
  int w = 0, h = 0;
  std::vector<std::uint8_t> px;  // row-major
  std::uint8_t at(int x, int y) const { return px[static_cast<std::size_t>(y) * w + x]; }
};

// 0 = In; Out pixels are >= 1 (binary: 255, grayscale: 1 + 254 min{1, g}).
Image render(const RenderSpec& spec, unsigned threads = 0);
std::string to_pgm(const Image& img);
Palette parse_palette(const std::string& s);

}  // namespace polydyn
