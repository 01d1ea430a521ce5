#include "polydyn/render.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "polydyn/errors.hpp"
#include "polydyn/green.hpp"
#include "polydyn/unicritical.hpp"

namespace polydyn {

void RenderSpec::validate() const {
  if (degree < 2) throw DomainError("degree must be >= 2");
  if (w < 1 || h < 1) throw DomainError("resolution must be at least 1x1");
  if (!(width > 0)) throw DomainError("width must be positive");
  if (budget < 1) throw DomainError("budget must be >= 1");
}

std::complex<double> RenderSpec::pixel_t(int x, int y) const {
  const double height = width * h / w;
  return {center.real() - width / 2 + width * x / w, center.imag() + height / 2 - height * y / h};
}

std::pair<int, int> RenderSpec::pixel_of(std::complex<double> t) const {
  const double height = width * h / w;
  int x = static_cast<int>(std::floor((t.real() - center.real() + width / 2) * w / width));
  int y = static_cast<int>(std::floor((center.imag() + height / 2 - t.imag()) * h / height));
  if (x < 0 || y < 0 || x >= w || y >= h) return {-1, -1};
  return {x, y};
}

Palette parse_palette(const std::string& s) {
  if (s == "grayscale-g" || s == "gray") return Palette::GrayscaleG;
  if (s == "binary") return Palette::Binary;
  throw DomainError("unknown palette '" + s + "'");
}

namespace {

std::complex<double> eval(const ParamPoly& a, std::complex<double> t) {
  std::complex<double> v = 0;
  const auto& c = a.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + it->to_double();
  return v;
}

}  // namespace

Image render(const RenderSpec& spec, unsigned threads) {
  spec.validate();
  Image img{spec.w, spec.h, std::vector<std::uint8_t>(static_cast<std::size_t>(spec.w) * spec.h, 0)};
  std::atomic<int> next{0};
  auto work = [&] {
    for (int y; (y = next.fetch_add(1)) < spec.h;)
      for (int x = 0; x < spec.w; ++x) {
        auto t = spec.pixel_t(x, y);
        auto a = eval(spec.marked, t);
        std::uint8_t v = 0;
        if (std::holds_alternative<Out>(member_M(spec.degree, a, t, spec.budget))) {
          if (spec.palette == Palette::Binary) {
            v = 255;
          } else {
            double g = green_value(unicritical_complex(spec.degree, t), a, spec.budget).value;
            v = static_cast<std::uint8_t>(1 + std::lround(254 * std::min(1.0, g)));
          }
        }
        img.px[static_cast<std::size_t>(y) * spec.w + x] = v;
      }
  };
  unsigned nt = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < nt; ++i) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  return img;
}

std::string to_pgm(const Image& img) {
  std::string s = "P5\n" + std::to_string(img.w) + " " + std::to_string(img.h) + "\n255\n";
  s.append(img.px.begin(), img.px.end());
  return s;
}

}  // namespace polydyn
