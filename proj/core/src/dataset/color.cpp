#include "vcmbench/dataset/color.hpp"

#include <algorithm>
#include <cmath>

#include "vcmbench/error.hpp"

namespace vcmbench {

namespace {

constexpr double kKr = 0.2126;
constexpr double kKb = 0.0722;
constexpr double kKg = 1.0 - kKr - kKb;

constexpr double kLumaGain = 255.0 / 219.0;
constexpr double kChromaGain = 255.0 / 224.0;

constexpr double kRv = kChromaGain * 2.0 * (1.0 - kKr);
constexpr double kGu = kChromaGain * 2.0 * (1.0 - kKb) * kKb / kKg;
constexpr double kGv = kChromaGain * 2.0 * (1.0 - kKr) * kKr / kKg;
constexpr double kBu = kChromaGain * 2.0 * (1.0 - kKb);

std::uint8_t clip_u8(double v) {
  // round half away from zero, then clip
  const double r = std::round(v);
  return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

}  // namespace

RgbImage yuv_to_rgb(const PlanarFrame& frame) {
  if (frame.chroma != Chroma::kYuv420) {
    fail(ErrorKind::kUnsupported, "yuv_to_rgb needs a yuv_420 frame, got mono_400");
  }
  frame.validate();
  const double scale = frame.bit_depth == 8 ? 1.0 : 1.0 / (1 << (frame.bit_depth - 8));
  const int cw = frame.plane_width(1);
  RgbImage out = RgbImage::make(frame.width, frame.height);
  for (int y = 0; y < frame.height; ++y) {
    for (int x = 0; x < frame.width; ++x) {
      const std::size_t ci = static_cast<std::size_t>(y / 2) * cw + x / 2;
      const double luma =
          frame.planes[0][static_cast<std::size_t>(y) * frame.width + x] * scale;
      const double cb = frame.planes[1][ci] * scale - 128.0;
      const double cr = frame.planes[2][ci] * scale - 128.0;
      const double yl = kLumaGain * (luma - 16.0);
      std::uint8_t* px = out.pixel(x, y);
      px[0] = clip_u8(yl + kRv * cr);
      px[1] = clip_u8(yl - kGu * cb - kGv * cr);
      px[2] = clip_u8(yl + kBu * cb);
    }
  }
  return out;
}

PlanarFrame rgb_to_yuv420(const RgbImage& image, int bit_depth) {
  if (bit_depth != 8 && bit_depth != 10) {
    fail(ErrorKind::kValidation, "rgb_to_yuv420: bit depth must be 8 or 10");
  }
  PlanarFrame f =
      PlanarFrame::make(image.width, image.height, bit_depth, Chroma::kYuv420);
  const double up = bit_depth == 8 ? 1.0 : static_cast<double>(1 << (bit_depth - 8));
  const Sample hi = f.max_value();
  auto code = [&](double v8) {
    return static_cast<Sample>(
        std::clamp(std::round(v8 * up), 0.0, static_cast<double>(hi)));
  };

  std::vector<double> cb_full(static_cast<std::size_t>(image.width) * image.height);
  std::vector<double> cr_full(cb_full.size());
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const std::uint8_t* px = image.pixel(x, y);
      const double r = px[0], g = px[1], b = px[2];
      const double yp = kKr * r + kKg * g + kKb * b;
      const std::size_t i = static_cast<std::size_t>(y) * image.width + x;
      f.planes[0][i] = code(16.0 + yp / kLumaGain);
      cb_full[i] = 128.0 + (b - yp) / (2.0 * (1.0 - kKb)) / kChromaGain;
      cr_full[i] = 128.0 + (r - yp) / (2.0 * (1.0 - kKr)) / kChromaGain;
    }
  }
  const int cw = f.plane_width(1);
  const int ch = f.plane_height(1);
  for (int cy = 0; cy < ch; ++cy) {
    for (int cx = 0; cx < cw; ++cx) {
      double sb = 0.0, sr = 0.0;
      for (int dy = 0; dy < 2; ++dy) {
        for (int dx = 0; dx < 2; ++dx) {
          const int x = std::min(2 * cx + dx, image.width - 1);
          const int y = std::min(2 * cy + dy, image.height - 1);
          const std::size_t i = static_cast<std::size_t>(y) * image.width + x;
          sb += cb_full[i];
          sr += cr_full[i];
        }
      }
      const std::size_t ci = static_cast<std::size_t>(cy) * cw + cx;
      f.planes[1][ci] = code(sb / 4.0);
      f.planes[2][ci] = code(sr / 4.0);
    }
  }
  return f;
}

double rgb_luma(const std::uint8_t* rgb) {
  return (kKr * rgb[0] + kKg * rgb[1] + kKb * rgb[2]) / 255.0;
}

}  // namespace vcmbench
