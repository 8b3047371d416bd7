#include "vcmbench/dataset/frame.hpp"

#include <string>

#include "vcmbench/error.hpp"

namespace vcmbench {

PlanarFrame PlanarFrame::make(int width, int height, int bit_depth,
                              Chroma chroma, Sample fill) {
  PlanarFrame f;
  f.width = width;
  f.height = height;
  f.bit_depth = bit_depth;
  f.chroma = chroma;
  f.planes.resize(f.num_planes());
  for (int p = 0; p < f.num_planes(); ++p) {
    f.planes[p].assign(
        static_cast<std::size_t>(f.plane_width(p)) * f.plane_height(p), fill);
  }
  return f;
}

int PlanarFrame::plane_width(int plane) const {
  return plane == 0 ? width : (width + 1) / 2;
}

int PlanarFrame::plane_height(int plane) const {
  return plane == 0 ? height : (height + 1) / 2;
}

std::size_t PlanarFrame::sample_count() const {
  std::size_t n = 0;
  for (int p = 0; p < num_planes(); ++p) {
    n += static_cast<std::size_t>(plane_width(p)) * plane_height(p);
  }
  return n;
}

void PlanarFrame::validate() const {
  if (width < 1 || height < 1) {
    fail(ErrorKind::kValidation, "frame dimensions must be positive, got " +
                                     std::to_string(width) + "x" +
                                     std::to_string(height));
  }
  if (bit_depth != 8 && bit_depth != 10) {
    fail(ErrorKind::kValidation,
         "unsupported bit depth " + std::to_string(bit_depth));
  }
  if (static_cast<int>(planes.size()) != num_planes()) {
    fail(ErrorKind::kValidation, "frame has " + std::to_string(planes.size()) +
                                     " planes, expected " +
                                     std::to_string(num_planes()));
  }
  const Sample hi = max_value();
  for (int p = 0; p < num_planes(); ++p) {
    const auto expected =
        static_cast<std::size_t>(plane_width(p)) * plane_height(p);
    if (planes[p].size() != expected) {
      fail(ErrorKind::kValidation,
           "plane " + std::to_string(p) + " has " +
               std::to_string(planes[p].size()) + " samples, expected " +
               std::to_string(expected));
    }
    for (Sample s : planes[p]) {
      if (s > hi) {
        fail(ErrorKind::kValidation,
             "sample " + std::to_string(s) + " exceeds " +
                 std::to_string(bit_depth) + "-bit range");
      }
    }
  }
}

}  // namespace vcmbench
