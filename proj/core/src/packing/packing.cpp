#include "vcmbench/packing/packing.hpp"

#include <algorithm>
#include <cmath>

#include "vcmbench/error.hpp"

namespace vcmbench {

namespace {

void check_bit_depth(int bit_depth) {
  if (bit_depth != 8 && bit_depth != 10) {
    fail(ErrorKind::kValidation,
         "feature bit depth must be 8 or 10, got " + std::to_string(bit_depth));
  }
}

double max_code(int bit_depth) { return static_cast<double>((1 << bit_depth) - 1); }

bool degenerate(float lo, float hi) {
  return static_cast<double>(hi) - static_cast<double>(lo) < kDegenerateRange;
}

Sample to_code(double v, float lo, double step, int bit_depth) {
  const double q = std::round((v - static_cast<double>(lo)) / step);
  return static_cast<Sample>(std::clamp(q, 0.0, max_code(bit_depth)));
}

}  // namespace

double quantization_step(float global_min, float global_max, int bit_depth) {
  if (degenerate(global_min, global_max)) return 1.0;
  return (static_cast<double>(global_max) - static_cast<double>(global_min)) /
         max_code(bit_depth);
}

double QuantizedSet::step() const {
  return quantization_step(global_min, global_max, bit_depth);
}

Sample zero_code(float global_min, float global_max, int bit_depth) {
  if (degenerate(global_min, global_max)) return 0;
  return to_code(0.0, global_min, quantization_step(global_min, global_max, bit_depth),
                 bit_depth);
}

QuantizedSet quantize(const FeatureTensorSet& set, int bit_depth) {
  check_bit_depth(bit_depth);
  set.validate();
  QuantizedSet out;
  out.bit_depth = bit_depth;
  out.global_min = set.tensors.front().values.front();
  out.global_max = out.global_min;
  for (const auto& t : set.tensors) {
    const auto [lo, hi] = std::minmax_element(t.values.begin(), t.values.end());
    out.global_min = std::min(out.global_min, *lo);
    out.global_max = std::max(out.global_max, *hi);
  }
  const bool flat = degenerate(out.global_min, out.global_max);
  const double step = out.step();
  out.codes.reserve(set.tensors.size());
  for (const auto& t : set.tensors) {
    std::vector<Sample> codes(t.values.size(), 0);
    if (!flat) {
      for (std::size_t i = 0; i < codes.size(); ++i) {
        codes[i] = to_code(t.values[i], out.global_min, step, bit_depth);
      }
    }
    out.codes.push_back(std::move(codes));
  }
  return out;
}

float dequantize(Sample code, float global_min, float global_max, int bit_depth) {
  const double step = quantization_step(global_min, global_max, bit_depth);
  return static_cast<float>(static_cast<double>(global_min) + code * step);
}

GridGeometry grid_for(int channels) {
  if (channels < 1) fail(ErrorKind::kValidation, "grid needs at least one channel");
  int cols = 1;
  while (cols * cols < channels) ++cols;
  return {cols, (channels + cols - 1) / cols};
}

TileGrid tile(const TensorShape& shape, std::span<const Sample> codes, Sample pad) {
  if (codes.size() != shape.size()) {
    fail(ErrorKind::kValidation, "tile: code count does not match tensor shape");
  }
  TileGrid g;
  g.grid = grid_for(shape.channels);
  g.cell_height = shape.height;
  g.cell_width = shape.width;
  const int w = g.width();
  g.samples.assign(static_cast<std::size_t>(g.height()) * w, pad);
  const std::size_t plane = static_cast<std::size_t>(shape.height) * shape.width;
  for (int c = 0; c < shape.channels; ++c) {
    const int top = (c / g.grid.cols) * shape.height;
    const int left = (c % g.grid.cols) * shape.width;
    for (int y = 0; y < shape.height; ++y) {
      const auto src = codes.subspan(c * plane + static_cast<std::size_t>(y) * shape.width,
                                     shape.width);
      std::copy(src.begin(), src.end(),
                g.samples.begin() + static_cast<std::ptrdiff_t>((top + y) * w + left));
    }
  }
  return g;
}

std::vector<Sample> untile(const TensorShape& shape, std::span<const Sample> frame,
                           int frame_width, int y_offset) {
  const GridGeometry grid = grid_for(shape.channels);
  std::vector<Sample> codes(shape.size());
  const std::size_t plane = static_cast<std::size_t>(shape.height) * shape.width;
  for (int c = 0; c < shape.channels; ++c) {
    const int top = y_offset + (c / grid.cols) * shape.height;
    const int left = (c % grid.cols) * shape.width;
    for (int y = 0; y < shape.height; ++y) {
      const auto row = frame.subspan(
          static_cast<std::size_t>(top + y) * frame_width + left, shape.width);
      std::copy(row.begin(), row.end(),
                codes.begin() +
                    static_cast<std::ptrdiff_t>(c * plane + static_cast<std::size_t>(y) * shape.width));
    }
  }
  return codes;
}

void PackingMetadata::validate() const {
  auto bad = [](const std::string& m) { fail(ErrorKind::kCorruption, "packing metadata: " + m); };
  if (bit_depth != 8 && bit_depth != 10) bad("bit depth " + std::to_string(bit_depth));
  if (tensors.empty()) bad("no tensors");
  if (!(global_min <= global_max)) bad("global_min exceeds global_max");
  int expected_offset = 0;
  int widest = 0;
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    const auto& t = tensors[i];
    const auto idx = std::to_string(i);
    if (t.shape.channels < 1 || t.shape.height < 1 || t.shape.width < 1) {
      bad("tensor " + idx + " has a zero dimension");
    }
    if (t.grid != grid_for(t.shape.channels)) bad("tensor " + idx + " grid mismatch");
    if (t.y_offset != expected_offset) bad("tensor " + idx + " y_offset out of sequence");
    expected_offset += t.grid.rows * t.shape.height;
    widest = std::max(widest, t.grid.cols * t.shape.width);
  }
  if (frame_height != expected_offset || frame_width != widest) {
    bad("frame " + std::to_string(frame_width) + "x" + std::to_string(frame_height) +
        " disagrees with placements (" + std::to_string(widest) + "x" +
        std::to_string(expected_offset) + ")");
  }
}

PackedFrameSet pack(const FeatureTensorSet& set, int bit_depth) {
  const QuantizedSet q = quantize(set, bit_depth);
  const Sample pad = zero_code(q.global_min, q.global_max, bit_depth);

  PackedFrameSet out;
  auto& meta = out.metadata;
  meta.bit_depth = bit_depth;
  meta.global_min = q.global_min;
  meta.global_max = q.global_max;

  std::vector<TileGrid> grids;
  for (std::size_t i = 0; i < set.tensors.size(); ++i) {
    grids.push_back(tile(set.tensors[i].shape, q.codes[i], pad));
    meta.tensors.push_back({set.tensors[i].shape, grids.back().grid, meta.frame_height});
    meta.frame_height += grids.back().height();
    meta.frame_width = std::max(meta.frame_width, grids.back().width());
  }

  out.frame = PlanarFrame::make(meta.frame_width, meta.frame_height, bit_depth,
                                Chroma::kMono400, pad);
  auto& plane = out.frame.planes[0];
  for (std::size_t i = 0; i < grids.size(); ++i) {
    const auto& g = grids[i];
    for (int y = 0; y < g.height(); ++y) {
      std::copy_n(g.samples.begin() + static_cast<std::ptrdiff_t>(y) * g.width(), g.width(),
                  plane.begin() + static_cast<std::ptrdiff_t>(meta.tensors[i].y_offset + y) *
                                      meta.frame_width);
    }
  }
  return out;
}

FeatureTensorSet unpack(const PlanarFrame& frame, const PackingMetadata& metadata,
                        std::string split_tag) {
  metadata.validate();
  if (frame.chroma != Chroma::kMono400 || frame.width != metadata.frame_width ||
      frame.height != metadata.frame_height || frame.bit_depth != metadata.bit_depth ||
      frame.planes.size() != 1 ||
      frame.planes[0].size() != static_cast<std::size_t>(frame.width) * frame.height) {
    fail(ErrorKind::kCorruption,
         "packed frame " + std::to_string(frame.width) + "x" + std::to_string(frame.height) +
             " does not match metadata " + std::to_string(metadata.frame_width) + "x" +
             std::to_string(metadata.frame_height));
  }
  FeatureTensorSet out;
  out.split_tag = std::move(split_tag);
  const double step =
      quantization_step(metadata.global_min, metadata.global_max, metadata.bit_depth);
  const double base = metadata.global_min;
  for (const auto& t : metadata.tensors) {
    const auto codes = untile(t.shape, frame.planes[0], frame.width, t.y_offset);
    FeatureTensor ft{t.shape, std::vector<float>(codes.size())};
    for (std::size_t i = 0; i < codes.size(); ++i) {
      ft.values[i] = static_cast<float>(base + codes[i] * step);
    }
    out.tensors.push_back(std::move(ft));
  }
  return out;
}

}  // namespace vcmbench
