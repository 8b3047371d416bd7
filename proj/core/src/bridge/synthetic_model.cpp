#include "vcmbench/bridge/synthetic_model.hpp"

#include <algorithm>

#include "vcmbench/dataset/color.hpp"
#include "vcmbench/error.hpp"

namespace vcmbench {

namespace {

void check_tag(const std::string& tag) {
  if (tag != "s1" && tag != "fpn") {
    throw BackendError("unknown_split", "synthetic backend has no split '" + tag + "'");
  }
}

FeatureTensor pool2x2(const FeatureTensor& in) {
  const int h = (in.shape.height + 1) / 2;
  const int w = (in.shape.width + 1) / 2;
  FeatureTensor out = FeatureTensor::zeros({in.shape.channels, h, w});
  for (int c = 0; c < in.shape.channels; ++c) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        double sum = 0.0;
        for (int dy = 0; dy < 2; ++dy) {
          for (int dx = 0; dx < 2; ++dx) {
            sum += in.at(c, std::min(2 * y + dy, in.shape.height - 1),
                         std::min(2 * x + dx, in.shape.width - 1));
          }
        }
        out.at(c, y, x) = static_cast<float>(sum / 4.0);
      }
    }
  }
  return out;
}

}  // namespace

LumaImage luma_of(const RgbImage& image) {
  LumaImage out{image.width, image.height, {}};
  out.values.resize(static_cast<std::size_t>(image.width) * image.height);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      out.values[static_cast<std::size_t>(y) * image.width + x] = rgb_luma(image.pixel(x, y));
    }
  }
  return out;
}

FeatureTensor synthetic_features(const LumaImage& luma) {
  if (luma.width < 1 || luma.height < 1 ||
      luma.values.size() != static_cast<std::size_t>(luma.width) * luma.height) {
    fail(ErrorKind::kValidation, "synthetic model: malformed luma image");
  }
  const int s = kSyntheticStride;
  const int hc = (luma.height + s - 1) / s;
  const int wc = (luma.width + s - 1) / s;
  FeatureTensor t = FeatureTensor::zeros({4, hc, wc});
  auto sample = [&](int x, int y) {
    x = std::min(x, luma.width - 1);
    y = std::min(y, luma.height - 1);
    return luma.values[static_cast<std::size_t>(y) * luma.width + x];
  };
  for (int y = 0; y < hc; ++y) {
    for (int x = 0; x < wc; ++x) {
      double sum = 0.0;
      for (int dy = 0; dy < s; ++dy) {
        for (int dx = 0; dx < s; ++dx) sum += sample(s * x + dx, s * y + dy);
      }
      t.at(0, y, x) = static_cast<float>(sum / (s * s));
    }
  }
  for (int y = 0; y < hc; ++y) {
    for (int x = 0; x < wc; ++x) {
      const double c0 = t.at(0, y, x);
      t.at(1, y, x) = static_cast<float>(t.at(0, y, std::min(x + 1, wc - 1)) - c0);
      t.at(2, y, x) = static_cast<float>(t.at(0, std::min(y + 1, hc - 1), x) - c0);
      double box = 0.0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          box += t.at(0, std::clamp(y + dy, 0, hc - 1), std::clamp(x + dx, 0, wc - 1));
        }
      }
      t.at(3, y, x) = static_cast<float>(c0 - box / 9.0);
    }
  }
  return t;
}

FeatureTensorSet synthetic_part1(const LumaImage& luma, const std::string& split_tag) {
  check_tag(split_tag);
  FeatureTensorSet set;
  set.split_tag = split_tag;
  set.tensors.push_back(synthetic_features(luma));
  if (split_tag == "fpn") {
    for (int level = 1; level < kSyntheticFpnLevels; ++level) {
      set.tensors.push_back(pool2x2(set.tensors.back()));
    }
  }
  return set;
}

std::vector<Detection> synthetic_part2(const FeatureTensorSet& set,
                                       const std::string& split_tag, int image_width,
                                       int image_height) {
  check_tag(split_tag);
  const std::size_t expected = split_tag == "fpn" ? kSyntheticFpnLevels : 1;
  if (set.tensors.size() != expected) {
    throw BackendError("bad_tensor", "split '" + split_tag + "' expects " +
                                         std::to_string(expected) + " tensors, got " +
                                         std::to_string(set.tensors.size()));
  }
  const FeatureTensor& t = set.tensors.front();
  if (t.shape.channels < 1 || t.values.size() != t.shape.size()) {
    throw BackendError("bad_tensor", "malformed feature tensor");
  }
  const int h = t.shape.height;
  const int w = t.shape.width;
  std::vector<int> label(static_cast<std::size_t>(h) * w, -1);
  std::vector<Detection> out;
  std::vector<std::pair<int, int>> stack;
  for (int y0 = 0; y0 < h; ++y0) {
    for (int x0 = 0; x0 < w; ++x0) {
      const std::size_t i0 = static_cast<std::size_t>(y0) * w + x0;
      if (label[i0] >= 0 || !(t.at(0, y0, x0) > kSyntheticThreshold)) continue;
      int count = 0;
      int min_x = x0, max_x = x0, min_y = y0, max_y = y0;
      label[i0] = 1;
      stack.assign(1, {x0, y0});
      while (!stack.empty()) {
        const auto [x, y] = stack.back();
        stack.pop_back();
        ++count;
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
        const std::pair<int, int> nbrs[] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
        for (const auto& [nx, ny] : nbrs) {
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const std::size_t ni = static_cast<std::size_t>(ny) * w + nx;
          if (label[ni] >= 0 || !(t.at(0, ny, nx) > kSyntheticThreshold)) continue;
          label[ni] = 1;
          stack.push_back({nx, ny});
        }
      }
      if (count < kSyntheticMinComponent) continue;
      double sum = 0.0;
      for (int y = min_y; y <= max_y; ++y) {
        for (int x = min_x; x <= max_x; ++x) sum += t.at(0, y, x);
      }
      const double mean = sum / ((max_x - min_x + 1) * (max_y - min_y + 1));
      Detection d;
      d.category = "object";
      const double s = kSyntheticStride;
      d.box = {std::min(s * min_x, static_cast<double>(image_width)),
               std::min(s * min_y, static_cast<double>(image_height)),
               std::min(s * (max_x + 1), static_cast<double>(image_width)),
               std::min(s * (max_y + 1), static_cast<double>(image_height))};
      d.score = std::clamp(mean, 0.0, 1.0);
      out.push_back(std::move(d));
    }
  }
  return out;
}

BackendCapabilities synthetic_capabilities() {
  BackendCapabilities caps;
  caps.tasks = {Task::kDetection, Task::kTracking};
  caps.split_tags = {{"synthetic", "s1", 1}, {"synthetic", "fpn", kSyntheticFpnLevels}};
  caps.protocol_version = kProtocolVersion;
  return caps;
}

}  // namespace vcmbench
