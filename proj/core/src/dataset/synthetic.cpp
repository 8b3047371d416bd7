#include "vcmbench/dataset/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "vcmbench/dataset/splitmix64.hpp"
#include "vcmbench/error.hpp"

namespace vcmbench {

namespace {

bool too_close(const SyntheticRect& a, const SyntheticRect& b) {
  // Rects must keep one lattice step of background between them.
  const int g = kSyntheticLattice;
  return a.x < b.x + b.w + g && b.x < a.x + a.w + g && a.y < b.y + b.h + g &&
         b.y < a.y + a.h + g;
}

std::vector<SyntheticRect> draw_layout(const SyntheticSceneSpec& spec,
                                       SplitMix64& rng) {
  const int g = kSyntheticLattice;
  const int max_side = std::max(2 * g, (std::min(spec.width, spec.height) / 2) / g * g);
  const auto side_choices = static_cast<std::uint64_t>((max_side - 2 * g) / g + 1);
  std::vector<SyntheticRect> rects;
  for (int r = 0; r < spec.rects_per_item; ++r) {
    bool placed = false;
    for (int attempt = 0; attempt < kSyntheticMaxAttempts && !placed; ++attempt) {
      SyntheticRect rect;
      rect.w = 2 * g + g * static_cast<int>(rng.index(side_choices));
      rect.h = 2 * g + g * static_cast<int>(rng.index(side_choices));
      const auto x_slots = static_cast<std::uint64_t>((spec.width - rect.w) / g + 1);
      const auto y_slots = static_cast<std::uint64_t>((spec.height - rect.h) / g + 1);
      rect.x = g * static_cast<int>(rng.index(x_slots));
      rect.y = g * static_cast<int>(rng.index(y_slots));
      placed = std::none_of(rects.begin(), rects.end(), [&](const SyntheticRect& o) {
        return too_close(rect, o);
      });
      if (placed) rects.push_back(rect);
    }
    if (!placed) {
      fail(ErrorKind::kValidation,
           "synthetic spec: could not place rect " + std::to_string(r) + " after " +
               std::to_string(kSyntheticMaxAttempts) + " attempts");
    }
  }
  return rects;
}

SyntheticRect moved(const SyntheticSceneSpec& spec, const SyntheticRect& r,
                    const Velocity& v, int t) {
  SyntheticRect out = r;
  out.x = std::clamp(r.x + v.dx * t, 0, spec.width - r.w);
  out.y = std::clamp(r.y + v.dy * t, 0, spec.height - r.h);
  return out;
}

PlanarFrame render(const SyntheticSceneSpec& spec,
                   const std::vector<SyntheticRect>& rects, SplitMix64& rng) {
  PlanarFrame f = PlanarFrame::make(spec.width, spec.height, 8, Chroma::kYuv420, 128);
  const double rect_level = synthetic_rect_level(spec.contrast);
  const double amp = spec.noise_amplitude * 255.0;
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      double level = kSyntheticBackground;
      for (const auto& r : rects) {
        if (x >= r.x && x < r.x + r.w && y >= r.y && y < r.y + r.h) level = rect_level;
      }
      const double noisy = level + amp * (2.0 * rng.uniform() - 1.0);
      f.planes[0][static_cast<std::size_t>(y) * spec.width + x] =
          static_cast<Sample>(std::clamp(std::round(noisy), 0.0, 255.0));
    }
  }
  return f;
}

std::string image_item_id(int i) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "img_%05d", i);
  return buf;
}

GroundTruthObject gt_for(const SyntheticRect& r, std::string item_id) {
  GroundTruthObject g;
  g.item_id = std::move(item_id);
  g.category = "object";
  g.box = {static_cast<double>(r.x), static_cast<double>(r.y),
           static_cast<double>(r.x + r.w), static_cast<double>(r.y + r.h)};
  return g;
}

}  // namespace

double synthetic_rect_level(double contrast) {
  return kSyntheticBackground + contrast * (255.0 - kSyntheticBackground);
}

void SyntheticSceneSpec::validate() const {
  auto bad = [](const std::string& m) { fail(ErrorKind::kValidation, "synthetic spec: " + m); };
  if (width < 4 * kSyntheticLattice || height < 4 * kSyntheticLattice) {
    bad("width and height must be at least 16");
  }
  if (num_items < 1) bad("num_items must be >= 1");
  if (rects_per_item < 0) bad("rects_per_item must be >= 0");
  if (!(contrast > 0.0 && contrast <= 1.0)) bad("contrast must be in (0, 1]");
  if (!(noise_amplitude >= 0.0 && noise_amplitude < 1.0)) {
    bad("noise_amplitude must be in [0, 1)");
  }
  if (motion && static_cast<int>(motion->size()) != rects_per_item) {
    bad("motion needs one velocity per rect");
  }
  if (motion && !(frame_rate > 0.0)) bad("frame_rate must be > 0");
}

std::vector<SyntheticRect> synthetic_layout(const SyntheticSceneSpec& spec, int t) {
  spec.validate();
  SplitMix64 rng(spec.seed);
  if (spec.is_video()) {
    auto base = draw_layout(spec, rng);
    for (std::size_t r = 0; r < base.size(); ++r) {
      base[r] = moved(spec, base[r], (*spec.motion)[r], t);
    }
    return base;
  }
  // Replay the stream up to item t.
  for (int i = 0;; ++i) {
    auto rects = draw_layout(spec, rng);
    if (i == t) return rects;
    for (int s = 0; s < spec.width * spec.height; ++s) rng.next();
  }
}

LoadedDataset generate_synthetic_dataset(const SyntheticSceneSpec& spec) {
  spec.validate();
  SplitMix64 rng(spec.seed);
  LoadedDataset out;
  if (!spec.is_video()) {
    out.handle.kind = DatasetKind::kImageSet;
    for (int i = 0; i < spec.num_items; ++i) {
      const auto rects = draw_layout(spec, rng);
      const std::string id = image_item_id(i);
      out.frames.push_back(render(spec, rects, rng));
      out.handle.items.push_back({id, spec.width, spec.height});
      for (const auto& r : rects) out.handle.ground_truth.push_back(gt_for(r, id));
    }
    return out;
  }

  out.handle.kind = DatasetKind::kVideoSequence;
  out.handle.frame_rate = spec.frame_rate;
  const auto base = draw_layout(spec, rng);
  for (int t = 0; t < spec.num_items; ++t) {
    std::vector<SyntheticRect> rects;
    for (std::size_t r = 0; r < base.size(); ++r) {
      rects.push_back(moved(spec, base[r], (*spec.motion)[r], t));
    }
    const std::string id = frame_item_id(t);
    out.frames.push_back(render(spec, rects, rng));
    out.handle.items.push_back({id, spec.width, spec.height});
    for (std::size_t r = 0; r < rects.size(); ++r) {
      auto g = gt_for(rects[r], id);
      g.track_id = static_cast<int>(r) + 1;
      g.frame_index = t;
      out.handle.ground_truth.push_back(std::move(g));
    }
  }
  return out;
}

}  // namespace vcmbench
