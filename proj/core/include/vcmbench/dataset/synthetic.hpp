#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vcmbench/dataset/dataset.hpp"

namespace vcmbench {

struct Velocity {
  int dx = 0;
  int dy = 0;
  friend bool operator==(const Velocity&, const Velocity&) = default;
};

struct SyntheticSceneSpec {
  int width = 64;
  int height = 64;
  int num_items = 20;  // images, or frames when `motion` is set
  int rects_per_item = 3;
  double contrast = 0.9;         // (0, 1]
  double noise_amplitude = 0.02;  // [0, 1), fraction of 255
  std::optional<std::vector<Velocity>> motion;  // one entry per rect => video
  std::uint64_t seed = 0;
  double frame_rate = 30.0;

  bool is_video() const { return motion.has_value(); }
  void validate() const;
};

// Axis-aligned rectangle on the 4-pixel lattice.
struct SyntheticRect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
};

inline constexpr double kSyntheticBackground = 0.25 * 255.0;
inline constexpr int kSyntheticLattice = 4;
inline constexpr int kSyntheticMaxAttempts = 1000;

// Deterministic generator. Draw order from one splitmix64 stream seeded
// with spec.seed:
//   image set: for each item { rects; then one noise draw per luma sample }
//   video:     rects once; then, for each frame, one noise draw per sample
// Each rect draws (w, h, x, y) as lattice indices and redraws while it
// comes within one lattice step of an earlier rect of the same layout.
// Chroma planes are flat 128.
LoadedDataset generate_synthetic_dataset(const SyntheticSceneSpec& spec);

// Rect layout the generator places at frame `t` (video) or for item `t`.
std::vector<SyntheticRect> synthetic_layout(const SyntheticSceneSpec& spec, int t);

double synthetic_rect_level(double contrast);

}  // namespace vcmbench
