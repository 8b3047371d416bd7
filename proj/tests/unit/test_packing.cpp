#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "generators.hpp"
#include "vcmbench/dataset/splitmix64.hpp"
#include "vcmbench/error.hpp"
#include "vcmbench/packing/packing.hpp"

namespace vcmbench {
namespace {

using test::fpn_set;
using test::random_set;
using test::random_tensor;

double max_error(const FeatureTensorSet& a, const FeatureTensorSet& b) {
  return test::max_abs_error(a, b);
}

TEST(Quantize, RangeEndpoints) {
  FeatureTensorSet s;
  s.tensors.push_back({{1, 1, 2}, {-1.0f, 1.0f}});
  const auto q = quantize(s, 10);
  EXPECT_EQ(q.codes[0][0], 0);
  EXPECT_EQ(q.codes[0][1], 1023);
}

TEST(Quantize, ConstantSetIsDegenerate) {
  FeatureTensorSet s;
  s.tensors.push_back({{2, 2, 2}, std::vector<float>(8, 3.7f)});
  const auto q = quantize(s, 10);
  for (auto c : q.codes[0]) EXPECT_EQ(c, 0);
  EXPECT_EQ(q.step(), 1.0);
  const auto back = unpack(pack(s, 10));
  for (float v : back.tensors[0].values) EXPECT_EQ(v, 3.7f);
}

TEST(Quantize, NonFiniteNamesTensor) {
  FeatureTensorSet s;
  s.tensors.push_back({{1, 1, 1}, {0.0f}});
  s.tensors.push_back({{1, 1, 2}, {0.0f, std::nanf("")}});
  try {
    quantize(s, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidation);
    EXPECT_NE(std::string(e.what()).find("1"), std::string::npos);
  }
}

TEST(Quantize, ErrorWithinHalfStep) {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    FeatureTensorSet s;
    s.tensors.push_back(random_tensor(rng, {3, 5, 7}, -2, 9));
    const auto q = quantize(s, 10);
    const double step = q.step();
    for (std::size_t i = 0; i < s.tensors[0].values.size(); ++i) {
      const double back = dequantize(q.codes[0][i], q.global_min, q.global_max, 10);
      EXPECT_LE(std::abs(back - s.tensors[0].values[i]), test::roundtrip_tolerance(step, -2, 9));
    }
  }
}

TEST(Quantize, JointRangeAcrossTensors) {
  FeatureTensorSet s;
  s.tensors.push_back({{1, 1, 2}, {0.0f, 1.0f}});
  s.tensors.push_back({{1, 1, 2}, {-1.0f, 3.0f}});
  const auto q = quantize(s, 8);
  EXPECT_EQ(q.global_min, -1.0f);
  EXPECT_EQ(q.global_max, 3.0f);
  EXPECT_EQ(q.codes[1][0], 0);
  EXPECT_EQ(q.codes[1][1], 255);
}

TEST(Tile, GridFormula) {
  EXPECT_EQ(grid_for(1), (GridGeometry{1, 1}));
  EXPECT_EQ(grid_for(4), (GridGeometry{2, 2}));
  EXPECT_EQ(grid_for(6), (GridGeometry{3, 2}));
  EXPECT_EQ(grid_for(5), (GridGeometry{3, 2}));
  EXPECT_EQ(grid_for(256), (GridGeometry{16, 16}));
}

TEST(Tile, SingleChannelIsIdentity) {
  std::vector<Sample> codes = {1, 2, 3, 4, 5, 6};
  const auto g = tile({1, 2, 3}, codes, 0);
  EXPECT_EQ(g.height(), 2);
  EXPECT_EQ(g.width(), 3);
  EXPECT_EQ(g.samples, codes);
}

TEST(Tile, FourChannelPlacement) {
  const TensorShape shape{4, 2, 3};
  std::vector<Sample> codes(shape.size());
  for (std::size_t i = 0; i < codes.size(); ++i) codes[i] = static_cast<Sample>(i);
  const auto g = tile(shape, codes, 999);
  EXPECT_EQ(g.height(), 4);
  EXPECT_EQ(g.width(), 6);
  // Channel 2 starts at row 2, col 0; its first code is 2 * 6 = 12.
  EXPECT_EQ(g.samples[2 * 6 + 0], 12);
  // Channel 1 starts at row 0, col 3.
  EXPECT_EQ(g.samples[3], 6);
}

TEST(Tile, SixChannelsFillGrid) {
  const TensorShape shape{6, 1, 1};
  std::vector<Sample> codes = {10, 11, 12, 13, 14, 15};
  const auto g = tile(shape, codes, 0);
  EXPECT_EQ(g.grid, (GridGeometry{3, 2}));
  EXPECT_EQ(g.samples, codes);
}

TEST(Tile, UnusedCellsHoldPad) {
  const TensorShape shape{3, 1, 2};
  std::vector<Sample> codes = {1, 2, 3, 4, 5, 6};
  const auto g = tile(shape, codes, 77);
  ASSERT_EQ(g.samples.size(), 8u);
  EXPECT_EQ(g.samples[6], 77);
  EXPECT_EQ(g.samples[7], 77);
}

// Every channel scatters a unique sentinel; the grid must hold each exactly
// once in its own cell, and untile must recover them.
TEST(Tile, SentinelBijection) {
  for (int n = 1; n <= 40; ++n) {
    const TensorShape shape{n, 3, 2};
    std::vector<Sample> codes(shape.size());
    for (int c = 0; c < n; ++c) {
      for (int i = 0; i < 6; ++i) codes[static_cast<std::size_t>(c * 6 + i)] = static_cast<Sample>(c + 1);
    }
    const auto g = tile(shape, codes, 0);
    std::map<Sample, std::set<std::pair<int, int>>> cells;
    for (int y = 0; y < g.height(); ++y) {
      for (int x = 0; x < g.width(); ++x) {
        const Sample s = g.samples[static_cast<std::size_t>(y * g.width() + x)];
        if (s) cells[s].insert({y / 3, x / 2});
      }
    }
    ASSERT_EQ(static_cast<int>(cells.size()), n);
    for (int c = 0; c < n; ++c) {
      const auto& set = cells[static_cast<Sample>(c + 1)];
      ASSERT_EQ(set.size(), 1u);
      EXPECT_EQ(*set.begin(), std::make_pair(c / g.grid.cols, c % g.grid.cols));
    }
    EXPECT_EQ(untile(shape, g.samples, g.width(), 0), codes);
  }
}

TEST(Pack, FpnFrameGeometry) {
  SplitMix64 rng(1);
  const auto p = pack(fpn_set(rng), 10);
  EXPECT_EQ(p.frame.width, 32);
  EXPECT_EQ(p.frame.height, 30);
  EXPECT_EQ(p.frame.chroma, Chroma::kMono400);
  EXPECT_EQ(p.frame.bit_depth, 10);
  ASSERT_EQ(p.metadata.tensors.size(), 4u);
  EXPECT_EQ(p.metadata.tensors[0].y_offset, 0);
  EXPECT_EQ(p.metadata.tensors[1].y_offset, 16);
  EXPECT_EQ(p.metadata.tensors[2].y_offset, 24);
  EXPECT_EQ(p.metadata.tensors[3].y_offset, 28);
}

TEST(Pack, NarrowGridsPaddedWithZeroCode) {
  FeatureTensorSet s;
  s.tensors.push_back({{1, 1, 4}, {-1.0f, 0.5f, 1.0f, 3.0f}});
  s.tensors.push_back({{1, 1, 2}, {2.0f, 2.0f}});
  const auto p = pack(s, 8);
  const Sample z = zero_code(-1.0f, 3.0f, 8);
  EXPECT_EQ(p.frame.planes[0][4 + 2], z);
  EXPECT_EQ(p.frame.planes[0][4 + 3], z);
}

TEST(Pack, SingleTensorFrameIsItsGrid) {
  SplitMix64 rng(2);
  FeatureTensorSet s;
  s.tensors.push_back(random_tensor(rng, {5, 3, 4}, 0, 1));
  const auto p = pack(s, 10);
  const auto q = quantize(s, 10);
  const auto g = tile(s.tensors[0].shape, q.codes[0], zero_code(q.global_min, q.global_max, 10));
  EXPECT_EQ(p.frame.width, g.width());
  EXPECT_EQ(p.frame.height, g.height());
  EXPECT_EQ(p.frame.planes[0], g.samples);
}

TEST(Pack, RoundTripOnRandomSets) {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = trial % 10 == 0 ? fpn_set(rng) : random_set(rng);
    for (int bd : {8, 10}) {
      const auto p = pack(s, bd);
      EXPECT_EQ(p.frame.width * p.frame.height, [&] {
        int area = 0;
        for (const auto& t : p.metadata.tensors) {
          area += t.grid.rows * t.shape.height * p.metadata.frame_width;
        }
        return area;
      }());
      const auto back = unpack(p, s.split_tag);
      ASSERT_EQ(back.shapes(), s.shapes());
      EXPECT_EQ(back.split_tag, s.split_tag);
      const double step = quantization_step(p.metadata.global_min, p.metadata.global_max, bd);
      EXPECT_LE(max_error(s, back), test::roundtrip_tolerance(step, p.metadata.global_min,
                                                            p.metadata.global_max));
    }
  }
}

TEST(Pack, HigherBitDepthNeverWorse) {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_set(rng);
    EXPECT_LE(max_error(s, unpack(pack(s, 10))), max_error(s, unpack(pack(s, 8))) + 1e-12);
  }
}

TEST(Pack, FrameAreaMatchesMetadata) {
  SplitMix64 rng(4);
  const auto p = pack(fpn_set(rng), 10);
  int height = 0, width = 0;
  for (const auto& t : p.metadata.tensors) {
    height += t.grid.rows * t.shape.height;
    width = std::max(width, t.grid.cols * t.shape.width);
  }
  EXPECT_EQ(p.metadata.frame_height, height);
  EXPECT_EQ(p.metadata.frame_width, width);
  EXPECT_EQ(p.frame.sample_count(), static_cast<std::size_t>(height * width));
}

TEST(Unpack, ShortFrameIsCorruption) {
  SplitMix64 rng(6);
  auto p = pack(fpn_set(rng), 10);
  PlanarFrame short_frame = PlanarFrame::make(32, 29, 10, Chroma::kMono400);
  try {
    unpack(short_frame, p.metadata);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCorruption);
  }
}

TEST(Metadata, SerializeRoundTrip) {
  SplitMix64 rng(3);
  const auto p = pack(fpn_set(rng), 10);
  const auto bytes = serialize_metadata(p.metadata);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "FPMD");
  EXPECT_EQ(bytes.size(), 4u + 1 + 1 + 2 + 4 * 6 * 4 + 8);
  EXPECT_EQ(parse_metadata(bytes), p.metadata);
}

TEST(Metadata, TruncatedIsCorruption) {
  SplitMix64 rng(3);
  auto bytes = serialize_metadata(pack(fpn_set(rng), 10).metadata);
  bytes.resize(bytes.size() - 3);
  try {
    parse_metadata(bytes);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCorruption);
  }
}

TEST(Metadata, BadMagicIsRejected) {
  SplitMix64 rng(3);
  auto bytes = serialize_metadata(pack(fpn_set(rng), 10).metadata);
  bytes[0] = 'X';
  EXPECT_THROW(parse_metadata(bytes), Error);
}

}  // namespace
}  // namespace vcmbench
