#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "vcmbench/dataset/annotations.hpp"
#include "vcmbench/dataset/color.hpp"
#include "vcmbench/dataset/dataset.hpp"
#include "vcmbench/dataset/digest.hpp"
#include "vcmbench/dataset/image_io.hpp"
#include "vcmbench/dataset/splitmix64.hpp"
#include "vcmbench/dataset/synthetic.hpp"
#include "vcmbench/dataset/yuv_io.hpp"
#include "vcmbench/error.hpp"
#include "vcmbench/io.hpp"
#include "vcmbench/process.hpp"

namespace vcmbench {
namespace {

template <typename F>
ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kIo;
}

std::string error_message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

// Direct evaluation of the BT.709 limited-range equations.
std::array<int, 3> bt709(double y, double u, double v) {
  const double yy = 1.164383561643836 * (y - 16.0);
  const double r = yy + 1.792741071428571 * (v - 128.0);
  const double g = yy - 0.213248614273730 * (u - 128.0) - 0.532909328559444 * (v - 128.0);
  const double b = yy + 2.112401785714286 * (u - 128.0);
  auto c = [](double x) { return static_cast<int>(std::clamp(std::round(x), 0.0, 255.0)); };
  return {c(r), c(g), c(b)};
}

PlanarFrame flat_yuv(int y, int u, int v, int w = 2, int h = 2) {
  PlanarFrame f = PlanarFrame::make(w, h, 8, Chroma::kYuv420);
  std::fill(f.planes[0].begin(), f.planes[0].end(), static_cast<Sample>(y));
  std::fill(f.planes[1].begin(), f.planes[1].end(), static_cast<Sample>(u));
  std::fill(f.planes[2].begin(), f.planes[2].end(), static_cast<Sample>(v));
  return f;
}

TEST(Coco, BboxBecomesCorners) {
  const auto gt = parse_coco_annotations(R"({
    "images": [{"id": 1, "file_name": "a.ppm", "width": 64, "height": 64}],
    "annotations": [{"id": 7, "image_id": 1, "category_id": 3, "bbox": [10, 20, 30, 40]}],
    "categories": [{"id": 3, "name": "boat"}]})");
  ASSERT_EQ(gt.size(), 1u);
  EXPECT_EQ(gt[0].category, "boat");
  EXPECT_EQ(gt[0].box, (Box{10, 20, 40, 60}));
  EXPECT_EQ(gt[0].item_id, "a");
}

TEST(Coco, EmptyAnnotations) {
  EXPECT_TRUE(parse_coco_annotations(R"({"images": [], "annotations": [], "categories": []})")
                  .empty());
}

TEST(Coco, UnknownImageIdNamesTheId) {
  const auto text = R"({"images": [{"id": 1, "file_name": "a.ppm", "width": 8, "height": 8}],
    "annotations": [{"id": 1, "image_id": 99, "category_id": 1, "bbox": [0, 0, 2, 2]}],
    "categories": [{"id": 1, "name": "x"}]})";
  EXPECT_EQ(error_kind_of([&] { parse_coco_annotations(text); }), ErrorKind::kValidation);
  EXPECT_NE(error_message_of([&] { parse_coco_annotations(text); }).find("99"),
            std::string::npos);
}

TEST(Coco, UnknownCategoryIsValidationError) {
  const auto text = R"({"images": [{"id": 1, "file_name": "a.ppm", "width": 8, "height": 8}],
    "annotations": [{"id": 1, "image_id": 1, "category_id": 5, "bbox": [0, 0, 2, 2]}],
    "categories": [{"id": 1, "name": "x"}]})";
  EXPECT_EQ(error_kind_of([&] { parse_coco_annotations(text); }), ErrorKind::kValidation);
}

TEST(Coco, MalformedJsonIsParseError) {
  EXPECT_EQ(error_kind_of([] { parse_coco_annotations("{\"images\": ["); }), ErrorKind::kParse);
}

TEST(Coco, OrderedByImageThenAnnotationId) {
  const auto gt = parse_coco_annotations(R"({
    "images": [{"id": 2, "file_name": "b.ppm", "width": 64, "height": 64},
               {"id": 1, "file_name": "a.ppm", "width": 64, "height": 64}],
    "annotations": [{"id": 9, "image_id": 2, "category_id": 1, "bbox": [0, 0, 4, 4]},
                    {"id": 5, "image_id": 1, "category_id": 1, "bbox": [1, 1, 4, 4]},
                    {"id": 3, "image_id": 2, "category_id": 1, "bbox": [2, 2, 4, 4]}],
    "categories": [{"id": 1, "name": "x"}]})");
  ASSERT_EQ(gt.size(), 3u);
  EXPECT_EQ(gt[0].item_id, "a");
  EXPECT_EQ(gt[1].box.x_min, 2);
  EXPECT_EQ(gt[2].box.x_min, 0);
}

// Every accepted document yields well-ordered boxes with known categories.
TEST(Coco, AcceptedFilesSatisfyInvariants) {
  SplitMix64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    std::string anns;
    const int n = static_cast<int>(rng.index(6));
    for (int i = 0; i < n; ++i) {
      if (i) anns += ",";
      anns += "{\"id\":" + std::to_string(i) + ",\"image_id\":" +
              std::to_string(1 + rng.index(2)) + ",\"category_id\":" +
              std::to_string(1 + rng.index(2)) + ",\"bbox\":[" +
              std::to_string(rng.uniform() * 50) + "," + std::to_string(rng.uniform() * 50) +
              "," + std::to_string(rng.uniform() * 20) + "," +
              std::to_string(rng.uniform() * 20) + "]}";
    }
    const std::string doc =
        R"({"images":[{"id":1,"file_name":"a.ppm","width":64,"height":64},)"
        R"({"id":2,"file_name":"b.ppm","width":64,"height":64}],"annotations":[)" +
        anns + R"(],"categories":[{"id":1,"name":"p"},{"id":2,"name":"q"}]})";
    std::vector<GroundTruthObject> gt;
    try {
      gt = parse_coco_annotations(doc);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kValidation);  // degenerate box
      continue;
    }
    for (const auto& g : gt) {
      EXPECT_TRUE(g.box.well_ordered());
      EXPECT_TRUE(g.category == "p" || g.category == "q");
      EXPECT_TRUE(g.item_id == "a" || g.item_id == "b");
    }
  }
}

TEST(Coco, WriteThenParseRoundTrips) {
  std::vector<CocoImage> images = {{1, "img_a", "img_a.yuv", 32, 16}};
  std::vector<GroundTruthObject> objs = {{"img_a", "object", {4, 4, 12, 12}, {}, {}},
                                         {"img_a", "object", {16, 0, 24, 8}, {}, {}}};
  const auto doc = parse_coco(write_coco(images, objs));
  EXPECT_EQ(doc.objects, objs);
  ASSERT_EQ(doc.images.size(), 1u);
  EXPECT_EQ(doc.images[0].width, 32);
}

TEST(TrackCsv, ParsesWithAndWithoutHeader) {
  const auto a = parse_track_csv("frame,track_id,x,y,w,h\n0,1,10,20,8,8\n1,1,12,20,8,8\n");
  const auto b = parse_track_csv("0,1,10,20,8,8\n1,1,12,20,8,8\n");
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[1].frame_index, 1);
  EXPECT_EQ(a[1].track_id, 1);
  EXPECT_EQ(a[1].box, (Box{12, 20, 20, 28}));
  EXPECT_EQ(a[1].item_id, frame_item_id(1));
  EXPECT_EQ(parse_track_csv(write_track_csv(a)), a);
}

TEST(TrackCsv, BadRowIsParseError) {
  EXPECT_EQ(error_kind_of([] { parse_track_csv("0,1,10,10,8,8\n0,2,10,twenty,8,8\n"); }),
            ErrorKind::kParse);
  EXPECT_EQ(error_kind_of([] { parse_track_csv("0,1,10,10,8,8\n0,2,10,10x,8,8\n"); }),
            ErrorKind::kParse);
  EXPECT_EQ(error_kind_of([] { parse_track_csv("0,1,10,10,8\n"); }), ErrorKind::kParse);
}

TEST(Yuv, FrameSizes) {
  std::vector<std::uint8_t> bytes(100, 7);
  EXPECT_EQ(raw_frame_bytes({4, 4, 8, Chroma::kYuv420}), 24u);
  EXPECT_EQ(raw_frame_bytes({4, 4, 10, Chroma::kYuv420}), 48u);
  const auto f8 = read_yuv420_frame(bytes, 4, 4, 8);
  EXPECT_EQ(write_raw_frame(f8).size(), 24u);
  const auto f10 = read_yuv420_frame(bytes, 4, 4, 10);
  EXPECT_EQ(write_raw_frame(f10).size(), 48u);
  EXPECT_EQ(f10.planes[0][0], 0x0707 & 0x3FF);
}

TEST(Yuv, ShortBufferIsTruncation) {
  std::vector<std::uint8_t> bytes(23, 0);
  EXPECT_EQ(error_kind_of([&] { read_yuv420_frame(bytes, 4, 4, 8); }), ErrorKind::kTruncation);
  const auto msg = error_message_of([&] { read_yuv420_frame(bytes, 4, 4, 8); });
  EXPECT_NE(msg.find("24"), std::string::npos);
  EXPECT_NE(msg.find("23"), std::string::npos);
}

TEST(Yuv, ReadWriteReadIsByteIdentical) {
  SplitMix64 rng(3);
  for (const FrameGeometry g : {FrameGeometry{5, 3, 8, Chroma::kYuv420},
                                FrameGeometry{6, 4, 10, Chroma::kYuv420},
                                FrameGeometry{7, 7, 10, Chroma::kMono400}}) {
    std::vector<std::uint8_t> bytes(raw_frame_bytes(g) * 3);
    for (auto& b : bytes) b = static_cast<std::uint8_t>(rng.next());
    if (g.bit_depth == 10) {
      for (std::size_t i = 1; i < bytes.size(); i += 2) bytes[i] &= 0x03;
    }
    const auto frames = read_raw_sequence(bytes, g);
    ASSERT_EQ(frames.size(), 3u);
    const auto again = write_raw_sequence(frames);
    EXPECT_EQ(again, bytes);
    EXPECT_EQ(read_raw_sequence(again, g), frames);
  }
}

TEST(Yuv, TrailingPartialFrameIsTruncation) {
  std::vector<std::uint8_t> bytes(24 + 5, 0);
  EXPECT_EQ(error_kind_of([&] { read_raw_sequence(bytes, {4, 4, 8, Chroma::kYuv420}); }),
            ErrorKind::kTruncation);
}

TEST(Color, LimitedRangeBlackAndWhite) {
  const auto black = yuv_to_rgb(flat_yuv(16, 128, 128));
  EXPECT_EQ(black.pixel(0, 0)[0], 0);
  EXPECT_EQ(black.pixel(1, 1)[2], 0);
  const auto white = yuv_to_rgb(flat_yuv(235, 128, 128));
  for (int c = 0; c < 3; ++c) EXPECT_EQ(white.pixel(0, 0)[c], 255);
}

TEST(Color, RedDominantPixel) {
  const auto rgb = yuv_to_rgb(flat_yuv(81, 90, 240));
  const auto expected = bt709(81, 90, 240);
  for (int c = 0; c < 3; ++c) EXPECT_EQ(rgb.pixel(0, 0)[c], expected[static_cast<std::size_t>(c)]);
  EXPECT_GT(rgb.pixel(0, 0)[0], 200);
  EXPECT_LT(rgb.pixel(0, 0)[1], 100);
  EXPECT_LT(rgb.pixel(0, 0)[2], 100);
}

TEST(Color, MatchesEquationsOnRandomSamples) {
  SplitMix64 rng(11);
  for (int i = 0; i < 5000; ++i) {
    const int y = static_cast<int>(rng.index(256)), u = static_cast<int>(rng.index(256)),
              v = static_cast<int>(rng.index(256));
    const auto rgb = yuv_to_rgb(flat_yuv(y, u, v));
    const auto expected = bt709(y, u, v);
    for (int c = 0; c < 3; ++c) {
      ASSERT_NEAR(rgb.pixel(1, 0)[c], expected[static_cast<std::size_t>(c)], 1)
          << y << " " << u << " " << v;
    }
  }
}

TEST(Color, ExhaustiveLumaStaysInRange) {
  PlanarFrame f = PlanarFrame::make(256, 2, 8, Chroma::kYuv420, 128);
  for (int x = 0; x < 256; ++x) {
    f.planes[0][static_cast<std::size_t>(x)] = f.planes[0][256 + static_cast<std::size_t>(x)] =
        static_cast<Sample>(x);
  }
  const auto rgb = yuv_to_rgb(f);
  for (int x = 0; x < 256; ++x) {
    const auto* p = rgb.pixel(x, 0);
    EXPECT_EQ(p[0], p[1]);
    EXPECT_EQ(p[1], p[2]);
    if (x > 0) {
      EXPECT_GE(p[0], rgb.pixel(x - 1, 0)[0]);
    }
  }
}

TEST(Color, NearestNeighbourChroma) {
  PlanarFrame f = PlanarFrame::make(4, 2, 8, Chroma::kYuv420, 128);
  std::fill(f.planes[0].begin(), f.planes[0].end(), 128);
  f.planes[2][1] = 240;  // right chroma sample covers columns 2-3
  const auto rgb = yuv_to_rgb(f);
  EXPECT_EQ(rgb.pixel(0, 0)[0], rgb.pixel(1, 1)[0]);
  EXPECT_EQ(rgb.pixel(2, 0)[0], rgb.pixel(3, 1)[0]);
  EXPECT_GT(rgb.pixel(2, 0)[0], rgb.pixel(1, 0)[0]);
}

TEST(Color, MonoIsUnsupported) {
  const auto f = PlanarFrame::make(4, 4, 8, Chroma::kMono400);
  EXPECT_EQ(error_kind_of([&] { yuv_to_rgb(f); }), ErrorKind::kUnsupported);
}

TEST(SplitMix, ReferenceOutputs) {
  // First outputs for seed 1234567 from the published reference code.
  SplitMix64 rng(1234567);
  EXPECT_EQ(rng.next(), 6457827717110365317ull);
  EXPECT_EQ(rng.next(), 3203168211198807973ull);
  EXPECT_EQ(rng.next(), 9817491932198370423ull);
}

TEST(Synthetic, Deterministic) {
  auto spec = test::clean_scene();
  spec.num_items = 5;
  const auto a = generate_synthetic_dataset(spec);
  const auto b = generate_synthetic_dataset(spec);
  EXPECT_EQ(a.frames, b.frames);
  EXPECT_EQ(a.handle.ground_truth, b.handle.ground_truth);
}

TEST(Synthetic, GroundTruthCount) {
  auto spec = test::clean_scene();
  spec.num_items = 5;
  spec.rects_per_item = 3;
  EXPECT_EQ(generate_synthetic_dataset(spec).handle.ground_truth.size(), 15u);
}

std::string frames_digest(const LoadedDataset& d) {
  std::vector<std::uint8_t> all;
  for (const auto& f : d.frames) append_raw_frame(f, all);
  return sha256_hex(all);
}

TEST(Synthetic, SeedsChangeDigests) {
  auto spec = test::clean_scene();
  spec.num_items = 2;
  std::set<std::string> digests;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    spec.seed = seed;
    const auto d = frames_digest(generate_synthetic_dataset(spec));
    EXPECT_EQ(d, frames_digest(generate_synthetic_dataset(spec)));
    digests.insert(d);
  }
  EXPECT_EQ(digests.size(), 20u);
}

TEST(Synthetic, RectsRespectInvariants) {
  auto spec = test::clean_scene();
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    spec.seed = seed;
    const auto d = generate_synthetic_dataset(spec);
    for (const auto& item : d.handle.items) {
      std::vector<Box> boxes;
      for (const auto& g : d.handle.ground_truth) {
        if (g.item_id == item.id) boxes.push_back(g.box);
      }
      ASSERT_EQ(boxes.size(), 3u);
      for (std::size_t i = 0; i < boxes.size(); ++i) {
        EXPECT_GE(boxes[i].x_min, 0);
        EXPECT_GE(boxes[i].y_min, 0);
        EXPECT_LE(boxes[i].x_max, 64);
        EXPECT_LE(boxes[i].y_max, 64);
        EXPECT_GE(boxes[i].width(), 8);
        EXPECT_GE(boxes[i].height(), 8);
        for (std::size_t j = 0; j < i; ++j) EXPECT_LE(iou(boxes[i], boxes[j]), 0.5);
      }
    }
  }
}

TEST(Synthetic, PixelLevelsFollowTheSpec) {
  auto spec = test::clean_scene();
  spec.noise_amplitude = 0.0;
  spec.num_items = 1;
  const auto d = generate_synthetic_dataset(spec);
  const auto& y = d.frames[0].planes[0];
  const double rect = 0.25 * 255 + 0.9 * (255 - 0.25 * 255);
  const Box b = d.handle.ground_truth[0].box;
  EXPECT_EQ(y[static_cast<std::size_t>(b.y_min) * 64 + static_cast<std::size_t>(b.x_min)],
            std::round(rect));
  int background = 0;
  for (auto s : y) background += s == std::round(0.25 * 255);
  EXPECT_GT(background, 0);
  for (auto s : d.frames[0].planes[1]) EXPECT_EQ(s, 128);
}

TEST(Synthetic, NoiseStaysWithinAmplitude) {
  auto spec = test::clean_scene();
  spec.rects_per_item = 0;
  spec.noise_amplitude = 0.1;
  spec.num_items = 2;
  for (const auto& f : generate_synthetic_dataset(spec).frames) {
    for (auto s : f.planes[0]) EXPECT_LE(std::abs(s - 0.25 * 255), 0.1 * 255 + 0.5);
  }
}

TEST(Synthetic, VideoTracksMoveMonotonically) {
  SyntheticSceneSpec spec;
  spec.width = spec.height = 96;
  spec.num_items = 10;
  spec.rects_per_item = 2;
  spec.motion = std::vector<Velocity>{{2, 0}, {0, -3}};
  spec.seed = 9;
  const auto d = generate_synthetic_dataset(spec);
  EXPECT_TRUE(d.handle.is_tracking());
  std::map<int, std::vector<GroundTruthObject>> tracks;
  for (const auto& g : d.handle.ground_truth) tracks[*g.track_id].push_back(g);
  ASSERT_EQ(tracks.size(), 2u);
  for (const auto& [id, seq] : tracks) {
    EXPECT_LE(seq.size(), 10u);
    const auto& v = (*spec.motion)[static_cast<std::size_t>(id - 1)];
    for (std::size_t t = 0; t < seq.size(); ++t) {
      const auto rect = synthetic_layout(spec, seq[t].frame_index.value())
                            [static_cast<std::size_t>(id - 1)];
      EXPECT_EQ(seq[t].box.x_min, rect.x);
      EXPECT_EQ(seq[t].box.y_min, rect.y);
      if (t > 0) {
        const double dx = seq[t].box.x_min - seq[t - 1].box.x_min;
        const double dy = seq[t].box.y_min - seq[t - 1].box.y_min;
        EXPECT_TRUE(v.dx >= 0 ? dx >= 0 : dx <= 0);
        EXPECT_TRUE(v.dy >= 0 ? dy >= 0 : dy <= 0);
      }
    }
  }
}

TEST(Synthetic, ImpossibleLayoutIsSpecError) {
  SyntheticSceneSpec spec;
  spec.width = spec.height = 16;
  spec.rects_per_item = 5;
  spec.num_items = 1;
  EXPECT_EQ(error_kind_of([&] { generate_synthetic_dataset(spec); }), ErrorKind::kValidation);
}

TEST(Synthetic, InvalidSpecRejected) {
  SyntheticSceneSpec spec;
  spec.contrast = 0.0;
  EXPECT_EQ(error_kind_of([&] { spec.validate(); }), ErrorKind::kValidation);
  spec.contrast = 0.5;
  spec.noise_amplitude = 1.0;
  EXPECT_EQ(error_kind_of([&] { spec.validate(); }), ErrorKind::kValidation);
}

TEST(ImageSet, LoadsYuvFilesListedInCoco) {
  auto spec = test::clean_scene();
  spec.num_items = 3;
  const auto gen = generate_synthetic_dataset(spec);
  TempDir dir;
  std::vector<CocoImage> images;
  for (std::size_t i = 0; i < gen.frames.size(); ++i) {
    const auto& item = gen.handle.items[i];
    write_file_bytes(dir.path() / (item.id + ".yuv"), write_raw_frame(gen.frames[i]));
    images.push_back({static_cast<long long>(i + 1), item.id, item.id + ".yuv", 64, 64});
  }
  write_file_text(dir.path() / "ann.json", write_coco(images, gen.handle.ground_truth));
  const auto loaded = load_image_set(dir.path(), dir.path() / "ann.json");
  EXPECT_EQ(loaded.frames, gen.frames);
  EXPECT_EQ(loaded.handle.ground_truth, gen.handle.ground_truth);
}

TEST(ImageSet, LoadsPpmAsYuv420) {
  TempDir dir;
  RgbImage img = RgbImage::make(4, 2);
  for (auto& s : img.samples) s = 200;
  write_ppm(dir.path() / "p.ppm", img);
  write_file_text(dir.path() / "ann.json",
                  R"({"images":[{"id":1,"file_name":"p.ppm","width":4,"height":2}],)"
                  R"("annotations":[],"categories":[]})");
  const auto loaded = load_image_set(dir.path(), dir.path() / "ann.json");
  ASSERT_EQ(loaded.frames.size(), 1u);
  EXPECT_EQ(loaded.frames[0].chroma, Chroma::kYuv420);
  const auto back = yuv_to_rgb(loaded.frames[0]);
  EXPECT_NEAR(back.pixel(0, 0)[0], 200, 1);
}

TEST(ImageSet, MissingFileIsIoError) {
  TempDir dir;
  write_file_text(dir.path() / "ann.json",
                  R"({"images":[{"id":1,"file_name":"none.ppm","width":4,"height":2}],)"
                  R"("annotations":[],"categories":[]})");
  EXPECT_EQ(error_kind_of([&] { load_image_set(dir.path(), dir.path() / "ann.json"); }),
            ErrorKind::kIo);
}

TEST(VideoSequence, LoadsRawSequenceAndTracks) {
  SyntheticSceneSpec spec;
  spec.num_items = 4;
  spec.rects_per_item = 1;
  spec.motion = std::vector<Velocity>{{4, 0}};
  spec.seed = 2;
  const auto gen = generate_synthetic_dataset(spec);
  TempDir dir;
  write_file_bytes(dir.path() / "s.yuv", write_raw_sequence(gen.frames));
  write_file_text(dir.path() / "t.csv", write_track_csv(gen.handle.ground_truth));
  const auto loaded = load_video_sequence(dir.path() / "s.yuv", {64, 64, 8, Chroma::kYuv420},
                                          30.0, dir.path() / "t.csv");
  EXPECT_EQ(loaded.frames, gen.frames);
  EXPECT_EQ(loaded.handle.ground_truth, gen.handle.ground_truth);
  EXPECT_EQ(loaded.handle.kind, DatasetKind::kVideoSequence);
  EXPECT_DOUBLE_EQ(loaded.handle.frame_rate, 30.0);
}

TEST(Netpbm, RoundTrip) {
  RgbImage img = RgbImage::make(3, 2);
  for (std::size_t i = 0; i < img.samples.size(); ++i) img.samples[i] = static_cast<std::uint8_t>(i * 13);
  EXPECT_EQ(decode_netpbm(encode_ppm(img)), img);
  const std::vector<std::uint8_t> gray = {1, 2, 3, 4};
  const auto g = decode_netpbm(encode_pgm(2, 2, gray));
  EXPECT_EQ(g.pixel(1, 1)[0], 4);
  EXPECT_EQ(g.pixel(1, 1)[2], 4);
}

}  // namespace
}  // namespace vcmbench
