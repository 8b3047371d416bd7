#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "generators.hpp"
#include "oracles.hpp"
#include "vcmbench/dataset/dataset.hpp"
#include "vcmbench/dataset/splitmix64.hpp"
#include "vcmbench/error.hpp"
#include "vcmbench/metrics/bdrate.hpp"
#include "vcmbench/metrics/hungarian.hpp"
#include "vcmbench/metrics/interchange.hpp"
#include "vcmbench/metrics/map.hpp"
#include "vcmbench/metrics/mota.hpp"
#include "vcmbench/metrics/rate.hpp"

namespace vcmbench {
namespace {

ErrorKind error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kIo;
}

GroundTruthObject gt(std::string item, Box box, std::string category = "object") {
  return {std::move(item), std::move(category), box, std::nullopt, std::nullopt};
}

Detection det(std::string item, Box box, double score, std::string category = "object") {
  return {std::move(item), std::move(category), box, score};
}

TEST(Iou, Examples) {
  EXPECT_EQ(iou({0, 0, 10, 10}, {0, 0, 10, 10}), 1.0);
  EXPECT_EQ(iou({0, 0, 10, 10}, {10, 0, 20, 10}), 0.0);
  EXPECT_EQ(iou({0, 0, 10, 10}, {5, 0, 15, 10}), 50.0 / 150.0);
  EXPECT_EQ(iou({0, 0, 10, 10}, {0, 0, 10, 8}), 0.8);
  EXPECT_EQ(iou({0, 0, 0, 10}, {0, 0, 0, 10}), 0.0);
}

TEST(Map, Grids) {
  EXPECT_EQ(iou_thresholds().front(), 0.5);
  EXPECT_EQ(iou_thresholds()[6], 0.8);
  EXPECT_EQ(iou_thresholds().back(), 0.95);
  EXPECT_EQ(recall_points().front(), 0.0);
  EXPECT_EQ(recall_points()[50], 0.5);
  EXPECT_EQ(recall_points().back(), 1.0);
}

TEST(Map, PerfectDetection) {
  const auto r = evaluate_map({det("a", {1, 2, 11, 12}, 0.5)}, {gt("a", {1, 2, 11, 12})});
  EXPECT_EQ(r.map, 1.0);
}

TEST(Map, NoDetections) {
  EXPECT_EQ(evaluate_map({}, {gt("a", {1, 2, 11, 12})}).map, 0.0);
}

TEST(Map, EmptyGroundTruth) {
  EXPECT_EQ(evaluate_map({det("a", {1, 2, 11, 12}, 0.5)}, {}).map, 0.0);
}

TEST(Map, AveragedOverThresholdsExample) {
  const std::vector<GroundTruthObject> truth{gt("a", {0, 0, 10, 10})};
  const std::vector<Detection> dets{det("a", {0, 0, 10, 8}, 0.9), det("a", {0, 0, 10, 2}, 0.8)};
  ASSERT_EQ(iou(dets[0].box, truth[0].box), 0.8);
  ASSERT_EQ(iou(dets[1].box, truth[0].box), 0.2);
  const auto r = evaluate_map(dets, truth);
  EXPECT_EQ(r.ap_per_threshold[0], 1.0);
  for (int t = 0; t < kIouThresholdCount; ++t) {
    EXPECT_EQ(r.ap_per_threshold[t], t <= 6 ? 1.0 : 0.0) << t;
  }
  EXPECT_EQ(r.map, 0.7);
  EXPECT_EQ(test::brute_force_map(dets, truth), 0.7);
}

TEST(Map, DuplicateDetectionIsFalsePositive) {
  const auto r = evaluate_map({det("a", {0, 0, 10, 10}, 0.9), det("a", {0, 0, 10, 10}, 0.8)},
                              {gt("a", {0, 0, 10, 10})});
  EXPECT_EQ(r.map, 1.0);  // recall reaches 1 before the duplicate
  const auto r2 =
      evaluate_map({det("a", {0, 0, 10, 10}, 0.8), det("a", {50, 50, 60, 60}, 0.9)},
                   {gt("a", {0, 0, 10, 10})});
  // Precision 1/2 at every recall point.
  EXPECT_DOUBLE_EQ(r2.map, 0.5);
}

TEST(Map, CategoriesAreSeparate) {
  const auto r = evaluate_map({det("a", {0, 0, 10, 10}, 0.9, "cat")},
                              {gt("a", {0, 0, 10, 10}, "dog"), gt("a", {20, 20, 30, 30}, "cat")});
  ASSERT_EQ(r.categories.size(), 2u);
  EXPECT_EQ(r.map, 0.0);
}

TEST(Map, CategoryWithoutGroundTruthIsExcluded) {
  const auto r = evaluate_map({det("a", {0, 0, 10, 10}, 0.9), det("a", {0, 0, 5, 5}, 0.9, "ghost")},
                              {gt("a", {0, 0, 10, 10})});
  EXPECT_EQ(r.map, 1.0);
  EXPECT_EQ(r.excluded_categories, std::vector<std::string>{"ghost"});
}

TEST(Map, CapsDetectionsPerImage) {
  std::vector<Detection> dets;
  for (int i = 0; i < 100; ++i) dets.push_back(det("a", {200, 200, 210, 210}, 0.9));
  dets.push_back(det("a", {0, 0, 10, 10}, 0.1));
  EXPECT_EQ(evaluate_map(dets, {gt("a", {0, 0, 10, 10})}).map, 0.0);
  dets.pop_back();
  dets.pop_back();
  dets.push_back(det("a", {0, 0, 10, 10}, 0.1));
  EXPECT_GT(evaluate_map(dets, {gt("a", {0, 0, 10, 10})}).map, 0.0);
}

TEST(AveragePrecision, Envelope) {
  EXPECT_EQ(average_precision({true}, 1), 1.0);
  EXPECT_EQ(average_precision({}, 2), 0.0);
  // tp fp tp over 2 objects: precision 1 up to recall 0.5, 2/3 up to 1.
  const double expected = (51 * 1.0 + 50 * (2.0 / 3.0)) / 101;
  EXPECT_NEAR(average_precision({true, false, true}, 2), expected, 1e-14);
  // A later higher precision lifts the envelope.
  EXPECT_NEAR(average_precision({false, true, true}, 2), 2.0 / 3.0, 1e-14);
}

TEST(Map, EqualsBruteForceOnRandomScenes) {
  SplitMix64 rng(2024);
  for (int k = 0; k < 100; ++k) {
    const auto s = test::random_map_scene(rng);
    EXPECT_EQ(evaluate_map(s.detections, s.ground_truth).map,
              test::brute_force_map(s.detections, s.ground_truth))
        << "scene " << k;
  }
}

TEST(Map, LowestScoreFalsePositiveNeverRaisesAp) {
  SplitMix64 rng(77);
  for (int k = 0; k < 200; ++k) {
    auto s = test::random_map_scene(rng);
    const auto before = evaluate_map(s.detections, s.ground_truth);
    double lowest = 1.0;
    for (const auto& d : s.detections) lowest = std::min(lowest, d.score);
    // Far from every GT box, in a category that has ground truth.
    s.detections.push_back(det(s.ground_truth[0].item_id, {500, 500, 510, 510}, lowest / 2,
                               s.ground_truth[0].category));
    const auto after = evaluate_map(s.detections, s.ground_truth);
    for (std::size_t c = 0; c < before.categories.size(); ++c) {
      for (int t = 0; t < kIouThresholdCount; ++t) {
        EXPECT_LE(after.categories[c].ap[t], before.categories[c].ap[t]);
      }
    }
  }
}

TrackedBox tracked(int frame, int id, Box box) {
  return {frame, id, {std::to_string(frame), "object", box, 1.0}};
}

GroundTruthObject gt_track(int frame, int id, Box box) {
  return {std::to_string(frame), "object", box, id, frame};
}

void expect_identity(const MotaResult& r) {
  EXPECT_DOUBLE_EQ(r.mota, 1.0 - static_cast<double>(r.false_negatives + r.false_positives +
                                                     r.id_switches) /
                                     static_cast<double>(r.gt_count));
}

TEST(Mota, PerfectTracking) {
  std::vector<TrackedBox> tr;
  std::vector<GroundTruthObject> truth;
  for (int f = 0; f < 5; ++f) {
    truth.push_back(gt_track(f, 1, {2.0 * f, 0, 2.0 * f + 10, 10}));
    tr.push_back(tracked(f, 7, {2.0 * f, 0, 2.0 * f + 10, 10}));
  }
  const auto r = evaluate_mota(tr, truth);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->mota, 1.0);
  EXPECT_EQ(r->false_negatives, 0);
  EXPECT_EQ(r->false_positives, 0);
  EXPECT_EQ(r->id_switches, 0);
  EXPECT_EQ(r->matches, 5);
}

TEST(Mota, OneMissOneFalsePositive) {
  std::vector<TrackedBox> tr;
  std::vector<GroundTruthObject> truth;
  for (int f = 0; f < 10; ++f) {
    truth.push_back(gt_track(f, 1, {0, 0, 10, 10}));
    if (f != 3) tr.push_back(tracked(f, 1, {0, 0, 10, 10}));
  }
  tr.push_back(tracked(6, 2, {40, 40, 50, 50}));
  const auto r = evaluate_mota(tr, truth);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->gt_count, 10);
  EXPECT_EQ(r->false_negatives, 1);
  EXPECT_EQ(r->false_positives, 1);
  EXPECT_EQ(r->id_switches, 0);
  EXPECT_DOUBLE_EQ(r->mota, 0.8);
}

TEST(Mota, CrossingSwap) {
  // Two objects pass each other; the tracker swaps ids once they cross.
  std::vector<TrackedBox> tr;
  std::vector<GroundTruthObject> truth;
  const double xa[] = {0, 10, 20, 30};
  const double xb[] = {30, 20, 10, 0};
  for (int f = 0; f < 4; ++f) {
    const Box a{xa[f], 0, xa[f] + 10, 10};
    const Box b{xb[f], 0, xb[f] + 10, 10};
    truth.push_back(gt_track(f, 1, a));
    truth.push_back(gt_track(f, 2, b));
    tr.push_back(tracked(f, f < 2 ? 10 : 20, a));
    tr.push_back(tracked(f, f < 2 ? 20 : 10, b));
  }
  const auto r = evaluate_mota(tr, truth);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->gt_count, 8);
  EXPECT_EQ(r->false_negatives, 0);
  EXPECT_EQ(r->false_positives, 0);
  EXPECT_EQ(r->id_switches, 2);
  EXPECT_EQ(r->mota, 0.75);
}

TEST(Mota, KeepsPreviousCorrespondence) {
  // Tracker 2 overlaps better in frame 1, but tracker 1 still covers the
  // object with IoU >= 0.5, so the correspondence is kept.
  std::vector<GroundTruthObject> truth{gt_track(0, 1, {0, 0, 10, 10}),
                                       gt_track(1, 1, {0, 0, 10, 10})};
  std::vector<TrackedBox> tr{tracked(0, 1, {0, 0, 10, 10}), tracked(1, 1, {0, 0, 10, 7}),
                             tracked(1, 2, {0, 0, 10, 10})};
  const auto r = evaluate_mota(tr, truth);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->id_switches, 0);
  EXPECT_EQ(r->false_positives, 1);
}

TEST(Mota, NoGroundTruth) {
  EXPECT_FALSE(evaluate_mota({tracked(0, 1, {0, 0, 1, 1})}, {}).has_value());
}

TEST(Mota, BreakdownIdentityOnRandomSequences) {
  SplitMix64 rng(5);
  for (int k = 0; k < 100; ++k) {
    std::vector<GroundTruthObject> truth;
    std::vector<TrackedBox> tr;
    for (int f = 0; f < 6; ++f) {
      for (int id = 1; id <= 3; ++id) {
        const Box b{id * 20.0 + f, 0, id * 20.0 + f + 10, 10};
        if (rng.index(5) > 0) truth.push_back(gt_track(f, id, b));
        if (rng.index(4) > 0) {
          Box jittered = b;
          jittered.x_min += static_cast<double>(rng.index(6));
          tr.push_back(tracked(f, rng.index(3) > 0 ? id : id + 3, jittered));
        }
      }
    }
    if (truth.empty()) continue;
    const auto r = evaluate_mota(tr, truth);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->gt_count, static_cast<long long>(truth.size()));
    EXPECT_EQ(r->matches + r->false_negatives, r->gt_count);
    EXPECT_EQ(r->matches + r->false_positives, static_cast<long long>(tr.size()));
    expect_identity(*r);
  }
}

double assignment_cost(const std::vector<std::vector<double>>& cost, const std::vector<int>& a) {
  double total = 0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r] >= 0) total += cost[r][static_cast<std::size_t>(a[r])];
  }
  return total;
}

TEST(Hungarian, MatchesExhaustiveSearch) {
  SplitMix64 rng(11);
  for (int k = 0; k < 300; ++k) {
    const int rows = 1 + static_cast<int>(rng.index(5));
    const int cols = 1 + static_cast<int>(rng.index(5));
    std::vector<std::vector<double>> cost(rows, std::vector<double>(cols));
    for (auto& row : cost) {
      for (auto& c : row) c = static_cast<double>(rng.index(10));
    }
    const auto a = solve_assignment(cost);
    ASSERT_EQ(a.size(), static_cast<std::size_t>(rows));
    std::vector<int> used;
    for (int c : a) {
      if (c >= 0) used.push_back(c);
    }
    std::sort(used.begin(), used.end());
    EXPECT_EQ(std::adjacent_find(used.begin(), used.end()), used.end());
    EXPECT_EQ(used.size(), static_cast<std::size_t>(std::min(rows, cols)));

    // Exhaustive: permute columns, assign the first `rows` (or fewer).
    std::vector<int> perm(static_cast<std::size_t>(std::max(rows, cols)));
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e300;
    do {
      double total = 0;
      for (int r = 0; r < rows; ++r) {
        if (perm[r] < cols) total += cost[r][perm[r]];
      }
      best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(assignment_cost(cost, a), best) << "case " << k;
  }
}

RateAccuracyCurve curve(std::string label, std::vector<double> rates, std::vector<double> acc) {
  RateAccuracyCurve c;
  c.label = std::move(label);
  for (std::size_t i = 0; i < rates.size(); ++i) {
    c.points.push_back({c.label, static_cast<int>(40 - 12 * i), rates[i], acc[i]});
  }
  return c;
}

const RateAccuracyCurve kAnchor = curve("anchor", {100, 200, 400, 800}, {0.4, 0.6, 0.8, 0.9});
const RateAccuracyCurve kTest = curve("test", {80, 150, 350, 700}, {0.4, 0.6, 0.8, 0.9});

RateAccuracyCurve scaled(const RateAccuracyCurve& c, double factor) {
  RateAccuracyCurve out = c;
  out.label = "scaled";
  for (auto& p : out.points) p.rate *= factor;
  return out;
}

TEST(BdRate, IdenticalCurvesGiveZero) {
  EXPECT_NEAR(bd_rate(kAnchor, kAnchor).percent, 0.0, 1e-9);
  EXPECT_NEAR(bd_rate(kTest, kTest).percent, 0.0, 1e-9);
}

TEST(BdRate, HalvedRates) {
  EXPECT_NEAR(bd_rate(kAnchor, scaled(kAnchor, 0.5)).percent, -50.0, 1e-6);
}

TEST(BdRate, ScalingLaw) {
  for (double c : {0.1, 0.75, 1.3, 2.0, 7.5}) {
    EXPECT_NEAR(bd_rate(kAnchor, scaled(kAnchor, c)).percent, (c - 1) * 100, 1e-6) << c;
  }
}

TEST(BdRate, FixtureMatchesFineIntegration) {
  const test::OracleCurve a{{100, 200, 400, 800}, {0.4, 0.6, 0.8, 0.9}};
  const test::OracleCurve t{{80, 150, 350, 700}, {0.4, 0.6, 0.8, 0.9}};
  const double fine = test::bd_rate_by_trapezoid(a, t, 1000000);
  const double exact = test::bd_rate_closed_form(a, t);
  EXPECT_NEAR(exact, test::kFrozenFixtureBdRate, 1e-9);
  EXPECT_NEAR(fine, exact, 1e-7);
  const auto r = bd_rate(kAnchor, kTest);
  EXPECT_LT(r.percent, 0.0);
  EXPECT_EQ(std::round(r.percent * 1e4), std::round(fine * 1e4));
  EXPECT_NEAR(r.percent, fine, 5e-5);
  EXPECT_EQ(r.low, 0.4);
  EXPECT_EQ(r.high, 0.9);
}

TEST(BdRate, DescendingQpOrderIsAccepted) {
  RateAccuracyCurve a = kAnchor;
  RateAccuracyCurve t = kTest;
  std::reverse(a.points.begin(), a.points.end());
  std::reverse(t.points.begin(), t.points.end());
  EXPECT_EQ(bd_rate(a, t).percent, bd_rate(kAnchor, kTest).percent);
}

TEST(BdRate, CommonIntervalOnly) {
  const auto t = curve("t", {90, 180, 380, 790}, {0.5, 0.65, 0.85, 0.95});
  const auto r = bd_rate(kAnchor, t);
  EXPECT_EQ(r.low, 0.5);
  EXPECT_EQ(r.high, 0.9);
  const test::OracleCurve oa{{100, 200, 400, 800}, {0.4, 0.6, 0.8, 0.9}};
  const test::OracleCurve ot{{90, 180, 380, 790}, {0.5, 0.65, 0.85, 0.95}};
  EXPECT_NEAR(r.percent, test::bd_rate_closed_form(oa, ot), 1e-4);
}

TEST(BdRate, Antisymmetry) {
  SplitMix64 rng(9);
  for (int k = 0; k < 200; ++k) {
    std::vector<double> ra, rb, acc_a, acc_b;
    double rate_a = 50 + rng.uniform() * 50, rate_b = 50 + rng.uniform() * 50;
    double acc = 0.2 + rng.uniform() * 0.1, acc2 = 0.2 + rng.uniform() * 0.1;
    for (int i = 0; i < 4; ++i) {
      ra.push_back(rate_a);
      rb.push_back(rate_b);
      acc_a.push_back(acc);
      acc_b.push_back(acc2);
      rate_a *= 1.2 + rng.uniform();
      rate_b *= 1.2 + rng.uniform();
      acc += 0.05 + rng.uniform() * 0.15;
      acc2 += 0.05 + rng.uniform() * 0.15;
    }
    const auto a = curve("a", ra, acc_a);
    const auto b = curve("b", rb, acc_b);
    const double ab = bd_rate(a, b).percent;
    const double ba = bd_rate(b, a).percent;
    if (std::abs(ab) > 1e-9 && std::abs(ba) > 1e-9) {
      EXPECT_EQ(std::signbit(ab), !std::signbit(ba)) << ab << " " << ba;
    }
  }
}

TEST(BdRate, Errors) {
  EXPECT_EQ(error_of([] { bd_rate(curve("a", {1, 2, 3}, {0.1, 0.2, 0.3}), kTest); }),
            ErrorKind::kValidation);
  EXPECT_EQ(error_of([] { bd_rate(kAnchor, curve("t", {1, 2, 3, 4}, {0.4, 0.5, 0.5, 0.9})); }),
            ErrorKind::kMonotonicity);
  EXPECT_EQ(error_of([] { bd_rate(kAnchor, curve("t", {1, 2, 3, 4}, {0.91, 0.92, 0.93, 0.94})); }),
            ErrorKind::kOverlap);
  EXPECT_EQ(error_of([] { bd_rate(kAnchor, curve("t", {0, 2, 3, 4}, {0.4, 0.5, 0.6, 0.9})); }),
            ErrorKind::kValidation);
  EXPECT_EQ(error_of([] {
              bd_rate(kAnchor, curve("t", {1, NAN, 3, 4}, {0.4, 0.5, 0.6, 0.9}));
            }),
            ErrorKind::kValidation);
}

TEST(BdRate, NegativeMotaAxisIsValid) {
  const auto a = curve("a", {100, 200, 400, 800}, {-0.4, -0.1, 0.2, 0.5});
  EXPECT_NEAR(bd_rate(a, scaled(a, 2.0)).percent, 100.0, 1e-6);
}

TEST(MonotoneCubic, InterpolatesAndStaysMonotone) {
  const MonotoneCubic f({0.4, 0.6, 0.8, 0.9}, {2, 2.3, 2.6, 2.9});
  EXPECT_EQ(f(0.4), 2.0);
  EXPECT_EQ(f(0.9), 2.9);
  EXPECT_DOUBLE_EQ(f(0.6), 2.3);
  double prev = f(0.4);
  for (int i = 1; i <= 1000; ++i) {
    const double v = f(0.4 + 0.5 * i / 1000.0);
    EXPECT_GE(v, prev - 1e-12);
    prev = v;
  }
  // Flat data stays flat.
  const MonotoneCubic g({0, 1, 2, 3}, {1, 1, 1, 1});
  EXPECT_EQ(g(1.5), 1.0);
}

TEST(MonotoneCubic, LinearDataIsExact) {
  const MonotoneCubic f({0, 1, 3, 4}, {0, 2, 6, 8});
  for (double t : {0.25, 0.5, 2.0, 3.5}) EXPECT_NEAR(f(t), 2 * t, 1e-12);
  EXPECT_NEAR(trapezoid(f, 0, 4, 1000), 16.0, 1e-9);
}

DatasetHandle image_set(int n, int w, int h) {
  DatasetHandle d;
  for (int i = 0; i < n; ++i) d.items.push_back({"img" + std::to_string(i), w, h});
  return d;
}

TEST(Rate, BitsPerPixel) {
  const auto d = image_set(10, 64, 64);
  std::vector<RateRecord> recs;
  for (const auto& item : d.items) recs.push_back({item.id, 4096});
  EXPECT_EQ(compute_rate(recs, d), 1.0);
}

TEST(Rate, KilobitsPerSecond) {
  DatasetHandle d;
  d.kind = DatasetKind::kVideoSequence;
  d.frame_rate = 30.0;
  std::vector<RateRecord> recs;
  for (int i = 0; i < 30; ++i) {
    d.items.push_back({"f" + std::to_string(100 + i), 64, 64});
    recs.push_back({d.items.back().id, 10000});
  }
  EXPECT_DOUBLE_EQ(compute_rate(recs, d), 300.0);
}

TEST(Rate, MissingItemIsIncomplete) {
  const auto d = image_set(3, 8, 8);
  try {
    compute_rate({{"img0", 8}, {"img2", 8}}, d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIncomplete);
    EXPECT_NE(std::string(e.what()).find("img1"), std::string::npos);
  }
}

TEST(Interchange, NumbersRoundTrip) {
  SplitMix64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double v = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<double>(rng.index(12)) - 6);
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(3.0), "3");
  EXPECT_EQ(error_of([] { format_number(INFINITY); }), ErrorKind::kValidation);
}

TEST(Interchange, DetectionsRoundTrip) {
  const std::vector<Detection> dets{det("a", {0.5, 1, 10.25, 12}, 0.1),
                                    det("b c", {1, 2, 3, 4}, 1.0 / 3, "cat \"x\"")};
  const auto text = write_detections_jsonl(dets);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  EXPECT_EQ(parse_detections_jsonl(text), dets);
  EXPECT_TRUE(parse_detections_jsonl("").empty());
  EXPECT_EQ(error_of([] { parse_detections_jsonl("{\"item_id\":\"a\"}\n"); }), ErrorKind::kParse);
}

TEST(Interchange, TracksRoundTrip) {
  const std::vector<TrackedBox> tracks{tracked(0, 1, {0, 0, 4, 4}), tracked(3, 12, {1, 1, 5, 5})};
  const auto back = parse_tracks_jsonl(write_tracks_jsonl(tracks));
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back[i].frame_index, tracks[i].frame_index);
    EXPECT_EQ(back[i].track_id, tracks[i].track_id);
    EXPECT_EQ(back[i].detection, tracks[i].detection);
  }
}

TEST(Interchange, CurveCsv) {
  const auto text = write_curve_csv({kAnchor, kTest});
  EXPECT_EQ(text.substr(0, text.find('\n')), "label,qp,rate,accuracy");
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(text.find("anchor,40,100,0.4\n"), text.find('\n') + 1);
  const auto back = parse_curve_csv(text);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].label, "anchor");
  ASSERT_EQ(back[1].points.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(back[1].points[i].rate, kTest.points[i].rate);
    EXPECT_EQ(back[1].points[i].accuracy, kTest.points[i].accuracy);
    EXPECT_EQ(back[1].points[i].qp, kTest.points[i].qp);
  }
  EXPECT_EQ(error_of([] { parse_curve_csv("label,qp,rate,accuracy\nx,1,abc,0.5\n"); }),
            ErrorKind::kParse);
}

}  // namespace
}  // namespace vcmbench
