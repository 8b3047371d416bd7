#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vcmbench/bridge/backend.hpp"
#include "vcmbench/bridge/tracker.hpp"
#include "vcmbench/codec/codec.hpp"
#include "vcmbench/dataset/dataset.hpp"
#include "vcmbench/harness/config.hpp"
#include "vcmbench/metrics/bdrate.hpp"

namespace vcmbench {

// A qp point is dropped once more than this share of its items fail.
inline constexpr double kMaxItemFailureShare = 0.10;

struct ItemOutcome {
  std::string item_id;
  std::uint64_t codec_bits = 0;
  std::uint64_t sidecar_bits = 0;
  std::string stream_digest;  // sha256 of the coded bytes
  double encode_ms = 0.0;
  double decode_ms = 0.0;
  double infer_ms = 0.0;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
  std::uint64_t bits() const { return codec_bits + sidecar_bits; }
};

struct QpOutcome {
  int qp = 0;
  std::vector<ItemOutcome> items;  // dataset order
  std::vector<Detection> detections;
  std::vector<TrackedBox> tracks;  // mota runs only
  std::optional<RatePoint> point;
  std::string failure;  // why `point` is missing

  std::size_t failed_items() const;
};

struct RunRecord {
  RunConfig config;
  std::string tool_version;
  std::string rate_unit;  // "bpp" or "kbps"
  std::size_t item_count = 0;

  // Local pipeline.
  std::optional<double> baseline_accuracy;
  std::vector<Detection> baseline_detections;
  std::vector<TrackedBox> baseline_tracks;

  // Remote and split pipelines, in descending qp order.
  std::vector<QpOutcome> sweep;
  RateAccuracyCurve curve;
};

LoadedDataset load_dataset(const DatasetConfig& config);
std::unique_ptr<Backend> make_backend(const BackendConfig& config);
std::unique_ptr<Codec> make_codec(const CodecConfig& config);

// Task accuracy of detections against the dataset's ground truth: mAP, or
// MOTA after running the frame-to-frame tracker over items in order.
// `tracks` receives the tracker output for mota.
double evaluate_accuracy(EvaluatorKind evaluator, const DatasetHandle& dataset,
                         const std::vector<Detection>& detections,
                         std::vector<TrackedBox>* tracks = nullptr);

// Whole model on pristine inputs; no rate.
RunRecord run_local(const RunConfig& config);
// Pixels through the codec, whole model on the decoded frames.
RunRecord run_remote(const RunConfig& config);
// part1 on pristine inputs, features packed and coded, part2 on the
// decoded features. Packing sidecar bits count toward the rate.
RunRecord run_split(const RunConfig& config);

RunRecord run_pipeline(const RunConfig& config);

// Writes the run directory under config.output_dir:
//   config.yaml, run.json, curve.csv, report.svg,
//   detections/<local|qp_NN>.jsonl and, for mota, tracks/<...>.jsonl.
// Files other than run.json depend only on the configuration.
void write_run_directory(const RunRecord& record);

}  // namespace vcmbench
