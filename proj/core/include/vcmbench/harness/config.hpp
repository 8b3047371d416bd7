#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vcmbench/codec/codec.hpp"
#include "vcmbench/codec/external_codec.hpp"
#include "vcmbench/dataset/synthetic.hpp"
#include "vcmbench/dataset/yuv_io.hpp"

namespace vcmbench {

inline constexpr int kConfigVersion = 1;

enum class PipelineKind { kLocal, kRemote, kSplit };
enum class EvaluatorKind { kMap, kMota };
enum class DatasetSource { kSynthetic, kImageSet, kVideoSequence };

std::string_view to_string(PipelineKind kind);
std::string_view to_string(EvaluatorKind kind);

struct DatasetConfig {
  DatasetSource source = DatasetSource::kSynthetic;
  SyntheticSceneSpec synthetic;
  std::filesystem::path root;         // image_set
  std::filesystem::path annotations;  // image_set
  std::filesystem::path yuv;          // video_sequence
  FrameGeometry geometry;             // video_sequence
  double frame_rate = 30.0;           // video_sequence
  std::filesystem::path tracks;       // video_sequence
};

struct CodecConfig {
  std::string kind = "reference";  // reference | null | external
  std::vector<int> qps{4, 16, 28, 40};
  TemporalMode temporal_mode = TemporalMode::kAllIntra;
  int intra_period = 32;
  ExternalCodecConfig external;

  CodecParams params(int qp) const { return {qp, temporal_mode, intra_period}; }
};

struct BackendConfig {
  std::string builtin;  // "synthetic"
  std::string command;  // child process speaking the backend protocol
  double timeout_seconds = 60.0;
};

struct RunConfig {
  int config_version = kConfigVersion;
  std::string label;
  PipelineKind pipeline = PipelineKind::kLocal;
  DatasetConfig dataset;
  CodecConfig codec;
  BackendConfig backend;
  std::string split_tag;
  int feature_bit_depth = 10;
  EvaluatorKind evaluator = EvaluatorKind::kMap;
  std::filesystem::path output_dir = "vcmbench-run";
  int workers = 1;
  bool cache = false;

  std::string source_text;  // the YAML as read, for the run snapshot

  // Cross-field checks: split needs split_tag, mota needs a tracking
  // dataset, exactly one backend, and so on. Throws kValidation.
  void validate() const;
};

// Relative paths in the document resolve against `base_dir`. Unknown keys,
// wrong types and a missing or unsupported config_version raise
// kValidation naming the key.
RunConfig parse_run_config(std::string_view yaml_text,
                           const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

// YAML document that parse_run_config reads back to the same settings.
std::string render_run_config(const RunConfig& config);

// The synthetic block on its own, as used by `gen-synth`.
SyntheticSceneSpec parse_synthetic_spec(std::string_view yaml_text);

}  // namespace vcmbench
