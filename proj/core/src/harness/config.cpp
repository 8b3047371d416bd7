#include "vcmbench/harness/config.hpp"

#include <algorithm>
#include <set>
#include <yaml-cpp/yaml.h>

#include "vcmbench/error.hpp"
#include "vcmbench/io.hpp"

namespace vcmbench {

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  fail(ErrorKind::kValidation, "config key '" + key + "': " + what);
}

void check_keys(const YAML::Node& node, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!node.IsMap()) bad(where, "expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; })) {
      bad(where.empty() ? key : where + "." + key, "unknown key");
    }
  }
}

template <typename T>
T get(const YAML::Node& node, const std::string& key, const std::string& path, T fallback) {
  const YAML::Node v = node[key];
  if (!v) return fallback;
  try {
    return v.as<T>();
  } catch (const YAML::Exception&) {
    bad(path, "wrong type");
  }
}

template <typename T>
T require(const YAML::Node& node, const std::string& key, const std::string& path) {
  if (!node[key]) bad(path, "missing");
  return get<T>(node, key, path, T{});
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  if (p.empty()) return {};
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

SyntheticSceneSpec synthetic_from(const YAML::Node& n, const std::string& where) {
  check_keys(n, where,
             {"width", "height", "num_items", "rects_per_item", "contrast", "noise_amplitude",
              "seed", "frame_rate", "motion"});
  SyntheticSceneSpec s;
  s.width = get(n, "width", where + ".width", s.width);
  s.height = get(n, "height", where + ".height", s.height);
  s.num_items = get(n, "num_items", where + ".num_items", s.num_items);
  s.rects_per_item = get(n, "rects_per_item", where + ".rects_per_item", s.rects_per_item);
  s.contrast = get(n, "contrast", where + ".contrast", s.contrast);
  s.noise_amplitude = get(n, "noise_amplitude", where + ".noise_amplitude", s.noise_amplitude);
  s.seed = get<std::uint64_t>(n, "seed", where + ".seed", s.seed);
  s.frame_rate = get(n, "frame_rate", where + ".frame_rate", s.frame_rate);
  if (const YAML::Node m = n["motion"]) {
    if (!m.IsSequence()) bad(where + ".motion", "expected a list of [dx, dy] pairs");
    std::vector<Velocity> motion;
    for (const auto& v : m) {
      if (!v.IsSequence() || v.size() != 2) bad(where + ".motion", "expected [dx, dy] pairs");
      try {
        motion.push_back({v[0].as<int>(), v[1].as<int>()});
      } catch (const YAML::Exception&) {
        bad(where + ".motion", "velocities must be integers");
      }
    }
    s.motion = std::move(motion);
  }
  try {
    s.validate();
  } catch (const Error& e) {
    bad(where, e.what());
  }
  return s;
}

Chroma parse_chroma(const std::string& text, const std::string& key) {
  if (text == "yuv420" || text == "yuv_420") return Chroma::kYuv420;
  if (text == "mono" || text == "mono_400" || text == "400") return Chroma::kMono400;
  bad(key, "expected yuv420 or mono, got '" + text + "'");
}

YAML::Node load_yaml(std::string_view text) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    fail(ErrorKind::kParse, std::string("YAML: ") + e.what());
  }
}

}  // namespace

std::string_view to_string(PipelineKind kind) {
  switch (kind) {
    case PipelineKind::kLocal: return "local";
    case PipelineKind::kRemote: return "remote";
    case PipelineKind::kSplit: return "split";
  }
  return "?";
}

std::string_view to_string(EvaluatorKind kind) {
  return kind == EvaluatorKind::kMap ? "map" : "mota";
}

void RunConfig::validate() const {
  if (config_version != kConfigVersion) {
    bad("config_version", "unsupported version " + std::to_string(config_version));
  }
  if (pipeline == PipelineKind::kSplit && split_tag.empty()) {
    bad("split_tag", "required for the split pipeline");
  }
  if (backend.builtin.empty() == backend.command.empty()) {
    bad("backend", "set exactly one of 'builtin' and 'command'");
  }
  if (!backend.builtin.empty() && backend.builtin != "synthetic") {
    bad("backend.builtin", "unknown builtin backend '" + backend.builtin + "'");
  }
  if (!(backend.timeout_seconds > 0.0)) bad("backend.timeout_s", "must be > 0");
  if (feature_bit_depth != 8 && feature_bit_depth != 10) {
    bad("feature_bit_depth", "must be 8 or 10");
  }
  if (workers < 1) bad("workers", "must be >= 1");
  if (pipeline != PipelineKind::kLocal) {
    if (codec.kind != "reference" && codec.kind != "null" && codec.kind != "external") {
      bad("codec.kind", "expected reference, null or external");
    }
    if (codec.qps.empty()) bad("codec.qps", "needs at least one qp");
    std::set<int> seen;
    for (int qp : codec.qps) {
      try {
        codec.params(qp).validate();
      } catch (const Error& e) {
        bad("codec.qps", e.what());
      }
      if (!seen.insert(qp).second) bad("codec.qps", "duplicate qp " + std::to_string(qp));
    }
    if (codec.kind == "external") {
      try {
        codec.external.validate();
      } catch (const Error& e) {
        bad("codec.external", e.what());
      }
    }
  }
  const bool tracking = dataset.source == DatasetSource::kVideoSequence ||
                        (dataset.source == DatasetSource::kSynthetic &&
                         dataset.synthetic.is_video());
  if (evaluator == EvaluatorKind::kMota && !tracking) {
    bad("evaluator", "mota needs a tracking dataset (video with track ids)");
  }
  if (dataset.source == DatasetSource::kImageSet && dataset.annotations.empty()) {
    bad("dataset.annotations", "missing");
  }
  if (dataset.source == DatasetSource::kVideoSequence) {
    if (dataset.yuv.empty()) bad("dataset.yuv", "missing");
    if (dataset.tracks.empty()) bad("dataset.tracks", "missing");
    if (dataset.geometry.width < 1 || dataset.geometry.height < 1) {
      bad("dataset.width", "video geometry must be positive");
    }
    if (!(dataset.frame_rate > 0.0)) bad("dataset.fps", "must be > 0");
  }
}

RunConfig parse_run_config(std::string_view yaml_text, const std::filesystem::path& base_dir) {
  const YAML::Node root = load_yaml(yaml_text);
  if (!root || !root.IsMap()) fail(ErrorKind::kValidation, "config must be a YAML mapping");
  check_keys(root, "",
             {"config_version", "label", "pipeline", "dataset", "codec", "backend", "split_tag",
              "feature_bit_depth", "evaluator", "output_dir", "workers", "cache"});

  RunConfig c;
  c.source_text = std::string(yaml_text);
  c.config_version = require<int>(root, "config_version", "config_version");

  const auto pipeline = require<std::string>(root, "pipeline", "pipeline");
  if (pipeline == "local") c.pipeline = PipelineKind::kLocal;
  else if (pipeline == "remote") c.pipeline = PipelineKind::kRemote;
  else if (pipeline == "split") c.pipeline = PipelineKind::kSplit;
  else bad("pipeline", "expected local, remote or split, got '" + pipeline + "'");

  const YAML::Node ds = root["dataset"];
  if (!ds) bad("dataset", "missing");
  check_keys(ds, "dataset",
             {"kind", "synthetic", "root", "annotations", "yuv", "width", "height", "bit_depth",
              "chroma", "fps", "tracks"});
  const auto kind = require<std::string>(ds, "kind", "dataset.kind");
  if (kind == "synthetic") {
    c.dataset.source = DatasetSource::kSynthetic;
    if (!ds["synthetic"]) bad("dataset.synthetic", "missing");
    c.dataset.synthetic = synthetic_from(ds["synthetic"], "dataset.synthetic");
  } else if (kind == "image_set") {
    c.dataset.source = DatasetSource::kImageSet;
    c.dataset.root = resolve(base_dir, get<std::string>(ds, "root", "dataset.root", "."));
    c.dataset.annotations =
        resolve(base_dir, require<std::string>(ds, "annotations", "dataset.annotations"));
  } else if (kind == "video_sequence") {
    c.dataset.source = DatasetSource::kVideoSequence;
    c.dataset.yuv = resolve(base_dir, require<std::string>(ds, "yuv", "dataset.yuv"));
    c.dataset.tracks = resolve(base_dir, require<std::string>(ds, "tracks", "dataset.tracks"));
    c.dataset.geometry.width = require<int>(ds, "width", "dataset.width");
    c.dataset.geometry.height = require<int>(ds, "height", "dataset.height");
    c.dataset.geometry.bit_depth = get(ds, "bit_depth", "dataset.bit_depth", 8);
    c.dataset.geometry.chroma =
        parse_chroma(get<std::string>(ds, "chroma", "dataset.chroma", "yuv420"), "dataset.chroma");
    c.dataset.frame_rate = require<double>(ds, "fps", "dataset.fps");
  } else {
    bad("dataset.kind", "expected synthetic, image_set or video_sequence, got '" + kind + "'");
  }

  if (const YAML::Node cd = root["codec"]) {
    check_keys(cd, "codec", {"kind", "qps", "temporal_mode", "intra_period", "external"});
    c.codec.kind = get<std::string>(cd, "kind", "codec.kind", c.codec.kind);
    c.codec.qps = get(cd, "qps", "codec.qps", c.codec.qps);
    try {
      c.codec.temporal_mode = parse_temporal_mode(
          get<std::string>(cd, "temporal_mode", "codec.temporal_mode", "all_intra"));
    } catch (const Error& e) {
      bad("codec.temporal_mode", e.what());
    }
    c.codec.intra_period = get(cd, "intra_period", "codec.intra_period", c.codec.intra_period);
    if (const YAML::Node ex = cd["external"]) {
      check_keys(ex, "codec.external", {"encode_cmd", "decode_cmd", "input_format"});
      c.codec.external.encode_cmd =
          require<std::string>(ex, "encode_cmd", "codec.external.encode_cmd");
      c.codec.external.decode_cmd =
          require<std::string>(ex, "decode_cmd", "codec.external.decode_cmd");
      if (ex["input_format"]) {
        c.codec.external.input_format = parse_chroma(
            get<std::string>(ex, "input_format", "codec.external.input_format", ""),
            "codec.external.input_format");
      }
    } else if (c.codec.kind == "external") {
      bad("codec.external", "missing");
    }
  } else if (c.pipeline != PipelineKind::kLocal) {
    bad("codec", "missing");
  }

  const YAML::Node be = root["backend"];
  if (!be) bad("backend", "missing");
  check_keys(be, "backend", {"builtin", "command", "timeout_s"});
  c.backend.builtin = get<std::string>(be, "builtin", "backend.builtin", "");
  c.backend.command = get<std::string>(be, "command", "backend.command", "");
  c.backend.timeout_seconds = get(be, "timeout_s", "backend.timeout_s", 60.0);

  c.label = get<std::string>(root, "label", "label", "");
  if (c.label.empty()) c.label = c.pipeline == PipelineKind::kLocal ? "local" : c.codec.kind;
  c.split_tag = get<std::string>(root, "split_tag", "split_tag", "");
  c.feature_bit_depth = get(root, "feature_bit_depth", "feature_bit_depth", 10);
  const auto evaluator = get<std::string>(root, "evaluator", "evaluator", "map");
  if (evaluator == "map") c.evaluator = EvaluatorKind::kMap;
  else if (evaluator == "mota") c.evaluator = EvaluatorKind::kMota;
  else bad("evaluator", "expected map or mota, got '" + evaluator + "'");
  c.output_dir =
      resolve(base_dir, get<std::string>(root, "output_dir", "output_dir", "vcmbench-run"));
  c.workers = get(root, "workers", "workers", 1);
  c.cache = get(root, "cache", "cache", false);

  c.validate();
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(read_file_text(path), path.parent_path());
}

std::string render_run_config(const RunConfig& c) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  const auto chroma = [](Chroma ch) { return ch == Chroma::kMono400 ? "mono" : "yuv420"; };
  out << YAML::BeginMap;
  out << YAML::Key << "config_version" << YAML::Value << c.config_version;
  out << YAML::Key << "label" << YAML::Value << c.label;
  out << YAML::Key << "pipeline" << YAML::Value << std::string(to_string(c.pipeline));

  out << YAML::Key << "dataset" << YAML::Value << YAML::BeginMap;
  switch (c.dataset.source) {
    case DatasetSource::kSynthetic: {
      const auto& s = c.dataset.synthetic;
      out << YAML::Key << "kind" << YAML::Value << "synthetic";
      out << YAML::Key << "synthetic" << YAML::Value << YAML::BeginMap;
      out << YAML::Key << "width" << YAML::Value << s.width;
      out << YAML::Key << "height" << YAML::Value << s.height;
      out << YAML::Key << "num_items" << YAML::Value << s.num_items;
      out << YAML::Key << "rects_per_item" << YAML::Value << s.rects_per_item;
      out << YAML::Key << "contrast" << YAML::Value << s.contrast;
      out << YAML::Key << "noise_amplitude" << YAML::Value << s.noise_amplitude;
      out << YAML::Key << "seed" << YAML::Value << s.seed;
      out << YAML::Key << "frame_rate" << YAML::Value << s.frame_rate;
      if (s.motion) {
        out << YAML::Key << "motion" << YAML::Value << YAML::BeginSeq;
        for (const auto& v : *s.motion) {
          out << YAML::Flow << YAML::BeginSeq << v.dx << v.dy << YAML::EndSeq;
        }
        out << YAML::EndSeq;
      }
      out << YAML::EndMap;
      break;
    }
    case DatasetSource::kImageSet:
      out << YAML::Key << "kind" << YAML::Value << "image_set";
      out << YAML::Key << "root" << YAML::Value << c.dataset.root.string();
      out << YAML::Key << "annotations" << YAML::Value << c.dataset.annotations.string();
      break;
    case DatasetSource::kVideoSequence:
      out << YAML::Key << "kind" << YAML::Value << "video_sequence";
      out << YAML::Key << "yuv" << YAML::Value << c.dataset.yuv.string();
      out << YAML::Key << "width" << YAML::Value << c.dataset.geometry.width;
      out << YAML::Key << "height" << YAML::Value << c.dataset.geometry.height;
      out << YAML::Key << "bit_depth" << YAML::Value << c.dataset.geometry.bit_depth;
      out << YAML::Key << "chroma" << YAML::Value << chroma(c.dataset.geometry.chroma);
      out << YAML::Key << "fps" << YAML::Value << c.dataset.frame_rate;
      out << YAML::Key << "tracks" << YAML::Value << c.dataset.tracks.string();
      break;
  }
  out << YAML::EndMap;

  out << YAML::Key << "codec" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value << c.codec.kind;
  out << YAML::Key << "qps" << YAML::Value << YAML::Flow << c.codec.qps;
  out << YAML::Key << "temporal_mode" << YAML::Value
      << std::string(to_string(c.codec.temporal_mode));
  out << YAML::Key << "intra_period" << YAML::Value << c.codec.intra_period;
  if (c.codec.kind == "external") {
    out << YAML::Key << "external" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "encode_cmd" << YAML::Value << c.codec.external.encode_cmd;
    out << YAML::Key << "decode_cmd" << YAML::Value << c.codec.external.decode_cmd;
    if (c.codec.external.input_format) {
      out << YAML::Key << "input_format" << YAML::Value << chroma(*c.codec.external.input_format);
    }
    out << YAML::EndMap;
  }
  out << YAML::EndMap;

  out << YAML::Key << "backend" << YAML::Value << YAML::BeginMap;
  if (!c.backend.builtin.empty()) out << YAML::Key << "builtin" << YAML::Value << c.backend.builtin;
  if (!c.backend.command.empty()) out << YAML::Key << "command" << YAML::Value << c.backend.command;
  out << YAML::Key << "timeout_s" << YAML::Value << c.backend.timeout_seconds;
  out << YAML::EndMap;

  if (!c.split_tag.empty()) out << YAML::Key << "split_tag" << YAML::Value << c.split_tag;
  out << YAML::Key << "feature_bit_depth" << YAML::Value << c.feature_bit_depth;
  out << YAML::Key << "evaluator" << YAML::Value << std::string(to_string(c.evaluator));
  out << YAML::Key << "output_dir" << YAML::Value << c.output_dir.string();
  out << YAML::Key << "workers" << YAML::Value << c.workers;
  out << YAML::Key << "cache" << YAML::Value << c.cache;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

SyntheticSceneSpec parse_synthetic_spec(std::string_view yaml_text) {
  const YAML::Node root = load_yaml(yaml_text);
  if (!root || !root.IsMap()) fail(ErrorKind::kValidation, "spec must be a YAML mapping");
  return synthetic_from(root, "spec");
}

}  // namespace vcmbench
