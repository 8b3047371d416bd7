#include "vcmbench/harness/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <json.hpp>
#include <mutex>
#include <thread>

#include "vcmbench/bridge/builtin_backend.hpp"
#include "vcmbench/bridge/process_backend.hpp"
#include "vcmbench/bridge/split_registry.hpp"
#include "vcmbench/bridge/tensor_file.hpp"
#include "vcmbench/codec/external_codec.hpp"
#include "vcmbench/codec/null_codec.hpp"
#include "vcmbench/codec/reference_codec.hpp"
#include "vcmbench/dataset/digest.hpp"
#include "vcmbench/dataset/image_io.hpp"
#include "vcmbench/dataset/synthetic.hpp"
#include "vcmbench/error.hpp"
#include "vcmbench/harness/report.hpp"
#include "vcmbench/io.hpp"
#include "vcmbench/metrics/interchange.hpp"
#include "vcmbench/metrics/map.hpp"
#include "vcmbench/metrics/mota.hpp"
#include "vcmbench/metrics/rate.hpp"
#include "vcmbench/packing/packing.hpp"
#include "vcmbench/process.hpp"

#ifndef VCMBENCH_VERSION_STRING
#define VCMBENCH_VERSION_STRING "0.0.0"
#endif

namespace vcmbench {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Broken split contract: aborts the whole run instead of one item.
class ContractViolation : public Error {
 public:
  explicit ContractViolation(const std::string& message) : Error(ErrorKind::kBackend, message) {}
};

struct Worker {
  std::unique_ptr<Backend> backend;
  TempDir dir{"vcmbench-worker"};
};

// Each worker owns one backend session and one scratch directory. Items are
// handed out by index; results land in caller-owned slots so output order
// never depends on scheduling.
class WorkerPool {
 public:
  WorkerPool(const BackendConfig& config, int count) : config_(config) {
    for (int i = 0; i < count; ++i) {
      auto w = std::make_unique<Worker>();
      w->backend = make_backend(config_);
      workers_.push_back(std::move(w));
    }
  }

  Backend& front() { return *workers_.front()->backend; }

  void for_each(std::size_t count, const std::function<void(Worker&, std::size_t)>& fn) {
    std::atomic<std::size_t> next{0};
    std::exception_ptr fatal;
    std::mutex fatal_mutex;
    auto body = [&](Worker& w) {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          if (!w.backend) w.backend = make_backend(config_);
          fn(w, i);
        } catch (...) {
          std::lock_guard lock(fatal_mutex);
          if (!fatal) fatal = std::current_exception();
          next.store(count);
          return;
        }
      }
    };
    if (workers_.size() == 1) {
      body(*workers_.front());
    } else {
      std::vector<std::thread> threads;
      for (auto& w : workers_) threads.emplace_back(body, std::ref(*w));
      for (auto& t : threads) t.join();
    }
    if (fatal) std::rethrow_exception(fatal);
  }

 private:
  BackendConfig config_;
  std::vector<std::unique_ptr<Worker>> workers_;
};

// Runs one item stage, turning ordinary errors into an item failure. A
// dead backend session is dropped so the worker starts a fresh one.
template <typename F>
void guarded(Worker& w, ItemOutcome& out, F&& f) {
  try {
    f();
  } catch (const ContractViolation&) {
    throw;
  } catch (const Error& e) {
    out.error = std::string(to_string(e.kind())) + ": " + e.what();
    if (e.kind() == ErrorKind::kSession || e.kind() == ErrorKind::kProtocol) w.backend.reset();
  }
}

std::string codec_cache_key(const CodecConfig& codec, const CodecParams& params,
                            const StreamInfo& info, std::span<const PlanarFrame> frames) {
  std::string material = "vcmbench-stream-v1|" + codec.kind + "|";
  if (codec.kind == "external") {
    material += codec.external.encode_cmd + "|" + codec.external.decode_cmd + "|";
  }
  material += std::to_string(params.qp) + "|" + std::string(to_string(params.temporal_mode)) +
              "|" + std::to_string(params.intra_period) + "|" + format_number(info.fps) + "|";
  std::vector<std::uint8_t> bytes(material.begin(), material.end());
  for (const auto& f : frames) {
    const std::string g = std::to_string(f.width) + "x" + std::to_string(f.height) + "x" +
                          std::to_string(f.bit_depth) + "x" +
                          std::to_string(static_cast<int>(f.chroma)) + "|";
    bytes.insert(bytes.end(), g.begin(), g.end());
    append_raw_frame(f, bytes);
  }
  return sha256_hex(bytes);
}

// Encodes through the on-disk cache when one is configured. Codecs are
// deterministic, so a hit returns exactly what encoding would.
std::vector<std::uint8_t> encode_stream(Codec& codec, const RunConfig& config,
                                        std::span<const PlanarFrame> frames,
                                        const CodecParams& params, const StreamInfo& info) {
  if (!config.cache) return codec.encode(frames, params, info);
  const auto dir = config.output_dir / "cache";
  const auto path = dir / (codec_cache_key(config.codec, params, info, frames) + ".bin");
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) return read_file_bytes(path);
  auto stream = codec.encode(frames, params, info);
  std::filesystem::create_directories(dir, ec);
  const auto tmp = path.string() + ".tmp" +
                   std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  write_file_bytes(tmp, stream);
  std::filesystem::rename(tmp, path, ec);
  return stream;
}

std::vector<Detection> with_item_id(std::vector<Detection> dets, const std::string& id) {
  for (auto& d : dets) d.item_id = id;
  return dets;
}

struct Prepared {
  LoadedDataset data;
  RunRecord record;
  BackendCapabilities caps;
};

void check_task(const RunConfig& config, const BackendCapabilities& caps) {
  const Task task = config.evaluator == EvaluatorKind::kMota ? Task::kTracking : Task::kDetection;
  if (!caps.supports(task)) {
    fail(ErrorKind::kUnsupported,
         "backend does not support the " + std::string(to_string(task)) + " task");
  }
}

RunRecord new_record(const RunConfig& config, const LoadedDataset& data) {
  RunRecord r;
  r.config = config;
  r.tool_version = VCMBENCH_VERSION_STRING;
  r.rate_unit = data.handle.kind == DatasetKind::kVideoSequence ? "kbps" : "bpp";
  r.item_count = data.handle.items.size();
  r.curve.label = config.label;
  return r;
}

std::vector<int> sweep_order(const CodecConfig& codec) {
  std::vector<int> qps = codec.qps;
  std::sort(qps.rbegin(), qps.rend());
  return qps;
}

// Per-frame bits of a sequence stream: the container's own split when it
// has one, otherwise an even share with the remainder on the first frames.
std::vector<std::uint64_t> split_stream_bits(const Codec& codec,
                                             std::span<const std::uint8_t> stream,
                                             std::size_t frames) {
  if (auto bits = codec.frame_bits(stream); bits && bits->size() == frames) return *bits;
  const std::uint64_t total = 8ull * stream.size();
  std::vector<std::uint64_t> out(frames, total / frames);
  for (std::size_t i = 0; i < total % frames; ++i) out[i] += 1;
  return out;
}

// Aggregates one qp point from per-item outcomes.
void finish_point(QpOutcome& q, const RunConfig& config, const DatasetHandle& dataset) {
  std::stable_sort(q.detections.begin(), q.detections.end(), [](const Detection& a, const Detection& b) {
    return a.item_id < b.item_id;
  });
  const std::size_t failed = q.failed_items();
  if (static_cast<double>(failed) > kMaxItemFailureShare * static_cast<double>(q.items.size())) {
    q.failure = std::to_string(failed) + " of " + std::to_string(q.items.size()) +
                " items failed";
    return;
  }
  DatasetHandle ok_items = dataset;
  ok_items.items.clear();
  std::vector<RateRecord> records;
  for (std::size_t i = 0; i < q.items.size(); ++i) {
    if (!q.items[i].ok()) continue;
    ok_items.items.push_back(dataset.items[i]);
    records.push_back({q.items[i].item_id, q.items[i].bits()});
  }
  RatePoint p;
  p.label = config.label;
  p.qp = q.qp;
  p.rate = compute_rate(records, ok_items);
  p.accuracy = evaluate_accuracy(config.evaluator, dataset, q.detections,
                                 config.evaluator == EvaluatorKind::kMota ? &q.tracks : nullptr);
  q.point = p;
}

void assemble_curve(RunRecord& record) {
  for (const auto& q : record.sweep) {
    if (q.point) record.curve.points.push_back(*q.point);
  }
}

// Codes the per-item frames of one qp point. Image sets code each item on
// its own inside the worker; video codes the whole sequence as one stream.
// `consume` receives the decoded frame of item i and fills in detections.
using Consume = std::function<std::vector<Detection>(Worker&, std::size_t, const PlanarFrame&)>;

QpOutcome code_point(WorkerPool& pool, Codec& codec, const RunConfig& config,
                     const LoadedDataset& data, const std::vector<PlanarFrame>& inputs,
                     const std::vector<std::uint64_t>& sidecar_bits, int qp,
                     const Consume& consume) {
  const auto& items = data.handle.items;
  QpOutcome q;
  q.qp = qp;
  q.items.resize(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    q.items[i].item_id = items[i].id;
    if (!sidecar_bits.empty()) q.items[i].sidecar_bits = sidecar_bits[i];
  }
  std::vector<std::vector<Detection>> dets(items.size());
  const CodecParams params = config.codec.params(qp);
  const double fps = data.handle.kind == DatasetKind::kVideoSequence ? data.handle.frame_rate : 30.0;

  if (data.handle.kind == DatasetKind::kVideoSequence) {
    std::vector<PlanarFrame> decoded;
    try {
      StreamInfo info{common_geometry(inputs), static_cast<int>(inputs.size()), fps, qp};
      auto t0 = Clock::now();
      const auto stream = encode_stream(codec, config, inputs, params, info);
      const double enc_ms = ms_since(t0);
      t0 = Clock::now();
      decoded = codec.decode(stream, info);
      const double dec_ms = ms_since(t0);
      if (decoded.size() != inputs.size()) {
        fail(ErrorKind::kValidation, "decoder returned " + std::to_string(decoded.size()) +
                                         " frames, expected " + std::to_string(inputs.size()));
      }
      const auto bits = split_stream_bits(codec, stream, inputs.size());
      const std::string digest = sha256_hex(stream);
      for (std::size_t i = 0; i < items.size(); ++i) {
        q.items[i].codec_bits = bits[i];
        q.items[i].stream_digest = digest;
        q.items[i].encode_ms = enc_ms / static_cast<double>(items.size());
        q.items[i].decode_ms = dec_ms / static_cast<double>(items.size());
      }
    } catch (const Error& e) {
      q.failure = std::string("sequence coding failed: ") + e.what();
      for (auto& it : q.items) it.error = q.failure;
      return q;
    }
    pool.for_each(items.size(), [&](Worker& w, std::size_t i) {
      guarded(w, q.items[i], [&] {
        const auto t0 = Clock::now();
        dets[i] = consume(w, i, decoded[i]);
        q.items[i].infer_ms = ms_since(t0);
      });
    });
  } else {
    pool.for_each(items.size(), [&](Worker& w, std::size_t i) {
      guarded(w, q.items[i], [&] {
        const std::span<const PlanarFrame> one(&inputs[i], 1);
        const StreamInfo info{FrameGeometry::of(inputs[i]), 1, fps, qp};
        auto t0 = Clock::now();
        const auto stream = encode_stream(codec, config, one, params, info);
        q.items[i].encode_ms = ms_since(t0);
        q.items[i].codec_bits = 8ull * stream.size();
        q.items[i].stream_digest = sha256_hex(stream);
        t0 = Clock::now();
        auto decoded = codec.decode(stream, info);
        q.items[i].decode_ms = ms_since(t0);
        if (decoded.size() != 1) {
          fail(ErrorKind::kValidation, "decoder returned " + std::to_string(decoded.size()) +
                                           " frames, expected 1");
        }
        t0 = Clock::now();
        dets[i] = consume(w, i, decoded.front());
        q.items[i].infer_ms = ms_since(t0);
      });
    });
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!q.items[i].ok()) continue;
    auto d = with_item_id(std::move(dets[i]), items[i].id);
    q.detections.insert(q.detections.end(), d.begin(), d.end());
  }
  finish_point(q, config, data.handle);
  return q;
}

std::vector<Detection> infer_frame(Worker& w, const PlanarFrame& frame) {
  const auto path = w.dir.path() / (frame.chroma == Chroma::kMono400 ? "input.pgm" : "input.ppm");
  write_model_input(path, frame);
  return w.backend->infer_full(path);
}

}  // namespace

std::size_t QpOutcome::failed_items() const {
  return static_cast<std::size_t>(
      std::count_if(items.begin(), items.end(), [](const ItemOutcome& i) { return !i.ok(); }));
}

LoadedDataset load_dataset(const DatasetConfig& config) {
  switch (config.source) {
    case DatasetSource::kSynthetic:
      return generate_synthetic_dataset(config.synthetic);
    case DatasetSource::kImageSet:
      return load_image_set(config.root, config.annotations);
    case DatasetSource::kVideoSequence:
      return load_video_sequence(config.yuv, config.geometry, config.frame_rate, config.tracks);
  }
  fail(ErrorKind::kValidation, "unknown dataset source");
}

std::unique_ptr<Backend> make_backend(const BackendConfig& config) {
  if (!config.command.empty()) {
    return std::make_unique<ProcessBackend>(
        config.command, std::chrono::milliseconds(
                            static_cast<long long>(std::llround(config.timeout_seconds * 1000))));
  }
  if (config.builtin == "synthetic") return std::make_unique<SyntheticBackend>();
  fail(ErrorKind::kValidation, "unknown builtin backend '" + config.builtin + "'");
}

std::unique_ptr<Codec> make_codec(const CodecConfig& config) {
  if (config.kind == "reference") return std::make_unique<ReferenceCodec>();
  if (config.kind == "null") return std::make_unique<NullCodec>();
  if (config.kind == "external") return std::make_unique<ExternalCodec>(config.external);
  fail(ErrorKind::kValidation, "unknown codec '" + config.kind + "'");
}

double evaluate_accuracy(EvaluatorKind evaluator, const DatasetHandle& dataset,
                         const std::vector<Detection>& detections,
                         std::vector<TrackedBox>* tracks) {
  if (evaluator == EvaluatorKind::kMap) return evaluate_map(detections, dataset.ground_truth).map;

  std::vector<std::vector<Detection>> frames(dataset.items.size());
  for (const auto& d : detections) {
    const auto it = std::lower_bound(
        dataset.items.begin(), dataset.items.end(), d.item_id,
        [](const DatasetItem& item, const std::string& id) { return item.id < id; });
    if (it == dataset.items.end() || it->id != d.item_id) {
      fail(ErrorKind::kValidation, "detection for unknown item '" + d.item_id + "'");
    }
    frames[static_cast<std::size_t>(it - dataset.items.begin())].push_back(d);
  }
  std::vector<TrackedBox> tracked = track_detections(frames);
  const auto result = evaluate_mota(tracked, dataset.ground_truth);
  if (!result) fail(ErrorKind::kValidation, "MOTA is undefined without ground truth boxes");
  if (tracks) *tracks = std::move(tracked);
  return result->mota;
}

RunRecord run_local(const RunConfig& config) {
  config.validate();
  const LoadedDataset data = load_dataset(config.dataset);
  RunRecord record = new_record(config, data);
  WorkerPool pool(config.backend, config.workers);
  check_task(config, pool.front().hello());

  const auto& items = data.handle.items;
  std::vector<std::vector<Detection>> dets(items.size());
  pool.for_each(items.size(), [&](Worker& w, std::size_t i) {
    dets[i] = with_item_id(infer_frame(w, data.frames[i]), items[i].id);
  });
  for (auto& d : dets) {
    record.baseline_detections.insert(record.baseline_detections.end(), d.begin(), d.end());
  }
  record.baseline_accuracy = evaluate_accuracy(
      config.evaluator, data.handle, record.baseline_detections,
      config.evaluator == EvaluatorKind::kMota ? &record.baseline_tracks : nullptr);
  return record;
}

RunRecord run_remote(const RunConfig& config) {
  config.validate();
  const LoadedDataset data = load_dataset(config.dataset);
  RunRecord record = new_record(config, data);
  WorkerPool pool(config.backend, config.workers);
  check_task(config, pool.front().hello());
  auto codec = make_codec(config.codec);

  for (int qp : sweep_order(config.codec)) {
    record.sweep.push_back(code_point(
        pool, *codec, config, data, data.frames, {}, qp,
        [](Worker& w, std::size_t, const PlanarFrame& decoded) { return infer_frame(w, decoded); }));
  }
  assemble_curve(record);
  return record;
}

RunRecord run_split(const RunConfig& config) {
  config.validate();
  const LoadedDataset data = load_dataset(config.dataset);
  RunRecord record = new_record(config, data);
  WorkerPool pool(config.backend, config.workers);
  const BackendCapabilities caps = pool.front().hello();
  check_task(config, caps);
  const SplitPointSpec* spec = caps.split(config.split_tag);
  if (!spec) {
    fail(ErrorKind::kUnsupported,
         "backend does not offer split_tag '" + config.split_tag + "'");
  }
  if (const auto known = builtin_split_registry().find(spec->model_name, spec->tag);
      known && known->tensor_count != spec->tensor_count) {
    throw ContractViolation("split_tag '" + config.split_tag + "': backend declares " +
                            std::to_string(spec->tensor_count) + " tensors, registry expects " +
                            std::to_string(known->tensor_count));
  }
  const int expected = spec->tensor_count;
  auto codec = make_codec(config.codec);

  // part1 and packing do not depend on qp; run them once.
  const auto& items = data.handle.items;
  std::vector<PackedFrameSet> packed(items.size());
  std::vector<std::string> part1_error(items.size());
  pool.for_each(items.size(), [&](Worker& w, std::size_t i) {
    ItemOutcome scratch;
    guarded(w, scratch, [&] {
      const auto image = w.dir.path() / "input.ppm";
      const auto tensor = w.dir.path() / "part1.ften";
      write_model_input(image, data.frames[i]);
      const auto shapes = w.backend->part1(image, config.split_tag, tensor);
      FeatureTensorSet set = read_tensor_file(tensor);
      set.split_tag = config.split_tag;
      if (static_cast<int>(set.tensors.size()) != expected ||
          static_cast<int>(shapes.size()) != expected) {
        throw ContractViolation("split_tag '" + config.split_tag + "': part1 for " +
                                items[i].id + " produced " +
                                std::to_string(set.tensors.size()) + " tensors, expected " +
                                std::to_string(expected));
      }
      if (shapes != set.shapes()) {
        fail(ErrorKind::kProtocol, "part1 reported shapes that differ from its tensor file");
      }
      packed[i] = pack(set, config.feature_bit_depth);
    });
    part1_error[i] = scratch.error;
  });

  std::vector<PlanarFrame> inputs(items.size());
  std::vector<std::uint64_t> sidecar(items.size(), 0);
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!part1_error[i].empty()) {
      // Stand-in so the sequence keeps its shape; the item stays failed.
      inputs[i] = i > 0 ? inputs[i - 1] : PlanarFrame::make(4, 4, config.feature_bit_depth,
                                                            Chroma::kMono400);
      continue;
    }
    inputs[i] = packed[i].frame;
    sidecar[i] = 8ull * serialize_metadata(packed[i].metadata).size();
  }

  for (int qp : sweep_order(config.codec)) {
    QpOutcome q = code_point(
        pool, *codec, config, data, inputs, sidecar, qp,
        [&](Worker& w, std::size_t i, const PlanarFrame& decoded) -> std::vector<Detection> {
          if (!part1_error[i].empty()) fail(ErrorKind::kBackend, part1_error[i]);
          const FeatureTensorSet set = unpack(decoded, packed[i].metadata, config.split_tag);
          const auto tensor = w.dir.path() / "part2.ften";
          write_tensor_file(tensor, set);
          return w.backend->part2(tensor, config.split_tag, items[i].width, items[i].height);
        });
    record.sweep.push_back(std::move(q));
  }
  // Items whose part1 failed never reached the codec.
  for (auto& q : record.sweep) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (!part1_error[i].empty()) q.items[i].error = part1_error[i];
    }
  }
  assemble_curve(record);
  return record;
}

RunRecord run_pipeline(const RunConfig& config) {
  switch (config.pipeline) {
    case PipelineKind::kLocal: return run_local(config);
    case PipelineKind::kRemote: return run_remote(config);
    case PipelineKind::kSplit: return run_split(config);
  }
  fail(ErrorKind::kValidation, "unknown pipeline");
}

void write_run_directory(const RunRecord& record) {
  using nlohmann::json;
  const auto& config = record.config;
  const auto dir = config.output_dir;
  std::filesystem::create_directories(dir / "detections");
  write_file_text(dir / "config.yaml", config.source_text.empty() ? render_run_config(config)
                                                                   : config.source_text);

  const bool mota = config.evaluator == EvaluatorKind::kMota;
  if (mota) std::filesystem::create_directories(dir / "tracks");

  json run;
  run["tool"] = "vcmbench";
  run["tool_version"] = record.tool_version;
  run["label"] = config.label;
  run["pipeline"] = std::string(to_string(config.pipeline));
  run["evaluator"] = std::string(to_string(config.evaluator));
  run["rate_unit"] = record.rate_unit;
  run["items"] = record.item_count;
  run["color_conversion"] = "BT.709 limited range, nearest-neighbour chroma";
  if (config.pipeline == PipelineKind::kSplit) {
    run["split_tag"] = config.split_tag;
    run["feature_bit_depth"] = config.feature_bit_depth;
    run["feature_quantization"] = "joint min-max over the tensor set";
    run["feature_layout"] = "near-square channel grids stacked vertically";
  }

  if (record.baseline_accuracy) {
    run["baseline_accuracy"] = *record.baseline_accuracy;
    write_file_text(dir / "detections" / "local.jsonl",
                    write_detections_jsonl(record.baseline_detections));
    if (mota) write_file_text(dir / "tracks" / "local.jsonl", write_tracks_jsonl(record.baseline_tracks));
  }

  json sweep = json::array();
  for (const auto& q : record.sweep) {
    char name[32];
    std::snprintf(name, sizeof name, "qp_%02d.jsonl", q.qp);
    write_file_text(dir / "detections" / name, write_detections_jsonl(q.detections));
    if (mota) write_file_text(dir / "tracks" / name, write_tracks_jsonl(q.tracks));
    json p;
    p["qp"] = q.qp;
    if (q.point) {
      p["rate"] = q.point->rate;
      p["accuracy"] = q.point->accuracy;
    } else {
      p["failure"] = q.failure;
    }
    std::uint64_t total_bits = 0;
    json items = json::array();
    for (const auto& it : q.items) {
      json j{{"item_id", it.item_id},
             {"bits", it.bits()},
             {"codec_bits", it.codec_bits},
             {"sidecar_bits", it.sidecar_bits},
             {"stream_sha256", it.stream_digest},
             {"encode_ms", it.encode_ms},
             {"decode_ms", it.decode_ms},
             {"infer_ms", it.infer_ms}};
      if (!it.ok()) j["error"] = it.error;
      if (it.ok()) total_bits += it.bits();
      items.push_back(std::move(j));
    }
    p["total_bits"] = total_bits;
    p["failed_items"] = q.failed_items();
    p["items"] = std::move(items);
    sweep.push_back(std::move(p));
  }
  run["sweep"] = std::move(sweep);
  write_file_text(dir / "run.json", run.dump(2) + "\n");

  if (config.pipeline != PipelineKind::kLocal) {
    write_file_text(dir / "curve.csv", write_curve_csv({record.curve}));
    write_file_text(dir / "report.svg", render_rate_accuracy_svg({record.curve}, record.rate_unit));
  }
}

}  // namespace vcmbench
