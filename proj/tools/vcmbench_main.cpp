#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <json.hpp>

#include "vcmbench/bridge/builtin_backend.hpp"
#include "vcmbench/bridge/conformance.hpp"
#include "vcmbench/bridge/process_backend.hpp"
#include "vcmbench/bridge/protocol.hpp"
#include "vcmbench/bridge/tensor_file.hpp"
#include "vcmbench/dataset/digest.hpp"
#include "vcmbench/dataset/synthetic.hpp"
#include "vcmbench/error.hpp"
#include "vcmbench/harness/config.hpp"
#include "vcmbench/harness/pipeline.hpp"
#include "vcmbench/harness/report.hpp"
#include "vcmbench/io.hpp"
#include "vcmbench/metrics/bdrate.hpp"
#include "vcmbench/metrics/interchange.hpp"
#include "vcmbench/packing/packing.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void print_json(const json& j) { std::cout << j.dump() << "\n"; }

int cmd_run(const std::string& config_path, const std::string& output_dir) {
  vcmbench::RunConfig config = vcmbench::load_run_config(config_path);
  if (!output_dir.empty()) config.output_dir = output_dir;
  const vcmbench::RunRecord record = vcmbench::run_pipeline(config);
  vcmbench::write_run_directory(record);

  json summary{{"label", config.label},
               {"pipeline", std::string(vcmbench::to_string(config.pipeline))},
               {"output_dir", config.output_dir.string()}};
  if (record.baseline_accuracy) summary["baseline_accuracy"] = *record.baseline_accuracy;
  json points = json::array();
  for (const auto& q : record.sweep) {
    json p{{"qp", q.qp}};
    if (q.point) {
      p["rate"] = q.point->rate;
      p["accuracy"] = q.point->accuracy;
    } else {
      p["failure"] = q.failure;
    }
    points.push_back(std::move(p));
  }
  if (!record.sweep.empty()) summary["points"] = std::move(points);
  print_json(summary);
  return 0;
}

vcmbench::RateAccuracyCurve single_curve(const std::string& path) {
  auto curves = vcmbench::read_run_curves(path);
  if (curves.size() != 1) {
    vcmbench::fail(vcmbench::ErrorKind::kValidation,
                   path + " holds " + std::to_string(curves.size()) + " curves; expected 1");
  }
  return curves.front();
}

int cmd_bdrate(const std::string& anchor_path, const std::string& test_path) {
  const auto r = vcmbench::bd_rate(single_curve(anchor_path), single_curve(test_path));
  std::string cell = vcmbench::format_bd_cell(r.percent);
  cell.pop_back();
  std::cout << cell << "\n";
  return 0;
}

int cmd_pack(const std::string& tensor_path, const std::string& out_prefix, int bit_depth) {
  const auto set = vcmbench::read_tensor_file(tensor_path);
  const auto packed = vcmbench::pack(set, bit_depth);
  const auto meta = vcmbench::serialize_metadata(packed.metadata);
  vcmbench::write_file_bytes(out_prefix + ".yuv", vcmbench::write_raw_frame(packed.frame));
  vcmbench::write_file_bytes(out_prefix + ".fpmd", meta);
  print_json({{"frame", out_prefix + ".yuv"},
              {"metadata", out_prefix + ".fpmd"},
              {"width", packed.frame.width},
              {"height", packed.frame.height},
              {"bit_depth", packed.frame.bit_depth},
              {"tensors", set.tensors.size()}});
  return 0;
}

int cmd_unpack(const std::string& frame_path, const std::string& meta_path,
               const std::string& out_path) {
  const auto meta = vcmbench::parse_metadata(vcmbench::read_file_bytes(meta_path));
  const vcmbench::FrameGeometry g{meta.frame_width, meta.frame_height, meta.bit_depth,
                                  vcmbench::Chroma::kMono400};
  const auto bytes = vcmbench::read_file_bytes(frame_path);
  if (bytes.size() != vcmbench::raw_frame_bytes(g)) {
    vcmbench::fail(vcmbench::ErrorKind::kCorruption,
                   "frame file holds " + std::to_string(bytes.size()) + " bytes; metadata implies " +
                       std::to_string(vcmbench::raw_frame_bytes(g)));
  }
  const auto set = vcmbench::unpack(vcmbench::read_raw_frame(bytes, g), meta);
  vcmbench::write_tensor_file(out_path, set);
  print_json({{"tensor_file", out_path}, {"tensors", set.tensors.size()}});
  return 0;
}

int cmd_gen_synth(const std::string& spec_path, const std::string& out_dir) {
  const auto spec = vcmbench::parse_synthetic_spec(vcmbench::read_file_text(spec_path));
  const auto data = vcmbench::generate_synthetic_dataset(spec);
  const fs::path dir(out_dir);
  fs::create_directories(dir);

  std::vector<std::uint8_t> all_frames;
  for (const auto& f : data.frames) vcmbench::append_raw_frame(f, all_frames);
  std::string annotations;
  if (spec.is_video()) {
    vcmbench::write_file_bytes(dir / "sequence.yuv", all_frames);
    annotations = vcmbench::write_track_csv(data.handle.ground_truth);
    vcmbench::write_file_text(dir / "tracks.csv", annotations);
  } else {
    std::vector<vcmbench::CocoImage> images;
    for (std::size_t i = 0; i < data.frames.size(); ++i) {
      const auto& item = data.handle.items[i];
      const std::string file = item.id + ".yuv";
      vcmbench::write_file_bytes(dir / file, vcmbench::write_raw_frame(data.frames[i]));
      images.push_back({static_cast<long long>(i + 1), item.id, file, item.width, item.height});
    }
    annotations = vcmbench::write_coco(images, data.handle.ground_truth);
    vcmbench::write_file_text(dir / "annotations.json", annotations);
  }
  print_json({{"output_dir", dir.string()},
              {"items", data.frames.size()},
              {"frames_sha256", vcmbench::sha256_hex(all_frames)},
              {"annotations_sha256", vcmbench::sha256_hex(annotations)}});
  return 0;
}

int cmd_report(const std::vector<std::string>& run_dirs, const std::string& anchor_dir,
               const std::string& out_dir) {
  std::vector<vcmbench::RateAccuracyCurve> curves;
  std::string unit;
  for (const auto& d : run_dirs) {
    for (auto& c : vcmbench::read_run_curves(d)) curves.push_back(std::move(c));
    if (unit.empty()) unit = vcmbench::read_run_rate_unit(d);
  }
  std::optional<vcmbench::RateAccuracyCurve> anchor;
  if (!anchor_dir.empty()) {
    anchor = single_curve(anchor_dir);
    if (unit.empty()) unit = vcmbench::read_run_rate_unit(anchor_dir);
  }
  vcmbench::emit_report(curves, anchor, unit.empty() ? "rate" : unit, out_dir);
  json out{{"output_dir", out_dir}, {"curves", curves.size() + (anchor ? 1 : 0)}};
  if (anchor) {
    json rows = json::array();
    for (const auto& r : vcmbench::bd_table(*anchor, curves)) {
      rows.push_back({{"label", r.label}, {"bd_rate", r.cell()}});
    }
    out["bd"] = std::move(rows);
  }
  print_json(out);
  return 0;
}

int cmd_serve_backend(const std::string& name) {
  if (name != "synthetic") {
    vcmbench::fail(vcmbench::ErrorKind::kValidation, "unknown builtin backend '" + name + "'");
  }
  vcmbench::SyntheticBackend backend;
  vcmbench::serve_backend(backend, std::cin, std::cout);
  return 0;
}

int cmd_conformance(const std::string& command, double tolerance, double timeout_s) {
  std::unique_ptr<vcmbench::Backend> backend;
  if (command == "synthetic") {
    backend = std::make_unique<vcmbench::SyntheticBackend>();
  } else {
    backend = std::make_unique<vcmbench::ProcessBackend>(
        command, std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000)));
  }
  vcmbench::ConformanceOptions options;
  options.box_tolerance = tolerance;
  const auto report = vcmbench::run_conformance(*backend, options);
  std::cout << report.summary();
  return report.passed() ? 0 : 2;
}

int report_error(std::string_view kind, const std::string& message, int code) {
  std::cerr << json{{"error", std::string(kind)}, {"message", message}, {"exit_code", code}}.dump()
            << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vcmbench: rate-accuracy benchmarking for compression-for-machines pipelines"};
  app.set_version_flag("--version", std::string(VCMBENCH_VERSION_STRING));
  app.require_subcommand(1);

  std::string config_path, output_dir;
  auto* run = app.add_subcommand("run", "Run the pipeline described by a YAML config");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--output-dir", output_dir, "override output_dir from the config");

  std::string anchor_csv, test_csv;
  auto* bd = app.add_subcommand("bdrate", "BD-rate of test against anchor, in percent");
  bd->add_option("anchor", anchor_csv, "anchor curve CSV or run directory")->required();
  bd->add_option("test", test_csv, "test curve CSV or run directory")->required();

  std::string tensor_path, pack_out;
  int bit_depth = 10;
  auto* pk = app.add_subcommand("pack", "Pack an FTEN tensor file into a mono frame + sidecar");
  pk->add_option("tensor", tensor_path, "FTEN file")->required();
  pk->add_option("--out", pack_out, "output prefix (writes .yuv and .fpmd)")->required();
  pk->add_option("--bit-depth", bit_depth, "8 or 10")->check(CLI::IsMember({8, 10}));

  std::string frame_path, meta_path, unpack_out;
  auto* up = app.add_subcommand("unpack", "Rebuild an FTEN tensor file from a packed frame");
  up->add_option("frame", frame_path, "raw mono frame")->required();
  up->add_option("metadata", meta_path, "FPMD sidecar")->required();
  up->add_option("--out", unpack_out, "output FTEN file")->required();

  std::string spec_path, synth_out;
  auto* gs = app.add_subcommand("gen-synth", "Generate a synthetic dataset from a YAML spec");
  gs->add_option("spec", spec_path, "spec file")->required();
  gs->add_option("--out", synth_out, "output directory")->required();

  std::vector<std::string> run_dirs;
  std::string anchor_dir, report_out = "report";
  auto* rp = app.add_subcommand("report", "Plot runs and tabulate BD-rates against an anchor");
  rp->add_option("runs", run_dirs, "run directories or curve CSVs")->required();
  rp->add_option("--anchor", anchor_dir, "anchor run directory or curve CSV");
  rp->add_option("--out", report_out, "output directory");

  std::string backend_name;
  auto* sb = app.add_subcommand("serve-backend", "Serve a builtin backend over stdin/stdout");
  sb->add_option("name", backend_name, "builtin backend (synthetic)")->required();

  std::string conformance_cmd;
  double tolerance = 0.0, timeout_s = 60.0;
  auto* cf = app.add_subcommand("conformance", "Check a backend against the session protocol");
  cf->add_option("command", conformance_cmd, "backend command line, or 'synthetic'")->required();
  cf->add_option("--tolerance", tolerance, "allowed full vs split box/score difference");
  cf->add_option("--timeout", timeout_s, "per-request timeout in seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  try {
    if (*run) return cmd_run(config_path, output_dir);
    if (*bd) return cmd_bdrate(anchor_csv, test_csv);
    if (*pk) return cmd_pack(tensor_path, pack_out, bit_depth);
    if (*up) return cmd_unpack(frame_path, meta_path, unpack_out);
    if (*gs) return cmd_gen_synth(spec_path, synth_out);
    if (*rp) return cmd_report(run_dirs, anchor_dir, report_out);
    if (*sb) return cmd_serve_backend(backend_name);
    if (*cf) return cmd_conformance(conformance_cmd, tolerance, timeout_s);
  } catch (const vcmbench::Error& e) {
    return report_error(vcmbench::to_string(e.kind()), e.what(),
                        vcmbench::is_input_error(e.kind()) ? 1 : 2);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), 2);
  }
  return 1;
}
