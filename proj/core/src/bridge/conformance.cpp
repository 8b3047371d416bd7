#include "vcmbench/bridge/conformance.hpp"

#include <cmath>
#include <json.hpp>
#include <set>

#include "vcmbench/bridge/process_backend.hpp"
#include "vcmbench/bridge/split_registry.hpp"
#include "vcmbench/bridge/tensor_file.hpp"
#include "vcmbench/dataset/image_io.hpp"
#include "vcmbench/dataset/synthetic.hpp"
#include "vcmbench/error.hpp"
#include "vcmbench/process.hpp"

namespace vcmbench {

namespace {

using nlohmann::json;

bool same_detections(const std::vector<Detection>& a, const std::vector<Detection>& b,
                     double tol, std::string& why) {
  if (a.size() != b.size()) {
    why = std::to_string(a.size()) + " vs " + std::to_string(b.size()) + " detections";
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::max({std::abs(a[i].box.x_min - b[i].box.x_min),
                               std::abs(a[i].box.y_min - b[i].box.y_min),
                               std::abs(a[i].box.x_max - b[i].box.x_max),
                               std::abs(a[i].box.y_max - b[i].box.y_max),
                               std::abs(a[i].score - b[i].score)});
    if (a[i].category != b[i].category || !(d <= tol)) {
      why = "detection " + std::to_string(i) + " differs";
      return false;
    }
  }
  return true;
}

class Recorder {
 public:
  explicit Recorder(ConformanceReport& report) : report_(report) {}

  template <typename F>
  void check(const std::string& name, F&& body) {
    ConformanceCheck c{name, false, {}};
    try {
      c.passed = body(c.detail);
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail = std::string("threw: ") + e.what();
    }
    report_.checks.push_back(std::move(c));
  }

 private:
  ConformanceReport& report_;
};

}  // namespace

bool ConformanceReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return !checks.empty();
}

std::string ConformanceReport::summary() const {
  std::string out;
  for (const auto& c : checks) {
    out += (c.passed ? "PASS " : "FAIL ") + c.name;
    if (!c.detail.empty()) out += ": " + c.detail;
    out += "\n";
  }
  return out;
}

ConformanceReport run_conformance(Backend& backend, const ConformanceOptions& options) {
  ConformanceReport report;
  Recorder rec(report);
  TempDir dir("vcmbench-conformance");

  SyntheticSceneSpec spec;
  spec.width = spec.height = options.image_size;
  spec.num_items = options.image_count;
  spec.rects_per_item = 2;
  spec.contrast = 0.9;
  spec.noise_amplitude = 0.02;
  spec.seed = 0xC0FFEE;
  const LoadedDataset scenes = generate_synthetic_dataset(spec);
  std::vector<std::filesystem::path> images;
  for (std::size_t i = 0; i < scenes.frames.size(); ++i) {
    images.push_back(dir.path() / ("scene_" + std::to_string(i) + ".ppm"));
    write_model_input(images.back(), scenes.frames[i]);
  }

  BackendCapabilities caps;
  rec.check("handshake", [&](std::string& d) {
    caps = backend.hello();
    if (caps.protocol_version != kProtocolVersion) {
      d = "protocol_version " + std::to_string(caps.protocol_version);
      return false;
    }
    if (caps.tasks.empty()) {
      d = "no tasks advertised";
      return false;
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& s : caps.split_tags) {
      if (s.tensor_count < 1 || !seen.insert({s.model_name, s.tag}).second) {
        d = "bad split entry " + s.model_name + "/" + s.tag;
        return false;
      }
    }
    d = std::to_string(caps.split_tags.size()) + " split tag(s)";
    return true;
  });

  rec.check("registry counts", [&](std::string& d) {
    for (const auto& s : caps.split_tags) {
      const auto known = builtin_split_registry().find(s.model_name, s.tag);
      if (known && known->tensor_count != s.tensor_count) {
        d = s.model_name + "/" + s.tag + " declares " + std::to_string(s.tensor_count) +
            ", registry has " + std::to_string(known->tensor_count);
        return false;
      }
    }
    return true;
  });

  for (const auto& s : caps.split_tags) {
    rec.check("tensor count " + s.tag, [&](std::string& d) {
      for (std::size_t i = 0; i < images.size(); ++i) {
        const auto out = dir.path() / ("t_" + s.tag + ".ften");
        const auto shapes = backend.part1(images[i], s.tag, out);
        const FeatureTensorSet set = read_tensor_file(out);
        if (static_cast<int>(shapes.size()) != s.tensor_count ||
            static_cast<int>(set.tensors.size()) != s.tensor_count) {
          d = "image " + std::to_string(i) + ": response " + std::to_string(shapes.size()) +
              ", file " + std::to_string(set.tensors.size()) + ", declared " +
              std::to_string(s.tensor_count);
          return false;
        }
        if (shapes != set.shapes()) {
          d = "response shapes differ from the tensor file";
          return false;
        }
      }
      d = std::to_string(s.tensor_count) + " tensor(s)";
      return true;
    });

    rec.check("compositionality " + s.tag, [&](std::string& d) {
      std::size_t total = 0;
      for (std::size_t i = 0; i < images.size(); ++i) {
        const auto out = dir.path() / ("c_" + s.tag + ".ften");
        backend.part1(images[i], s.tag, out);
        const auto split = backend.part2(out, s.tag, spec.width, spec.height);
        const auto full = backend.infer_full(images[i]);
        if (!same_detections(full, split, options.box_tolerance, d)) {
          d = "image " + std::to_string(i) + ": " + d;
          return false;
        }
        total += full.size();
      }
      d = std::to_string(total) + " detections agree";
      return true;
    });
  }

  rec.check("unknown split tag", [&](std::string& d) {
    try {
      backend.part1(images.front(), "no-such-split-tag", dir.path() / "u.ften");
    } catch (const BackendError& e) {
      d = "code " + e.code();
      return e.code() == "unknown_split";
    }
    d = "part1 accepted an unknown tag";
    return false;
  });

  if (auto* proc = dynamic_cast<ProcessBackend*>(&backend)) {
    rec.check("malformed requests", [&](std::string& d) {
      for (const std::string line : {"this is not json", "{}", "[1,2,3]",
                                     R"({"type":"no_such_request"})",
                                     R"({"type":"part1","image_path":7})"}) {
        const json resp = json::parse(proc->exchange(line));
        if (resp.value("type", "") != "error" || !resp.contains("code")) {
          d = "no error response for: " + line;
          return false;
        }
      }
      const json again = json::parse(proc->exchange(R"({"type":"hello","protocol_version":1})"));
      if (again.value("type", "") != "hello") {
        d = "session unusable after malformed input";
        return false;
      }
      return true;
    });
  }
  return report;
}

}  // namespace vcmbench
