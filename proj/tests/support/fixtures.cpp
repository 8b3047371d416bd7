#include "fixtures.hpp"

namespace vcmbench::test {

SyntheticSceneSpec degradation_scene() {
  SyntheticSceneSpec s;
  s.width = s.height = 64;
  s.num_items = 20;
  s.rects_per_item = 3;
  s.contrast = 0.32;
  s.noise_amplitude = 0.175;
  s.seed = 1;
  return s;
}

SyntheticSceneSpec clean_scene() {
  SyntheticSceneSpec s;
  s.width = s.height = 64;
  s.num_items = 20;
  s.rects_per_item = 3;
  s.contrast = 0.9;
  s.noise_amplitude = 0.02;
  s.seed = 1;
  return s;
}

RunConfig synthetic_run(PipelineKind pipeline, const SyntheticSceneSpec& scene,
                        const std::filesystem::path& output_dir, bool cache, int workers) {
  RunConfig c;
  c.pipeline = pipeline;
  c.label = pipeline == PipelineKind::kLocal    ? "local"
            : pipeline == PipelineKind::kRemote ? "remote"
                                                : "split";
  c.dataset.source = DatasetSource::kSynthetic;
  c.dataset.synthetic = scene;
  c.codec.kind = "reference";
  c.codec.qps = {4, 16, 28, 40};
  c.backend.builtin = "synthetic";
  if (pipeline == PipelineKind::kSplit) c.split_tag = "s1";
  c.evaluator = EvaluatorKind::kMap;
  c.output_dir = output_dir;
  c.cache = cache;
  c.workers = workers;
  return c;
}

std::filesystem::path data_dir() { return VCMBENCH_TEST_DATA_DIR; }

std::filesystem::path cli_path() {
#ifdef VCMBENCH_CLI_PATH
  return VCMBENCH_CLI_PATH;
#else
  return {};
#endif
}

}  // namespace vcmbench::test
