#pragma once

#include <filesystem>
#include <string>

#include "vcmbench/dataset/synthetic.hpp"
#include "vcmbench/harness/config.hpp"

namespace vcmbench::test {

// End-to-end fixture: 20 items of 64x64 with 3 low-contrast rects under
// heavy noise, so coarse quantization moves the synthetic detector.
SyntheticSceneSpec degradation_scene();
// 20 items, 3 rects, contrast 0.9, noise 0.02.
SyntheticSceneSpec clean_scene();

// Builtin synthetic backend, reference codec, qps {4, 16, 28, 40}, mAP.
RunConfig synthetic_run(PipelineKind pipeline, const SyntheticSceneSpec& scene,
                        const std::filesystem::path& output_dir, bool cache = false,
                        int workers = 1);

// Directory of the checked-in test data (fake backends, codec scripts).
std::filesystem::path data_dir();
// The vcmbench executable, or empty when the tools were not built.
std::filesystem::path cli_path();

}  // namespace vcmbench::test
