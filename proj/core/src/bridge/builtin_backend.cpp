#include "vcmbench/bridge/builtin_backend.hpp"

#include "vcmbench/bridge/synthetic_model.hpp"
#include "vcmbench/bridge/tensor_file.hpp"
#include "vcmbench/dataset/image_io.hpp"
#include "vcmbench/error.hpp"

namespace vcmbench {

namespace {

LumaImage load_luma(const std::filesystem::path& image) {
  try {
    return luma_of(read_image(image));
  } catch (const Error& e) {
    throw BackendError("io", e.what());
  }
}

}  // namespace

BackendCapabilities SyntheticBackend::hello() { return synthetic_capabilities(); }

std::vector<Detection> SyntheticBackend::infer_full(const std::filesystem::path& image) {
  const LumaImage luma = load_luma(image);
  return synthetic_part2(synthetic_part1(luma, "s1"), "s1", luma.width, luma.height);
}

std::vector<TensorShape> SyntheticBackend::part1(const std::filesystem::path& image,
                                                 const std::string& split_tag,
                                                 const std::filesystem::path& out_tensor) {
  const FeatureTensorSet set = synthetic_part1(load_luma(image), split_tag);
  try {
    write_tensor_file(out_tensor, set);
  } catch (const Error& e) {
    throw BackendError("io", e.what());
  }
  return set.shapes();
}

std::vector<Detection> SyntheticBackend::part2(const std::filesystem::path& tensor,
                                               const std::string& split_tag,
                                               int image_width, int image_height) {
  FeatureTensorSet set;
  try {
    set = read_tensor_file(tensor);
  } catch (const Error& e) {
    throw BackendError(e.kind() == ErrorKind::kIo ? "io" : "bad_tensor", e.what());
  }
  set.split_tag = split_tag;
  return synthetic_part2(set, split_tag, image_width, image_height);
}

}  // namespace vcmbench
