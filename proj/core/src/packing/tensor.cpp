#include "vcmbench/packing/tensor.hpp"

#include <cmath>

#include "vcmbench/error.hpp"

namespace vcmbench {

std::vector<TensorShape> FeatureTensorSet::shapes() const {
  std::vector<TensorShape> out;
  out.reserve(tensors.size());
  for (const auto& t : tensors) out.push_back(t.shape);
  return out;
}

void FeatureTensorSet::validate() const {
  if (tensors.empty()) fail(ErrorKind::kValidation, "feature tensor set is empty");
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    const auto& t = tensors[i];
    if (t.shape.channels < 1 || t.shape.height < 1 || t.shape.width < 1) {
      fail(ErrorKind::kValidation,
           "tensor " + std::to_string(i) + " has a zero dimension");
    }
    if (t.values.size() != t.shape.size()) {
      fail(ErrorKind::kValidation, "tensor " + std::to_string(i) + " holds " +
                                       std::to_string(t.values.size()) +
                                       " values for shape of " +
                                       std::to_string(t.shape.size()));
    }
    for (float v : t.values) {
      if (!std::isfinite(v)) {
        fail(ErrorKind::kValidation,
             "tensor " + std::to_string(i) + " contains a non-finite value");
      }
    }
  }
}

}  // namespace vcmbench
