#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace vcmbench {

struct TensorShape {
  int channels = 0;
  int height = 0;
  int width = 0;

  std::size_t size() const {
    return static_cast<std::size_t>(channels) * height * width;
  }
  friend bool operator==(const TensorShape&, const TensorShape&) = default;
};

// Channel-major, then row-major float tensor.
struct FeatureTensor {
  TensorShape shape;
  std::vector<float> values;

  static FeatureTensor zeros(TensorShape shape) {
    return {shape, std::vector<float>(shape.size(), 0.0f)};
  }

  float& at(int c, int y, int x) { return values[index(c, y, x)]; }
  float at(int c, int y, int x) const { return values[index(c, y, x)]; }

  std::size_t index(int c, int y, int x) const {
    return (static_cast<std::size_t>(c) * shape.height + y) * shape.width + x;
  }

  friend bool operator==(const FeatureTensor&, const FeatureTensor&) = default;
};

struct FeatureTensorSet {
  std::string split_tag;
  std::vector<FeatureTensor> tensors;

  std::vector<TensorShape> shapes() const;

  // Dimensions >= 1, value counts match shapes, all values finite.
  // Throws kValidation naming the offending tensor index.
  void validate() const;

  friend bool operator==(const FeatureTensorSet&, const FeatureTensorSet&) = default;
};

}  // namespace vcmbench
