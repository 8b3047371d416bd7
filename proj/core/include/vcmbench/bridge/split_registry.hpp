#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vcmbench {

struct SplitPointSpec {
  std::string model_name;
  std::string tag;
  int tensor_count = 1;

  friend bool operator==(const SplitPointSpec&, const SplitPointSpec&) = default;
};

// Known split points and the number of tensors each emits.
class SplitRegistry {
 public:
  // Throws kValidation on a duplicate (model, tag) or tensor_count < 1.
  void add(SplitPointSpec spec);

  std::optional<SplitPointSpec> find(std::string_view model_name,
                                     std::string_view tag) const;

  // Every entry carrying `tag`, in insertion order.
  std::vector<SplitPointSpec> with_tag(std::string_view tag) const;

  const std::vector<SplitPointSpec>& entries() const { return entries_; }

 private:
  std::vector<SplitPointSpec> entries_;
};

// Split points of the supported detector, tracker and pose models, plus the
// built-in synthetic backend.
const SplitRegistry& builtin_split_registry();

}  // namespace vcmbench
