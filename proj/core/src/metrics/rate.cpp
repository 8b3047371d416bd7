#include "vcmbench/metrics/rate.hpp"

#include <map>

#include "vcmbench/error.hpp"

namespace vcmbench {

double compute_rate(const std::vector<RateRecord>& records, const DatasetHandle& dataset) {
  std::map<std::string, std::uint64_t> bits;
  for (const auto& r : records) bits[r.item_id] += r.bits;

  std::string missing;
  std::size_t missing_count = 0;
  double total_bits = 0.0;
  double total_pixels = 0.0;
  for (const auto& item : dataset.items) {
    const auto it = bits.find(item.id);
    if (it == bits.end()) {
      if (missing_count++ > 0) missing += ", ";
      missing += item.id;
      continue;
    }
    total_bits += static_cast<double>(it->second);
    total_pixels += static_cast<double>(item.width) * item.height;
  }
  if (missing_count > 0) {
    fail(ErrorKind::kIncomplete, std::to_string(missing_count) +
                                     " item(s) have no rate record: " + missing);
  }
  if (dataset.items.empty()) fail(ErrorKind::kValidation, "dataset has no items");

  if (dataset.kind == DatasetKind::kVideoSequence) {
    if (!(dataset.frame_rate > 0.0)) fail(ErrorKind::kValidation, "frame_rate must be > 0");
    return total_bits * dataset.frame_rate /
           (static_cast<double>(dataset.items.size()) * 1000.0);
  }
  return total_bits / total_pixels;
}

}  // namespace vcmbench
