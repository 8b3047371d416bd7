#pragma once

#include <vector>

#include "vcmbench/codec/codec.hpp"
#include "vcmbench/dataset/dataset.hpp"

namespace vcmbench {

// Bits per pixel for image sets, kilobits per second for video. Needs one
// record per dataset item; missing ids raise kIncomplete listing them.
double compute_rate(const std::vector<RateRecord>& records, const DatasetHandle& dataset);

}  // namespace vcmbench
