#pragma once

#include <string>
#include <vector>

#include "vcmbench/codec/codec.hpp"
#include "vcmbench/dataset/frame.hpp"

namespace vcmbench::test {

// Inputs of the golden bitstream cases. The generators mirror
// tests/oracles/reference_codec_oracle.py sample for sample.
struct GoldenCase {
  std::string name;
  std::vector<PlanarFrame> frames;
  TemporalMode mode = TemporalMode::kAllIntra;
  int intra_period = 1;
};

struct GoldenDigest {
  const char* name;
  int qp;
  const char* sha256;
};

std::vector<GoldenCase> golden_cases();
const std::vector<GoldenDigest>& golden_digests();
inline constexpr int kGoldenQps[] = {4, 22, 40};

}  // namespace vcmbench::test
