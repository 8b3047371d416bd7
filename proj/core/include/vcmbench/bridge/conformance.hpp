#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vcmbench/bridge/backend.hpp"

namespace vcmbench {

struct ConformanceOptions {
  // Largest tolerated difference between infer_full and part2(part1(.))
  // box corners and scores. Built-in backends must agree exactly.
  double box_tolerance = 0.0;
  int image_size = 64;
  int image_count = 3;
};

struct ConformanceCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ConformanceReport {
  std::vector<ConformanceCheck> checks;

  bool passed() const;
  std::string summary() const;  // one "PASS|FAIL name: detail" line per check
};

// Exercises a backend session: handshake contents, split registry counts,
// part1 tensor files against the declared counts, infer_full versus
// part2(part1(.)), the unknown_split error, and, for process backends,
// recovery from malformed request lines. Test images are synthetic scenes
// written to a private temp directory.
ConformanceReport run_conformance(Backend& backend, const ConformanceOptions& options = {});

}  // namespace vcmbench
