#ifndef RNMS_VALIDATION_HPP
#define RNMS_VALIDATION_HPP

#include <functional>
#include <string>
#include <vector>

namespace rnms {

struct CheckResult {
  std::string name;
  std::string anchor;  // the mathematical statement the check exercises
  bool passed = false;
  /// The check demonstrates a known-bad variant; `passed` means it misbehaved as expected.
  bool expected_divergent = false;
  std::string detail;
  double seconds = 0.0;
};

struct ValidationOptions {
  /// Also run the misprinted Delta_n variant and report its divergence.
  bool misprint_mode = false;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Runs the invariant suite. `on_result` is called as each check finishes.
std::vector<CheckResult> run_validation(const ValidationOptions& options = {},
                                        const std::function<void(const CheckResult&)>& on_result = {});

}  // namespace rnms

#endif  // RNMS_VALIDATION_HPP
