#pragma once

// Built-in verification suite behind `bnladder selfcheck`.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bnladder::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckGroup {
  std::string name;
  std::vector<CheckResult> checks;
  bool passed() const noexcept;
};

struct SelfcheckOptions {
  /// Shift the i-th stored zeta oracle constant (see oracle_constant_count)
  /// before checking. Negative control only.
  std::optional<std::size_t> perturb_oracle;
  double perturb_amount = 1e-6;
  /// Skip the 3x3 spectral cross-validation (the slow group).
  bool skip_cross_validation = false;
};

struct SelfcheckSummary {
  std::vector<CheckGroup> groups;
  bool passed() const noexcept;
  std::string to_json() const;
};

/// Stored zeta constants: t, Re and Im for every grid point, in grid order.
std::size_t oracle_constant_count() noexcept;

SelfcheckSummary run_selfcheck(const SelfcheckOptions& options = {});

}  // namespace bnladder::cli
