#pragma once

// Built-in invariant and oracle suite behind `fracsis validate`.

#include <iosfwd>
#include <string>
#include <vector>

namespace fracsis {

struct ValidationOptions {
  double conservation_tol = 1e-9;
  /// Perturbs one entry of every L1 weight table before use (mutation check).
  bool corrupt_weights = false;
  /// Seed for the randomized box-invariance draws.
  unsigned long long seed = 20240611ULL;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  bool informational = false;  // reported, never fails the suite
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool all_passed() const;
};

ValidationReport validate(const ValidationOptions& options = {});

/// One line per check: PASS/FAIL/INFO, name, measured vs tolerance, detail.
void print_report(std::ostream& os, const ValidationReport& report);

}  // namespace fracsis
