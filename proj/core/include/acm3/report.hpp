#pragma once

// Verification reports and their text/JSON renderings.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace acm3 {

struct VerificationCheck {
  std::string id;
  std::string description;
  /// The identity or statement being checked.
  std::string reference;
  /// Computed quantity for checks against a target value (e.g. a scalar curvature).
  std::optional<double> value;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::size_t points_sampled = 0;
};

/// pass <=> max_residual <= tolerance; non-finite residuals fail.
VerificationCheck make_check(std::string id, std::string description, std::string reference, double residual,
                             double tolerance, std::size_t points, std::optional<double> value = std::nullopt);

struct Conventions {
  std::string wedge;
  std::string matrix_reading;
  std::string quaternion_side;
};

struct Summary {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t total = 0;
};

struct VerificationReport {
  std::string manifold;
  std::size_t n = 1;
  std::uint64_t seed = 0;
  int order = 3;
  Conventions conventions;
  std::vector<VerificationCheck> checks;
  double elapsed_ms = 0.0;

  Summary summary() const;
  bool all_pass() const { return summary().failed == 0; }
  /// Throws std::invalid_argument on a duplicate id.
  void add(VerificationCheck c);
  const VerificationCheck* find(const std::string& id) const;
};

/// Stable key order, floats as %.12e, non-finite numbers as null.
std::string to_json(const VerificationReport& r);
/// One line per check: PASS|FAIL  id  max_residual=%.3e  tol=%.1e  (reference).
std::string to_text(const VerificationReport& r);

}  // namespace acm3
