#pragma once

// Catalog of verification checks and the runner behind the verify tool.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "acm3/canonical.hpp"
#include "acm3/models.hpp"
#include "acm3/report.hpp"

namespace acm3 {

enum class Suite { structure, connection, curvature, darboux, musical };

const char* to_string(Suite s) noexcept;
/// Parses a suite name; "all" yields nullopt. Throws std::invalid_argument otherwise.
std::optional<Suite> parse_suite(const std::string& name);

struct RunOptions {
  std::string manifold = "flat3cos";
  std::size_t n = 1;
  std::size_t points = 32;
  std::uint64_t seed = 42;
  double tol_flat = 1e-9;
  double tol_curved = 1e-7;
  int order = 3;
  std::optional<Suite> suite;
  int ode_steps = 64;
};

/// Builds flat3cos, sphere3sas or flat3cos-scrambled. Throws std::invalid_argument for other ids.
Model make_model(const std::string& manifold, std::size_t n, std::uint64_t seed);

/// Shared state for one run: the model, sampled points and lazily built
/// connections.
class CheckContext {
 public:
  CheckContext(const Model& model, const RunOptions& options);

  const Model& model() const noexcept { return model_; }
  const AlmostContactMetric3Structure& structure() const noexcept { return model_.structure; }
  const RunOptions& options() const noexcept { return options_; }
  const std::vector<ChartPoint>& points() const noexcept { return points_; }
  /// Leading subset of the points, for the more expensive checks.
  std::vector<ChartPoint> points(std::size_t count) const;
  bool curved() const noexcept { return model_.kind == ModelKind::sphere; }
  /// tol_curved on the sphere, tol_flat otherwise.
  double base_tolerance() const noexcept;
  /// max(base_tolerance(), floor) on the sphere, base_tolerance() otherwise.
  double tolerance(double curved_floor) const noexcept;
  std::uint64_t stream(std::uint64_t k) const;

  const CanonicalConnection& canonical();
  const AffineConnection& levi_civita();
  const CurvatureTensor& curvature();
  /// Darboux frame at the first sample point (flat models only).
  const DarbouxFrame& darboux_frame();

 private:
  const Model& model_;
  RunOptions options_;
  std::vector<ChartPoint> points_;
  std::unique_ptr<CanonicalConnection> canonical_;
  std::unique_ptr<AffineConnection> lc_;
  std::unique_ptr<CurvatureTensor> curvature_;
  std::unique_ptr<DarbouxFrame> frame_;
};

struct CheckDefinition {
  std::string id;
  std::string description;
  std::string reference;
  Suite suite;
  /// Model kinds the check applies to.
  std::vector<ModelKind> models;
  std::function<VerificationCheck(CheckContext&, const CheckDefinition&)> run;

  bool applies_to(ModelKind k) const;
};

/// Every check in a stable order.
const std::vector<CheckDefinition>& check_catalog();

Conventions report_conventions();

/// Runs the applicable checks. A check that throws is reported as failed
/// with a non-finite residual.
VerificationReport run_verification(const RunOptions& options);

}  // namespace acm3
