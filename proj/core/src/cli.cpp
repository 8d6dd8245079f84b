#include "acm3/cli.hpp"

#include <chrono>
#include <fstream>

#include <CLI11.hpp>

#include "acm3/checks.hpp"

namespace acm3 {

void list_checks(std::ostream& out) {
  for (const auto& c : check_catalog()) out << c.id << "  [" << to_string(c.suite) << "]  (" << c.reference << ")\n";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verify identities of almost contact metric 3-structures on model manifolds", "verify"};
  RunOptions opt;
  std::string suite = "all";
  std::string format = "text";
  std::string out_path;
  bool timing = false;
  bool list = false;
  app.add_option("--manifold", opt.manifold, "Model manifold")
      ->check(CLI::IsMember({"flat3cos", "sphere3sas", "flat3cos-scrambled"}));
  app.add_option("--n", opt.n, "Quaternionic dimension n (chart dimension 4n + 3)")->check(CLI::PositiveNumber);
  app.add_option("--points", opt.points, "Number of sample points")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Sampling seed");
  app.add_option("--tol-flat", opt.tol_flat, "Tolerance on flat models")->check(CLI::NonNegativeNumber);
  app.add_option("--tol-curved", opt.tol_curved, "Tolerance on the sphere")->check(CLI::NonNegativeNumber);
  app.add_option("--order", opt.order, "Jet order budget")->check(CLI::IsMember({2, 3}));
  app.add_option("--suite", suite, "Check suite")
      ->check(CLI::IsMember({"all", "structure", "connection", "curvature", "darboux", "musical"}));
  app.add_option("--report", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", out_path, "Write the report to this path instead of stdout");
  app.add_option("--ode-steps", opt.ode_steps, "Integrator steps per unit length")->check(CLI::PositiveNumber);
  app.add_flag("--timing", timing, "Record wall time in the report (otherwise elapsed_ms is 0)");
  app.add_flag("--list", list, "Print the check catalog and exit");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }
  if (list) {
    list_checks(out);
    return 0;
  }

  opt.suite = parse_suite(suite);
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  try {
    report = run_verification(opt);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }
  if (timing)
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  const std::string text = format == "json" ? to_json(report) : to_text(report);
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot open " << out_path << "\n";
      return 2;
    }
    f << text;
  }
  return report.all_pass() ? 0 : 1;
}

}  // namespace acm3
