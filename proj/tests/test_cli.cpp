#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "acm3/checks.hpp"
#include "acm3/cli.hpp"
#include "acm3/report.hpp"

using namespace acm3;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("report records") {
  const VerificationCheck ok = make_check("a", "d", "r", 1e-10, 1e-9, 4);
  CHECK(ok.pass);
  CHECK_FALSE(make_check("b", "d", "r", 2e-9, 1e-9, 4).pass);
  CHECK(make_check("c", "d", "r", 1e-9, 1e-9, 4).pass);
  CHECK_FALSE(make_check("e", "d", "r", std::nan(""), 1.0, 4).pass);
  CHECK_FALSE(make_check("f", "d", "r", INFINITY, 1.0, 4).pass);

  VerificationReport r;
  r.add(ok);
  r.add(make_check("b", "d", "r", 2e-9, 1e-9, 4, 42.0));
  CHECK_THROWS_AS(r.add(ok), std::invalid_argument);
  CHECK(r.summary().passed == 1);
  CHECK(r.summary().failed == 1);
  CHECK(r.summary().total == 2);
  CHECK_FALSE(r.all_pass());
  CHECK(r.find("b")->value == 42.0);
  CHECK(r.find("zz") == nullptr);

  r.add(make_check("n", "quote \" and \\ and\nnewline", "r", std::nan(""), 1.0, 0));
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["checks"][2]["max_residual"].is_null());
  CHECK(j["checks"][2]["description"] == "quote \" and \\ and\nnewline");
  CHECK(j["checks"][0]["value"].is_null());
  CHECK(j["checks"][1]["value"] == 42.0);

  const std::string text = to_text(r);
  CHECK(text.find("PASS  a  max_residual=1.000e-10  tol=1.0e-09  (r)") != std::string::npos);
  CHECK(text.find("FAIL  b  max_residual=2.000e-09  tol=1.0e-09  (r)  value=42") != std::string::npos);
  CHECK(text.find("# passed=1 failed=2 total=3") != std::string::npos);
}

TEST_CASE("catalog") {
  const auto& cat = check_catalog();
  CHECK(cat.size() >= 30);
  std::set<std::string> ids;
  for (const auto& c : cat) {
    CHECK(ids.insert(c.id).second);
    CHECK_FALSE(c.reference.empty());
    CHECK(c.id.find_first_of(" _ABCDEFGHIJKLMNOPQRSTUVWXYZ") == std::string::npos);
  }
  CHECK(ids.count("torsion-horizontal-formula") == 1);
  CHECK(ids.count("metric-reconstruction-banyaga") == 1);
  CHECK(ids.count("scalar-curvature-total") == 1);

  const Run a = run({"--list"}), b = run({"--list"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("torsion-horizontal-formula") != std::string::npos);
  std::istringstream lines(a.out);
  std::string line, first;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    if (count == 0) first = line;
    ++count;
  }
  CHECK(count == cat.size());
  CHECK(first.rfind(cat.front().id, 0) == 0);
}

TEST_CASE("usage errors exit with 2") {
  for (const std::vector<std::string>& args :
       std::vector<std::vector<std::string>>{{"--manifold", "bogus"},
                                            {"--suite", "bogus"},
                                            {"--order", "4"},
                                            {"--n", "0"},
                                            {"--report", "xml"},
                                            {"--no-such-flag"}}) {
    const Run r = run(args);
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
    CHECK(r.out.empty());
  }
  CHECK_THROWS_AS(parse_suite("bogus"), std::invalid_argument);
  CHECK_FALSE(parse_suite("all").has_value());
  CHECK(parse_suite("darboux") == Suite::darboux);
  CHECK_THROWS_AS(make_model("bogus", 1, 42), std::invalid_argument);
}

TEST_CASE("flat run passes with the default flags") {
  const Run r = run({"--manifold", "flat3cos", "--n", "1", "--suite", "all", "--seed", "42", "--points", "32"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.rfind("# manifold=flat3cos n=1 seed=42 order=3", 0) == 0);
}

TEST_CASE("json reports are byte-identical and carry the schema") {
  const std::vector<std::string> args{"--manifold", "flat3cos-scrambled", "--suite", "musical", "--report", "json",
                                      "--points", "8"};
  const Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j.size() == 8);
  for (const char* k : {"manifold", "n", "seed", "order", "conventions", "checks", "summary", "elapsed_ms"})
    CHECK(j.contains(k));
  CHECK(j["conventions"].contains("wedge"));
  CHECK(j["conventions"].contains("matrix_reading"));
  CHECK(j["conventions"].contains("quaternion_side"));
  CHECK(j["elapsed_ms"] == 0.0);
  CHECK(j["summary"]["total"] == j["checks"].size());
  CHECK(j["summary"]["passed"].get<int>() + j["summary"]["failed"].get<int>() == j["summary"]["total"].get<int>());
  for (const auto& c : j["checks"]) {
    CHECK(c["pass"] == (c["max_residual"].get<double>() <= c["tolerance"].get<double>()));
    CHECK(c["points_sampled"].get<int>() >= 1);
  }
  // Numbers use %.12e.
  CHECK(a.out.find("\"tolerance\": 1.000000000000e-09") != std::string::npos);

  const Run t = run({"--manifold", "flat3cos", "--suite", "musical", "--timing", "--report", "json"});
  CHECK(nlohmann::json::parse(t.out)["elapsed_ms"].get<double>() > 0.0);
}

TEST_CASE("failing checks exit with 1") {
  const Run r = run({"--manifold", "flat3cos-scrambled", "--suite", "structure", "--tol-flat", "1e-30"});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("reports can be written to a file") {
  const auto path = std::filesystem::temp_directory_path() / "acm3_verify_report.txt";
  std::filesystem::remove(path);
  const Run r = run({"--suite", "musical", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream body;
  body << in.rdbuf();
  CHECK(body.str().find("PASS  musical-roundtrip") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("sphere curvature suite reports the scalar curvature") {
  const Run r = run({"--manifold", "sphere3sas", "--n", "1", "--suite", "curvature", "--report", "json"});
  const auto j = nlohmann::json::parse(r.out);
  bool found = false;
  for (const auto& c : j["checks"])
    if (c["id"] == "scalar-curvature-total") {
      found = true;
      CHECK(std::abs(c["value"].get<double>() - 42.0) <= 1e-5);
      CHECK(c["pass"] == true);
    }
  CHECK(found);
}
