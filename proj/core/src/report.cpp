#include "acm3/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace acm3 {

namespace {

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string json_number(double v) { return std::isfinite(v) ? format("%.12e", v) : "null"; }

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

}  // namespace

VerificationCheck make_check(std::string id, std::string description, std::string reference, double residual,
                             double tolerance, std::size_t points, std::optional<double> value) {
  VerificationCheck c;
  c.id = std::move(id);
  c.description = std::move(description);
  c.reference = std::move(reference);
  c.value = value;
  c.max_residual = residual;
  c.tolerance = tolerance;
  c.pass = std::isfinite(residual) && residual <= tolerance;
  c.points_sampled = points;
  return c;
}

Summary VerificationReport::summary() const {
  Summary s;
  for (const auto& c : checks) (c.pass ? s.passed : s.failed) += 1;
  s.total = checks.size();
  return s;
}

void VerificationReport::add(VerificationCheck c) {
  if (find(c.id)) throw std::invalid_argument("duplicate check id: " + c.id);
  checks.push_back(std::move(c));
}

const VerificationCheck* VerificationReport::find(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

std::string to_json(const VerificationReport& r) {
  std::ostringstream o;
  o << "{\n";
  o << "  \"manifold\": " << json_string(r.manifold) << ",\n";
  o << "  \"n\": " << r.n << ",\n";
  o << "  \"seed\": " << r.seed << ",\n";
  o << "  \"order\": " << r.order << ",\n";
  o << "  \"conventions\": {\n";
  o << "    \"wedge\": " << json_string(r.conventions.wedge) << ",\n";
  o << "    \"matrix_reading\": " << json_string(r.conventions.matrix_reading) << ",\n";
  o << "    \"quaternion_side\": " << json_string(r.conventions.quaternion_side) << "\n";
  o << "  },\n";
  o << "  \"checks\": [";
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    const auto& c = r.checks[i];
    o << (i ? ",\n" : "\n");
    o << "    {\"id\": " << json_string(c.id) << ", \"description\": " << json_string(c.description)
      << ", \"reference\": " << json_string(c.reference)
      << ", \"value\": " << (c.value ? json_number(*c.value) : "null")
      << ", \"max_residual\": " << json_number(c.max_residual) << ", \"tolerance\": " << json_number(c.tolerance)
      << ", \"pass\": " << (c.pass ? "true" : "false") << ", \"points_sampled\": " << c.points_sampled << "}";
  }
  o << (r.checks.empty() ? "],\n" : "\n  ],\n");
  const Summary s = r.summary();
  o << "  \"summary\": {\"passed\": " << s.passed << ", \"failed\": " << s.failed << ", \"total\": " << s.total
    << "},\n";
  o << "  \"elapsed_ms\": " << json_number(r.elapsed_ms) << "\n";
  o << "}\n";
  return o.str();
}

std::string to_text(const VerificationReport& r) {
  std::ostringstream o;
  o << "# manifold=" << r.manifold << " n=" << r.n << " seed=" << r.seed << " order=" << r.order << "\n";
  o << "# wedge: " << r.conventions.wedge << "\n";
  o << "# matrix reading: " << r.conventions.matrix_reading << "\n";
  o << "# quaternion side: " << r.conventions.quaternion_side << "\n";
  for (const auto& c : r.checks) {
    o << (c.pass ? "PASS" : "FAIL") << "  " << c.id << "  max_residual=" << format("%.3e", c.max_residual)
      << "  tol=" << format("%.1e", c.tolerance) << "  (" << c.reference << ")";
    if (c.value) o << "  value=" << format("%.10g", *c.value);
    o << "\n";
  }
  const Summary s = r.summary();
  o << "# passed=" << s.passed << " failed=" << s.failed << " total=" << s.total << "\n";
  return o.str();
}

}  // namespace acm3
