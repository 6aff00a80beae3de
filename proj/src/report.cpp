#include "spectriple/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace spectriple {

Check residual_check(std::string name, double residual, double tolerance) {
  Check c;
  c.name = std::move(name);
  c.residual = residual;
  c.tolerance = tolerance;
  c.pass = std::isfinite(residual) && residual <= tolerance;
  return c;
}

Check boolean_check(std::string name, bool value) {
  Check c;
  c.name = std::move(name);
  c.boolean = true;
  c.value = value;
  c.pass = value;
  return c;
}

bool Report::all_pass() const {
  for (const Check& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string json_number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string json_int(long long x) { return std::to_string(x); }

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
  return out;
}

std::string json_bool(bool b) { return b ? "true" : "false"; }

std::string json_complex(const cplx& z) {
  return "[" + json_number(z.real()) + "," + json_number(z.imag()) + "]";
}

std::string json_matrix(const CMat& m) {
  std::string out = "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r) out += ",";
    out += "[";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ",";
      out += json_complex(m(r, c));
    }
    out += "]";
  }
  out += "]";
  return out;
}

std::string json_real_vector(const RVec& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += json_number(v(i));
  }
  out += "]";
  return out;
}

std::string json_int_vector(const std::vector<int>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += json_int(v[i]);
  }
  out += "]";
  return out;
}

std::string to_json(const Report& report) {
  std::string out = "{\n";
  out += "  \"command\": " + json_string(report.command) + ",\n";
  out += "  \"parameters\": {";
  for (size_t i = 0; i < report.parameters.size(); ++i) {
    if (i) out += ", ";
    out += json_string(report.parameters[i].first) + ": " + report.parameters[i].second;
  }
  out += "},\n";
  out += "  \"checks\": [\n";
  for (size_t i = 0; i < report.checks.size(); ++i) {
    const Check& c = report.checks[i];
    out += "    {\"name\": " + json_string(c.name) + ", \"residual\": ";
    out += c.boolean ? json_bool(c.value) : json_number(c.residual);
    out += ", \"tolerance\": " + json_number(c.boolean ? 0.0 : c.tolerance);
    out += ", \"pass\": " + json_bool(c.pass) + "}";
    if (i + 1 < report.checks.size()) out += ",";
    out += "\n";
  }
  out += "  ],\n";
  if (!report.extras.empty()) {
    out += "  \"dump\": {\n";
    for (size_t i = 0; i < report.extras.size(); ++i) {
      out += "    " + json_string(report.extras[i].first) + ": " + report.extras[i].second;
      if (i + 1 < report.extras.size()) out += ",";
      out += "\n";
    }
    out += "  },\n";
  }
  out += "  \"all_pass\": " + json_bool(report.all_pass()) + "\n";
  out += "}\n";
  return out;
}

std::string to_text(const Report& report) {
  std::ostringstream out;
  out << "== " << report.command;
  for (const auto& [key, value] : report.parameters) out << "  " << key << "=" << value;
  out << "\n";

  size_t width = 0;
  for (const Check& c : report.checks) width = std::max(width, c.name.size());

  size_t passed = 0;
  for (const Check& c : report.checks) {
    if (c.pass) ++passed;
    out << (c.pass ? "PASS  " : "FAIL  ") << c.name
        << std::string(width - c.name.size() + 2, ' ');
    if (c.boolean) {
      out << (c.value ? "true" : "false");
    } else {
      char buf[80];
      std::snprintf(buf, sizeof(buf), "%.3e  (tol %.1e)", c.residual, c.tolerance);
      out << buf;
    }
    out << "\n";
  }
  for (const auto& [key, value] : report.extras)
    out << "-- " << key << ": " << value << "\n";
  out << passed << "/" << report.checks.size() << " checks passed  ["
      << report.wall_time_ms << " ms]\n";
  return out.str();
}

}  // namespace spectriple
