#ifndef SPECTRIPLE_REPORT_HPP
#define SPECTRIPLE_REPORT_HPP

// Check/report plumbing shared by the verification commands: every command
// produces a Report -- an ordered list of named checks, each either a
// residual measured against a tolerance or a plain boolean -- which
// serializes to an aligned text table or to deterministic JSON.
//
// JSON determinism contract: doubles are printed with 17 significant digits
// (lossless round-trip), complex entries as [re, im] pairs, key order is
// fixed by insertion order, and wall_time_ms is deliberately excluded so two
// runs with the same seed produce byte-identical output.  The checks array
// has the same object shape for every command: {name, residual, tolerance,
// pass}, where `residual` holds a boolean for yes/no checks (tolerance 0).

#include <string>
#include <utility>
#include <vector>

#include "spectriple/core.hpp"

namespace spectriple {

struct Check {
  std::string name;
  bool boolean = false;  // true -> payload is `value`, not `residual`
  double residual = 0.0;
  bool value = false;
  double tolerance = 0.0;
  bool pass = false;
};

Check residual_check(std::string name, double residual, double tolerance);
Check boolean_check(std::string name, bool value);

struct Report {
  std::string command;
  // Ordered key -> pre-rendered JSON value ("2", "\"warped-diag\"", "[0.1,0.05]").
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Check> checks;
  // Ordered key -> pre-rendered JSON value; emitted under "dump" when present.
  std::vector<std::pair<std::string, std::string>> extras;
  long long wall_time_ms = 0;

  void add(Check check) { checks.push_back(std::move(check)); }
  bool all_pass() const;
};

// JSON literal helpers (17 significant digits, C locale, non-finite -> null).
std::string json_number(double x);
std::string json_int(long long x);
std::string json_string(const std::string& s);
std::string json_bool(bool b);
std::string json_complex(const cplx& z);  // [re, im]
std::string json_matrix(const CMat& m);   // rows of [re, im] entries
std::string json_real_vector(const RVec& v);
std::string json_int_vector(const std::vector<int>& v);

// Machine-readable serialization; wall_time_ms excluded for byte identity.
std::string to_json(const Report& report);
// Aligned human-readable table; includes the wall time.
std::string to_text(const Report& report);

}  // namespace spectriple

#endif  // SPECTRIPLE_REPORT_HPP
