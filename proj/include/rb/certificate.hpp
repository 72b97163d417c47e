#pragma once

// Machine-checkable run certificates.  Every inequality the pipeline
// relies on is stored with the interval endpoints of both sides, in
// hexadecimal floating point so the file round-trips bit-exactly.  A
// recheck reads the file and re-evaluates each comparison from the
// stored endpoints alone, independently of the code that produced them.

#include <string>
#include <utility>
#include <vector>

#include "rb/interval.hpp"

namespace rb {

std::string hex_double(double x);
double parse_hex(const std::string& s);  // throws Error on malformed input

struct InequalityRecord {
  std::string name;
  Interval lhs;
  Interval rhs;
  bool ok = false;  // upper end of lhs strictly below lower end of rhs
};

InequalityRecord record_less(const std::string& name, const Interval& lhs,
                             const Interval& rhs);

struct StageRecord {
  std::string name;
  bool ok = false;
  std::string error;
};

struct Certificate {
  std::vector<std::pair<std::string, std::string>> params;  // name, hex or text
  std::vector<StageRecord> stages;
  std::vector<InequalityRecord> inequalities;
  std::vector<std::pair<std::string, Interval>> values;
  bool verdict = false;
  double elapsed_seconds = 0.0;  // informational; ignored by recheck

  void add_value(const std::string& name, const Interval& x) {
    values.emplace_back(name, x);
  }
  // verdict = every stage and every recorded inequality holds.
  void finalize();
};

std::string certificate_text(const Certificate& c);
void write_certificate(const std::string& path, const Certificate& c);

// 0: file is internally consistent and certifies success.
// 1: file is internally consistent and records a failure.
// 2: file is corrupt (unreadable, malformed, or inconsistent records).
int recheck_certificate(const std::string& path);

}  // namespace rb
