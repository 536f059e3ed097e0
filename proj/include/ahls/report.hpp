#pragma once

#include <limits>
#include <string>
#include <vector>

#include "json.hpp"

namespace ahls {

enum class Status { Holds, Equality, Violated, Skipped };

std::string to_string(Status status);

// Orientation of a three-term chain left ? middle ? right.
enum class Chain { Geq, Leq };

// One verified (or skipped) inequality. Margins are oriented so that a
// positive margin means the stated inequality holds.
struct InequalityReport {
  std::string check;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  double left = std::numeric_limits<double>::quiet_NaN();
  double middle = std::numeric_limits<double>::quiet_NaN();
  double right = std::numeric_limits<double>::quiet_NaN();
  double margin1 = std::numeric_limits<double>::quiet_NaN();
  double margin2 = std::numeric_limits<double>::quiet_NaN();
  double tol = 0.0;
  Status status = Status::Skipped;
  std::string reason;  // why a check was skipped
  std::vector<std::string> notes;

  bool ok() const { return status != Status::Violated; }
};

// Fills margins, tolerance and status of a chain. The tolerance is
// max(floor, 10 est_rel_err) times the largest magnitude in the chain. A
// NaN right-hand value makes a two-term comparison.
void classify_chain(InequalityReport& r, Chain chain, double est_rel_err, bool equality_first, bool equality_second,
                    double floor = 1e-3);

// Identity check: margin1 = -|computed - expected|, EQUALITY within
// rel_tol * |expected|, VIOLATED otherwise.
void classify_identity(InequalityReport& r, double computed, double expected, double rel_tol);

// Discrepancy check: margin1 = -discrepancy against an absolute threshold.
void classify_discrepancy(InequalityReport& r, double discrepancy, double threshold);

InequalityReport skipped(std::string check, nlohmann::ordered_json params, std::string reason);

nlohmann::ordered_json to_json(const InequalityReport& r);

}  // namespace ahls
