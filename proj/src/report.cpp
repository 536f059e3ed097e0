#include "ahls/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ahls {

namespace {

nlohmann::ordered_json number(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

}  // namespace

std::string to_string(Status status) {
  switch (status) {
    case Status::Holds: return "HOLDS";
    case Status::Equality: return "EQUALITY";
    case Status::Violated: return "VIOLATED";
    case Status::Skipped: return "SKIPPED";
  }
  return "UNKNOWN";
}

void classify_chain(InequalityReport& r, Chain chain, double est_rel_err, bool equality_first, bool equality_second,
                    double floor) {
  const bool three = !std::isnan(r.right);
  const double sign = chain == Chain::Geq ? 1.0 : -1.0;
  r.margin1 = sign * (r.left - r.middle);
  r.margin2 = three ? sign * (r.middle - r.right) : std::numeric_limits<double>::quiet_NaN();
  double scale = std::max(std::abs(r.left), std::abs(r.middle));
  if (three) scale = std::max(scale, std::abs(r.right));
  r.tol = std::max(floor, 10.0 * est_rel_err) * scale;

  if (!std::isfinite(r.margin1) || (three && !std::isfinite(r.margin2))) {
    r.status = Status::Violated;
    r.notes.push_back("non-finite chain value");
    return;
  }
  const bool violated = r.margin1 < -r.tol || (three && r.margin2 < -r.tol);
  if (violated) {
    r.status = Status::Violated;
    return;
  }
  bool missed = false;
  if (equality_first && std::abs(r.margin1) > r.tol) {
    missed = true;
    r.notes.push_back("expected equality in the first inequality was not reproduced");
  }
  if (three && equality_second && std::abs(r.margin2) > r.tol) {
    missed = true;
    r.notes.push_back("expected equality in the second inequality was not reproduced");
  }
  if (missed) {
    r.status = Status::Violated;
    return;
  }
  r.status = (equality_first || (three && equality_second)) ? Status::Equality : Status::Holds;
}

void classify_identity(InequalityReport& r, double computed, double expected, double rel_tol) {
  r.left = computed;
  r.middle = expected;
  r.margin1 = 0.0 - std::abs(computed - expected);
  r.tol = rel_tol * std::abs(expected);
  r.status = std::isfinite(r.margin1) && -r.margin1 <= r.tol ? Status::Equality : Status::Violated;
}

void classify_discrepancy(InequalityReport& r, double discrepancy, double threshold) {
  r.left = discrepancy;
  r.margin1 = 0.0 - discrepancy;
  r.tol = threshold;
  r.status = std::isfinite(discrepancy) && discrepancy <= threshold ? Status::Equality : Status::Violated;
}

InequalityReport skipped(std::string check, nlohmann::ordered_json params, std::string reason) {
  InequalityReport r;
  r.check = std::move(check);
  r.params = std::move(params);
  r.status = Status::Skipped;
  r.reason = std::move(reason);
  return r;
}

nlohmann::ordered_json to_json(const InequalityReport& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["params"] = r.params;
  j["left"] = number(r.left);
  j["middle"] = number(r.middle);
  j["right"] = number(r.right);
  j["margins"] = nlohmann::ordered_json::array({number(r.margin1), number(r.margin2)});
  j["tol"] = number(r.tol);
  std::string status = to_string(r.status);
  if (r.status == Status::Skipped) status += "(" + r.reason + ")";
  j["status"] = status;
  j["notes"] = r.notes;
  return j;
}

}  // namespace ahls
