/**
 * @file verify.hpp
 * @brief Named, parameterized identity checks with structured reports.
 *
 * Each check walks n over an inclusive range, compares exact polynomials and
 * stops at the first mismatch, which becomes the report's witness.  Checks of
 * kind Conjecture are bounded scans and only affect the exit code through
 * its dedicated value (or when conjectures are treated strictly).
 */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eulerian/polycore.hpp"

namespace eulerian::verify {

enum class Kind { Theorem, Conjecture };
enum class Status { Pass, Fail, Skipped };

std::string_view kind_name(Kind k);      // "theorem" / "conjecture"
std::string_view status_name(Status s);  // "pass" / "fail" / "skipped"

struct IdentityInfo {
  std::string id;
  Kind kind;
  unsigned min_n;
  unsigned default_n;
  unsigned max_n;
  std::string description;
};

/// All checks, in registry order.
const std::vector<IdentityInfo>& identities();
/// Throws std::invalid_argument for an unknown id.
const IdentityInfo& info(std::string_view id);

struct Witness {
  unsigned n = 0;
  MultiPoly lhs;
  MultiPoly rhs;
  std::string note;
};

struct Report {
  std::string id;
  Kind kind = Kind::Theorem;
  unsigned n_lo = 0;
  unsigned n_hi = 0;
  Status status = Status::Skipped;
  std::optional<Witness> witness;  // present exactly when status == Fail
  std::string detail;
  double elapsed_seconds = 0.0;
};

/// Adds `delta` to the left-hand side of every comparison the check `id`
/// makes at `n`.  Test fixture for the failure path.
struct FaultInjection {
  std::string id;
  unsigned n = 0;
  MultiPoly delta;
};

struct RunOptions {
  std::optional<FaultInjection> fault;
};

/// Runs `id` for n in [min_n, n_max]; n_max defaults to the registry
/// default.  n_max above the cap or below min_n yields a skipped report.
Report run(std::string_view id, std::optional<unsigned> n_max = std::nullopt,
           const RunOptions& options = {});

/// Every check in registry order.  Budget entries override n_max; a budget
/// of 0 skips the check.
std::vector<Report> run_all(const std::map<std::string, unsigned>& budget = {},
                            const RunOptions& options = {});

/// 0 when nothing failed, 1 when a theorem check failed, 2 when only
/// conjecture scans failed.  With strict_conjectures a conjecture failure
/// also yields 1.
int exit_code(const std::vector<Report>& reports, bool strict_conjectures = false);

/// One line per report, e.g. "PASS        eq_1_1       n=0..10   0.01s".
std::string format_report(const Report& report);
std::string report_json(const Report& report);
/// {"reports":[...],"summary":{...,"exit_code":k}}
std::string reports_json(const std::vector<Report>& reports, bool strict_conjectures = false);

}  // namespace eulerian::verify
