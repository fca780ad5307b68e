#pragma once

// Seeded sampling campaigns over the invariants of the library, with JSON and
// CSV reporting.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "opdisk/algebra.hpp"

namespace opdisk {

struct SuiteConfig {
  Algebra algebra = Algebra::matrix(3);
  int samples = 100;
  std::uint64_t seed = 42;
  double tol_exact = 1e-9;
  double tol_fd = 1e-4;
  double fd_step = 1e-4;

  /// Throws kConfigError for non-positive sample counts, tolerances or steps.
  void validate() const;
};

enum class Suite { kAlgebraic, kDifferential, kScalarOracle, kMoment, kHalfspace, kAll };

Suite parse_suite(std::string_view name);
std::string to_string(Suite suite);

using MetaValue = std::variant<double, std::int64_t, bool, std::string>;

struct CheckReport {
  std::string check_name;
  int samples = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::vector<std::pair<std::string, MetaValue>> metadata;
};

struct SuiteReport {
  SuiteConfig config;
  Suite suite = Suite::kAll;
  std::vector<CheckReport> checks;
  bool all_passed = false;
};

/// Runs every check of the selected suite. Results depend only on the config:
/// each sample draws from its own stream seeded with seed ^ sample_index, and
/// reports are assembled in sample order whatever the thread count.
SuiteReport run_suite(const SuiteConfig& config, Suite suite);

/// Schema-1 JSON document for a report.
std::string to_json(const SuiteReport& report);

/// Worker count from OPDISK_THREADS (1 when unset or invalid).
int thread_count_from_env();

struct MomentImageRow {
  int sample_id = 0;
  std::string kind;  // "point" or "witness"
  double t = 0.0;    // interpolation weight; 0 for points
  std::vector<Complex> nu_c1;
  std::vector<Complex> nu_c2;
  bool certificate_pass = false;
};

/// Restricted moment images of a grid of disk points with ||z|| <= 0.9, then
/// convexity witnesses for random pairs of those points at
/// t in {0, 1/4, 1/2, 3/4, 1}.
std::vector<MomentImageRow> sample_moment_image(const SuiteConfig& config, int grid);

std::string to_csv(const std::vector<MomentImageRow>& rows);

}  // namespace opdisk
