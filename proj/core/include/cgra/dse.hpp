#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cgra/aging.hpp"
#include "cgra/allocation.hpp"
#include "cgra/metrics.hpp"
#include "cgra/workload.hpp"

namespace cgra {

struct Scenario {
  std::string label;
  FabricDims dims;
  AllocationPolicy policy = AllocationPolicy::Rotating;
  std::shared_ptr<const Workload> workload;
  aging::AgingParams aging;
  UtilizationMode mode = UtilizationMode::ExecutionCount;
};

struct SkippedDfg {
  std::size_t dfg_index = 0;
  std::string name;
  std::string reason;
};

/// DFG whose context pressure exceeds the fabric's context lines. Recorded, not skipped.
struct ContextViolation {
  std::size_t dfg_index = 0;
  int pressure = 0;
  int capacity = 0;
};

/// Baseline-vs-proposed pairing of two runs over the same workload and fabric.
struct PolicyPairing {
  double baseline_avg_util = 0.0;
  double baseline_max_util = 0.0;
  double proposed_max_util = 0.0;
  double baseline_lifetime_years = 0.0;
  double proposed_lifetime_years = 0.0;
  double lifetime_improvement = 0.0;  ///< baseline_max_util / proposed_max_util
};

struct ScenarioResult {
  std::string label;
  FabricDims dims;
  AllocationPolicy policy = AllocationPolicy::Rotating;
  double avg_util = 0.0;
  double max_util = 0.0;
  double min_util = 0.0;
  Cell argmax;
  double lifetime_years = 0.0;
  std::uint64_t executions = 0;
  std::optional<PolicyPairing> pairing;
  std::vector<SkippedDfg> skipped_dfgs;
  std::vector<ContextViolation> context_violations;
  std::optional<UtilizationMap> utilization;       ///< map of the (proposed) run
  std::optional<UtilizationMap> baseline_utilization;  ///< set for paired results
  std::optional<std::string> error;                ///< set when a sweep entry failed
};

/// Every DFG was skipped, or no execution remained after dropping their trace entries.
class EmptyScenario : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maps each DFG once, replays the trace through the policy's allocator and reports
/// utilization and the lifetime implied by the hottest cell.
ScenarioResult run_scenario(const Scenario& s);

/// Runs FixedOrigin (baseline) and Rotating (proposed) with fresh schedulers. The
/// headline fields describe the proposed run.
ScenarioResult compare_policies(const FabricDims& dims, std::shared_ptr<const Workload> workload,
                                const aging::AgingParams& aging, std::string label = {});

/// Pairing fields from two already-known worst-case utilizations.
PolicyPairing pair_utilizations(double baseline_max_util, double proposed_max_util,
                                const aging::AgingParams& aging);

std::string dims_label(const FabricDims& dims);

struct SweepRequest {
  std::vector<int> cols;
  std::vector<int> rows;
  std::shared_ptr<const Workload> workload;
  aging::AgingParams aging;
  /// Both policies produce one paired result per dims; a single policy produces an
  /// unpaired run_scenario result.
  std::vector<AllocationPolicy> policies{AllocationPolicy::FixedOrigin, AllocationPolicy::Rotating};
  int config_lines = 4;
  std::optional<int> context_lines;  ///< default 2 * rows
  unsigned jobs = 1;
};

/// Cartesian product of dims, ordered by (L, W). Failing scenarios carry `error`.
std::vector<ScenarioResult> sweep(const SweepRequest& request);

/// Published design points.
struct Preset {
  std::string_view name;
  int cols;
  int rows;
  double table_avg_util;       ///< average utilization as tabulated with the results
  double text_avg_util;        ///< average utilization as quoted with the design points
  double baseline_worst_util;
  double proposed_worst_util;
  double lifetime_improvement;
};

const std::vector<Preset>& presets();
std::optional<Preset> find_preset(std::string_view name);

std::string results_to_json(const std::vector<ScenarioResult>& results);

/// Aligned text table: Scenario, Avg. Util, Baseline Worst, Proposed Worst, Lifetime Improv.
std::string results_to_table(const std::vector<ScenarioResult>& results);

}  // namespace cgra
