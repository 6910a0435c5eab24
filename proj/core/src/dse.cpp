#include "cgra/dse.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "cgra/mapper.hpp"
#include "json.hpp"

namespace cgra {

namespace {

double lifetime_or_inf(const aging::AgingParams& params, double u) {
  try {
    return aging::lifetime(params, u);
  } catch (const aging::UnboundedLifetime&) {
    return std::numeric_limits<double>::infinity();
  }
}

nlohmann::ordered_json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::string dims_label(const FabricDims& dims) {
  return "L" + std::to_string(dims.cols) + "xW" + std::to_string(dims.rows);
}

ScenarioResult run_scenario(const Scenario& s) {
  if (!s.workload) throw std::invalid_argument("scenario '" + s.label + "' has no workload");
  s.dims.validate();
  s.aging.validate();
  const Workload& w = *s.workload;

  ScenarioResult result;
  result.label = s.label.empty() ? dims_label(s.dims) : s.label;
  result.dims = s.dims;
  result.policy = s.policy;

  std::vector<std::optional<VirtualConfiguration>> configs(w.dfgs.size());
  for (std::size_t k = 0; k < w.dfgs.size(); ++k) {
    try {
      configs[k] = map_dfg(std::make_shared<const Dfg>(w.dfgs[k]), s.dims);
    } catch (const DoesNotFit& e) {
      result.skipped_dfgs.push_back({k, w.dfgs[k].name, e.what()});
      continue;
    }
    const auto ctx = check_context_capacity(*configs[k], s.dims);
    if (!ctx.ok) result.context_violations.push_back({k, ctx.pressure, ctx.capacity});
  }

  PivotScheduler scheduler(s.dims);
  UtilizationMap map(s.dims, s.mode);
  for (const auto& entry : w.trace) {
    if (entry.dfg_index >= configs.size())
      throw std::invalid_argument("trace references missing dfg " +
                                  std::to_string(entry.dfg_index));
    const auto& vc = configs[entry.dfg_index];
    if (!vc) continue;
    for (std::uint64_t r = 0; r < entry.repeat_count; ++r) {
      const Pivot pivot = pivot_for_execution(s.policy, scheduler);
      map.record_execution(allocate(*vc, pivot, s.dims));
      ++result.executions;
    }
  }
  if (result.executions == 0)
    throw EmptyScenario("scenario '" + result.label + "': no DFG fits " + dims_label(s.dims) +
                        " (" + std::to_string(result.skipped_dfgs.size()) + " skipped)");

  const auto summary = summarize(map);
  result.avg_util = summary.avg;
  result.max_util = summary.max;
  result.min_util = summary.min;
  result.argmax = summary.argmax;
  result.lifetime_years = lifetime_or_inf(s.aging, summary.max);
  result.utilization = std::move(map);
  return result;
}

PolicyPairing pair_utilizations(double baseline_max_util, double proposed_max_util,
                                const aging::AgingParams& aging) {
  PolicyPairing p;
  p.baseline_max_util = baseline_max_util;
  p.proposed_max_util = proposed_max_util;
  p.baseline_lifetime_years = lifetime_or_inf(aging, baseline_max_util);
  p.proposed_lifetime_years = lifetime_or_inf(aging, proposed_max_util);
  p.lifetime_improvement = aging::lifetime_improvement(baseline_max_util, proposed_max_util);
  return p;
}

ScenarioResult compare_policies(const FabricDims& dims, std::shared_ptr<const Workload> workload,
                                const aging::AgingParams& aging, std::string label) {
  if (label.empty()) label = dims_label(dims);
  Scenario base{label, dims, AllocationPolicy::FixedOrigin, workload, aging};
  Scenario prop{label, dims, AllocationPolicy::Rotating, std::move(workload), aging};
  auto baseline = run_scenario(base);
  auto result = run_scenario(prop);

  auto pairing = pair_utilizations(baseline.max_util, result.max_util, aging);
  pairing.baseline_avg_util = baseline.avg_util;
  result.pairing = pairing;
  result.baseline_utilization = std::move(baseline.utilization);
  return result;
}

std::vector<ScenarioResult> sweep(const SweepRequest& req) {
  if (req.cols.empty() || req.rows.empty())
    throw std::invalid_argument("sweep needs at least one L and one W value");
  if (req.policies.empty()) throw std::invalid_argument("sweep needs at least one policy");

  const std::set<int> cols(req.cols.begin(), req.cols.end());
  const std::set<int> rows(req.rows.begin(), req.rows.end());
  const std::set<AllocationPolicy> policies(req.policies.begin(), req.policies.end());
  const bool paired = policies.size() == 2;

  struct Job {
    FabricDims dims;
    AllocationPolicy policy;
  };
  std::vector<Job> jobs;
  for (int L : cols)
    for (int W : rows) {
      const FabricDims dims{L, W, req.config_lines, req.context_lines.value_or(2 * W)};
      if (paired)
        jobs.push_back({dims, AllocationPolicy::Rotating});
      else
        jobs.push_back({dims, *policies.begin()});
    }

  std::vector<ScenarioResult> results(jobs.size());
  auto run_one = [&](std::size_t i) {
    const auto& job = jobs[i];
    try {
      if (paired) {
        results[i] = compare_policies(job.dims, req.workload, req.aging);
      } else {
        results[i] = run_scenario(
            {dims_label(job.dims) + "/" + std::string(policy_name(job.policy)), job.dims,
             job.policy, req.workload, req.aging});
      }
    } catch (const std::exception& e) {
      results[i] = ScenarioResult{};
      results[i].label = dims_label(job.dims);
      results[i].dims = job.dims;
      results[i].policy = job.policy;
      results[i].error = e.what();
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(req.jobs, jobs.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) run_one(i);
      });
  }
  return results;
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table{
      {"BE", 16, 2, 0.397, 0.397, 0.945, 0.411, 2.29},
      {"BP", 32, 4, 0.1710, 0.178, 0.981, 0.224, 4.37},
      {"BU", 32, 8, 0.085, 0.089, 0.981, 0.123, 7.97},
  };
  return table;
}

std::optional<Preset> find_preset(std::string_view name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  return std::nullopt;
}

std::string results_to_json(const std::vector<ScenarioResult>& results) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json j;
    j["label"] = r.label;
    j["L"] = r.dims.cols;
    j["W"] = r.dims.rows;
    j["n"] = r.dims.config_lines;
    j["C"] = r.dims.context_lines;
    j["policy"] = r.pairing ? "paired" : std::string(policy_name(r.policy));
    if (r.error) {
      j["error"] = *r.error;
      out.push_back(std::move(j));
      continue;
    }
    j["executions"] = r.executions;
    j["avg_util"] = r.avg_util;
    j["max_util"] = r.max_util;
    j["min_util"] = r.min_util;
    j["argmax"] = {{"row", r.argmax.row}, {"col", r.argmax.col}};
    j["lifetime_years"] = finite_or_null(r.lifetime_years);
    if (r.pairing) {
      j["baseline_avg_util"] = r.pairing->baseline_avg_util;
      j["baseline_max_util"] = r.pairing->baseline_max_util;
      j["proposed_max_util"] = r.pairing->proposed_max_util;
      j["baseline_lifetime_years"] = finite_or_null(r.pairing->baseline_lifetime_years);
      j["proposed_lifetime_years"] = finite_or_null(r.pairing->proposed_lifetime_years);
      j["lifetime_improvement"] = r.pairing->lifetime_improvement;
    }
    auto skipped = nlohmann::ordered_json::array();
    for (const auto& s : r.skipped_dfgs)
      skipped.push_back({{"index", s.dfg_index}, {"name", s.name}, {"reason", s.reason}});
    j["skipped_dfgs"] = std::move(skipped);
    auto ctx = nlohmann::ordered_json::array();
    for (const auto& c : r.context_violations)
      ctx.push_back({{"index", c.dfg_index}, {"pressure", c.pressure}, {"capacity", c.capacity}});
    j["context_violations"] = std::move(ctx);
    out.push_back(std::move(j));
  }
  return out.dump(2) + "\n";
}

std::string results_to_table(const std::vector<ScenarioResult>& results) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-12s %10s %15s %15s %16s %8s\n", "Scenario", "Avg. Util",
                "Baseline Worst", "Proposed Worst", "Lifetime Improv.", "Skipped");
  out << line;
  for (const auto& r : results) {
    if (r.error) {
      std::snprintf(line, sizeof line, "%-12s error: %s\n", r.label.c_str(), r.error->c_str());
      out << line;
      continue;
    }
    if (r.pairing) {
      std::snprintf(line, sizeof line, "%-12s %9.1f%% %14.1f%% %14.1f%% %15.2fx %8zu\n",
                    r.label.c_str(), 100.0 * r.avg_util, 100.0 * r.pairing->baseline_max_util,
                    100.0 * r.pairing->proposed_max_util, r.pairing->lifetime_improvement,
                    r.skipped_dfgs.size());
    } else {
      const bool fixed = r.policy == AllocationPolicy::FixedOrigin;
      char worst[32];
      std::snprintf(worst, sizeof worst, "%.1f%%", 100.0 * r.max_util);
      std::snprintf(line, sizeof line, "%-12s %9.1f%% %15s %15s %16s %8zu\n", r.label.c_str(),
                    100.0 * r.avg_util, fixed ? worst : "-", fixed ? "-" : worst, "-",
                    r.skipped_dfgs.size());
    }
    out << line;
  }
  return out.str();
}

}  // namespace cgra
