#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cgra/aging.hpp"
#include "cgra/dse.hpp"
#include "cgra/fabric.hpp"
#include "cgra/mapper.hpp"
#include "cgra/metrics.hpp"
#include "cgra/workload.hpp"

namespace cgra::cli {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("error writing '" + path + "'");
}

/// Writes to `path`, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-")
    out << content;
  else
    write_file(path, content);
}

std::shared_ptr<const Workload> load_workload(const std::string& path) {
  const auto text = read_file(path);
  try {
    return std::make_shared<const Workload>(parse_workload(text));
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what() + " (at byte " + std::to_string(e.position()) + ")");
  } catch (const SemanticError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

/// Fabric flags shared by map and simulate.
struct DimsFlags {
  int cols = 16;
  int rows = 2;
  int lines = 4;
  std::optional<int> context;
  std::string preset;

  void add_to(CLI::App& app) {
    auto* L = app.add_option("-L,--cols", cols, "Fabric columns")->check(CLI::PositiveNumber);
    auto* W = app.add_option("-W,--rows", rows, "Fabric rows")->check(CLI::PositiveNumber);
    app.add_option("--lines", lines, "Configuration lines n")->check(CLI::PositiveNumber);
    app.add_option("--context", context, "Context lines C (default 2*W)")
        ->check(CLI::PositiveNumber);
    auto* p = app.add_option("--preset", preset, "Design point BE|BP|BU")
                  ->check(CLI::IsMember({"BE", "BP", "BU"}));
    p->excludes(L)->excludes(W);
  }

  FabricDims resolve() const {
    FabricDims d{cols, rows, lines, 0};
    if (!preset.empty()) {
      const auto p = find_preset(preset);
      d.cols = p->cols;
      d.rows = p->rows;
    }
    d.context_lines = context.value_or(2 * d.rows);
    return d;
  }
};

struct AgingFlags {
  aging::AgingParams params;

  void add_to(CLI::App& app) {
    app.add_option("--temperature,-T", params.temperature_k, "Temperature in kelvin");
    app.add_option("--vdd", params.vdd, "Supply voltage in volts");
    app.add_option("--threshold", params.delay_threshold, "End-of-life delay increase");
    app.add_option("--ref-lifetime", params.reference_lifetime_years,
                   "Years to reach the threshold at the reference utilization");
    app.add_option("--ref-util", params.reference_utilization, "Reference utilization");
  }
};

int cmd_gen(const GeneratorParams& params, std::uint64_t seed, const std::string& out_path,
            std::ostream& out) {
  Workload w;
  try {
    w = generate_random_workload(params, seed);
  } catch (const InfeasibleParams& e) {
    throw UsageError(e.what());
  }
  emit(out_path, serialize_workload(w), out);
  return kOk;
}

int cmd_map(const std::string& path, const FabricDims& dims, bool dump, std::ostream& out,
            std::ostream& err) {
  const auto w = load_workload(path);
  int failures = 0;
  for (std::size_t k = 0; k < w->dfgs.size(); ++k) {
    try {
      const auto vc = map_dfg(w->dfgs[k], dims);
      if (dump) out << dump_configuration(vc);
      const auto ctx = check_context_capacity(vc, dims);
      if (!ctx.ok)
        err << "warning: dfg " << k << " '" << w->dfgs[k].name << "' context pressure "
            << ctx.pressure << " exceeds " << ctx.capacity << " context lines\n";
    } catch (const DoesNotFit& e) {
      ++failures;
      err << "dfg " << k << ": " << e.what() << "\n";
    }
  }
  out << "mapped " << (w->dfgs.size() - failures) << "/" << w->dfgs.size() << " dfgs on "
      << dims_label(dims) << "\n";
  return failures ? kDoesNotFit : kOk;
}

struct SimulateFlags {
  std::string workload;
  AllocationPolicy policy = AllocationPolicy::Rotating;
  std::string heatmap_path;
  std::string summary_path;
  bool dump_plan = false;
  std::vector<int> plan_pivot{0, 0};
  bool duration_weighted = false;
};

int cmd_simulate(const SimulateFlags& f, const FabricDims& dims, const aging::AgingParams& aging,
                 std::ostream& out, std::ostream& err) {
  const auto w = load_workload(f.workload);
  ScenarioResult r;
  try {
    r = run_scenario({dims_label(dims), dims, f.policy, w, aging,
                      f.duration_weighted ? UtilizationMode::DurationWeighted
                                          : UtilizationMode::ExecutionCount});
  } catch (const EmptyScenario& e) {
    err << e.what() << "\n";
    return kDoesNotFit;
  }
  for (const auto& s : r.skipped_dfgs) err << "skipped dfg " << s.dfg_index << ": " << s.reason << "\n";

  const auto summary = summarize(*r.utilization);
  if (!f.heatmap_path.empty()) emit(f.heatmap_path, export_heatmap(*r.utilization), out);
  if (!f.summary_path.empty()) emit(f.summary_path, summary_to_json(summary), out);

  out << "scenario " << r.label << " policy=" << policy_name(f.policy)
      << " executions=" << r.executions << " skipped=" << r.skipped_dfgs.size() << "\n";
  out << "avg_util=" << fmt("%.6f", r.avg_util) << " max_util=" << fmt("%.6f", r.max_util)
      << " min_util=" << fmt("%.6f", r.min_util) << " argmax=(" << r.argmax.row << ","
      << r.argmax.col << ")\n";
  out << "lifetime_years="
      << (std::isfinite(r.lifetime_years) ? fmt("%.2f", r.lifetime_years) : "unbounded") << "\n";

  if (f.dump_plan) {
    const Pivot pivot{f.plan_pivot.at(0), f.plan_pivot.at(1)};
    try {
      out << "plan pivot=(" << pivot.row << "," << pivot.col << ")\n"
          << format_plan(reconfig_plan(pivot, dims));
    } catch (const std::out_of_range& e) {
      throw UsageError(std::string("--pivot: ") + e.what());
    }
  }
  return kOk;
}

struct DseFlags {
  std::string workload;
  std::vector<int> cols{16};
  std::vector<int> rows{2};
  int lines = 4;
  std::optional<int> context;
  std::string preset;
  std::string policy = "both";
  std::string json_path;
  std::string table_path;
  unsigned jobs = 1;
};

int cmd_dse(const DseFlags& f, const aging::AgingParams& aging, std::ostream& out) {
  SweepRequest req;
  req.workload = load_workload(f.workload);
  req.cols = f.cols;
  req.rows = f.rows;
  if (!f.preset.empty()) {
    const auto p = find_preset(f.preset);
    req.cols = {p->cols};
    req.rows = {p->rows};
  }
  req.aging = aging;
  req.config_lines = f.lines;
  req.context_lines = f.context;
  req.jobs = f.jobs;
  if (f.policy != "both") req.policies = {*parse_policy(f.policy)};

  const auto results = sweep(req);
  if (!f.json_path.empty()) emit(f.json_path, results_to_json(results), out);
  emit(f.table_path, results_to_table(results), out);
  return kOk;
}

struct AgeFlags {
  std::optional<double> u;
  std::optional<double> u2;
  std::string summary;
  std::string summary2;
  std::string curve_path;
  std::string curve2_path;
  double horizon = 10.0;
  int points = 11;
};

double summary_max(const std::string& path) {
  try {
    return summary_from_json(read_file(path)).max;
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

int cmd_age(const AgeFlags& f, const aging::AgingParams& params, std::ostream& out) {
  std::optional<double> u = f.u;
  std::optional<double> u2 = f.u2;
  if (!f.summary.empty()) u = summary_max(f.summary);
  if (!f.summary2.empty()) u2 = summary_max(f.summary2);
  if (!u) throw UsageError("age needs --u or --summary");

  try {
    params.validate();
    auto report = [&](const char* role, double value) {
      out << role << " u=" << fmt("%.6f", value) << " lifetime_years=";
      try {
        out << fmt("%.2f", aging::lifetime(params, value)) << "\n";
      } catch (const aging::UnboundedLifetime&) {
        out << "unbounded\n";
      }
    };
    report(u2 ? "baseline" : "unit", *u);
    if (u2) {
      report("proposed", *u2);
      try {
        out << "improvement=" << fmt("%.2f", aging::lifetime_improvement(*u, *u2)) << "x\n";
      } catch (const aging::UnboundedLifetime&) {
        out << "improvement=unbounded\n";
      }
    }
    if (!f.curve_path.empty())
      emit(f.curve_path,
           aging::delay_curve_csv(aging::delay_curve(params, *u, f.horizon, f.points)), out);
    if (!f.curve2_path.empty()) {
      if (!u2) throw UsageError("--curve2 needs --u2 or --summary2");
      emit(f.curve2_path,
           aging::delay_curve_csv(aging::delay_curve(params, *u2, f.horizon, f.points)), out);
    }
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"CGRA utilization-aware allocation and NBTI aging toolkit", "cgrasim"};
  app.require_subcommand(1);

  // gen
  GeneratorParams gen_params;
  std::uint64_t seed = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a random workload file");
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--dfgs", gen_params.num_dfgs, "Number of DFGs");
  gen->add_option("--min-ops", gen_params.min_ops, "Minimum ops per DFG");
  gen->add_option("--max-ops", gen_params.max_ops, "Maximum ops per DFG");
  gen->add_option("--mem-frac", gen_params.memory_op_fraction, "Fraction of LOAD/STORE ops");
  gen->add_option("--inputs", gen_params.num_inputs, "External inputs per DFG");
  gen->add_option("--trace-len", gen_params.trace_length, "Trace entries");
  gen->add_option("--max-repeat", gen_params.max_repeat, "Largest repeat count per entry");
  gen->add_option("-o,--output", gen_out, "Output path (default stdout)");

  // map
  std::string map_path;
  DimsFlags map_dims;
  bool dump = false;
  auto* map = app.add_subcommand("map", "Map every DFG onto the fabric");
  map->add_option("workload", map_path, "Workload file")->required();
  map_dims.add_to(*map);
  map->add_flag("--dump", dump, "Print placements (op, row, col_start, width)");

  // simulate
  SimulateFlags sim;
  DimsFlags sim_dims;
  AgingFlags sim_aging;
  std::string sim_policy = "rotating";
  auto* simulate = app.add_subcommand("simulate", "Replay the trace under one allocation policy");
  simulate->add_option("workload", sim.workload, "Workload file")->required();
  sim_dims.add_to(*simulate);
  sim_aging.add_to(*simulate);
  simulate->add_option("--policy", sim_policy, "fixed|rotating")
      ->check(CLI::IsMember({"fixed", "rotating"}));
  simulate->add_option("--heatmap", sim.heatmap_path, "Heatmap CSV output");
  simulate->add_option("--summary", sim.summary_path, "Summary JSON output");
  simulate->add_flag("--dump-plan", sim.dump_plan, "Print the reconfiguration plan");
  simulate->add_option("--pivot", sim.plan_pivot, "Pivot ROW,COL for --dump-plan")
      ->delimiter(',')
      ->expected(2);
  simulate->add_flag("--duration-weighted", sim.duration_weighted,
                     "Weight executions by configuration length");

  // dse
  DseFlags dse_flags;
  AgingFlags dse_aging;
  auto* dse = app.add_subcommand("dse", "Sweep fabric sizes and compare allocation policies");
  dse->add_option("workload", dse_flags.workload, "Workload file")->required();
  auto* dL = dse->add_option("-L,--cols", dse_flags.cols, "Column counts (comma separated)")
                 ->delimiter(',')
                 ->check(CLI::PositiveNumber);
  auto* dW = dse->add_option("-W,--rows", dse_flags.rows, "Row counts (comma separated)")
                 ->delimiter(',')
                 ->check(CLI::PositiveNumber);
  dse->add_option("--lines", dse_flags.lines, "Configuration lines n")->check(CLI::PositiveNumber);
  dse->add_option("--context", dse_flags.context, "Context lines C (default 2*W)")
      ->check(CLI::PositiveNumber);
  dse->add_option("--preset", dse_flags.preset, "Design point BE|BP|BU")
      ->check(CLI::IsMember({"BE", "BP", "BU"}))
      ->excludes(dL)
      ->excludes(dW);
  dse->add_option("--policy", dse_flags.policy, "fixed|rotating|both")
      ->check(CLI::IsMember({"fixed", "rotating", "both"}));
  dse->add_option("-o,--output", dse_flags.json_path, "JSON results output");
  dse->add_option("--table", dse_flags.table_path, "Text table output (default stdout)");
  dse->add_option("--jobs", dse_flags.jobs, "Worker threads")->check(CLI::PositiveNumber);
  dse_aging.add_to(*dse);

  // age
  AgeFlags age_flags;
  AgingFlags age_aging;
  auto* age = app.add_subcommand("age", "Lifetime and lifetime improvement from utilizations");
  age->add_option("--u", age_flags.u, "Worst-case utilization (baseline when --u2 is given)");
  age->add_option("--u2", age_flags.u2, "Proposed worst-case utilization");
  age->add_option("--summary", age_flags.summary, "Read --u from a summary JSON (max field)");
  age->add_option("--summary2", age_flags.summary2, "Read --u2 from a summary JSON");
  age->add_option("--curve", age_flags.curve_path, "Delay-curve CSV output");
  age->add_option("--curve2", age_flags.curve2_path, "Delay-curve CSV output for --u2");
  age->add_option("--horizon", age_flags.horizon, "Curve horizon in years");
  age->add_option("--points", age_flags.points, "Curve samples");
  age_aging.add_to(*age);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen(gen_params, seed, gen_out, out);
    if (*map) return cmd_map(map_path, map_dims.resolve(), dump, out, err);
    if (*simulate) {
      sim.policy = *parse_policy(sim_policy);
      if (sim.plan_pivot.size() != 2) throw UsageError("--pivot expects ROW,COL");
      return cmd_simulate(sim, sim_dims.resolve(), sim_aging.params, out, err);
    }
    if (*dse) return cmd_dse(dse_flags, dse_aging.params, out);
    if (*age) return cmd_age(age_flags, age_aging.params, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace cgra::cli
