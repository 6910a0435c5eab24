#include <gtest/gtest.h>

#include <numeric>

#include "cgra/metrics.hpp"
#include "oracles.hpp"

namespace cgra {
namespace {

using testing::DfgBuilder;
using testing::in;
using testing::op;

VirtualConfiguration single_add(const FabricDims& dims) {
  DfgBuilder b(2);
  b.add(in(0), in(1));
  return map_dfg(b.build(), dims);
}

TEST(RecordExecution, SingleCellFootprint) {
  const auto dims = FabricDims::with_defaults(4, 2);
  UtilizationMap m(dims);
  m.record_execution(allocate(single_add(dims), {1, 2}, dims));
  EXPECT_EQ(m.total_executions(), 1u);
  EXPECT_EQ(m.active_count(1, 2), 1u);
  EXPECT_EQ(m.total_activity(), 1u);
}

TEST(RecordExecution, LoadCoversFourColumns) {
  const auto dims = FabricDims::with_defaults(8, 2);
  DfgBuilder b(1);
  b.load(in(0));
  const auto vc = map_dfg(b.build(), dims);
  UtilizationMap m(dims);
  m.record_execution(allocate(vc, {0, 6}, dims));
  for (int c : {6, 7, 0, 1}) EXPECT_EQ(m.active_count(0, c), 1u) << c;
  EXPECT_EQ(m.total_activity(), 4u);
}

TEST(RecordExecution, RejectsOtherDims) {
  const auto small = FabricDims::with_defaults(4, 2);
  UtilizationMap m(FabricDims::with_defaults(8, 2));
  EXPECT_THROW(m.record_execution(allocate(single_add(small), {0, 0}, small)),
               std::invalid_argument);
}

TEST(RecordExecution, DurationWeightedScalesByColumns) {
  const auto dims = FabricDims::with_defaults(8, 2);
  DfgBuilder b(1);
  const int l = b.load(in(0));
  b.add(op(l), in(0));  // 5 columns in total
  const auto vc = map_dfg(b.build(), dims);
  ASSERT_EQ(vc.num_cols_used, 5);
  UtilizationMap m(dims, UtilizationMode::DurationWeighted);
  m.record_execution(allocate(vc, {0, 0}, dims));
  EXPECT_EQ(m.active_count(0, 0), 5u);
  EXPECT_EQ(m.total_executions(), 5u);
  EXPECT_DOUBLE_EQ(utilization_rates(m)[0][0], 1.0);
}

TEST(UtilizationRates, HalfActive) {
  const auto dims = FabricDims::with_defaults(4, 1);
  std::vector<std::uint64_t> counts(4, 0);
  counts[0] = 50;
  const auto m = UtilizationMap::from_counts(dims, counts, 100);
  EXPECT_EQ(utilization_rates(m)[0][0], 0.5);
}

TEST(UtilizationRates, ZeroExecutionsIsError) {
  UtilizationMap m(FabricDims::with_defaults(4, 2));
  EXPECT_THROW(utilization_rates(m), std::domain_error);
  EXPECT_THROW(summarize(m), std::domain_error);
}

TEST(UtilizationRates, AllZeroCountsWithExecutions) {
  const auto m = UtilizationMap::from_counts(FabricDims::with_defaults(4, 2),
                                             std::vector<std::uint64_t>(8, 0), 10);
  const auto s = summarize(m);
  EXPECT_EQ(s.max, 0.0);
  EXPECT_EQ(s.avg, 0.0);
  EXPECT_EQ(s.histogram[0], 8u);
}

TEST(Summarize, UniformQuarter) {
  const auto dims = FabricDims::with_defaults(4, 2);
  const auto m = UtilizationMap::from_counts(dims, std::vector<std::uint64_t>(8, 1), 4);
  const auto s = summarize(m);
  EXPECT_EQ(s.avg, 0.25);
  EXPECT_EQ(s.max, 0.25);
  EXPECT_EQ(s.min, 0.25);
  EXPECT_EQ(s.argmax, (Cell{0, 0}));
  EXPECT_EQ(s.histogram[5], 8u);  // [0.25, 0.30)
}

TEST(Summarize, HotCorner) {
  const FabricDims dims{2, 2, 4, 4};
  const auto m = UtilizationMap::from_counts(dims, {7, 0, 0, 0}, 7);
  const auto s = summarize(m);
  EXPECT_EQ(s.avg, 0.25);
  EXPECT_EQ(s.max, 1.0);
  EXPECT_EQ(s.min, 0.0);
  EXPECT_EQ(s.argmax, (Cell{0, 0}));
  EXPECT_EQ(s.histogram.back(), 1u);  // 1.0 falls in the last bin
  EXPECT_EQ(s.histogram.front(), 3u);
  EXPECT_EQ(s.bin_width, 0.05);
}

TEST(Summarize, ArgmaxIsFirstInRowMajorOrder) {
  const FabricDims dims{3, 2, 4, 4};
  const auto m = UtilizationMap::from_counts(dims, {1, 2, 0, 2, 2, 1}, 2);
  EXPECT_EQ(summarize(m).argmax, (Cell{0, 1}));
}

TEST(SummarizeProperty, HistogramCoversEveryCell) {
  GeneratorParams gp;
  gp.num_dfgs = 20;
  const auto w = generate_random_workload(gp, 9);
  for (auto [L, W] : {std::pair{8, 2}, {16, 2}, {32, 4}}) {
    const auto dims = FabricDims::with_defaults(L, W);
    for (auto policy : {AllocationPolicy::FixedOrigin, AllocationPolicy::Rotating}) {
      UtilizationMap m(dims);
      PivotScheduler s(dims);
      for (const auto& e : w.trace) {
        VirtualConfiguration vc;
        try {
          vc = map_dfg(w.dfgs[e.dfg_index], dims);
        } catch (const DoesNotFit&) {
          continue;
        }
        for (std::uint64_t r = 0; r < e.repeat_count; ++r)
          m.record_execution(allocate(vc, pivot_for_execution(policy, s), dims));
      }
      for (int bins : {1, 7, 20}) {
        const auto sum = summarize(m, bins);
        ASSERT_EQ(static_cast<int>(sum.histogram.size()), bins);
        EXPECT_EQ(std::accumulate(sum.histogram.begin(), sum.histogram.end(), std::uint64_t{0}),
                  static_cast<std::uint64_t>(L * W));
      }
    }
  }
}

TEST(RecountOracle, MatchesAfterRandomReplay) {
  GeneratorParams gp;
  gp.num_dfgs = 30;
  gp.trace_length = 80;
  const auto w = generate_random_workload(gp, 17);
  const auto dims = FabricDims::with_defaults(16, 2);
  std::vector<std::optional<VirtualConfiguration>> vcs;
  for (const auto& d : w.dfgs) {
    try {
      vcs.emplace_back(map_dfg(d, dims));
    } catch (const DoesNotFit&) {
      vcs.emplace_back();
    }
  }
  UtilizationMap m(dims);
  PivotScheduler s(dims);
  std::vector<testing::RecountedExecution> runs;
  for (const auto& e : w.trace) {
    if (!vcs[e.dfg_index]) continue;
    for (std::uint64_t r = 0; r < e.repeat_count; ++r) {
      const Pivot p = s.next_pivot();
      m.record_execution(allocate(*vcs[e.dfg_index], p, dims));
      runs.push_back({&*vcs[e.dfg_index], p.row, p.col});
    }
  }
  EXPECT_EQ(m.counts(), testing::recount(runs, dims.rows, dims.cols));
  EXPECT_EQ(m.total_executions(), runs.size());
}

TEST(Heatmap, SingleCellFormat) {
  const FabricDims dims{1, 1, 1, 2};
  const auto m = UtilizationMap::from_counts(dims, {3}, 3);
  EXPECT_EQ(export_heatmap(m), "#rows=1,cols=1,executions=3\n1.000000\n");
}

TEST(Heatmap, ExportParseExportIsStable) {
  const FabricDims dims{3, 2, 4, 4};
  const auto m = UtilizationMap::from_counts(dims, {1, 2, 0, 3, 0, 1}, 3);
  const auto text = export_heatmap(m);
  const auto h = parse_heatmap(text);
  EXPECT_EQ(h.rows, 2);
  EXPECT_EQ(h.cols, 3);
  EXPECT_EQ(h.executions, 3u);
  EXPECT_EQ(export_heatmap(h), text);
  EXPECT_EQ(export_heatmap(parse_heatmap(export_heatmap(h))), text);
}

TEST(Heatmap, ShapeMatchesFabric) {
  const auto dims = FabricDims::with_defaults(16, 2);
  UtilizationMap m(dims);
  m.record_execution(allocate(single_add(dims), {0, 0}, dims));
  const auto h = parse_heatmap(export_heatmap(m));
  ASSERT_EQ(h.rates.size(), 2u);
  for (const auto& row : h.rates) EXPECT_EQ(row.size(), 16u);
}

TEST(Heatmap, MalformedInputRejected) {
  EXPECT_THROW(parse_heatmap(""), std::runtime_error);
  EXPECT_THROW(parse_heatmap("#rows=1,cols=2,executions=1\n0.5\n"), std::runtime_error);
  EXPECT_THROW(parse_heatmap("#rows=1,cols=1,executions=1\nabc\n"), std::runtime_error);
}

TEST(SummaryJson, RoundTrip) {
  const FabricDims dims{3, 2, 4, 4};
  const auto s = summarize(UtilizationMap::from_counts(dims, {1, 2, 0, 3, 0, 1}, 3));
  const auto back = summary_from_json(summary_to_json(s));
  EXPECT_EQ(back.avg, s.avg);
  EXPECT_EQ(back.max, s.max);
  EXPECT_EQ(back.min, s.min);
  EXPECT_EQ(back.argmax, s.argmax);
  EXPECT_EQ(back.histogram, s.histogram);
}

}  // namespace
}  // namespace cgra
