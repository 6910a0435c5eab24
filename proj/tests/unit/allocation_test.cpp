#include <gtest/gtest.h>

#include <set>

#include "cgra/allocation.hpp"
#include "oracles.hpp"

namespace cgra {
namespace {

using testing::DfgBuilder;
using testing::in;
using testing::op;

TEST(NextPivot, StartsAtOrigin) {
  for (auto [L, W] : {std::pair{4, 2}, {16, 2}, {32, 8}}) {
    PivotScheduler s(FabricDims::with_defaults(L, W));
    EXPECT_EQ(s.next_pivot(), (Pivot{0, 0}));
    EXPECT_EQ(s.counter(), 1u);
  }
}

TEST(NextPivot, RowAdvancesAfterFullColumnSweep) {
  EXPECT_EQ(lexicographic_pivot(16, FabricDims::with_defaults(16, 2)), (Pivot{1, 0}));
  PivotScheduler s(FabricDims::with_defaults(16, 2));
  for (int k = 0; k < 16; ++k) s.next_pivot();
  EXPECT_EQ(s.next_pivot(), (Pivot{1, 0}));
}

TEST(NextPivot, FirstPeriodEnumeratesEveryCell) {
  PivotScheduler s(FabricDims::with_defaults(16, 2));
  std::set<Pivot> seen;
  for (int k = 0; k < 32; ++k) seen.insert(s.next_pivot());
  EXPECT_EQ(seen.size(), 32u);
  // Periodic: the next period starts over.
  EXPECT_EQ(s.next_pivot(), (Pivot{0, 0}));
}

TEST(NextPivot, CustomPattern) {
  PivotScheduler s(FabricDims::with_defaults(4, 2),
                   [](std::uint64_t k, const FabricDims& d) {
                     return Pivot{static_cast<int>(k % d.rows), 0};
                   });
  EXPECT_EQ(s.next_pivot(), (Pivot{0, 0}));
  EXPECT_EQ(s.next_pivot(), (Pivot{1, 0}));
}

TEST(PivotForExecution, FixedOriginNeverMoves) {
  PivotScheduler s(FabricDims::with_defaults(4, 2));
  for (int i = 0; i < 10; ++i)
    EXPECT_EQ(pivot_for_execution(AllocationPolicy::FixedOrigin, s), (Pivot{0, 0}));
  EXPECT_EQ(s.counter(), 0u);
}

TEST(PivotForExecution, RotatingFollowsSchedule) {
  PivotScheduler s(FabricDims::with_defaults(4, 2));
  EXPECT_EQ(pivot_for_execution(AllocationPolicy::Rotating, s), (Pivot{0, 0}));
  EXPECT_EQ(pivot_for_execution(AllocationPolicy::Rotating, s), (Pivot{0, 1}));
  EXPECT_EQ(pivot_for_execution(AllocationPolicy::Rotating, s), (Pivot{0, 2}));
}

TEST(Policy, NamesRoundTrip) {
  for (auto p : {AllocationPolicy::FixedOrigin, AllocationPolicy::Rotating})
    EXPECT_EQ(parse_policy(policy_name(p)), p);
  EXPECT_FALSE(parse_policy("random").has_value());
}

VirtualConfiguration sample_vc(const FabricDims& dims) {
  DfgBuilder b(2);
  const int a = b.add(in(0), in(1));
  b.add(op(a), in(0));
  b.load(op(a));
  b.add(in(0), in(0));
  return map_dfg(b.build(), dims);
}

TEST(Allocate, OriginPivotIsIdentity) {
  const auto dims = FabricDims::with_defaults(16, 2);
  const auto vc = sample_vc(dims);
  const auto alloc = allocate(vc, {0, 0}, dims);
  ASSERT_EQ(alloc.cell_map.size(), vc.placements.size());
  for (std::size_t i = 0; i < vc.placements.size(); ++i) {
    const auto& p = vc.placements[i];
    for (int k = 0; k < p.width; ++k)
      EXPECT_EQ(alloc.cell_map[i][k], (Cell{p.row, p.col_start + k}));
  }
}

TEST(Allocate, SingleCellModularTranslation) {
  const FabricDims dims = FabricDims::with_defaults(4, 2);
  EXPECT_EQ(translate({1, 3}, {1, 2}, dims), (Cell{0, 1}));
  VirtualConfiguration vc;
  vc.dfg = std::make_shared<const Dfg>(DfgBuilder(1).build());
  vc.placements = {{0, 1, 3, 1}};
  vc.num_cols_used = 4;
  vc.num_rows_used = 2;
  EXPECT_EQ(allocate(vc, {1, 2}, dims).cell_map[0], (std::vector<Cell>{{0, 1}}));
}

TEST(Allocate, MemoryOpWrapsAcrossRightEdge) {
  const auto dims = FabricDims::with_defaults(16, 2);
  VirtualConfiguration vc;
  vc.dfg = std::make_shared<const Dfg>(DfgBuilder(1).build());
  vc.placements = {{0, 0, 12, 4}};  // logical columns 12..15
  vc.num_cols_used = 16;
  vc.num_rows_used = 1;
  const auto alloc = allocate(vc, {0, 2}, dims);
  EXPECT_EQ(alloc.cell_map[0], (std::vector<Cell>{{0, 14}, {0, 15}, {0, 0}, {0, 1}}));
}

TEST(Allocate, RejectsPivotOutsideFabric) {
  const auto dims = FabricDims::with_defaults(4, 2);
  const auto vc = sample_vc(FabricDims::with_defaults(8, 2));
  EXPECT_THROW(allocate(vc, {2, 0}, dims), std::out_of_range);
  EXPECT_THROW(allocate(vc, {0, 4}, dims), std::out_of_range);
}

TEST(AllocateProperty, BijectionForEveryPivotOnSmallFabrics) {
  GeneratorParams gp;
  gp.memory_op_fraction = 0.2;
  for (auto [L, W] : {std::pair{4, 2}, {6, 3}, {8, 2}}) {
    const auto dims = FabricDims::with_defaults(L, W);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      VirtualConfiguration vc;
      try {
        vc = map_dfg(generate_random_dfg(gp, 1 + seed % 6, seed), dims);
      } catch (const DoesNotFit&) {
        continue;
      }
      const auto logical = vc.occupied_cells();
      for (int r = 0; r < W; ++r)
        for (int c = 0; c < L; ++c) {
          const auto alloc = allocate(vc, {r, c}, dims);
          std::set<Cell> phys;
          for (const auto& cells : alloc.cell_map) phys.insert(cells.begin(), cells.end());
          EXPECT_EQ(phys.size(), logical.size());
          // Inverse translation recovers the logical cell set.
          std::set<Cell> back;
          for (const Cell& p : phys) back.insert({(p.row - r + W) % W, (p.col - c + L) % L});
          EXPECT_EQ(back, std::set<Cell>(logical.begin(), logical.end()));
        }
    }
  }
}

TEST(AllocateProperty, FullPeriodOccupiesEveryCellEqually) {
  const auto dims = FabricDims::with_defaults(8, 2);
  const auto vc = sample_vc(dims);
  PivotScheduler s(dims);
  std::vector<int> counts(dims.num_cells(), 0);
  for (int k = 0; k < dims.num_cells(); ++k) {
    const auto alloc = allocate(vc, pivot_for_execution(AllocationPolicy::Rotating, s), dims);
    for (const auto& cells : alloc.cell_map)
      for (const Cell& c : cells) ++counts[c.row * dims.cols + c.col];
  }
  for (int c : counts) EXPECT_EQ(c, static_cast<int>(vc.num_occupied_cells()));
}

}  // namespace
}  // namespace cgra
