#include "cgra/allocation.hpp"

#include <stdexcept>
#include <string>

namespace cgra {

Pivot lexicographic_pivot(std::uint64_t k, const FabricDims& dims) {
  const auto L = static_cast<std::uint64_t>(dims.cols);
  const auto W = static_cast<std::uint64_t>(dims.rows);
  return {static_cast<int>((k / L) % W), static_cast<int>(k % L)};
}

PivotScheduler::PivotScheduler(FabricDims dims, PivotPattern pattern)
    : dims_(dims), pattern_(std::move(pattern)) {
  dims_.validate();
  if (!pattern_) throw std::invalid_argument("empty pivot pattern");
}

Pivot PivotScheduler::peek() const { return pattern_(counter_, dims_); }

Pivot PivotScheduler::next_pivot() {
  const Pivot p = peek();
  ++counter_;
  return p;
}

std::string_view policy_name(AllocationPolicy p) {
  return p == AllocationPolicy::FixedOrigin ? "fixed" : "rotating";
}

std::optional<AllocationPolicy> parse_policy(std::string_view name) {
  if (name == "fixed") return AllocationPolicy::FixedOrigin;
  if (name == "rotating") return AllocationPolicy::Rotating;
  return std::nullopt;
}

Pivot pivot_for_execution(AllocationPolicy policy, PivotScheduler& scheduler) {
  if (policy == AllocationPolicy::FixedOrigin) return {0, 0};
  return scheduler.next_pivot();
}

std::size_t PhysicalAllocation::num_cells() const {
  std::size_t n = 0;
  for (const auto& cells : cell_map) n += cells.size();
  return n;
}

PhysicalAllocation allocate(const VirtualConfiguration& vc, Pivot pivot, const FabricDims& dims) {
  if (pivot.row < 0 || pivot.row >= dims.rows || pivot.col < 0 || pivot.col >= dims.cols)
    throw std::out_of_range("pivot (" + std::to_string(pivot.row) + "," +
                            std::to_string(pivot.col) + ") outside fabric");
  PhysicalAllocation alloc{dims, pivot, vc.num_cols_used, vc.dfg, vc.placements, {}};
  alloc.cell_map.reserve(vc.placements.size());
  for (const auto& p : vc.placements) {
    std::vector<Cell> cells;
    cells.reserve(p.width);
    for (int c = p.col_start; c < p.col_end(); ++c)
      cells.push_back(translate({p.row, c}, pivot, dims));
    alloc.cell_map.push_back(std::move(cells));
  }
  return alloc;
}

}  // namespace cgra
