#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string_view>
#include <optional>
#include <vector>

#include "cgra/mapper.hpp"

namespace cgra {

/// Offset applied to a virtual configuration for one execution. The whole
/// configuration moves with it.
struct Pivot {
  int row = 0;
  int col = 0;

  friend bool operator==(const Pivot&, const Pivot&) = default;
  friend auto operator<=>(const Pivot&, const Pivot&) = default;
};

/// Maps an execution counter to a pivot. Must stay within the fabric.
using PivotPattern = std::function<Pivot(std::uint64_t k, const FabricDims& dims)>;

/// Column-fastest sweep: col = k mod L, row = floor(k / L) mod W.
Pivot lexicographic_pivot(std::uint64_t k, const FabricDims& dims);

/// Emits one pivot per configuration execution. The counter is global to a
/// simulation run and never resets.
class PivotScheduler {
 public:
  explicit PivotScheduler(FabricDims dims, PivotPattern pattern = lexicographic_pivot);

  Pivot next_pivot();
  Pivot peek() const;

  std::uint64_t counter() const { return counter_; }
  const FabricDims& dims() const { return dims_; }

 private:
  FabricDims dims_;
  PivotPattern pattern_;
  std::uint64_t counter_ = 0;
};

enum class AllocationPolicy : std::uint8_t { FixedOrigin, Rotating };

std::string_view policy_name(AllocationPolicy p);  ///< "fixed" / "rotating"
std::optional<AllocationPolicy> parse_policy(std::string_view name);

/// FixedOrigin always yields (0,0) and leaves the scheduler untouched.
Pivot pivot_for_execution(AllocationPolicy policy, PivotScheduler& scheduler);

/// A virtual configuration bound to physical cells by toroidal translation.
struct PhysicalAllocation {
  FabricDims dims;
  Pivot pivot;
  int columns_used = 0;
  std::shared_ptr<const Dfg> dfg;
  std::vector<Placement> logical;  ///< the virtual configuration's placements
  /// Per placement (indexed like vc.placements): the physical cells it covers, in
  /// logical column order.
  std::vector<std::vector<Cell>> cell_map;

  std::size_t num_cells() const;
};

/// Physical cell of logical (row, col) under `pivot`.
constexpr Cell translate(Cell logical, Pivot pivot, const FabricDims& dims) {
  return {(logical.row + pivot.row) % dims.rows, (logical.col + pivot.col) % dims.cols};
}

/// Throws std::out_of_range when the pivot lies outside the fabric.
PhysicalAllocation allocate(const VirtualConfiguration& vc, Pivot pivot, const FabricDims& dims);

}  // namespace cgra
