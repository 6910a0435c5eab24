#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "cgra/workload.hpp"

namespace cgra {

/// Fabric geometry: `cols` (L) columns of `rows` (W) functional units, fed by
/// `config_lines` (n) configuration buses and `context_lines` (C) operand channels.
struct FabricDims {
  int cols = 16;
  int rows = 2;
  int config_lines = 4;
  int context_lines = 4;

  /// Dimensions with the default line counts: n = 4, C = 2 * rows.
  static FabricDims with_defaults(int cols, int rows) { return {cols, rows, 4, 2 * rows}; }

  int num_cells() const { return cols * rows; }

  /// Throws std::invalid_argument unless every field is >= 1.
  void validate() const;

  friend bool operator==(const FabricDims&, const FabricDims&) = default;
};

/// ALU kinds take one column (half a cycle); LOAD/STORE take four (two cycles).
constexpr int op_width(Opcode op) { return is_memory(op) ? 4 : 1; }

struct Placement {
  int op_id = 0;
  int row = 0;
  int col_start = 0;
  int width = 1;

  int col_end() const { return col_start + width; }

  friend bool operator==(const Placement&, const Placement&) = default;
};

struct Cell {
  int row = 0;
  int col = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// A DFG placed onto logical fabric coordinates.
struct VirtualConfiguration {
  std::shared_ptr<const Dfg> dfg;
  std::vector<Placement> placements;  ///< indexed by op id
  int num_cols_used = 0;
  int num_rows_used = 0;

  /// Every logical cell covered by a placement, in placement order.
  std::vector<Cell> occupied_cells() const;
  std::size_t num_occupied_cells() const;

  friend bool operator==(const VirtualConfiguration& a, const VirtualConfiguration& b) {
    return *a.dfg == *b.dfg && a.placements == b.placements &&
           a.num_cols_used == b.num_cols_used && a.num_rows_used == b.num_rows_used;
  }
};

/// map_dfg could not place `op_id`; `frontier_col` is the earliest legal column it had.
class DoesNotFit : public std::runtime_error {
 public:
  DoesNotFit(const std::string& what, int op_id, int frontier_col)
      : std::runtime_error(what), op_id_(op_id), frontier_col_(frontier_col) {}
  int op_id() const { return op_id_; }
  int frontier_col() const { return frontier_col_; }

 private:
  int op_id_;
  int frontier_col_;
};

/// Greedy ASAP first-fit placement. Ops are visited in topological order; each is placed
/// at the lowest column >= its producers' completion, taking the lowest free row there.
VirtualConfiguration map_dfg(const Dfg& d, const FabricDims& dims);
VirtualConfiguration map_dfg(std::shared_ptr<const Dfg> d, const FabricDims& dims);

/// Invariant violations of a virtual configuration (overlap, bounds, ordering, ports).
std::vector<std::string> validate_configuration(const VirtualConfiguration& vc,
                                                const FabricDims& dims);

/// Maximum number of live values crossing any column boundary 0..num_cols_used.
int context_pressure(const VirtualConfiguration& vc);

struct ContextCheck {
  bool ok = true;
  int pressure = 0;
  int capacity = 0;
};

ContextCheck check_context_capacity(const VirtualConfiguration& vc, const FabricDims& dims);

/// Debug dump: a header line then one `(op, row, col_start, width)` tuple per line.
std::string dump_configuration(const VirtualConfiguration& vc);

}  // namespace cgra
