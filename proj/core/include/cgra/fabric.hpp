#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cgra/allocation.hpp"

namespace cgra {

/// Reconfiguration-logic settings that realize a pivot.
///
/// Baseline wiring binds physical column i to configuration line i mod n. Moving the
/// configuration horizontally changes which line each column listens to; moving it
/// vertically rotates the column's configuration bits by `barrel_shift_rows`. When the
/// configuration starts anywhere other than column 0, the feedback mux lets the last
/// column drive the first so values can wrap around the right edge.
struct ReconfigPlan {
  std::vector<int> line_select;        ///< per physical column, 0..n-1
  std::vector<int> barrel_shift_rows;  ///< per physical column, 0..W-1
  std::vector<bool> wrap_feedback;     ///< per physical column
  int reconfig_cycles = 0;

  friend bool operator==(const ReconfigPlan&, const ReconfigPlan&) = default;
};

ReconfigPlan reconfig_plan(Pivot pivot, const FabricDims& dims);

/// Cycles needed to load a configuration through n lines: ceil(L / n).
constexpr int reconfig_cycles(const FabricDims& dims) {
  return (dims.cols + dims.config_lines - 1) / dims.config_lines;
}

/// Table with columns `column,line_select,shift,wrap`.
std::string format_plan(const ReconfigPlan& plan);

/// Sparse 32-bit word memory; unwritten addresses read as 0.
class MemoryModel {
 public:
  std::uint32_t read(std::uint32_t address) const;
  void write(std::uint32_t address, std::uint32_t value);
  const std::map<std::uint32_t, std::uint32_t>& words() const { return words_; }

  friend bool operator==(const MemoryModel&, const MemoryModel&) = default;

 private:
  std::map<std::uint32_t, std::uint32_t> words_;  // zero words are not stored
};

struct ExecResult {
  std::vector<std::uint32_t> outputs;
  MemoryModel memory;
  int columns_used = 0;
  double latency_cycles = 0.0;  ///< one column is half a processor cycle
};

/// 32-bit wrapping result of an ALU opcode. Shifts use the low five bits of `b`;
/// SHR is logical; CMPLT is a signed comparison yielding 0 or 1.
std::uint32_t alu(Opcode op, std::uint32_t a, std::uint32_t b);

/// Runs the configuration at `pivot`, walking physical columns from the pivot with
/// wrap-around. Ops are issued per column; a STORE's write becomes visible at its
/// completion column, before loads starting in that column read memory.
ExecResult execute(const VirtualConfiguration& vc, Pivot pivot, std::span<const std::uint32_t> inputs,
                   MemoryModel memory, const FabricDims& dims);

/// True when the allocation's columns cross the physical right edge.
bool crosses_right_edge(const PhysicalAllocation& alloc);

/// Empty when `plan` realizes `alloc`: bijective cell map, every placed cell fed by the
/// line and row shift of its logical column, and wrap feedback present where needed.
std::vector<std::string> check_physical_legality(const PhysicalAllocation& alloc,
                                                 const ReconfigPlan& plan,
                                                 const FabricDims& dims);

}  // namespace cgra
