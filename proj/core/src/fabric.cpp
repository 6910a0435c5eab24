#include "cgra/fabric.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace cgra {

ReconfigPlan reconfig_plan(Pivot pivot, const FabricDims& dims) {
  dims.validate();
  if (pivot.row < 0 || pivot.row >= dims.rows || pivot.col < 0 || pivot.col >= dims.cols)
    throw std::out_of_range("pivot outside fabric");

  const int L = dims.cols;
  ReconfigPlan plan;
  plan.line_select.resize(L);
  plan.barrel_shift_rows.assign(L, pivot.row);
  plan.wrap_feedback.assign(L, false);
  for (int pc = 0; pc < L; ++pc) {
    const int lc = ((pc - pivot.col) % L + L) % L;
    plan.line_select[pc] = lc % dims.config_lines;
  }
  if (pivot.col != 0) plan.wrap_feedback[pivot.col] = true;
  plan.reconfig_cycles = reconfig_cycles(dims);
  return plan;
}

std::string format_plan(const ReconfigPlan& plan) {
  std::ostringstream out;
  out << "column,line_select,shift,wrap\n";
  for (std::size_t pc = 0; pc < plan.line_select.size(); ++pc)
    out << pc << "," << plan.line_select[pc] << "," << plan.barrel_shift_rows[pc] << ","
        << (plan.wrap_feedback[pc] ? 1 : 0) << "\n";
  out << "# reconfig_cycles=" << plan.reconfig_cycles << "\n";
  return out.str();
}

std::uint32_t MemoryModel::read(std::uint32_t address) const {
  auto it = words_.find(address);
  return it == words_.end() ? 0u : it->second;
}

void MemoryModel::write(std::uint32_t address, std::uint32_t value) {
  if (value == 0)
    words_.erase(address);
  else
    words_[address] = value;
}

std::uint32_t alu(Opcode op, std::uint32_t a, std::uint32_t b) {
  switch (op) {
    case Opcode::Add: return a + b;
    case Opcode::Sub: return a - b;
    case Opcode::And: return a & b;
    case Opcode::Or: return a | b;
    case Opcode::Xor: return a ^ b;
    case Opcode::Shl: return a << (b & 31u);
    case Opcode::Shr: return a >> (b & 31u);
    case Opcode::CmpLt:
      return static_cast<std::int32_t>(a) < static_cast<std::int32_t>(b) ? 1u : 0u;
    case Opcode::Load:
    case Opcode::Store: break;
  }
  throw std::invalid_argument("alu: memory opcode " + std::string(opcode_name(op)));
}

ExecResult execute(const VirtualConfiguration& vc, Pivot pivot,
                   std::span<const std::uint32_t> inputs, MemoryModel memory,
                   const FabricDims& dims) {
  const Dfg& d = *vc.dfg;
  if (static_cast<int>(inputs.size()) != d.num_inputs)
    throw std::invalid_argument("execute: expected " + std::to_string(d.num_inputs) +
                                " inputs, got " + std::to_string(inputs.size()));
  if (vc.num_cols_used > dims.cols || vc.num_rows_used > dims.rows)
    throw std::invalid_argument("execute: configuration larger than fabric");

  const auto alloc = allocate(vc, pivot, dims);

  // Physical cell where each op begins.
  std::vector<std::vector<int>> starts(dims.rows, std::vector<int>(dims.cols, -1));
  for (std::size_t i = 0; i < alloc.cell_map.size(); ++i) {
    const Cell& head = alloc.cell_map[i].front();
    starts[head.row][head.col] = static_cast<int>(i);
  }

  std::vector<std::uint32_t> values(d.ops.size(), 0);
  auto read = [&](const ValueRef& v) { return v.is_input() ? inputs[v.index] : values[v.index]; };

  struct PendingStore {
    int completes_at;
    std::uint32_t address;
    std::uint32_t value;
  };
  std::vector<PendingStore> pending;

  for (int step = 0; step <= vc.num_cols_used; ++step) {
    std::erase_if(pending, [&](const PendingStore& s) {
      if (s.completes_at != step) return false;
      memory.write(s.address, s.value);
      return true;
    });
    if (step == vc.num_cols_used) break;

    const int pc = (step + pivot.col) % dims.cols;
    for (int k = 0; k < dims.rows; ++k) {
      const int pr = (k + pivot.row) % dims.rows;
      const int id = starts[pr][pc];
      if (id < 0) continue;
      const auto& op = d.ops[id];
      const int completes_at = step + op_width(op.opcode);
      switch (op.opcode) {
        case Opcode::Load:
          values[id] = memory.read(read(op.sources[0]));
          break;
        case Opcode::Store:
          pending.push_back({completes_at, read(op.sources[0]), read(op.sources[1])});
          break;
        default:
          values[id] = alu(op.opcode, read(op.sources[0]), read(op.sources[1]));
      }
    }
  }

  ExecResult result;
  result.outputs.reserve(d.outputs.size());
  for (const auto& o : d.outputs) result.outputs.push_back(read(o));
  result.memory = std::move(memory);
  result.columns_used = vc.num_cols_used;
  result.latency_cycles = 0.5 * vc.num_cols_used;
  return result;
}

bool crosses_right_edge(const PhysicalAllocation& alloc) {
  return alloc.pivot.col != 0 && alloc.columns_used > alloc.dims.cols - alloc.pivot.col;
}

std::vector<std::string> check_physical_legality(const PhysicalAllocation& alloc,
                                                 const ReconfigPlan& plan,
                                                 const FabricDims& dims) {
  std::vector<std::string> out;
  const int L = dims.cols;
  const int W = dims.rows;
  const auto sz = static_cast<std::size_t>(L);
  if (plan.line_select.size() != sz || plan.barrel_shift_rows.size() != sz ||
      plan.wrap_feedback.size() != sz) {
    out.push_back("plan width does not match fabric columns");
    return out;
  }
  if (plan.reconfig_cycles != reconfig_cycles(dims))
    out.push_back("reconfig_cycles " + std::to_string(plan.reconfig_cycles) + " != " +
                  std::to_string(reconfig_cycles(dims)));
  if (alloc.cell_map.size() != alloc.logical.size()) {
    out.push_back("cell map does not cover every placement");
    return out;
  }

  std::set<Cell> seen;
  for (std::size_t i = 0; i < alloc.logical.size(); ++i) {
    const auto& p = alloc.logical[i];
    const auto& cells = alloc.cell_map[i];
    const auto tag = "op " + std::to_string(p.op_id);
    if (cells.size() != static_cast<std::size_t>(p.width)) {
      out.push_back(tag + ": cell count differs from width");
      continue;
    }
    for (int k = 0; k < p.width; ++k) {
      const Cell logical{p.row, p.col_start + k};
      const Cell phys = cells[k];
      if (phys.row < 0 || phys.row >= W || phys.col < 0 || phys.col >= L) {
        out.push_back(tag + ": physical cell outside fabric");
        continue;
      }
      if (!seen.insert(phys).second)
        out.push_back(tag + ": physical cell (" + std::to_string(phys.row) + "," +
                      std::to_string(phys.col) + ") used twice");
      if (plan.line_select[phys.col] != logical.col % dims.config_lines)
        out.push_back(tag + ": column " + std::to_string(phys.col) + " selects line " +
                      std::to_string(plan.line_select[phys.col]) + ", needs line " +
                      std::to_string(logical.col % dims.config_lines));
      if ((logical.row + plan.barrel_shift_rows[phys.col]) % W != phys.row)
        out.push_back(tag + ": column " + std::to_string(phys.col) + " shift " +
                      std::to_string(plan.barrel_shift_rows[phys.col]) + " does not move row " +
                      std::to_string(logical.row) + " to row " + std::to_string(phys.row));
    }
  }

  // Feedback may only sit on the column hosting logical column 0.
  const int head_col = alloc.pivot.col;
  for (int pc = 0; pc < L; ++pc)
    if (plan.wrap_feedback[pc] && pc != head_col)
      out.push_back("wrap feedback on column " + std::to_string(pc) +
                    ", which does not host logical column 0");
  if (crosses_right_edge(alloc) && !plan.wrap_feedback[head_col])
    out.push_back("configuration crosses the right edge but wrap feedback is disabled");
  return out;
}

}  // namespace cgra
