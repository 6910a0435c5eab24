#include "cgra/mapper.hpp"

#include <algorithm>
#include <sstream>

namespace cgra {

void FabricDims::validate() const {
  if (cols < 1 || rows < 1 || config_lines < 1 || context_lines < 1) {
    std::ostringstream msg;
    msg << "invalid fabric dims L=" << cols << " W=" << rows << " n=" << config_lines
        << " C=" << context_lines << " (all must be >= 1)";
    throw std::invalid_argument(msg.str());
  }
}

std::vector<Cell> VirtualConfiguration::occupied_cells() const {
  std::vector<Cell> cells;
  cells.reserve(num_occupied_cells());
  for (const auto& p : placements)
    for (int c = p.col_start; c < p.col_end(); ++c) cells.push_back({p.row, c});
  return cells;
}

std::size_t VirtualConfiguration::num_occupied_cells() const {
  std::size_t n = 0;
  for (const auto& p : placements) n += static_cast<std::size_t>(p.width);
  return n;
}

VirtualConfiguration map_dfg(const Dfg& d, const FabricDims& dims) {
  return map_dfg(std::make_shared<const Dfg>(d), dims);
}

VirtualConfiguration map_dfg(std::shared_ptr<const Dfg> dfg, const FabricDims& dims) {
  dims.validate();
  const Dfg& d = *dfg;
  const auto order = topological_order(d);

  const int L = dims.cols;
  const int W = dims.rows;
  std::vector<std::vector<bool>> busy(W, std::vector<bool>(L, false));
  std::vector<bool> load_port(L, false);
  std::vector<bool> store_port(L, false);

  VirtualConfiguration vc;
  vc.placements.resize(d.ops.size());

  for (int id : order) {
    const auto& op = d.ops[id];
    const int width = op_width(op.opcode);

    int earliest = 0;
    for (const auto& s : op.sources)
      if (s.is_op()) earliest = std::max(earliest, vc.placements[s.index].col_end());

    auto port_free = [&](int col) {
      if (op.opcode == Opcode::Load) return !load_port[col];
      if (op.opcode == Opcode::Store) return !store_port[col];
      return true;
    };
    auto row_free = [&](int row, int col) {
      for (int c = col; c < col + width; ++c)
        if (busy[row][c]) return false;
      return true;
    };

    bool placed = false;
    for (int col = earliest; col + width <= L && !placed; ++col) {
      if (!port_free(col)) continue;
      for (int row = 0; row < W; ++row) {
        if (!row_free(row, col)) continue;
        for (int c = col; c < col + width; ++c) busy[row][c] = true;
        if (op.opcode == Opcode::Load) load_port[col] = true;
        if (op.opcode == Opcode::Store) store_port[col] = true;
        vc.placements[id] = {id, row, col, width};
        vc.num_cols_used = std::max(vc.num_cols_used, col + width);
        vc.num_rows_used = std::max(vc.num_rows_used, row + 1);
        placed = true;
        break;
      }
    }
    if (!placed) {
      std::ostringstream msg;
      msg << "dfg '" << d.name << "' does not fit " << L << "x" << W << ": op " << id << " ("
          << opcode_name(op.opcode) << ") has no free slot at or after column " << earliest;
      throw DoesNotFit(msg.str(), id, earliest);
    }
  }

  vc.dfg = std::move(dfg);
  return vc;
}

std::vector<std::string> validate_configuration(const VirtualConfiguration& vc,
                                                const FabricDims& dims) {
  std::vector<std::string> out;
  const Dfg& d = *vc.dfg;
  if (vc.placements.size() != d.ops.size()) {
    out.push_back("placement count " + std::to_string(vc.placements.size()) +
                  " != op count " + std::to_string(d.ops.size()));
    return out;
  }

  std::vector<std::vector<int>> owner(dims.rows, std::vector<int>(dims.cols, -1));
  std::vector<int> loads(dims.cols, 0), stores(dims.cols, 0);
  for (const auto& p : vc.placements) {
    const auto tag = "op " + std::to_string(p.op_id);
    if (p.width != op_width(d.ops[p.op_id].opcode)) out.push_back(tag + ": wrong width");
    if (p.row < 0 || p.row >= dims.rows || p.col_start < 0 || p.col_end() > dims.cols) {
      out.push_back(tag + ": out of bounds");
      continue;
    }
    for (int c = p.col_start; c < p.col_end(); ++c) {
      if (owner[p.row][c] >= 0)
        out.push_back(tag + " overlaps op " + std::to_string(owner[p.row][c]) + " at (" +
                      std::to_string(p.row) + "," + std::to_string(c) + ")");
      owner[p.row][c] = p.op_id;
    }
    if (d.ops[p.op_id].opcode == Opcode::Load && ++loads[p.col_start] > 1)
      out.push_back("two loads start at column " + std::to_string(p.col_start));
    if (d.ops[p.op_id].opcode == Opcode::Store && ++stores[p.col_start] > 1)
      out.push_back("two stores start at column " + std::to_string(p.col_start));
    for (const auto& s : d.ops[p.op_id].sources)
      if (s.is_op() && vc.placements[s.index].col_end() > p.col_start)
        out.push_back(tag + " starts before producer op " + std::to_string(s.index) +
                      " completes");
  }
  return out;
}

int context_pressure(const VirtualConfiguration& vc) {
  const Dfg& d = *vc.dfg;
  const int boundaries = vc.num_cols_used + 1;
  if (d.ops.empty()) return 0;

  // Last boundary each value must cross; outputs leave at the final boundary.
  std::vector<int> input_last(d.num_inputs, -1);
  std::vector<int> op_last(d.ops.size(), -1);
  auto use = [&](const ValueRef& v, int boundary) {
    auto& slot = v.is_input() ? input_last[v.index] : op_last[v.index];
    slot = std::max(slot, boundary);
  };
  for (const auto& op : d.ops)
    for (const auto& s : op.sources) use(s, vc.placements[op.id].col_start);
  for (const auto& o : d.outputs) use(o, vc.num_cols_used);

  std::vector<int> delta(boundaries + 1, 0);
  auto live = [&](int first, int last) {
    if (last < first) return;
    ++delta[first];
    --delta[last + 1];
  };
  for (int last : input_last) live(0, last);
  for (std::size_t i = 0; i < d.ops.size(); ++i) live(vc.placements[i].col_end(), op_last[i]);

  int best = 0;
  int running = 0;
  for (int b = 0; b < boundaries; ++b) {
    running += delta[b];
    best = std::max(best, running);
  }
  return best;
}

ContextCheck check_context_capacity(const VirtualConfiguration& vc, const FabricDims& dims) {
  const int pressure = context_pressure(vc);
  return {pressure <= dims.context_lines, pressure, dims.context_lines};
}

std::string dump_configuration(const VirtualConfiguration& vc) {
  std::ostringstream out;
  out << "config \"" << vc.dfg->name << "\" ops=" << vc.placements.size()
      << " cols=" << vc.num_cols_used << " rows=" << vc.num_rows_used << "\n";
  for (const auto& p : vc.placements)
    out << "(" << p.op_id << ", " << p.row << ", " << p.col_start << ", " << p.width << ")\n";
  return out.str();
}

}  // namespace cgra
