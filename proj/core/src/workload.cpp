#include "cgra/workload.hpp"

#include <functional>
#include <queue>
#include <sstream>

namespace cgra {

namespace {

constexpr std::string_view kOpcodeNames[] = {"add", "sub", "and", "or",   "xor",
                                             "shl", "shr", "cmplt", "load", "store"};

std::string describe(const ValueRef& v) {
  return (v.is_input() ? "in" : "op") + std::to_string(v.index);
}

}  // namespace

std::string_view opcode_name(Opcode op) { return kOpcodeNames[static_cast<std::size_t>(op)]; }

std::optional<Opcode> parse_opcode(std::string_view name) {
  for (Opcode op : kAllOpcodes)
    if (opcode_name(op) == name) return op;
  return std::nullopt;
}

std::uint64_t Workload::total_executions() const {
  std::uint64_t total = 0;
  for (const auto& e : trace) total += e.repeat_count;
  return total;
}

std::vector<DfgViolation> check_dfg(const Dfg& d) {
  std::vector<DfgViolation> violations;
  const int n = static_cast<int>(d.ops.size());

  if (d.num_inputs < 0)
    violations.push_back({std::nullopt, "negative input count " + std::to_string(d.num_inputs)});

  for (int i = 0; i < n; ++i)
    if (d.ops[i].id != i)
      violations.push_back({i, "op at position " + std::to_string(i) + " has id " +
                                   std::to_string(d.ops[i].id) + " (ids must be dense 0..n-1)"});

  // Inputs must be in range; op refs must exist and produce a value.
  auto check_ref = [&](const ValueRef& v, std::optional<int> owner, const std::string& where) {
    if (v.is_input()) {
      if (v.index < 0 || v.index >= d.num_inputs)
        violations.push_back({owner, "dangling input ref " + describe(v) + " at " + where});
      return;
    }
    if (v.index < 0 || v.index >= n) {
      violations.push_back(
          {v.index, "dangling op ref " + std::to_string(v.index) + " at " + where});
      return;
    }
    if (!produces_value(d.ops[v.index].opcode))
      violations.push_back({owner, where + " consumes store op " + std::to_string(v.index) +
                                       ", which produces no value"});
  };

  for (int i = 0; i < n; ++i) {
    const auto& op = d.ops[i];
    const std::string where = "op " + std::to_string(i);
    if (op.sources.size() != arity(op.opcode)) {
      std::ostringstream msg;
      msg << "arity: " << where << " (" << opcode_name(op.opcode) << ") has "
          << op.sources.size() << " sources, expected " << arity(op.opcode);
      violations.push_back({i, msg.str()});
    }
    for (const auto& s : op.sources) check_ref(s, i, where);
  }
  for (std::size_t k = 0; k < d.outputs.size(); ++k)
    check_ref(d.outputs[k], std::nullopt, "output " + std::to_string(k));

  // Cycle detection by DFS over in-range op references, ascending ids.
  enum class Mark : std::uint8_t { White, Grey, Black };
  std::vector<Mark> mark(n, Mark::White);
  std::vector<bool> reported(n, false);
  std::function<void(int)> visit = [&](int u) {
    mark[u] = Mark::Grey;
    for (const auto& s : d.ops[u].sources) {
      if (!s.is_op() || s.index < 0 || s.index >= n) continue;
      if (mark[s.index] == Mark::Grey) {
        if (!reported[s.index]) {
          violations.push_back({s.index, "cycle at op " + std::to_string(s.index)});
          reported[s.index] = true;
        }
      } else if (mark[s.index] == Mark::White) {
        visit(s.index);
      }
    }
    mark[u] = Mark::Black;
  };
  for (int i = 0; i < n; ++i)
    if (mark[i] == Mark::White) visit(i);

  return violations;
}

std::vector<std::string> validate_dfg(const Dfg& d) {
  std::vector<std::string> messages;
  for (auto& v : check_dfg(d)) messages.push_back(std::move(v.message));
  return messages;
}

void validate_workload(const Workload& w) {
  for (std::size_t k = 0; k < w.dfgs.size(); ++k) {
    const auto violations = check_dfg(w.dfgs[k]);
    if (!violations.empty())
      throw SemanticError(
          "dfg " + std::to_string(k) + " '" + w.dfgs[k].name + "': " + violations.front().message,
          violations.front().op_id);
  }
  if (w.trace.empty()) throw SemanticError("empty trace");
  for (std::size_t i = 0; i < w.trace.size(); ++i) {
    if (w.trace[i].dfg_index >= w.dfgs.size())
      throw SemanticError("trace entry " + std::to_string(i) + " references dfg " +
                          std::to_string(w.trace[i].dfg_index) + " of " +
                          std::to_string(w.dfgs.size()));
    if (w.trace[i].repeat_count < 1)
      throw SemanticError("trace entry " + std::to_string(i) + " has repeat count 0");
  }
}

std::vector<int> topological_order(const Dfg& d) {
  const int n = static_cast<int>(d.ops.size());
  std::vector<int> indegree(n, 0);
  std::vector<std::vector<int>> consumers(n);
  for (int i = 0; i < n; ++i) {
    for (const auto& s : d.ops[i].sources) {
      if (!s.is_op()) continue;
      if (s.index < 0 || s.index >= n)
        throw SemanticError("dangling op ref " + std::to_string(s.index), i);
      consumers[s.index].push_back(i);
      ++indegree[i];
    }
  }

  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push(i);

  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    const int u = ready.top();
    ready.pop();
    order.push_back(u);
    for (int v : consumers[u])
      if (--indegree[v] == 0) ready.push(v);
  }
  if (static_cast<int>(order.size()) != n) {
    int stuck = 0;
    while (indegree[stuck] == 0) ++stuck;
    throw CycleError("cycle detected involving op " + std::to_string(stuck), stuck);
  }
  return order;
}

}  // namespace cgra
