#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cgra {

/// Operation kinds supported by the functional units.
enum class Opcode : std::uint8_t { Add, Sub, And, Or, Xor, Shl, Shr, CmpLt, Load, Store };

inline constexpr Opcode kAllOpcodes[] = {Opcode::Add, Opcode::Sub,   Opcode::And,  Opcode::Or,
                                         Opcode::Xor, Opcode::Shl,   Opcode::Shr,  Opcode::CmpLt,
                                         Opcode::Load, Opcode::Store};

constexpr bool is_memory(Opcode op) { return op == Opcode::Load || op == Opcode::Store; }

/// Number of sources an opcode consumes (LOAD: address; STORE: address, value).
constexpr std::size_t arity(Opcode op) { return op == Opcode::Load ? 1 : 2; }

/// STORE is the only kind that does not produce a value.
constexpr bool produces_value(Opcode op) { return op != Opcode::Store; }

/// Lowercase enum name, as used in workload files.
std::string_view opcode_name(Opcode op);
std::optional<Opcode> parse_opcode(std::string_view name);

/// Reference to a value: either an external DFG input or the result of an operation.
struct ValueRef {
  enum class Kind : std::uint8_t { Input, Op };
  Kind kind = Kind::Input;
  int index = 0;

  static constexpr ValueRef input(int i) { return {Kind::Input, i}; }
  static constexpr ValueRef op(int id) { return {Kind::Op, id}; }
  constexpr bool is_input() const { return kind == Kind::Input; }
  constexpr bool is_op() const { return kind == Kind::Op; }

  friend bool operator==(const ValueRef&, const ValueRef&) = default;
};

struct Operation {
  int id = 0;
  Opcode opcode = Opcode::Add;
  /// ALU: two operands. LOAD: {address}. STORE: {address, value}.
  std::vector<ValueRef> sources;

  std::optional<ValueRef> address_source() const {
    if (is_memory(opcode) && !sources.empty()) return sources[0];
    return std::nullopt;
  }
  std::optional<ValueRef> store_value() const {
    if (opcode == Opcode::Store && sources.size() > 1) return sources[1];
    return std::nullopt;
  }

  friend bool operator==(const Operation&, const Operation&) = default;
};

/// Straight-line dataflow graph. Op ids are dense: ops[i].id == i.
struct Dfg {
  std::string name;
  int num_inputs = 0;
  std::vector<Operation> ops;
  std::vector<ValueRef> outputs;

  friend bool operator==(const Dfg&, const Dfg&) = default;
};

struct TraceEntry {
  std::size_t dfg_index = 0;
  std::uint64_t repeat_count = 1;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct Workload {
  std::vector<Dfg> dfgs;
  std::vector<TraceEntry> trace;

  std::uint64_t total_executions() const;

  friend bool operator==(const Workload&, const Workload&) = default;
};

/// Malformed workload text. `position` is the byte offset reported by the JSON reader,
/// or the location of the offending element when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Structurally well-formed workload that violates an invariant.
class SemanticError : public std::runtime_error {
 public:
  SemanticError(const std::string& what, std::optional<int> op_id = std::nullopt)
      : std::runtime_error(what), op_id_(op_id) {}
  std::optional<int> op_id() const { return op_id_; }

 private:
  std::optional<int> op_id_;
};

/// Thrown by topological_order on a cyclic graph.
class CycleError : public std::runtime_error {
 public:
  CycleError(const std::string& what, int op_id) : std::runtime_error(what), op_id_(op_id) {}
  int op_id() const { return op_id_; }

 private:
  int op_id_;
};

struct DfgViolation {
  std::optional<int> op_id;  ///< offending op, when the violation names one
  std::string message;
};

/// Structured form of validate_dfg.
std::vector<DfgViolation> check_dfg(const Dfg& d);

/// Returns every invariant violation of `d` as a human-readable message; empty means valid.
std::vector<std::string> validate_dfg(const Dfg& d);

/// Checks the workload-level invariants plus every DFG. Throws SemanticError.
void validate_workload(const Workload& w);

/// Kahn's algorithm with ascending-id tie breaking. Throws CycleError.
std::vector<int> topological_order(const Dfg& d);

inline constexpr int kWorkloadFormatVersion = 1;

Workload parse_workload(std::string_view text);
std::string serialize_workload(const Workload& w);

struct GeneratorParams {
  std::size_t num_dfgs = 10;
  std::size_t min_ops = 2;
  std::size_t max_ops = 8;
  double memory_op_fraction = 0.2;
  int num_inputs = 4;
  std::size_t trace_length = 32;
  std::uint64_t max_repeat = 8;
  /// Probability that an operand is drawn from the DFG inputs rather than an earlier result.
  double input_operand_fraction = 0.5;
};

/// Thrown when GeneratorParams cannot produce a valid workload.
class InfeasibleParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pure function of (params, seed).
Workload generate_random_workload(const GeneratorParams& params, std::uint64_t seed);

/// Single random DFG with exactly `num_ops` operations.
Dfg generate_random_dfg(const GeneratorParams& params, std::size_t num_ops, std::uint64_t seed,
                        std::string name = "dfg");

}  // namespace cgra
