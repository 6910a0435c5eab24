#include <random>

#include "cgra/workload.hpp"

namespace cgra {

namespace {

constexpr Opcode kAluOpcodes[] = {Opcode::Add, Opcode::Sub, Opcode::And, Opcode::Or,
                                  Opcode::Xor, Opcode::Shl, Opcode::Shr, Opcode::CmpLt};

void check_params(const GeneratorParams& p) {
  if (p.num_dfgs == 0) throw InfeasibleParams("num_dfgs must be >= 1");
  if (p.min_ops > p.max_ops) throw InfeasibleParams("min_ops > max_ops");
  if (!(p.memory_op_fraction >= 0.0 && p.memory_op_fraction <= 1.0))
    throw InfeasibleParams("memory_op_fraction outside [0,1]");
  if (!(p.input_operand_fraction >= 0.0 && p.input_operand_fraction <= 1.0))
    throw InfeasibleParams("input_operand_fraction outside [0,1]");
  if (p.num_inputs < 0) throw InfeasibleParams("num_inputs must be >= 0");
  if (p.num_inputs == 0 && p.max_ops > 0)
    throw InfeasibleParams("operations need sources but num_inputs is 0");
  if (p.trace_length == 0) throw InfeasibleParams("trace_length must be >= 1");
  if (p.max_repeat == 0) throw InfeasibleParams("max_repeat must be >= 1");
}

Dfg make_dfg(const GeneratorParams& p, std::size_t num_ops, std::mt19937_64& rng,
             std::string name) {
  Dfg d;
  d.name = std::move(name);
  d.num_inputs = p.num_inputs;

  std::bernoulli_distribution is_mem(p.memory_op_fraction);
  std::bernoulli_distribution is_load(0.5);
  std::bernoulli_distribution from_input(p.input_operand_fraction);
  std::uniform_int_distribution<std::size_t> alu_kind(0, std::size(kAluOpcodes) - 1);
  std::uniform_int_distribution<int> input_index(0, std::max(0, p.num_inputs - 1));

  std::vector<int> producers;  // ids of earlier value-producing ops
  std::vector<bool> consumed(num_ops, false);

  auto pick_source = [&]() -> ValueRef {
    if (producers.empty() || from_input(rng)) return ValueRef::input(input_index(rng));
    std::uniform_int_distribution<std::size_t> pick(0, producers.size() - 1);
    const int id = producers[pick(rng)];
    consumed[id] = true;
    return ValueRef::op(id);
  };

  for (std::size_t i = 0; i < num_ops; ++i) {
    Operation op;
    op.id = static_cast<int>(i);
    op.opcode = is_mem(rng) ? (is_load(rng) ? Opcode::Load : Opcode::Store)
                            : kAluOpcodes[alu_kind(rng)];
    for (std::size_t k = 0; k < arity(op.opcode); ++k) op.sources.push_back(pick_source());
    if (produces_value(op.opcode)) producers.push_back(op.id);
    d.ops.push_back(std::move(op));
  }

  for (int id : producers)
    if (!consumed[id]) d.outputs.push_back(ValueRef::op(id));
  return d;
}

}  // namespace

Dfg generate_random_dfg(const GeneratorParams& params, std::size_t num_ops, std::uint64_t seed,
                        std::string name) {
  GeneratorParams p = params;
  p.min_ops = p.max_ops = num_ops;
  check_params(p);
  std::mt19937_64 rng(seed);
  return make_dfg(p, num_ops, rng, std::move(name));
}

Workload generate_random_workload(const GeneratorParams& params, std::uint64_t seed) {
  check_params(params);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(params.min_ops, params.max_ops);

  Workload w;
  for (std::size_t k = 0; k < params.num_dfgs; ++k)
    w.dfgs.push_back(make_dfg(params, size(rng), rng, "dfg" + std::to_string(k)));

  std::uniform_int_distribution<std::size_t> which(0, params.num_dfgs - 1);
  std::uniform_int_distribution<std::uint64_t> repeat(1, params.max_repeat);
  for (std::size_t i = 0; i < params.trace_length; ++i) {
    const auto dfg = which(rng);
    w.trace.push_back({dfg, repeat(rng)});
  }
  return w;
}

}  // namespace cgra
