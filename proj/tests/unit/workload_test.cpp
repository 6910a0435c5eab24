#include <gtest/gtest.h>

#include <random>

#include "cgra/workload.hpp"
#include "oracles.hpp"

namespace cgra {
namespace {

using testing::DfgBuilder;
using testing::in;
using testing::op;

constexpr const char* kMinimal = R"({
  "format": 1,
  "dfgs": [{"name": "tiny", "num_inputs": 2,
            "ops": [{"id": 0, "opcode": "add",
                     "srcs": [{"kind": "input", "index": 0}, {"kind": "input", "index": 1}]}],
            "outputs": [{"kind": "op", "index": 0}]}],
  "trace": [[0, 1]]
})";

TEST(ParseWorkload, MinimalFile) {
  const auto w = parse_workload(kMinimal);
  ASSERT_EQ(w.dfgs.size(), 1u);
  EXPECT_EQ(w.dfgs[0].ops.size(), 1u);
  EXPECT_EQ(w.dfgs[0].ops[0].opcode, Opcode::Add);
  EXPECT_EQ(w.total_executions(), 1u);
}

TEST(ParseWorkload, DanglingReferenceNamesTheId) {
  std::string text = kMinimal;
  text.replace(text.find(R"({"kind": "input", "index": 1})"),
               std::string(R"({"kind": "input", "index": 1})").size(),
               R"({"kind": "op", "index": 99})");
  try {
    parse_workload(text);
    FAIL() << "expected SemanticError";
  } catch (const SemanticError& e) {
    EXPECT_NE(std::string(e.what()).find("99"), std::string::npos) << e.what();
    EXPECT_EQ(e.op_id(), 99);
  }
}

TEST(ParseWorkload, EmptyTraceIsSemanticError) {
  std::string text = kMinimal;
  text.replace(text.find("[[0, 1]]"), 8, "[]");
  try {
    parse_workload(text);
    FAIL() << "expected SemanticError";
  } catch (const SemanticError& e) {
    EXPECT_EQ(std::string(e.what()), "empty trace");
  }
}

TEST(ParseWorkload, SyntaxErrorReportsPosition) {
  const std::string text = R"({"format": 1, "dfgs": [ }")";
  try {
    parse_workload(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_GT(e.position(), 0u);
    EXPECT_LE(e.position(), text.size());
  }
}

TEST(ParseWorkload, SchemaErrors) {
  EXPECT_THROW(parse_workload(R"({"dfgs": [], "trace": [[0,1]]})"), ParseError);  // no format
  EXPECT_THROW(parse_workload(R"({"format": 2, "dfgs": [], "trace": []})"), ParseError);
  std::string bad_opcode = kMinimal;
  bad_opcode.replace(bad_opcode.find("\"add\""), 5, "\"mul\"");
  EXPECT_THROW(parse_workload(bad_opcode), ParseError);
  std::string bad_trace = kMinimal;
  bad_trace.replace(bad_trace.find("[[0, 1]]"), 8, "[[3, 1]]");
  EXPECT_THROW(parse_workload(bad_trace), SemanticError);
  std::string zero_repeat = kMinimal;
  zero_repeat.replace(zero_repeat.find("[[0, 1]]"), 8, "[[0, 0]]");
  EXPECT_THROW(parse_workload(zero_repeat), SemanticError);
}

TEST(SerializeWorkload, MinimalRoundTrip) {
  const auto w = parse_workload(kMinimal);
  const auto text = serialize_workload(w);
  EXPECT_EQ(parse_workload(text), w);
  EXPECT_EQ(serialize_workload(parse_workload(text)), text);
}

TEST(SerializeWorkload, RandomWorkloadRoundTrip) {
  GeneratorParams p;
  p.num_dfgs = 10;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto w = generate_random_workload(p, seed);
    EXPECT_EQ(parse_workload(serialize_workload(w)), w) << "seed " << seed;
  }
}

TEST(SerializeWorkload, EveryOpcodeRoundTrips) {
  DfgBuilder b(2, "all");
  for (Opcode code : kAllOpcodes) {
    if (code == Opcode::Load)
      b.load(in(0));
    else
      b.op(code, {in(0), in(1)});
  }
  b.output(op(0));
  Workload w{{b.build()}, {{0, 3}}};
  validate_workload(w);
  const auto back = parse_workload(serialize_workload(w));
  EXPECT_EQ(back, w);
  for (Opcode code : kAllOpcodes) EXPECT_EQ(parse_opcode(opcode_name(code)), code);
  EXPECT_FALSE(parse_opcode("ADD").has_value());
}

TEST(ValidateDfg, AcyclicChainIsValid) {
  DfgBuilder b(1);
  const int a = b.add(in(0), in(0));
  const int c = b.add(op(a), in(0));
  b.add(op(c), in(0));
  EXPECT_TRUE(validate_dfg(b.build()).empty());
}

TEST(ValidateDfg, SelfLoopIsCycle) {
  DfgBuilder b(1);
  b.add(op(0), in(0));
  EXPECT_EQ(validate_dfg(b.build()), std::vector<std::string>{"cycle at op 0"});
}

TEST(ValidateDfg, LoadWithTwoSourcesIsArityViolation) {
  DfgBuilder b(2);
  b.op(Opcode::Load, {in(0), in(1)});
  const auto v = validate_dfg(b.build());
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("arity"), std::string::npos);
}

TEST(ValidateDfg, OtherViolations) {
  {
    DfgBuilder b(1);
    b.add(in(0), in(3));
    EXPECT_EQ(validate_dfg(b.build()).size(), 1u);
  }
  {
    DfgBuilder b(1);
    const int s = b.store(in(0), in(0));
    b.add(op(s), in(0));
    const auto v = validate_dfg(b.build());
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NE(v[0].find("store"), std::string::npos);
  }
  {
    Dfg d = DfgBuilder(1).build();
    d.ops.push_back({5, Opcode::Add, {in(0), in(0)}});
    EXPECT_FALSE(validate_dfg(d).empty());
  }
  {
    DfgBuilder b(1);
    b.add(op(1), in(0));
    b.add(op(0), in(0));
    const auto v = check_dfg(b.build());
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].message, "cycle at op 0");
  }
}

TEST(TopologicalOrder, Chain) {
  DfgBuilder b(1);
  b.add(in(0), in(0));
  b.add(op(0), in(0));
  b.add(op(1), in(0));
  EXPECT_EQ(topological_order(b.build()), (std::vector<int>{0, 1, 2}));
}

TEST(TopologicalOrder, IndependentOpsByAscendingId) {
  DfgBuilder b(1);
  b.add(in(0), in(0));
  b.add(in(0), in(0));
  EXPECT_EQ(topological_order(b.build()), (std::vector<int>{0, 1}));
}

TEST(TopologicalOrder, ReversedListingIsReordered) {
  DfgBuilder b(1);
  b.add(op(2), in(0));
  b.add(op(2), in(0));
  b.add(in(0), in(0));
  EXPECT_EQ(topological_order(b.build()), (std::vector<int>{2, 0, 1}));
}

TEST(TopologicalOrder, RandomDagsPassBruteForceCheck) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    // Random DAG over a random permutation so listing order is not already topological.
    const int n = 50;
    std::vector<int> rank(n);
    for (int i = 0; i < n; ++i) rank[i] = i;
    std::shuffle(rank.begin(), rank.end(), rng);
    std::vector<int> id_at_rank(n);
    for (int i = 0; i < n; ++i) id_at_rank[rank[i]] = i;
    Dfg d;
    d.num_inputs = 2;
    for (int id = 0; id < n; ++id) {
      Operation o{id, Opcode::Add, {}};
      for (int k = 0; k < 2; ++k) {
        if (rank[id] == 0 || rng() % 3 == 0) {
          o.sources.push_back(in(static_cast<int>(rng() % 2)));
        } else {
          o.sources.push_back(op(id_at_rank[rng() % rank[id]]));
        }
      }
      d.ops.push_back(o);
    }
    ASSERT_TRUE(validate_dfg(d).empty());
    EXPECT_TRUE(testing::is_dependency_order(d, topological_order(d))) << "trial " << trial;
  }
}

TEST(TopologicalOrder, CycleThrows) {
  DfgBuilder b(1);
  b.add(op(1), in(0));
  b.add(op(0), in(0));
  EXPECT_THROW(topological_order(b.build()), CycleError);
}

TEST(Generator, DeterministicForSeed) {
  GeneratorParams p;
  EXPECT_EQ(generate_random_workload(p, 1), generate_random_workload(p, 1));
  EXPECT_NE(generate_random_workload(p, 1), generate_random_workload(p, 2));
}

TEST(Generator, ZeroMemoryFractionHasNoMemoryOps) {
  GeneratorParams p;
  p.num_dfgs = 50;
  p.memory_op_fraction = 0.0;
  for (const auto& d : generate_random_workload(p, 3).dfgs)
    for (const auto& o : d.ops) EXPECT_FALSE(is_memory(o.opcode));
}

TEST(Generator, LargeCorpusIsValid) {
  GeneratorParams p;
  p.num_dfgs = 100;
  p.min_ops = p.max_ops = 50;
  const auto w = generate_random_workload(p, 11);
  EXPECT_NO_THROW(validate_workload(w));
  for (const auto& d : w.dfgs) {
    EXPECT_EQ(d.ops.size(), 50u);
    EXPECT_TRUE(validate_dfg(d).empty());
  }
}

TEST(Generator, InfeasibleParams) {
  GeneratorParams p;
  p.num_dfgs = 0;
  EXPECT_THROW(generate_random_workload(p, 1), InfeasibleParams);
  p = {};
  p.num_inputs = 0;
  EXPECT_THROW(generate_random_workload(p, 1), InfeasibleParams);
  p = {};
  p.min_ops = 9;
  p.max_ops = 3;
  EXPECT_THROW(generate_random_workload(p, 1), InfeasibleParams);
  p = {};
  p.memory_op_fraction = 1.5;
  EXPECT_THROW(generate_random_workload(p, 1), InfeasibleParams);
  p = {};
  p.trace_length = 0;
  EXPECT_THROW(generate_random_workload(p, 1), InfeasibleParams);
}

}  // namespace
}  // namespace cgra
