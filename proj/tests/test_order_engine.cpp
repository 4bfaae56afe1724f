#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ibg/error.hpp"
#include "ibg/generators.hpp"
#include "ibg/order_engine.hpp"
#include "ibg/ordering.hpp"

using namespace ibg;
using ibg::testing::make_graph;

namespace {

PairMeta base_meta() {
  PairMeta m;
  m.kind = Derivation::Base;
  m.dict = 0;
  m.aux = 0;
  m.original = true;
  return m;
}

OrderRelation relation(int n, const std::vector<PairVertex>& pairs) {
  OrderRelation D(n);
  for (auto p : pairs) D.insert(p.first, p.second, base_meta());
  return D;
}

bool is_partial_order(const OrderRelation& D) {
  const int n = D.n();
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y) {
      if (!D.contains(x, y)) continue;
      if (D.contains(y, x) || x == y) return false;
      for (Vertex z = 0; z < n; ++z)
        if (D.contains(y, z) && !D.contains(x, z)) return false;
    }
  return true;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::MalformedInput;  // sentinel: nothing thrown
}

struct Pipeline {
  Bigraph g;
  PairDigraph pd;
  ComponentSet cs;
  explicit Pipeline(Bigraph graph)
      : g(std::move(graph)), pd(build_pair_digraph(g)), cs(classify_trivial(strong_components(pd), pd)) {}
  Step2Selection select() const {
    auto r = step2_select(cs, pd);
    EXPECT_TRUE(std::holds_alternative<Step2Selection>(r));
    return std::get<Step2Selection>(std::move(r));
  }
};

}  // namespace

TEST(Step2, SingleEdgeGivesEmptyRelation) {
  Pipeline p(gen_path(2));
  auto sel = p.select();
  EXPECT_EQ(sel.relation.size(), 0u);
  EXPECT_TRUE(sel.chosen.empty());
}

TEST(Step2, PathOfFiveTakesOneStar) {
  Pipeline p(gen_path(5));
  auto sel = p.select();
  ASSERT_EQ(sel.chosen.size(), 1u);
  int c = p.cs.component_of(0, 3);
  EXPECT_EQ(sel.chosen[0], c);
  // S plus one implication layer, which adds (a,c).
  std::vector<PairVertex> got = sel.relation.pairs();
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<PairVertex>{{0, 2}, {0, 3}, {0, 4}, {1, 3}, {1, 4}}));
  EXPECT_EQ(sel.relation.meta(0, 3).kind, Derivation::Base);
  EXPECT_EQ(sel.relation.meta(0, 2).kind, Derivation::Implied);
  // Either choice is circuit-free on its own.
  OrderRelation other(5);
  add_star(other, p.cs, p.pd, p.cs.couple(c));
  EXPECT_FALSE(detect_circuit(other));
}

TEST(Step2, ExobicliqueWithSingletonNeighbourhoodsConflicts) {
  Pipeline p(gen_exobiclique(3, 3, ExoPattern::Singletons));
  ASSERT_FALSE(p.cs.self_coupled());
  auto r = step2_select(p.cs, p.pd);
  ASSERT_TRUE(std::holds_alternative<Step2Conflict>(r));
  const auto& c = std::get<Step2Conflict>(r);
  EXPECT_EQ(p.cs.couple(c.component), c.couple);
  EXPECT_EQ(c.with_component.circuit.size(), 4u);
  EXPECT_EQ(c.with_couple.circuit.size(), 4u);
  EXPECT_EQ(c.with_component.phase, Phase::Step2);
}

TEST(Step2, RejectsSelfCoupledInput) {
  Pipeline p(gen_cycle(3));
  EXPECT_EQ(code_of([&] { step2_select(p.cs, p.pd); }), ErrorCode::PreconditionViolated);
}

TEST(DetectCircuit, Examples) {
  EXPECT_FALSE(detect_circuit(relation(3, {{0, 1}, {1, 2}})));
  auto two = detect_circuit(relation(2, {{0, 1}, {1, 0}}));
  ASSERT_TRUE(two);
  EXPECT_EQ(two->circuit.size(), 2u);
  auto four = detect_circuit(relation(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
  ASSERT_TRUE(four);
  EXPECT_EQ(four->circuit.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(four->circuit[i].second, four->circuit[(i + 1) % 4].first);
}

TEST(DetectCircuit, ShortestCycleWins) {
  auto c = detect_circuit(relation(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {2, 5}, {5, 1}}));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->circuit.size(), 3u);
}

TEST(Envelope, EmptyForSingleEdge) {
  Pipeline p(gen_path(2));
  auto env = compute_envelope(OrderRelation(2), p.pd);
  EXPECT_EQ(env.relation.size(), 0u);
  EXPECT_TRUE(env.traces.empty());
}

TEST(Envelope, PathOfFiveIsPartialOrder) {
  Pipeline p(gen_path(5));
  auto env = compute_envelope(p.select().relation, p.pd);
  EXPECT_TRUE(env.traces.empty());
  EXPECT_TRUE(env.dictators.empty());
  EXPECT_TRUE(is_partial_order(env.relation));
  EXPECT_FALSE(detect_circuit(env.relation));
}

TEST(Envelope, TransitiveLevels) {
  // Chain 0 -> 1 -> 2 -> 3 with no implications on an edgeless graph.
  Bigraph g = make_graph("BBBB", {});
  auto pd = build_pair_digraph(g);
  auto env = compute_envelope(relation(4, {{0, 1}, {1, 2}, {2, 3}}), pd);
  EXPECT_EQ(env.relation.meta(0, 1).level, 0u);
  EXPECT_EQ(env.relation.meta(0, 2).level, 1u);
  EXPECT_EQ(env.relation.meta(0, 2).kind, Derivation::Transitive);
  EXPECT_EQ(env.relation.meta(0, 2).aux, 1);
  EXPECT_EQ(env.relation.meta(0, 3).level, 2u);
  EXPECT_EQ(env.relation.size(), 6u);
}

TEST(DictOf, Rules) {
  Pipeline p(gen_path(5));
  auto sel = p.select();
  int s = p.cs.component_of(0, 3);
  EXPECT_EQ(dict_of(sel.relation, {0, 3}), s);  // member of S*
  EXPECT_EQ(dict_of(sel.relation, {0, 2}), s);  // same colors, implied by (a,d)
  EXPECT_EQ(code_of([&] { dict_of(sel.relation, {2, 0}); }), ErrorCode::UnknownPair);
}

TEST(Obstruction, Step3CircuitAndDictatorReversal) {
  Pipeline p(gen_obstruction_family(1));
  ASSERT_FALSE(p.cs.self_coupled());
  auto sel = p.select();
  auto env = compute_envelope(sel.relation, p.pd);
  ASSERT_FALSE(env.traces.empty());
  CircuitTrace first = extract_minimal_circuit(env.traces, p.g);
  ASSERT_EQ(first.circuit.size(), 4u);
  std::string colors;
  for (auto [x, y] : first.circuit) colors += color_char(p.g.color(x));
  EXPECT_EQ(colors, "WBBW");
  // x0..x3 of the generated core.
  EXPECT_EQ(first.circuit[0], (PairVertex{17, 0}));
  EXPECT_EQ(first.circuit[2], (PairVertex{7, 11}));
  EXPECT_EQ(first.dictator, env.dictators.front());
  ASSERT_EQ(env.dictators.size(), 1u);
  EXPECT_LE(env.dictators.size(), static_cast<std::size_t>(2 * p.g.n()));

  OrderRelation D1 = step4_rebuild(p.cs, sel.chosen, env.dictators, p.pd);
  EXPECT_FALSE(detect_circuit(D1));
  // The reversed couple replaces the dictator.
  int dt = env.dictators.front();
  EXPECT_FALSE(D1.contains(p.pd.pair(p.cs.least_member(dt))));
  EXPECT_TRUE(D1.contains(p.pd.pair(p.cs.least_member(p.cs.couple(dt)))));

  EnvelopeOptions opt;
  opt.stop_at_first_circuit = true;
  auto env2 = compute_envelope(std::move(D1), p.pd, opt);
  ASSERT_FALSE(env2.traces.empty());
  EXPECT_EQ(env2.traces.front().circuit.size(), 4u);
}

TEST(ExtractMinimalCircuit, FirstRecordedAndShapeChecked) {
  Bigraph g = make_graph("WBBWBW", {});
  CircuitTrace good;
  good.circuit = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  CircuitTrace second = good;
  second.dictator = 7;
  EXPECT_EQ(extract_minimal_circuit({good, second}, g).dictator, good.dictator);

  CircuitTrace six;
  six.circuit = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}};
  EXPECT_EQ(code_of([&] { extract_minimal_circuit({six}, g); }), ErrorCode::InternalInconsistency);

  CircuitTrace wrong_colors;
  wrong_colors.circuit = {{0, 1}, {1, 3}, {3, 2}, {2, 0}};  // W B W B
  EXPECT_EQ(code_of([&] { extract_minimal_circuit({wrong_colors}, g); }), ErrorCode::InternalInconsistency);

  CircuitTrace rotated;
  rotated.circuit = {{3, 0}, {0, 1}, {1, 2}, {2, 3}};  // W W B B, starts at x3
  EXPECT_EQ(extract_minimal_circuit({rotated}, g).circuit, good.circuit);
  wrong_colors.circuit = {{0, 4}, {4, 2}, {2, 1}, {1, 0}};  // W B B B
  EXPECT_EQ(code_of([&] { extract_minimal_circuit({wrong_colors}, g); }), ErrorCode::InternalInconsistency);
}

TEST(Step4, NoDictatorsKeepsSelection) {
  Pipeline p(gen_path(5));
  auto sel = p.select();
  OrderRelation D1 = step4_rebuild(p.cs, sel.chosen, {}, p.pd);
  auto a = D1.pairs(), b = sel.relation.pairs();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
}

TEST(Step4, InjectedDictatorIsCircuitFreeOrFlagged) {
  Pipeline p(gen_obstruction_family(2));
  auto sel = p.select();
  for (int fake : sel.chosen) {
    try {
      OrderRelation D1 = step4_rebuild(p.cs, sel.chosen, {fake}, p.pd);
      EXPECT_FALSE(detect_circuit(D1));
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InternalInconsistency);
    }
  }
}

TEST(Step6, SingleEdgeBecomesTotal) {
  Pipeline p(gen_path(2));
  OrderRelation D = step6_complete(OrderRelation(2), p.cs, p.pd);
  EXPECT_EQ(D.size(), 1u);
  EXPECT_NE(D.contains(0, 1), D.contains(1, 0));
}

TEST(Step6, PathOfFourBuiltByCompletionAlone) {
  Pipeline p(gen_path(4));
  ASSERT_TRUE(p.cs.nontrivial().empty());
  std::size_t added = 0;
  OrderRelation D = step6_complete(OrderRelation(4), p.cs, p.pd, &added);
  EXPECT_EQ(D.size(), 6u);
  EXPECT_GT(added, 0u);
  Ordering ord = extract_ordering(D);
  EXPECT_FALSE(check_ordering(p.g, ord));
}

TEST(Step6, PathOfFiveCompletesToValidOrdering) {
  Pipeline p(gen_path(5));
  auto env = compute_envelope(p.select().relation, p.pd);
  OrderRelation D = step6_complete(env.relation, p.cs, p.pd);
  EXPECT_EQ(D.size(), 10u);
  EXPECT_TRUE(is_partial_order(D));
  Ordering ord = extract_ordering(D);
  EXPECT_FALSE(check_ordering(p.g, ord));
  EXPECT_LT(ord.rank(0), ord.rank(3));  // the chosen component is kept
}

TEST(ExtractOrdering, Examples) {
  Ordering o = extract_ordering(relation(3, {{0, 1}, {1, 2}, {0, 2}}));
  EXPECT_EQ(o.sequence(), (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(code_of([] { extract_ordering(relation(3, {{0, 1}, {1, 2}, {2, 0}})); }),
            ErrorCode::NotTransitive);
  EXPECT_EQ(code_of([] { extract_ordering(relation(3, {{0, 1}, {1, 2}})); }), ErrorCode::NotTotal);
}

TEST(TraceLog, OneLinePerInsertion) {
  Pipeline p(gen_path(5));
  auto env = compute_envelope(p.select().relation, p.pd);
  std::string log = trace_log(env.relation);
  EXPECT_EQ(static_cast<std::size_t>(std::count(log.begin(), log.end(), '\n')), env.relation.size());
  EXPECT_NE(log.find("0 0 3 base"), std::string::npos);
  EXPECT_NE(log.find("0 0 2 implied:0,3"), std::string::npos);
}
