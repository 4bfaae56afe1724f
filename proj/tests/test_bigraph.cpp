#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ibg/error.hpp"
#include "ibg/generators.hpp"
#include "ibg/ordering.hpp"

using namespace ibg;
using ibg::testing::make_graph;

namespace {

ErrorCode parse_error(const std::string& text) {
  try {
    parse_bigraph(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ErrorCode::InternalInconsistency;
}

}  // namespace

TEST(Parse, SmallestBigraph) {
  Bigraph g = parse_bigraph("p ibg 2 1\nv 0 B\nv 1 W\ne 0 1\n");
  EXPECT_EQ(g.n(), 2);
  EXPECT_EQ(g.m(), 1u);
  EXPECT_EQ(g.color(0), Color::Black);
  EXPECT_EQ(g.color(1), Color::White);
  EXPECT_TRUE(g.adjacent(0, 1));
}

TEST(Parse, SixCycleWithNameComment) {
  Bigraph g = parse_bigraph(
      "c a six cycle\nc name hexagon\np ibg 6 6\n"
      "v 0 B\nv 1 W\nv 2 B\nv 3 W\nv 4 B\nv 5 W\n"
      "e 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 0\n");
  EXPECT_EQ(g.n(), 6);
  EXPECT_EQ(g.m(), 6u);
  EXPECT_EQ(g.name(), "hexagon");
  for (Vertex v = 0; v < 6; ++v) EXPECT_EQ(g.degree(v), 2u);
}

TEST(Parse, ColorsComputedWhenAbsent) {
  Bigraph g = parse_bigraph("p ibg 5 3\ne 0 1\ne 1 2\ne 3 4\n");
  EXPECT_NE(g.color(0), g.color(1));
  EXPECT_EQ(g.color(0), g.color(2));
  EXPECT_NE(g.color(3), g.color(4));
}

TEST(Parse, Errors) {
  EXPECT_EQ(parse_error("p ibg 2 1\nv 0 B\nv 1 B\ne 0 1\n"), ErrorCode::ColorConflict);
  EXPECT_EQ(parse_error("p ibg 3 3\ne 0 1\ne 1 2\ne 2 0\n"), ErrorCode::NotBipartite);
  EXPECT_EQ(parse_error("p ibg 2 1\ne 0 5\n"), ErrorCode::MalformedInput);
  EXPECT_EQ(parse_error("e 0 1\n"), ErrorCode::MalformedInput);
  EXPECT_EQ(parse_error("p ibg 2 2\ne 0 1\n"), ErrorCode::MalformedInput);
  EXPECT_EQ(parse_error("p ibg 2 2\ne 0 1\ne 1 0\n"), ErrorCode::MalformedInput);
  EXPECT_EQ(parse_error("p ibg 2 1\nv 0 B\nv 1 W\ne 0 0\n"), ErrorCode::MalformedInput);
  EXPECT_EQ(parse_error("p ibg 2 1\nv 0 Q\ne 0 1\n"), ErrorCode::MalformedInput);
  EXPECT_EQ(parse_error("p ibg 2 1\nx\ne 0 1\n"), ErrorCode::MalformedInput);
}

TEST(Parse, WriteRoundTrip) {
  Bigraph g = gen_exobiclique(3, 3);
  Bigraph h = parse_bigraph(write_bigraph(g, "round trip"));
  EXPECT_EQ(h.colors(), g.colors());
  EXPECT_EQ(h.edges(), g.edges());
}

TEST(Components, ConnectedPathIsItself) {
  Bigraph g = gen_path(5);
  auto parts = connected_components(g);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].graph.edges(), g.edges());
  EXPECT_EQ(parts[0].to_original, (std::vector<Vertex>{0, 1, 2, 3, 4}));
}

TEST(Components, TwoDisjointEdges) {
  Bigraph g = make_graph("BWBW", {{0, 1}, {2, 3}});
  auto parts = connected_components(g);
  ASSERT_EQ(parts.size(), 2u);
  for (const auto& p : parts) {
    EXPECT_EQ(p.graph.n(), 2);
    EXPECT_EQ(p.graph.m(), 1u);
  }
  EXPECT_EQ(parts[1].to_original, (std::vector<Vertex>{2, 3}));
}

TEST(Components, IsolatedVertices) {
  Bigraph g = make_graph("BWB", {});
  auto parts = connected_components(g);
  ASSERT_EQ(parts.size(), 3u);
  for (const auto& p : parts) EXPECT_EQ(p.graph.n(), 1);
}

TEST(CheckOrdering, SingleEdge) {
  Bigraph g = gen_path(2);
  EXPECT_FALSE(check_ordering(g, Ordering::from_sequence({0, 1})));
}

TEST(CheckOrdering, PathOfFourNatural) {
  // b1 w1 b2 w2 = 0 1 2 3
  EXPECT_FALSE(check_ordering(gen_path(4), Ordering::from_sequence({0, 1, 2, 3})));
}

TEST(CheckOrdering, SixCycleColorBlocks) {
  // b1 w1 b2 w2 b3 w3 = 0..5; order b1<b2<b3<w1<w2<w3.
  Bigraph g = gen_cycle(3);
  auto v = check_ordering(g, Ordering::from_sequence({0, 2, 4, 1, 3, 5}));
  ASSERT_TRUE(v);
  EXPECT_EQ(*v, (PatternViolation{0, 2, 5}));
}

TEST(CheckOrdering, LeastViolationByRanks) {
  // a(B) b(B) c(W) with ac edge only, plus d(W) adjacent to a: both
  // (a,b,c) and (a,b,d) violate; c comes first by rank.
  Bigraph g = make_graph("BBWW", {{0, 2}, {0, 3}});
  auto v = check_ordering(g, Ordering::from_sequence({0, 1, 2, 3}));
  ASSERT_TRUE(v);
  EXPECT_EQ(*v, (PatternViolation{0, 1, 2}));
}

TEST(BuildIntervals, SingleEdge) {
  Bigraph g = gen_path(2);
  auto m = build_intervals(g, Ordering::from_sequence({0, 1}));
  EXPECT_EQ(m.intervals[0], (Interval{1, 1}));
  EXPECT_EQ(m.intervals[1], (Interval{1, 2}));
}

TEST(BuildIntervals, ThreeVerticesOneEdge) {
  // x(B) < y(W) < w(W), edge xw.
  Bigraph g = make_graph("BWW", {{0, 2}});
  auto m = build_intervals(g, Ordering::from_sequence({0, 1, 2}));
  EXPECT_EQ(m.intervals[0], (Interval{1, 1}));
  EXPECT_EQ(m.intervals[1], (Interval{2, 2}));
  EXPECT_EQ(m.intervals[2], (Interval{1, 3}));
  EXPECT_TRUE(validate_intervals(g, m));
}

TEST(BuildIntervals, PathOfFour) {
  Bigraph g = gen_path(4);
  auto m = build_intervals(g, Ordering::from_sequence({0, 1, 2, 3}));
  EXPECT_EQ(m.intervals, (std::vector<Interval>{{1, 1}, {1, 2}, {2, 3}, {3, 4}}));
  EXPECT_TRUE(validate_intervals(g, m));
}

TEST(BuildIntervals, RejectsInvalidOrdering) {
  try {
    build_intervals(gen_cycle(3), Ordering::from_sequence({0, 2, 4, 1, 3, 5}));
    FAIL() << "expected InvalidOrdering";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidOrdering);
  }
}

TEST(ValidateIntervals, Examples) {
  Bigraph k22 = gen_biclique(2, 2);
  EXPECT_TRUE(validate_intervals(k22, IntervalModel{{{0, 1}, {0, 1}, {0, 1}, {0, 1}}}));
  Bigraph k2 = gen_path(2);
  EXPECT_FALSE(validate_intervals(k2, IntervalModel{{{0, 1}, {2, 3}}}));
  // Same-color overlap is irrelevant, cross-color overlap without an edge is not.
  Bigraph two = make_graph("BBW", {{0, 2}});
  EXPECT_TRUE(validate_intervals(two, IntervalModel{{{0, 1}, {5, 6}, {1, 2}}}));
  EXPECT_FALSE(validate_intervals(two, IntervalModel{{{0, 1}, {2, 6}, {1, 2}}}));
}

TEST(OrderingType, RejectsNonPermutations) {
  EXPECT_THROW(Ordering::from_sequence({0, 0}), Error);
  EXPECT_THROW(Ordering::from_sequence({0, 2}), Error);
  Ordering o = Ordering::from_ranks({2, 1, 3});
  EXPECT_EQ(o.sequence(), (std::vector<Vertex>{1, 0, 2}));
  EXPECT_EQ(o.rank(0), 2);
}
