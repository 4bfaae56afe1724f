#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ibg/bigraph.hpp"

namespace ibg {

// Total order on V; ranks are 1..n.
class Ordering {
 public:
  Ordering() = default;
  // sequence[i] is the vertex at rank i+1. Throws Error(InvalidOrdering) unless it is a permutation.
  static Ordering from_sequence(std::vector<Vertex> sequence);
  static Ordering from_ranks(const std::vector<int>& ranks);

  int size() const { return static_cast<int>(seq_.size()); }
  int rank(Vertex v) const { return rank_[v]; }
  Vertex at(int rank) const { return seq_[rank - 1]; }
  const std::vector<Vertex>& sequence() const { return seq_; }
  bool operator==(const Ordering&) const = default;

 private:
  std::vector<Vertex> seq_;
  std::vector<int> rank_;
};

// a < b < c, color(a) = color(b) != color(c), ac in E, bc not in E.
struct PatternViolation {
  Vertex a, b, c;
  bool operator==(const PatternViolation&) const = default;
};

// Lexicographically least violation by ranks, or nullopt if the ordering is valid.
std::optional<PatternViolation> check_ordering(const Bigraph& g, const Ordering& ord);

struct Interval {
  std::int64_t left = 0, right = 0;
  bool operator==(const Interval&) const = default;
};

struct IntervalModel {
  std::vector<Interval> intervals;
  bool operator==(const IntervalModel&) const = default;
};

// I_v = [s(v), p(v)], s(v) the least rank of an earlier neighbour (p(v) if none).
// Throws Error(InvalidOrdering) if the ordering has a violation,
// Error(ModelValidationFailed) if the result does not represent g.
IntervalModel build_intervals(const Bigraph& g, const Ordering& ord);

bool validate_intervals(const Bigraph& g, const IntervalModel& model);

}  // namespace ibg
