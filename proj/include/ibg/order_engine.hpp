#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ibg/bitset.hpp"
#include "ibg/pair_digraph.hpp"

namespace ibg {

enum class Derivation : std::uint8_t { None, Base, Implied, Transitive, Completion };
const char* to_string(Derivation d);

struct PairMeta {
  std::uint32_t level = 0;
  std::int32_t dict = -1;  // component id
  std::int32_t aux = -1;   // Base/Completion: component; Implied: source PairId; Transitive: via vertex
  Derivation kind = Derivation::None;
  bool original = false;
};

// The relation D on V(H): a set of ordered pairs with per-pair metadata.
class OrderRelation {
 public:
  OrderRelation() = default;
  explicit OrderRelation(int n);

  int n() const { return n_; }
  std::size_t size() const { return log_.size(); }
  bool contains(Vertex x, Vertex y) const { return succ_.test(x, y); }
  bool contains(PairVertex p) const { return contains(p.first, p.second); }
  // Throws Error(UnknownPair) if absent.
  const PairMeta& meta(Vertex x, Vertex y) const;
  const PairMeta& meta(PairVertex p) const { return meta(p.first, p.second); }
  const PairMeta& meta_unchecked(PairId p) const { return meta_[p]; }
  PairMeta& meta_mut(PairId p) { return meta_[p]; }
  PairId id(Vertex x, Vertex y) const { return static_cast<PairId>(x) * n_ + y; }
  PairVertex pair(PairId p) const { return {static_cast<Vertex>(p / n_), static_cast<Vertex>(p % n_)}; }

  // Returns false (and changes nothing) if already present.
  bool insert(Vertex x, Vertex y, const PairMeta& m);

  std::span<const Word> successors(Vertex x) const { return succ_.row(x); }
  std::span<const Word> predecessors(Vertex y) const { return pred_.row(y); }
  const BitMatrix& succ_matrix() const { return succ_; }
  // Pair ids in insertion order.
  const std::vector<PairId>& insertion_log() const { return log_; }
  std::vector<PairVertex> pairs() const;

 private:
  int n_ = 0;
  BitMatrix succ_, pred_;
  std::vector<PairMeta> meta_;
  std::vector<PairId> log_;
};

enum class Phase : std::uint8_t { Step2, Step3, Step4, Step5, Step6 };
const char* to_string(Phase p);

struct DerivationStep {
  PairVertex pair;
  Derivation kind = Derivation::None;
  int component = -1;  // Base
  PairVertex from{};   // Implied
  Vertex via = -1;     // Transitive
  std::uint32_t level = 0;
  int dict = -1;
  bool operator==(const DerivationStep&) const = default;
};

struct CircuitTrace {
  std::vector<PairVertex> circuit;          // (x0,x1),(x1,x2),...,(xk,x0)
  std::vector<DerivationStep> derivation;   // every source precedes its use
  PairVertex closing{};
  int dictator = -1;                        // Dict of the closing pair
  Phase phase = Phase::Step3;
};

// Derivation back-trace of the given pairs down to Base pairs.
std::vector<DerivationStep> back_trace(const OrderRelation& D, const std::vector<PairVertex>& pairs);

// Shortest directed cycle of D viewed as a digraph on V(H), or nullopt if acyclic.
std::optional<CircuitTrace> detect_circuit(const OrderRelation& D);

// S* of a component in deterministic order: members (Base) then implied pairs.
struct StarEntry {
  PairId pair;
  Derivation kind;
  PairId from;  // Implied only
};
std::vector<StarEntry> component_star(const ComponentSet& cs, const PairDigraph& pd, int c);

// Inserts S* into D with level 0, Dict = c. Pairs already present are left alone.
void add_star(OrderRelation& D, const ComponentSet& cs, const PairDigraph& pd, int c);

struct Step2Selection {
  OrderRelation relation;
  std::vector<int> chosen;  // processing order
};

struct Step2Conflict {
  int component = -1;  // tried first
  int couple = -1;
  CircuitTrace with_component, with_couple;
  std::vector<int> chosen;  // selected before the conflict
};

std::variant<Step2Selection, Step2Conflict> step2_select(const ComponentSet& cs, const PairDigraph& pd);

struct EnvelopeOptions {
  // Step 3 records circuits closed by original pairs and continues; Step 5
  // stops at the first circuit of any kind.
  bool stop_at_first_circuit = false;
  std::size_t max_traces = 16;
};

struct EnvelopeResult {
  OrderRelation relation;
  std::vector<CircuitTrace> traces;
  std::size_t circuit_count = 0;
  std::vector<int> dictators;  // first-recorded order, no repeats
  std::uint32_t levels = 0;
  std::size_t insertions = 0;
  bool stopped = false;
};

EnvelopeResult compute_envelope(OrderRelation D, const PairDigraph& pd, const EnvelopeOptions& opt = {});

// Throws Error(UnknownPair) if p is not in D.
int dict_of(const OrderRelation& D, PairVertex p);

// Earliest trace, rotated to start at x0 so the colors read W,B,B,W. Throws
// Error(InternalInconsistency) unless it has 4 pairs and some rotation does.
CircuitTrace extract_minimal_circuit(const std::vector<CircuitTrace>& traces, const Bigraph& g);

// D1 = union of R* over chosen R not in dt, plus (S')* for S in dt.
// Throws Error(InternalInconsistency) if D1 has a circuit.
OrderRelation step4_rebuild(const ComponentSet& cs, const std::vector<int>& chosen,
                            const std::vector<int>& dt, const PairDigraph& pd);

// Sink completion. Throws Error(InternalInconsistency) if a circuit forms or
// the result is not a tournament.
OrderRelation step6_complete(OrderRelation D1, const ComponentSet& cs, const PairDigraph& pd,
                             std::size_t* added = nullptr);

// Throws Error(NotTotal) / Error(NotTransitive).
class Ordering;
Ordering extract_ordering(const OrderRelation& D1);

// One line per insertion: "level x y derivation dict original".
std::string trace_log(const OrderRelation& D);

}  // namespace ibg
