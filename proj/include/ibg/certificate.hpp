#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ibg/order_engine.hpp"
#include "ibg/ordering.hpp"

namespace ibg {

// Biclique M x N (M black, N white) with three outside vertices on each side
// whose neighbourhoods into the biclique are pairwise incomparable.
struct ExoBiclique {
  std::vector<Vertex> M, N;
  std::array<Vertex, 3> black_triple{}, white_triple{};
  bool operator==(const ExoBiclique&) const = default;
};

// A derivation step in certificate form. Components are named by their least
// member pair so that the name does not depend on internal numbering.
struct TraceStep {
  PairVertex pair;
  Derivation kind = Derivation::None;
  PairVertex component{};  // Base, Completion
  PairVertex from{};       // Implied
  Vertex via = -1;         // Transitive
  bool operator==(const TraceStep&) const = default;
};

struct CertTrace {
  std::vector<PairVertex> circuit;
  std::vector<TraceStep> derivation;
  PairVertex closing{};
  std::optional<PairVertex> dictator;
  Phase phase = Phase::Step3;
  bool operator==(const CertTrace&) const = default;
};

struct SelfCoupledWitness {
  PairVertex pair;
  std::vector<PairVertex> forward;   // pair ... skew(pair)
  std::vector<PairVertex> backward;  // skew(pair) ... pair
  bool operator==(const SelfCoupledWitness&) const = default;
};

struct Step2ConflictWitness {
  PairVertex component{}, couple{};  // least members of S and S'
  std::optional<ExoBiclique> exobiclique;
  CertTrace with_component, with_couple;
  bool operator==(const Step2ConflictWitness&) const = default;
};

struct EnvelopeCircuitWitness {
  CertTrace trace;
  std::vector<PairVertex> dictators;  // reversed at the rebuild
  std::vector<CertTrace> step3;       // circuits recorded while finding dictators
  bool operator==(const EnvelopeCircuitWitness&) const = default;
};

using Witness = std::variant<std::monostate, SelfCoupledWitness, Step2ConflictWitness, EnvelopeCircuitWitness>;

struct Certificate {
  bool yes = false;
  int n = 0;
  std::size_t m = 0;
  Ordering ordering;        // yes only
  IntervalModel intervals;  // yes only
  std::vector<Color> colors;  // yes only, for the interval listing
  Witness witness;          // no only
  bool operator==(const Certificate&) const = default;
};

const char* witness_kind(const Witness& w);

// JSON form: {"verdict":"yes","n":..,"m":..,"ordering":[..],"intervals":[..]}
// or {"verdict":"no","n":..,"m":..,"witness":{"kind":..,...}}.
std::string certificate_to_json(const Certificate& c, int indent = -1);
// Throws Error(MalformedInput).
Certificate certificate_from_json(const std::string& text);

// [{"vertex":id,"color":"B"|"W","left":l,"right":r},...]
std::string intervals_to_json(const Bigraph& g, const IntervalModel& model, int indent = -1);

}  // namespace ibg
