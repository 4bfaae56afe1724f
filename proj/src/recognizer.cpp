#include "ibg/recognizer.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <unordered_map>

#include <json.hpp>

#include "ibg/witness.hpp"

namespace ibg {

void RecognitionTrace::add_time(const std::string& step, double seconds) {
  for (auto& [name, t] : timings)
    if (name == step) {
      t += seconds;
      return;
    }
  timings.emplace_back(step, seconds);
}

double RecognitionTrace::total_time() const {
  double s = 0;
  for (const auto& [name, t] : timings) s += t;
  return s;
}

std::string RecognitionTrace::to_json(int indent) const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json t = nlohmann::ordered_json::object();
  for (const auto& [name, secs] : timings) t[name] = secs;
  j["stage"] = stage;
  j["n"] = n;
  j["m"] = m;
  j["graph_components"] = graph_components;
  j["pairs"] = pair_count;
  j["arcs"] = arc_count;
  j["components"] = components;
  j["nontrivial"] = nontrivial;
  j["condensation_depth"] = condensation_depth;
  j["step2_pairs"] = step2_pairs;
  j["step2_chosen"] = step2_chosen;
  j["step3_insertions"] = step3_insertions;
  j["step3_circuits"] = step3_circuits;
  j["step3_levels"] = step3_levels;
  nlohmann::ordered_json dt = nlohmann::ordered_json::array();
  for (auto p : dictators) dt.push_back({p.first, p.second});
  j["dictators"] = dt;
  j["step5_insertions"] = step5_insertions;
  j["step5_levels"] = step5_levels;
  j["step6_added"] = step6_added;
  j["peak_pairs"] = peak_pairs;
  j["timings"] = t;
  return j.dump(indent);
}

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
 public:
  explicit Stopwatch(RecognitionTrace& t) : t_(t), start_(Clock::now()) {}
  void lap(const std::string& step) {
    auto now = Clock::now();
    t_.add_time(step, std::chrono::duration<double>(now - start_).count());
    start_ = now;
  }

 private:
  RecognitionTrace& t_;
  Clock::time_point start_;
};

struct Mapper {
  const std::vector<Vertex>& to_original;
  const ComponentSet& cs;
  const PairDigraph& pd;

  Vertex v(Vertex x) const { return to_original[x]; }
  PairVertex p(PairVertex q) const { return {v(q.first), v(q.second)}; }
  PairVertex comp(int c) const { return p(pd.pair(cs.least_member(c))); }

  CertTrace trace(const CircuitTrace& t) const {
    CertTrace out;
    out.phase = t.phase;
    for (auto q : t.circuit) out.circuit.push_back(p(q));
    out.closing = p(t.closing);
    if (t.dictator >= 0) out.dictator = comp(t.dictator);
    for (const auto& s : t.derivation) {
      TraceStep st;
      st.pair = p(s.pair);
      st.kind = s.kind;
      if (s.kind == Derivation::Base || s.kind == Derivation::Completion) st.component = comp(s.component);
      if (s.kind == Derivation::Implied) st.from = p(s.from);
      if (s.kind == Derivation::Transitive) st.via = v(s.via);
      out.derivation.push_back(st);
    }
    return out;
  }
};

// Pair path from s to t inside component c of H+.
std::vector<PairVertex> path_in_component(const PairDigraph& pd, const ComponentSet& cs, int c,
                                          PairId s, PairId t) {
  std::unordered_map<PairId, PairId> parent;
  std::deque<PairId> q{s};
  parent[s] = s;
  while (!q.empty() && !parent.count(t)) {
    PairId a = q.front();
    q.pop_front();
    auto [u, v] = pd.pair(a);
    pd.for_each_out(u, v, [&](Vertex x, Vertex y) {
      PairId b = pd.id(x, y);
      if (cs.component_of(b) == c && !parent.count(b)) {
        parent[b] = a;
        q.push_back(b);
      }
    });
  }
  std::vector<PairVertex> path;
  for (PairId x = t;; x = parent.at(x)) {
    path.push_back(pd.pair(x));
    if (x == s) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

struct ComponentOutcome {
  bool yes = false;
  Ordering ordering;
  Witness witness;
};

ComponentOutcome recognize_connected(const Bigraph& g, const std::vector<Vertex>& to_original,
                                     const RecognizeOptions& opt, RecognitionTrace& tr) {
  ComponentOutcome out;
  Stopwatch sw(tr);
  tr.stage = "step1";
  PairDigraph pd = build_pair_digraph(g);
  tr.pair_count += pd.pair_count();
  if (opt.count_arcs) tr.arc_count += pd.arc_count();
  sw.lap("build");
  ComponentSet cs = classify_trivial(strong_components(pd), pd);
  tr.components += cs.count();
  auto nontrivial = cs.nontrivial();
  tr.nontrivial += static_cast<int>(nontrivial.size());
  if (opt.diagnostics) {
    int depth = condensation_depth(cs, pd);
    tr.condensation_depth = std::max(tr.condensation_depth, depth);
    if (depth > 3) throw Error(ErrorCode::InternalInconsistency, "condensation has a path of " + std::to_string(depth) + " components");
  }
  sw.lap("scc");
  Mapper map{to_original, cs, pd};

  if (auto sc = cs.self_coupled()) {
    PairId p = cs.least_member(*sc);
    SelfCoupledWitness w;
    w.pair = map.p(pd.pair(p));
    for (auto q : path_in_component(pd, cs, *sc, p, pd.skew(p))) w.forward.push_back(map.p(q));
    for (auto q : path_in_component(pd, cs, *sc, pd.skew(p), p)) w.backward.push_back(map.p(q));
    out.witness = std::move(w);
    return out;
  }

  tr.stage = "step2";
  auto s2 = step2_select(cs, pd);
  sw.lap("step2");
  if (auto* conflict = std::get_if<Step2Conflict>(&s2)) {
    Step2ConflictWitness w;
    w.component = map.comp(conflict->component);
    w.couple = map.comp(conflict->couple);
    w.with_component = map.trace(conflict->with_component);
    w.with_couple = map.trace(conflict->with_couple);
    if (auto exo = extract_exobiclique(g, *conflict)) {
      for (auto& x : exo->M) x = map.v(x);
      for (auto& x : exo->N) x = map.v(x);
      for (auto& x : exo->black_triple) x = map.v(x);
      for (auto& x : exo->white_triple) x = map.v(x);
      w.exobiclique = std::move(exo);
    }
    sw.lap("extract");
    out.witness = std::move(w);
    return out;
  }
  auto& sel = std::get<Step2Selection>(s2);
  tr.step2_pairs += sel.relation.size();
  tr.step2_chosen += static_cast<int>(sel.chosen.size());

  tr.stage = "step3";
  EnvelopeOptions o3;
  o3.max_traces = opt.max_traces;
  EnvelopeResult env3 = compute_envelope(std::move(sel.relation), pd, o3);
  tr.step3_insertions += env3.insertions;
  tr.step3_circuits += env3.circuit_count;
  tr.step3_levels = std::max(tr.step3_levels, env3.levels);
  tr.peak_pairs = std::max(tr.peak_pairs, env3.relation.size());
  for (int c : env3.dictators) tr.dictators.push_back(map.comp(c));
  const std::size_t first_trace = tr.step3_traces.size();
  for (const auto& t : env3.traces) tr.step3_traces.push_back(map.trace(t));
  sw.lap("step3");
  if (!env3.traces.empty()) tr.step3_traces[first_trace] = map.trace(extract_minimal_circuit(env3.traces, g));
  if (env3.dictators.size() > static_cast<std::size_t>(2 * g.n()))
    throw Error(ErrorCode::InternalInconsistency, "more than 2n dictator components");

  tr.stage = "step4";
  OrderRelation D1 = step4_rebuild(cs, sel.chosen, env3.dictators, pd);
  sw.lap("step4");

  tr.stage = "step5";
  EnvelopeOptions o5;
  o5.stop_at_first_circuit = true;
  o5.max_traces = 1;
  EnvelopeResult env5 = compute_envelope(std::move(D1), pd, o5);
  tr.step5_insertions += env5.insertions;
  tr.step5_levels = std::max(tr.step5_levels, env5.levels);
  tr.peak_pairs = std::max(tr.peak_pairs, env5.relation.size());
  sw.lap("step5");
  if (env5.stopped) {
    EnvelopeCircuitWitness w;
    w.trace = map.trace(env5.traces.front());
    for (int c : env3.dictators) w.dictators.push_back(map.comp(c));
    w.step3.assign(tr.step3_traces.begin() + static_cast<std::ptrdiff_t>(first_trace), tr.step3_traces.end());
    out.witness = std::move(w);
    return out;
  }

  tr.stage = "step6";
  std::size_t added = 0;
  OrderRelation full = step6_complete(std::move(env5.relation), cs, pd, &added);
  tr.step6_added += added;
  sw.lap("step6");
  if (opt.keep_trace_log) tr.insertion_log += trace_log(full);

  tr.stage = "step7";
  try {
    out.ordering = extract_ordering(full);
  } catch (const Error& e) {
    throw Error(ErrorCode::InternalInconsistency, std::string("completed relation is not a total order: ") + e.what());
  }
  if (auto v = check_ordering(g, out.ordering))
    throw Error(ErrorCode::InternalInconsistency, "ordering violates the pattern at (" + std::to_string(map.v(v->a)) +
                                                      "," + std::to_string(map.v(v->b)) + "," +
                                                      std::to_string(map.v(v->c)) + ")");
  sw.lap("step7");
  out.yes = true;
  return out;
}

}  // namespace

Certificate recognize(const Bigraph& g, const RecognizeOptions& opt, RecognitionTrace* trace) {
  RecognitionTrace local;
  RecognitionTrace& tr = trace ? *trace : local;
  tr = RecognitionTrace{};
  tr.n = g.n();
  tr.m = g.m();
  Certificate cert;
  cert.n = g.n();
  cert.m = g.m();
  try {
    auto parts = connected_components(g);
    tr.graph_components = static_cast<int>(parts.size());
    std::vector<Vertex> sequence;
    sequence.reserve(g.n());
    for (const auto& part : parts) {
      if (part.graph.n() == 1) {
        sequence.push_back(part.to_original[0]);
        continue;
      }
      ComponentOutcome oc = recognize_connected(part.graph, part.to_original, opt, tr);
      if (!oc.yes) {
        cert.yes = false;
        cert.witness = std::move(oc.witness);
        tr.stage = "no";
        return cert;
      }
      for (Vertex v : oc.ordering.sequence()) sequence.push_back(part.to_original[v]);
    }
    cert.yes = true;
    cert.ordering = Ordering::from_sequence(std::move(sequence));
    if (check_ordering(g, cert.ordering))
      throw Error(ErrorCode::InternalInconsistency, "merged ordering violates the pattern");
    try {
      cert.intervals = build_intervals(g, cert.ordering);
    } catch (const Error& e) {
      throw Error(ErrorCode::InternalInconsistency, e.what());
    }
    cert.colors = g.colors();
    tr.stage = "yes";
    return cert;
  } catch (const InconsistencyError&) {
    throw;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InternalInconsistency || e.code() == ErrorCode::NotTotal ||
        e.code() == ErrorCode::NotTransitive || e.code() == ErrorCode::ModelValidationFailed)
      throw InconsistencyError(e.what(), tr);
    throw;
  }
}

}  // namespace ibg
