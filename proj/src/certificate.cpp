#include "ibg/certificate.hpp"

#include <json.hpp>

#include "ibg/error.hpp"

namespace ibg {

using json = nlohmann::ordered_json;

const char* witness_kind(const Witness& w) {
  switch (w.index()) {
    case 1: return "self_coupled";
    case 2: return "step2_conflict";
    case 3: return "envelope_circuit";
    default: return "none";
  }
}

namespace {

json pj(PairVertex p) { return json::array({p.first, p.second}); }

json pairs_j(const std::vector<PairVertex>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(pj(p));
  return a;
}

json trace_j(const CertTrace& t) {
  json d = json::array();
  for (const auto& s : t.derivation) {
    json e;
    e["pair"] = pj(s.pair);
    e["rule"] = to_string(s.kind);
    switch (s.kind) {
      case Derivation::Base:
      case Derivation::Completion: e["component"] = pj(s.component); break;
      case Derivation::Implied: e["from"] = pj(s.from); break;
      case Derivation::Transitive: e["via"] = s.via; break;
      default: break;
    }
    d.push_back(std::move(e));
  }
  json j;
  j["phase"] = to_string(t.phase);
  j["circuit"] = pairs_j(t.circuit);
  j["closing"] = pj(t.closing);
  j["dictator"] = t.dictator ? pj(*t.dictator) : json(nullptr);
  j["derivation"] = std::move(d);
  return j;
}

json exo_j(const ExoBiclique& e) {
  json j;
  j["M"] = e.M;
  j["N"] = e.N;
  j["black_triple"] = e.black_triple;
  j["white_triple"] = e.white_triple;
  return j;
}

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::MalformedInput, "certificate: " + what); }

PairVertex get_pair(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    bad("expected a pair [u,v]");
  return {j[0].get<Vertex>(), j[1].get<Vertex>()};
}

std::vector<PairVertex> get_pairs(const json& j) {
  if (!j.is_array()) bad("expected a list of pairs");
  std::vector<PairVertex> out;
  for (const auto& e : j) out.push_back(get_pair(e));
  return out;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

Phase get_phase(const std::string& s) {
  for (Phase p : {Phase::Step2, Phase::Step3, Phase::Step4, Phase::Step5, Phase::Step6})
    if (s == to_string(p)) return p;
  bad("unknown phase '" + s + "'");
}

CertTrace get_trace(const json& j) {
  CertTrace t;
  t.phase = get_phase(field(j, "phase").get<std::string>());
  t.circuit = get_pairs(field(j, "circuit"));
  t.closing = get_pair(field(j, "closing"));
  const json& d = field(j, "dictator");
  if (!d.is_null()) t.dictator = get_pair(d);
  for (const auto& e : field(j, "derivation")) {
    TraceStep s;
    s.pair = get_pair(field(e, "pair"));
    std::string rule = field(e, "rule").get<std::string>();
    if (rule == "base" || rule == "completion") {
      s.kind = rule == "base" ? Derivation::Base : Derivation::Completion;
      s.component = get_pair(field(e, "component"));
    } else if (rule == "implied") {
      s.kind = Derivation::Implied;
      s.from = get_pair(field(e, "from"));
    } else if (rule == "transitive") {
      s.kind = Derivation::Transitive;
      s.via = field(e, "via").get<Vertex>();
    } else {
      bad("unknown rule '" + rule + "'");
    }
    t.derivation.push_back(s);
  }
  return t;
}

std::array<Vertex, 3> get_triple(const json& j) {
  if (!j.is_array() || j.size() != 3) bad("expected a triple");
  return {j[0].get<Vertex>(), j[1].get<Vertex>(), j[2].get<Vertex>()};
}

json intervals_j(const std::vector<Color>& colors, const IntervalModel& model) {
  json a = json::array();
  for (std::size_t v = 0; v < model.intervals.size(); ++v) {
    json e;
    e["vertex"] = v;
    e["color"] = std::string(1, v < colors.size() ? color_char(colors[v]) : '?');
    e["left"] = model.intervals[v].left;
    e["right"] = model.intervals[v].right;
    a.push_back(std::move(e));
  }
  return a;
}

}  // namespace

std::string intervals_to_json(const Bigraph& g, const IntervalModel& model, int indent) {
  return intervals_j(g.colors(), model).dump(indent);
}

std::string certificate_to_json(const Certificate& c, int indent) {
  json j;
  j["verdict"] = c.yes ? "yes" : "no";
  j["n"] = c.n;
  j["m"] = c.m;
  if (c.yes) {
    j["ordering"] = c.ordering.sequence();
    j["intervals"] = intervals_j(c.colors, c.intervals);
  } else {
    json w;
    w["kind"] = witness_kind(c.witness);
    if (auto* s = std::get_if<SelfCoupledWitness>(&c.witness)) {
      w["pair"] = pj(s->pair);
      w["forward"] = pairs_j(s->forward);
      w["backward"] = pairs_j(s->backward);
    } else if (auto* s2 = std::get_if<Step2ConflictWitness>(&c.witness)) {
      w["components"] = json::array({pj(s2->component), pj(s2->couple)});
      w["exobiclique"] = s2->exobiclique ? exo_j(*s2->exobiclique) : json(nullptr);
      w["circuits"] = json::array({trace_j(s2->with_component), trace_j(s2->with_couple)});
    } else if (auto* e = std::get_if<EnvelopeCircuitWitness>(&c.witness)) {
      w["phase"] = to_string(e->trace.phase);
      w["trace"] = trace_j(e->trace);
      w["dictators"] = pairs_j(e->dictators);
      json s3 = json::array();
      for (const auto& t : e->step3) s3.push_back(trace_j(t));
      w["step3_circuits"] = std::move(s3);
    }
    j["witness"] = std::move(w);
  }
  return j.dump(indent);
}

Certificate certificate_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    bad(e.what());
  }
  try {
    Certificate c;
    std::string verdict = field(j, "verdict").get<std::string>();
    c.n = field(j, "n").get<int>();
    c.m = field(j, "m").get<std::size_t>();
    if (verdict == "yes") {
      c.yes = true;
      c.ordering = Ordering::from_sequence(field(j, "ordering").get<std::vector<Vertex>>());
      for (const auto& e : field(j, "intervals")) {
        std::size_t v = field(e, "vertex").get<std::size_t>();
        if (v != c.intervals.intervals.size()) bad("intervals must be listed by vertex id");
        c.intervals.intervals.push_back({field(e, "left").get<std::int64_t>(), field(e, "right").get<std::int64_t>()});
        std::string col = field(e, "color").get<std::string>();
        if (col != "B" && col != "W") bad("bad color");
        c.colors.push_back(col == "B" ? Color::Black : Color::White);
      }
    } else if (verdict == "no") {
      const json& w = field(j, "witness");
      std::string kind = field(w, "kind").get<std::string>();
      if (kind == "self_coupled") {
        SelfCoupledWitness s;
        s.pair = get_pair(field(w, "pair"));
        s.forward = get_pairs(field(w, "forward"));
        s.backward = get_pairs(field(w, "backward"));
        c.witness = s;
      } else if (kind == "step2_conflict") {
        Step2ConflictWitness s;
        const json& comps = field(w, "components");
        if (!comps.is_array() || comps.size() != 2) bad("components must list two pairs");
        s.component = get_pair(comps[0]);
        s.couple = get_pair(comps[1]);
        const json& exo = field(w, "exobiclique");
        if (!exo.is_null()) {
          ExoBiclique e;
          e.M = field(exo, "M").get<std::vector<Vertex>>();
          e.N = field(exo, "N").get<std::vector<Vertex>>();
          e.black_triple = get_triple(field(exo, "black_triple"));
          e.white_triple = get_triple(field(exo, "white_triple"));
          s.exobiclique = e;
        }
        const json& cir = field(w, "circuits");
        if (!cir.is_array() || cir.size() != 2) bad("circuits must list two traces");
        s.with_component = get_trace(cir[0]);
        s.with_couple = get_trace(cir[1]);
        c.witness = s;
      } else if (kind == "envelope_circuit") {
        EnvelopeCircuitWitness e;
        e.trace = get_trace(field(w, "trace"));
        e.dictators = get_pairs(field(w, "dictators"));
        for (const auto& t : field(w, "step3_circuits")) e.step3.push_back(get_trace(t));
        c.witness = e;
      } else {
        bad("unknown witness kind '" + kind + "'");
      }
    } else {
      bad("verdict must be yes or no");
    }
    return c;
  } catch (const json::exception& e) {
    bad(e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidOrdering) bad(e.what());
    throw;
  }
}

}  // namespace ibg
