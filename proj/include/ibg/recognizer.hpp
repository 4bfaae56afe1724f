#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ibg/certificate.hpp"
#include "ibg/error.hpp"

namespace ibg {

struct RecognizeOptions {
  // Expensive structural assertions (condensation depth) on top of the cheap
  // ones that always run (first circuit shape, dictator bound, model check).
  bool diagnostics = false;
  bool count_arcs = false;
  bool keep_trace_log = false;
  std::size_t max_traces = 16;
};

struct RecognitionTrace {
  std::vector<std::pair<std::string, double>> timings;  // seconds per step, summed over components
  int n = 0;
  std::size_t m = 0;
  int graph_components = 0;
  std::size_t pair_count = 0;
  std::uint64_t arc_count = 0;  // only with count_arcs
  int components = 0;
  int nontrivial = 0;
  int condensation_depth = 0;   // only with diagnostics
  std::size_t step2_pairs = 0;
  int step2_chosen = 0;
  std::size_t step3_insertions = 0;
  std::size_t step3_circuits = 0;
  std::uint32_t step3_levels = 0;
  std::vector<PairVertex> dictators;
  std::size_t step5_insertions = 0;
  std::uint32_t step5_levels = 0;
  std::size_t step6_added = 0;
  std::size_t peak_pairs = 0;
  std::string stage;             // last stage reached
  std::string insertion_log;     // only with keep_trace_log
  std::vector<CertTrace> step3_traces;

  void add_time(const std::string& step, double seconds);
  double total_time() const;
  std::string to_json(int indent = -1) const;
};

// Algorithm outcome disagreed with a structural claim or the final checks.
class InconsistencyError : public Error {
 public:
  InconsistencyError(const std::string& what, RecognitionTrace trace)
      : Error(ErrorCode::InternalInconsistency, what), trace_(std::move(trace)) {}
  const RecognitionTrace& trace() const { return trace_; }

 private:
  RecognitionTrace trace_;
};

// Throws InconsistencyError; input errors propagate from parsing only.
Certificate recognize(const Bigraph& g, const RecognizeOptions& opt = {}, RecognitionTrace* trace = nullptr);

}  // namespace ibg
