// ibg: recognize, verify, oracle, gen, bench.
// Exit codes: 0 yes / valid, 1 no / invalid, 2 input error, 3 internal inconsistency.
#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "ibg/generators.hpp"
#include "ibg/recognizer.hpp"
#include "ibg/witness.hpp"

namespace fs = std::filesystem;
using namespace ibg;

namespace {

enum Exit { kYes = 0, kNo = 1, kInput = 2, kInternal = 3 };

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MalformedInput, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

fs::path trace_dir() {
  const char* d = std::getenv("IBG_TRACE_DIR");
  return d && *d ? fs::path(d) : fs::path("ibg-traces");
}

bool trace_dir_set() {
  const char* d = std::getenv("IBG_TRACE_DIR");
  return d && *d;
}

struct RecognizeFlags {
  bool json = false;
  bool trace = false;
  bool stats = false;
  bool diagnostics = false;
  std::string dot;
  bool dot_all = false;
};

// Runs one file; everything goes to `out` / `err` so batch mode can buffer.
int recognize_file(const std::string& path, const RecognizeFlags& f, std::ostream& out, std::ostream& err) {
  Bigraph g;
  try {
    g = read_bigraph_file(path);
  } catch (const Error& e) {
    err << path << ": " << e.what() << "\n";
    return kInput;
  }
  const std::string stem = fs::path(path).stem().string();
  RecognizeOptions opt;
  opt.diagnostics = f.diagnostics;
  opt.keep_trace_log = f.trace;
  RecognitionTrace tr;
  try {
    Certificate c = recognize(g, opt, &tr);
    if (f.json)
      out << certificate_to_json(c) << "\n";
    else
      out << (c.yes ? "yes" : std::string("no ") + witness_kind(c.witness)) << "\n";
    if (f.stats) err << tr.to_json(2) << "\n";
    if (f.trace) {
      if (trace_dir_set())
        write_text(trace_dir() / (stem + ".log"), tr.insertion_log);
      else
        err << tr.insertion_log;
    }
    if (!f.dot.empty()) {
      PairDigraph pd = build_pair_digraph(g);
      ComponentSet cs = classify_trivial(strong_components(pd), pd);
      write_text(f.dot, condensation_dot(cs, pd, !f.dot_all));
    }
    return c.yes ? kYes : kNo;
  } catch (const InconsistencyError& e) {
    fs::path dir = trace_dir();
    write_text(dir / (stem + ".ibg"), write_bigraph(g, "internal inconsistency: " + std::string(e.what())));
    write_text(dir / (stem + ".trace.json"), e.trace().to_json(2) + "\n");
    err << path << ": " << e.what() << " (archived under " << dir.string() << ")\n";
    return kInternal;
  } catch (const Error& e) {
    err << path << ": " << e.what() << "\n";
    return is_input_error(e.code()) ? kInput : kInternal;
  }
}

int worst(int a, int b) {
  auto rank = [](int c) { return c == kInternal ? 3 : c == kInput ? 2 : c == kNo ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

int recognize_dir(const std::string& dir, const RecognizeFlags& f, unsigned jobs) {
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".ibg") files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  std::vector<std::string> outs(files.size()), errs(files.size());
  std::vector<int> codes(files.size(), kYes);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < files.size();) {
      std::ostringstream o, e;
      RecognizeFlags ff = f;
      ff.dot.clear();
      codes[i] = recognize_file(files[i], ff, o, e);
      outs[i] = o.str();
      errs[i] = e.str();
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(files.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  int code = kYes;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (f.json)
      std::cout << outs[i];
    else
      std::cout << files[i] << "\t" << (outs[i].empty() ? "error\n" : outs[i]);
    std::cerr << errs[i];
    code = worst(code, codes[i]);
  }
  return code;
}

int cmd_verify(const std::string& graph_path, const std::string& cert_path) {
  try {
    Bigraph g = read_bigraph_file(graph_path);
    Certificate c = certificate_from_json(read_text(cert_path));
    std::string reason;
    if (verify_certificate(g, c, &reason)) {
      std::cout << "valid\n";
      return kYes;
    }
    std::cout << "invalid: " << reason << "\n";
    return kNo;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kInput;
  }
}

int cmd_oracle(const std::string& path, int max_n, bool json) {
  try {
    Bigraph g = read_bigraph_file(path);
    OracleResult r = oracle_recognize(g, max_n);
    if (json) {
      std::cout << "{\"verdict\":\"" << (r.is_interval_bigraph ? "yes" : "no") << "\"";
      if (r.ordering) {
        std::cout << ",\"ordering\":[";
        const auto& s = r.ordering->sequence();
        for (std::size_t i = 0; i < s.size(); ++i) std::cout << (i ? "," : "") << s[i];
        std::cout << "]";
      }
      std::cout << "}\n";
    } else {
      std::cout << (r.is_interval_bigraph ? "yes" : "no");
      if (r.ordering)
        for (Vertex v : r.ordering->sequence()) std::cout << " " << v;
      std::cout << "\n";
    }
    return r.is_interval_bigraph ? kYes : kNo;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return is_input_error(e.code()) ? kInput : kInternal;
  }
}

struct GenFlags {
  std::string family;
  int nb = 5, nw = 5, k = 3, n = 5, a = 3, b = 3, steps = 1;
  double p = 0.5;
  std::uint64_t seed = 1;
  std::string pattern = "pairs";
  std::string output;
};

int cmd_gen(const GenFlags& f) {
  try {
    Bigraph g;
    std::string comment;
    if (f.family == "intervals") {
      auto [h, model] = gen_from_intervals(f.nb, f.nw, f.seed);
      g = std::move(h);
      comment = "from random intervals, seed " + std::to_string(f.seed);
    } else if (f.family == "cycle") {
      g = gen_cycle(f.k);
    } else if (f.family == "path") {
      g = gen_path(f.n);
    } else if (f.family == "biclique") {
      g = gen_biclique(f.a, f.b);
    } else if (f.family == "exobiclique") {
      g = gen_exobiclique(f.a, f.b, f.pattern == "singletons" ? ExoPattern::Singletons : ExoPattern::Pairs);
    } else if (f.family == "random") {
      g = gen_random_bipartite(f.nb, f.nw, f.p, f.seed);
      comment = "random, p=" + std::to_string(f.p) + ", seed " + std::to_string(f.seed);
    } else if (f.family == "obstruction") {
      g = gen_obstruction_family(f.steps);
    } else {
      std::cerr << "unknown family " << f.family << "\n";
      return kInput;
    }
    std::string text = write_bigraph(g, comment);
    if (f.output.empty())
      std::cout << text;
    else
      write_text(f.output, text);
    return kYes;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kInput;
  }
}

struct BenchFlags {
  std::string family = "interval";
  std::vector<int> sizes;
  std::uint64_t seed = 1;
  double p = 0.1;
  bool arcs = true;
};

double timing(const RecognitionTrace& t, std::initializer_list<const char*> names) {
  double s = 0;
  for (const auto& [k, v] : t.timings)
    for (const char* n : names)
      if (k == n) s += v;
  return s;
}

int cmd_bench(const BenchFlags& f) {
  std::cout << "family\tn\tm\tbuild_s\tscc_s\tenvelope_s\ttotal_s\tpeak_pairs\tarcs\tstep3_insertions\tstep5_insertions\tverdict\n";
  int code = kYes;
  for (int size : f.sizes) {
    Bigraph g;
    try {
      if (f.family == "interval") {
        g = gen_from_intervals(std::max(1, size / 2), std::max(1, size - size / 2), f.seed).first;
      } else if (f.family == "random") {
        g = gen_random_bipartite(size / 2, size - size / 2, f.p, f.seed);
      } else if (f.family == "cycle") {
        g = gen_cycle(std::max(2, size / 2));
      } else if (f.family == "obstruction") {
        g = gen_obstruction_family(std::max(1, size));
      } else {
        std::cerr << "unknown family " << f.family << "\n";
        return kInput;
      }
    } catch (const Error& e) {
      std::cerr << e.what() << "\n";
      return kInput;
    }
    RecognizeOptions opt;
    opt.count_arcs = f.arcs;
    RecognitionTrace tr;
    std::string verdict;
    try {
      Certificate c = recognize(g, opt, &tr);
      verdict = c.yes ? "yes" : "no";
    } catch (const Error& e) {
      verdict = "inconsistent";
      code = kInternal;
      std::cerr << e.what() << "\n";
    }
    // Arc counting is reported but not timed as part of the build.
    std::cout << f.family << "\t" << g.n() << "\t" << g.m() << "\t" << timing(tr, {"build"}) << "\t"
              << timing(tr, {"scc"}) << "\t" << timing(tr, {"step3", "step5"}) << "\t" << tr.total_time() << "\t"
              << tr.peak_pairs << "\t" << (f.arcs ? std::to_string(tr.arc_count) : "-") << "\t"
              << tr.step3_insertions << "\t" << tr.step5_insertions << "\t" << verdict << "\n";
    std::cout.flush();
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interval bigraph recognition"};
  app.require_subcommand(1);

  RecognizeFlags rf;
  std::string rpath, rdir;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* rec = app.add_subcommand("recognize", "Decide whether a graph is an interval bigraph");
  rec->add_option("graph", rpath, "graph file");
  rec->add_option("--dir", rdir, "recognize every *.ibg file in a directory");
  rec->add_option("--jobs", jobs, "worker threads for --dir");
  rec->add_flag("--json", rf.json, "print the certificate as JSON");
  rec->add_flag("--trace", rf.trace, "write the insertion log (to IBG_TRACE_DIR/<name>.log, else stderr)");
  rec->add_flag("--stats", rf.stats, "print step counters and timings to stderr");
  rec->add_flag("--diagnostics", rf.diagnostics, "enable expensive structural assertions");
  rec->add_option("--dot", rf.dot, "write the condensation of H+ in DOT format");
  rec->add_flag("--dot-all", rf.dot_all, "include trivial components in the DOT output");

  std::string vgraph, vcert;
  auto* ver = app.add_subcommand("verify", "Check a certificate against a graph");
  ver->add_option("graph", vgraph)->required();
  ver->add_option("certificate", vcert)->required();

  std::string opath;
  int max_n = 16;
  bool ojson = false;
  auto* ora = app.add_subcommand("oracle", "Exhaustive ordering search");
  ora->add_option("graph", opath)->required();
  ora->add_option("--max-n", max_n, "refuse graphs with more vertices");
  ora->add_flag("--json", ojson);

  GenFlags gf;
  auto* gen = app.add_subcommand("gen", "Generate a graph");
  gen->add_option("family", gf.family, "intervals|cycle|path|biclique|exobiclique|random|obstruction")->required();
  gen->add_option("--nb", gf.nb);
  gen->add_option("--nw", gf.nw);
  gen->add_option("--k", gf.k, "cycle half-length");
  gen->add_option("--n", gf.n, "path length");
  gen->add_option("--a", gf.a, "biclique / exobiclique black side");
  gen->add_option("--b", gf.b, "biclique / exobiclique white side");
  gen->add_option("--p", gf.p, "edge probability");
  gen->add_option("--steps", gf.steps, "obstruction ladder length");
  gen->add_option("--pattern", gf.pattern, "exobiclique pattern: pairs|singletons");
  gen->add_option("--seed", gf.seed);
  gen->add_option("-o,--output", gf.output);

  BenchFlags bf;
  std::string sizes;
  bool no_arcs = false;
  auto* ben = app.add_subcommand("bench", "Timing table as TSV");
  ben->add_option("--family", bf.family, "interval|random|cycle|obstruction");
  ben->add_option("--sizes", sizes, "comma-separated sizes");
  ben->add_option("--seed", bf.seed);
  ben->add_option("--p", bf.p, "edge probability for the random family");
  ben->add_flag("--no-arcs", no_arcs, "skip counting the arcs of H+");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInput;
  }

  if (rec->parsed()) {
    if (!rdir.empty()) return recognize_dir(rdir, rf, jobs);
    if (rpath.empty()) {
      std::cerr << "recognize needs a graph file or --dir\n";
      return kInput;
    }
    return recognize_file(rpath, rf, std::cout, std::cerr);
  }
  if (ver->parsed()) return cmd_verify(vgraph, vcert);
  if (ora->parsed()) return cmd_oracle(opath, max_n, ojson);
  if (gen->parsed()) return cmd_gen(gf);
  if (ben->parsed()) {
    std::stringstream ss(sizes);
    for (std::string tok; std::getline(ss, tok, ',');)
      if (!tok.empty()) {
        try {
          bf.sizes.push_back(std::stoi(tok));
        } catch (const std::exception&) {
          std::cerr << "bad size " << tok << "\n";
          return kInput;
        }
      }
    bf.arcs = !no_arcs;
    return cmd_bench(bf);
  }
  return kInput;
}
