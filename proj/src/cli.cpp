#include "unizero/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "unizero/canonical.hpp"
#include "unizero/closed_forms.hpp"
#include "unizero/enumeration.hpp"
#include "unizero/error.hpp"
#include "unizero/exact_linalg.hpp"
#include "unizero/io.hpp"
#include "unizero/reference.hpp"

namespace unizero {

namespace {

int default_threads() {
  if (const char* env = std::getenv(kThreadsEnv)) {
    try {
      const int t = std::stoi(env);
      if (t > 0) return t;
    } catch (const std::exception&) {
    }
  }
  return std::max(1, omp_get_max_threads());
}

struct EnumerateArgs {
  int n = 0, alpha = 0, beta = 0;
  bool positive_only = false, count_only = false, resume = false, long_run = false;
  int threads = 1;
  std::string checkpoint;
  std::string format = "plain";
  std::uint64_t node_limit = 0;
};

int cmd_canon(std::istream& in, const std::string& input, std::ostream& out, std::ostream& err) {
  std::ifstream file;
  std::istream* src = &in;
  if (!input.empty()) {
    file.open(input);
    if (!file) {
      err << "error: cannot open " << input << '\n';
      return kExitUsage;
    }
    src = &file;
  }
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(*src, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      const IntMatrix m = parse_matrix_line(line, line_no, {std::nullopt, true});
      out << format_matrix_line(canonical_form(m)) << '\n';
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
  }
  return kExitOk;
}

int cmd_enumerate(const EnumerateArgs& a, std::ostream& out, std::ostream& err) {
  ClassQuery q = ClassQuery::exact(a.n, a.alpha, a.beta);
  q.positive_only = a.positive_only;
  q.count_only = a.count_only;
  q.thread_budget = a.threads;
  q.long_run = a.long_run;
  if (a.node_limit != 0) q.node_limit = a.node_limit;
  RunOptions opts;
  if (!a.checkpoint.empty()) opts.checkpoint = a.checkpoint;
  opts.resume = a.resume;
  if (a.resume && a.checkpoint.empty()) {
    err << "error: --resume needs --checkpoint\n";
    return kExitUsage;
  }
  const EnumerationResult r = enumerate_classes(q, opts);
  out << enumeration_header(r) << '\n';
  if (!r.complete()) {
    out << "# status=" << to_string(r.status) << " nodes=" << r.nodes_explored << " units=" << r.units_done << '/'
        << r.units_total << '\n';
  }
  for (const auto& c : r.classes) {
    if (a.format == "jsonl") {
      out << to_jsonl(MatrixRecord::from_class(c)) << '\n';
    } else {
      out << format_matrix_line(c.rep) << '\n';
    }
  }
  return r.complete() ? kExitOk : kExitIncomplete;
}

int cmd_scan(int n, int alpha, int bmin, int bmax, const std::string& format, int threads, bool long_run,
             std::ostream& out) {
  ClassQuery q = ClassQuery::range(n, alpha, bmin, bmax);
  q.thread_budget = threads;
  q.long_run = long_run;
  const ScanResult s = sequence_scan(q);
  out << (format == "jsonl" ? scan_jsonl(s.rows) : scan_csv(s.rows));
  return s.status == SearchStatus::kComplete ? kExitOk : kExitIncomplete;
}

int cmd_maxbeta(int n, int alpha, bool unrestricted, bool best_effort, bool long_run, int threads, std::ostream& out) {
  MaxBetaOptions o;
  o.best_effort = best_effort;
  o.long_run = long_run;
  o.thread_budget = threads;
  const SearchMode mode = unrestricted ? SearchMode::kUnrestricted : SearchMode::kZerofree;
  const MaxBetaResult r = max_beta_search(n, alpha, mode, o);
  out << "# n=" << n << " alpha=" << alpha << " mode=" << to_string(mode) << " beta_max=" << r.beta_max
      << (r.lower_bound_only ? " lower_bound_only" : " certified") << '\n';
  if (r.witness) out << format_matrix_line(*r.witness) << '\n';
  return r.lower_bound_only && !best_effort ? kExitIncomplete : kExitOk;
}

int verify_prop0(std::ostream& out) {
  bool ok = true;
  for (int n = 2; n <= 4; ++n) {
    const Prop0Report r = unizero::verify_prop0(n);
    out << "prop0 n=" << n << " checked=" << r.matrices_checked << " divisor=" << r.divisor << " dets={";
    bool first = true;
    for (std::int64_t d : r.determinants) {
      out << (first ? "" : ",") << d;
      first = false;
    }
    out << "} " << (r.holds() ? "confirmed" : "FAILED") << '\n';
    ok &= r.holds();
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

int verify_prop5(int kmax, int threads, std::ostream& out) {
  bool ok = true;
  for (int k = 2; k <= kmax; ++k) {
    const std::int64_t formula = prop5_count(k);
    ClassQuery q = ClassQuery::exact(2, k, k);
    q.thread_budget = threads;
    const EnumerationResult r = enumerate_classes(q);
    std::set<std::vector<std::int64_t>> engine, constructed;
    for (const auto& c : r.classes) engine.insert({c.rep.flat().begin(), c.rep.flat().end()});
    for (const auto& pm : prop5_enumerate(k)) {
      const IntMatrix rep = canonical_form(pm.matrix);
      constructed.insert({rep.flat().begin(), rep.flat().end()});
    }
    const bool good = r.complete() && static_cast<std::int64_t>(r.total_count) == formula && engine == constructed;
    out << "prop5 k=" << k << " formula=" << formula << " engine=" << r.total_count
        << " constructed=" << constructed.size() << ' ' << (good ? "confirmed" : "FAILED") << '\n';
    ok &= good;
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

int verify_conjectures(int threads, std::ostream& out) {
  bool ok = true;
  for (int id = 1; id <= 3; ++id) {
    const ConjectureReport r = verify_conjecture(id, threads);
    out << "conjecture " << id << ' ' << (r.confirmed ? "confirmed" : "FAILED") << " (" << r.statement << ";";
    for (const auto& c : r.cases)
      out << " (" << c.n << ',' << c.alpha << ',' << c.beta << ")=" << c.count << (c.complete ? "" : "?");
    std::uint64_t nodes = 0;
    for (const auto& c : r.cases) nodes += c.nodes;
    out << "; nodes=" << nodes << ")\n";
    ok &= r.confirmed;
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

int verify_oracle(int samples, std::ostream& out) {
  bool ok = true;
  for (int n = 2; n <= 4; ++n) {
    const auto a = reference::oracle_agreement(n, samples, 5, 0x5eed0000u + static_cast<unsigned>(n));
    out << "oracle n=" << n << " samples=" << a.samples << " mismatches=" << a.mismatches << ' '
        << (a.mismatches == 0 ? "confirmed" : "FAILED") << '\n';
    ok &= a.mismatches == 0;
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_n2(int kmax, int threads, std::ostream& out) {
  out << "# k 2phi(k)-1 engine\n";
  const ScanResult s = diagonal_scan(2, 2, kmax, threads);
  bool ok = true;
  for (const auto& row : s.rows) {
    const std::int64_t f = prop5_count(row.beta);
    out << row.beta << ' ' << f << ' ' << row.total << '\n';
    ok &= static_cast<std::int64_t>(row.total) == f;
  }
  if (s.status != SearchStatus::kComplete) return kExitIncomplete;
  return ok ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classify unimodular zerofree integer matrices up to signed permutations", "unizero"};
  app.require_subcommand(1);
  const int threads_default = default_threads();

  std::string canon_input;
  auto* canon = app.add_subcommand("canon", "Canonical form of each input matrix line");
  canon->add_option("--input", canon_input, "Read matrices from this file instead of stdin");

  EnumerateArgs ea;
  ea.threads = threads_default;
  auto* enumerate = app.add_subcommand("enumerate", "List every class with exact (n, alpha, beta)");
  enumerate->add_option("--n", ea.n, "Dimension")->required();
  enumerate->add_option("--alpha", ea.alpha, "Exact max |entry| of M")->required();
  enumerate->add_option("--beta", ea.beta, "Exact max |entry| of M^-1")->required();
  enumerate->add_flag("--positive-only", ea.positive_only, "Only classes with an entrywise positive member");
  enumerate->add_flag("--count-only", ea.count_only, "Print the header only");
  enumerate->add_option("--threads", ea.threads, "Worker threads (default from UNIZERO_THREADS)");
  enumerate->add_option("--checkpoint", ea.checkpoint, "Checkpoint file written during the run");
  enumerate->add_flag("--resume", ea.resume, "Continue from --checkpoint");
  enumerate->add_flag("--long-run", ea.long_run, "Lift the default node cap on large searches");
  enumerate->add_option("--node-limit", ea.node_limit, "Stop after this many search nodes (exit 3)");
  enumerate->add_option("--format", ea.format, "Output format")->check(CLI::IsMember({"plain", "jsonl"}));

  int sn = 0, salpha = 0, sbmin = 0, sbmax = 0, sthreads = threads_default;
  bool slong = false;
  std::string sformat = "csv";
  auto* scan = app.add_subcommand("scan", "Class counts for each beta in a range");
  scan->add_option("--n", sn)->required();
  scan->add_option("--alpha", salpha)->required();
  scan->add_option("--beta-min", sbmin)->required();
  scan->add_option("--beta-max", sbmax)->required();
  scan->add_option("--format", sformat, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
  scan->add_option("--threads", sthreads);
  scan->add_flag("--long-run", slong);

  int mn = 0, malpha = 0, mthreads = threads_default;
  bool mzero = false, munres = false, mbest = false, mlong = false;
  auto* maxbeta = app.add_subcommand("maxbeta", "Largest beta for given n and alpha, with a witness");
  maxbeta->add_option("--n", mn)->required();
  maxbeta->add_option("--alpha", malpha)->required();
  auto* zf = maxbeta->add_flag("--zerofree", mzero);
  maxbeta->add_flag("--unrestricted", munres)->excludes(zf);
  maxbeta->add_flag("--best-effort", mbest, "Allow n > 5; the result is a lower bound");
  maxbeta->add_flag("--long-run", mlong);
  maxbeta->add_option("--threads", mthreads);

  std::string suite;
  int vthreads = threads_default, vkmax = 30, vsamples = 1000;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite)
      ->required()
      ->check(CLI::IsMember({"prop0", "prop5", "conjectures", "oracle"}));
  verify->add_option("--threads", vthreads);
  verify->add_option("--kmax", vkmax, "Upper k for the prop5 suite");
  verify->add_option("--samples", vsamples, "Random matrices per n for the oracle suite");

  int kmax = 0, nthreads = threads_default;
  auto* n2 = app.add_subcommand("n2", "2x2 diagonal counts beside 2 phi(k) - 1");
  n2->add_option("--kmax", kmax)->required();
  n2->add_option("--threads", nthreads);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (canon->parsed()) return cmd_canon(in, canon_input, out, err);
    if (enumerate->parsed()) return cmd_enumerate(ea, out, err);
    if (scan->parsed()) return cmd_scan(sn, salpha, sbmin, sbmax, sformat, sthreads, slong, out);
    if (maxbeta->parsed()) return cmd_maxbeta(mn, malpha, munres, mbest, mlong, mthreads, out);
    if (verify->parsed()) {
      if (suite == "prop0") return verify_prop0(out);
      if (suite == "prop5") return verify_prop5(vkmax, vthreads, out);
      if (suite == "conjectures") return verify_conjectures(vthreads, out);
      return verify_oracle(vsamples, out);
    }
    if (n2->parsed()) return cmd_n2(kmax, nthreads, out);
  } catch (const QueryError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace unizero
