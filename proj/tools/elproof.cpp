// elproof: prove, classify, measure and compare EL proofs from the command line.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "elproof/bench.hpp"
#include "elproof/errors.hpp"
#include "elproof/metrics.hpp"
#include "elproof/parser.hpp"
#include "elproof/proofs.hpp"
#include "elproof/saturation.hpp"

using namespace elproof;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kTaskFailed = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorKind::Io, "cannot write " + path);
}

std::vector<Calculus> parse_calculi(const std::string& list) {
  std::vector<Calculus> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(parse_calculus(item));
  }
  if (out.empty()) throw Error(ErrorKind::Format, "no calculus given");
  return out;
}

StepWeights load_weights(const std::string& path) {
  return path.empty() ? StepWeights{} : parse_weights(slurp(path));
}

// Usage-level failures exit 1, failures of the reasoning task itself exit 2.
int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Syntax:
    case ErrorKind::Arity:
    case ErrorKind::UnknownKeyword:
    case ErrorKind::Io:
    case ErrorKind::Format: return kUsage;
    default: return kTaskFailed;
  }
}

struct ProveArgs {
  std::string tbox, goal, calculus = "elk", mode = "minimal", out, weights;
  bool goal_directed = false;
  double timeout = 0;
};

int cmd_prove(const ProveArgs& a) {
  const auto tbox = load_tbox(a.tbox);
  const auto goal = parse_axiom(a.goal);
  TaskOptions opts;
  opts.mode = parse_mode(a.mode);
  opts.goal_directed = a.goal_directed;
  opts.weights = load_weights(a.weights);
  if (a.timeout > 0) opts.timeout = std::chrono::milliseconds(static_cast<long>(a.timeout * 1000));
  const auto run = prove(tbox, goal, parse_calculus(a.calculus), opts);
  const auto json = proof_to_json(run.proof);
  if (a.out.empty()) {
    std::cout << json;
  } else {
    spit(a.out, json);
  }
  std::cerr << metrics_to_json(run.metrics);
  return kOk;
}

int cmd_classify(const std::string& tbox_path, const std::string& calculus) {
  const auto tbox = load_tbox(tbox_path);
  for (const auto& [a, b] : classify(tbox, parse_calculus(calculus))) {
    std::cout << "SubClassOf(" << a << ' ' << b << ")\n";
  }
  return kOk;
}

int cmd_metrics(const std::string& proof, const std::string& weights) {
  const auto dag = proof_from_json(slurp(proof));
  std::cout << metrics_to_json(compute_metrics(ProofTree::unravel(dag), load_weights(weights)));
  return kOk;
}

struct BenchArgs {
  std::string tasks, calculi = "elk,textbook,envelope", out, mode = "minimal", proofs_dir,
                     weights;
  unsigned jobs = 1;
  double timeout = 30;
  bool timing = false, goal_directed = false;
};

int cmd_bench(const BenchArgs& a) {
  SuiteOptions opts;
  opts.calculi = parse_calculi(a.calculi);
  opts.jobs = a.jobs;
  opts.task.mode = parse_mode(a.mode);
  opts.task.goal_directed = a.goal_directed;
  opts.task.weights = load_weights(a.weights);
  if (a.timeout > 0) {
    opts.task.timeout = std::chrono::milliseconds(static_cast<long>(a.timeout * 1000));
  }
  if (!a.proofs_dir.empty()) opts.proofs_dir = a.proofs_dir;
  const auto summary = run_benchmark(a.tasks, opts);
  const auto csv = rows_to_csv(summary.rows, a.timing);
  if (a.out.empty()) {
    std::cout << csv;
  } else {
    spit(a.out, csv);
  }
  for (const auto& r : summary.rows) {
    if (r.status != Status::Ok) {
      std::cerr << r.task << " [" << to_string(r.calculus) << "] " << to_string(r.status) << ": "
                << r.message << "\n";
    }
  }
  std::cerr << summary.rows.size() << " rows:";
  for (const auto& [status, n] : summary.counts) std::cerr << ' ' << to_string(status) << '=' << n;
  std::cerr << "\n";
  return summary.counts.count(Status::Error) ? kTaskFailed : kOk;
}

struct CompareArgs {
  std::string results, metric = "size", scatter, svg, left, right;
};

int cmd_compare(const CompareArgs& a) {
  const auto rows = parse_results_csv(slurp(a.results));
  std::vector<PairCount> pairs;
  if (!a.left.empty() || !a.right.empty()) {
    if (a.left.empty() || a.right.empty()) {
      throw Error(ErrorKind::Format, "--left and --right go together");
    }
    pairs.push_back(compare_pair(rows, a.metric, a.left, a.right));
  } else {
    pairs = compare_results(rows, a.metric);
  }
  std::cout << "metric " << a.metric << "\n";
  std::cout << "left,right,higher,lower,equal\n";
  for (const auto& p : pairs) {
    std::cout << p.left << ',' << p.right << ',' << p.higher << ',' << p.lower << ',' << p.equal
              << "\n";
  }
  if (!a.scatter.empty()) {
    std::string data;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (i > 0) data += "\n\n";
      data += scatter_data(scatter_points(rows, a.metric, pairs[i].left, pairs[i].right),
                           pairs[i].left, pairs[i].right);
    }
    spit(a.scatter, data);
  }
  if (!a.svg.empty() && !pairs.empty()) {
    const auto& p = pairs.front();
    spit(a.svg, scatter_svg(scatter_points(rows, a.metric, p.left, p.right), a.metric, p.left,
                            p.right));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EL proof toolkit: consequence-based calculi, proof extraction, proof metrics"};
  app.require_subcommand(1);

  ProveArgs prove_args;
  auto* prove_cmd = app.add_subcommand("prove", "Extract a proof for one goal");
  prove_cmd->add_option("--tbox", prove_args.tbox, "Ontology file (.elt)")->required();
  prove_cmd->add_option("--goal", prove_args.goal, "Goal axiom, e.g. \"SubClassOf(A B)\"")
      ->required();
  prove_cmd->add_option("--calculus", prove_args.calculus, "elk, textbook or envelope")
      ->check(CLI::IsMember({"elk", "textbook", "envelope"}));
  prove_cmd->add_option("--mode", prove_args.mode, "minimal or first")
      ->check(CLI::IsMember({"minimal", "first"}));
  prove_cmd->add_flag("--goal-directed", prove_args.goal_directed,
                      "elk: seed only the goal's left-hand side");
  prove_cmd->add_option("--out", prove_args.out, "Write proof JSON here instead of stdout");
  prove_cmd->add_option("--weights", prove_args.weights, "Step-complexity weights JSON");
  prove_cmd->add_option("--timeout", prove_args.timeout, "Saturation time limit in seconds");

  std::string classify_tbox, classify_calculus = "elk";
  auto* classify_cmd = app.add_subcommand("classify", "Print all entailed A ⊑ B");
  classify_cmd->add_option("--tbox", classify_tbox, "Ontology file (.elt)")->required();
  classify_cmd->add_option("--calculus", classify_calculus, "elk, textbook or envelope")
      ->check(CLI::IsMember({"elk", "textbook", "envelope"}));

  std::string metrics_proof, metrics_weights;
  auto* metrics_cmd = app.add_subcommand("metrics", "Measure a proof JSON file");
  metrics_cmd->add_option("--proof", metrics_proof, "Proof JSON")->required();
  metrics_cmd->add_option("--weights", metrics_weights, "Step-complexity weights JSON");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Run a task suite across calculi");
  bench_cmd->add_option("--tasks", bench_args.tasks, "Suite directory")->required();
  bench_cmd->add_option("--calculi", bench_args.calculi, "Comma-separated calculi");
  bench_cmd->add_option("--out", bench_args.out, "CSV output (default stdout)");
  bench_cmd->add_option("--mode", bench_args.mode, "minimal or first")
      ->check(CLI::IsMember({"minimal", "first"}));
  bench_cmd->add_option("--jobs", bench_args.jobs, "Parallel tasks")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--timeout", bench_args.timeout, "Per-task limit in seconds (0: none)");
  bench_cmd->add_option("--proofs-dir", bench_args.proofs_dir, "Write every proof JSON here");
  bench_cmd->add_option("--weights", bench_args.weights, "Step-complexity weights JSON");
  bench_cmd->add_flag("--timing", bench_args.timing, "Fill the runtime_ms column");
  bench_cmd->add_flag("--goal-directed", bench_args.goal_directed,
                      "elk: seed only the goal's left-hand side");

  CompareArgs compare_args;
  auto* compare_cmd = app.add_subcommand("compare", "Pairwise metric comparison of results");
  compare_cmd->add_option("--results", compare_args.results, "CSV from bench")->required();
  compare_cmd->add_option("--metric", compare_args.metric,
                          "size, depth, justification, cutwidth, bushiness, avgStepComplexity");
  compare_cmd->add_option("--left", compare_args.left, "Restrict to this left calculus");
  compare_cmd->add_option("--right", compare_args.right, "Restrict to this right calculus");
  compare_cmd->add_option("--scatter", compare_args.scatter, "Scatter data file");
  compare_cmd->add_option("--svg", compare_args.svg, "SVG scatter of the first pair");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*prove_cmd) return cmd_prove(prove_args);
    if (*classify_cmd) return cmd_classify(classify_tbox, classify_calculus);
    if (*metrics_cmd) return cmd_metrics(metrics_proof, metrics_weights);
    if (*bench_cmd) return cmd_bench(bench_args);
    if (*compare_cmd) return cmd_compare(compare_args);
  } catch (const Error& e) {
    std::cerr << "elproof: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "elproof: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
