#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "elproof/metrics.hpp"
#include "elproof/normalize.hpp"
#include "elproof/proofs.hpp"
#include "elproof/syntax.hpp"

namespace elproof {

struct Task {
  std::string id;
  std::string tbox_path;
  Axiom goal;
};

/// Tasks of a suite directory (one subdirectory per task holding `tbox.elt`
/// and `goal.elt`), sorted by id. Throws Error(Io).
std::vector<Task> load_suite(const std::string& dir);

enum class Status { Ok, Unsupported, Limit, Error, NotEntailed };
const char* to_string(Status s);

struct TaskOptions {
  ProofMode mode = ProofMode::Minimal;
  StepWeights weights;
  /// elk only: seed init for the goal's sides instead of every name.
  bool goal_directed = false;
  std::optional<std::chrono::milliseconds> timeout;
  std::size_t max_facts = 10'000'000;
};

struct ProofRun {
  ProofDag proof;
  MetricsReport metrics;
  std::size_t facts = 0;
  std::size_t dl_steps = 0;
};

/// normalize → saturate → lift → extract → validate → metrics. Throws
/// Error(GoalNotDerivable) if the goal is not entailed and
/// Error(InvalidProof) if validation reports anything.
ProofRun prove(const TBox& tbox, const Axiom& goal, Calculus calculus,
               const TaskOptions& options = {});

struct ResultRow {
  std::string task;
  Calculus calculus = Calculus::Elk;
  ProofMode mode = ProofMode::Minimal;
  Status status = Status::Ok;
  std::optional<MetricsReport> metrics;
  double runtime_ms = 0;
  std::string message;
};

struct TaskOutcome {
  ResultRow row;
  std::optional<ProofDag> proof;
};

/// Never throws for per-task failures; they become the row status.
TaskOutcome run_task(const Task& task, Calculus calculus, const TaskOptions& options = {});

struct SuiteOptions {
  TaskOptions task;
  std::vector<Calculus> calculi{Calculus::Elk, Calculus::Textbook, Calculus::Envelope};
  unsigned jobs = 1;
  /// Directory for `<task>.<calculus>.<mode>.json` proofs.
  std::optional<std::string> proofs_dir;
};

struct SuiteSummary {
  std::vector<ResultRow> rows;
  std::map<Status, std::size_t> counts;
};

SuiteSummary run_benchmark(const std::string& suite_dir, const SuiteOptions& options);

inline constexpr const char* kCsvHeader =
    "task,calculus,mode,status,size,depth,justification,bushiness,cutwidth,"
    "avg_step_complexity,runtime_ms";

/// `runtime_ms` stays empty unless `timing` is set, so output is reproducible.
std::string rows_to_csv(const std::vector<ResultRow>& rows, bool timing = false);

struct CsvRow {
  std::string task;
  std::string calculus;
  std::string mode;
  std::string status;
  std::map<std::string, std::string> values;
};

/// Throws Error(Format) for a malformed document.
std::vector<CsvRow> parse_results_csv(const std::string& text);

/// Maps a metric name (size, depth, justification, cutwidth, bushiness,
/// avgStepComplexity) to its CSV column; throws Error(Format) otherwise.
std::string metric_column(const std::string& metric);

struct PairCount {
  std::string left;
  std::string right;
  std::size_t higher = 0;
  std::size_t lower = 0;
  std::size_t equal = 0;
};

/// Counts over tasks that are ok for both calculi.
PairCount compare_pair(const std::vector<CsvRow>& rows, const std::string& metric,
                       const std::string& left, const std::string& right);

/// Every ordered pair of distinct calculi present in `rows`.
std::vector<PairCount> compare_results(const std::vector<CsvRow>& rows, const std::string& metric);

struct ScatterPoint {
  std::string task;
  Rational x;
  Rational y;
};

std::vector<ScatterPoint> scatter_points(const std::vector<CsvRow>& rows,
                                         const std::string& metric, const std::string& left,
                                         const std::string& right);
std::string scatter_data(const std::vector<ScatterPoint>& points, const std::string& left,
                         const std::string& right);
std::string scatter_svg(const std::vector<ScatterPoint>& points, const std::string& metric,
                        const std::string& left, const std::string& right);

}  // namespace elproof
