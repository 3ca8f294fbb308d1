#include "elproof/bench.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "elproof/errors.hpp"
#include "elproof/parser.hpp"
#include "elproof/saturation.hpp"

namespace elproof {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorKind::Io, "cannot write " + path.string());
}

Status status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedFeature:
    case ErrorKind::UnsupportedGoal: return Status::Unsupported;
    case ErrorKind::ResourceLimit:
    case ErrorKind::Timeout: return Status::Limit;
    case ErrorKind::GoalNotDerivable: return Status::NotEntailed;
    default: return Status::Error;
  }
}

}  // namespace

std::vector<Task> load_suite(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorKind::Io, "no task directory " + dir);
  std::vector<Task> tasks;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_directory()) continue;
    const auto tbox = entry.path() / "tbox.elt";
    const auto goal = entry.path() / "goal.elt";
    if (!fs::exists(tbox) || !fs::exists(goal)) continue;
    Axiom g;
    try {
      g = parse_axiom(read_file(goal));
    } catch (const ParseError& e) {
      throw Error(ErrorKind::Io, goal.string() + ": " + e.what());
    }
    tasks.push_back({entry.path().filename().string(), tbox.string(), std::move(g)});
  }
  std::sort(tasks.begin(), tasks.end(),
            [](const Task& a, const Task& b) { return a.id < b.id; });
  return tasks;
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::Unsupported: return "unsupported";
    case Status::Limit: return "limit";
    case Status::Error: return "error";
    case Status::NotEntailed: return "not-entailed";
  }
  return "error";
}

ProofRun prove(const TBox& tbox, const Axiom& goal, Calculus calculus, const TaskOptions& options) {
  SaturationOptions so;
  so.max_facts = options.max_facts;
  if (options.timeout) so.deadline = std::chrono::steady_clock::now() + *options.timeout;
  if (options.goal_directed && calculus == Calculus::Elk) {
    std::vector<Concept> inits{goal.lhs};
    if (goal.kind == AxiomKind::Equivalence) inits.push_back(goal.rhs);
    so.init_only = std::move(inits);
  }
  auto run = entails(tbox, calculus, goal, so);
  if (!run.result.entailed) {
    throw Error(ErrorKind::GoalNotDerivable, "goal " + to_string(goal) + " is not entailed");
  }
  const auto dl = lift_to_dl(run.graph, run.ntbox);
  ProofRun out;
  out.facts = run.graph.facts.size();
  out.dl_steps = dl.step_count();
  out.proof = options.mode == ProofMode::Minimal ? extract_min_proof(dl, goal)
                                                 : extract_first_proof(dl, goal);
  const auto violations = validate_proof(out.proof, tbox, goal);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw Error(ErrorKind::InvalidProof, v.kind + ": " + v.message);
  }
  out.metrics = compute_metrics(ProofTree::unravel(out.proof), options.weights);
  return out;
}

TaskOutcome run_task(const Task& task, Calculus calculus, const TaskOptions& options) {
  TaskOutcome out;
  out.row.task = task.id;
  out.row.calculus = calculus;
  out.row.mode = options.mode;
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto tbox = load_tbox(task.tbox_path);
    auto run = prove(tbox, task.goal, calculus, options);
    out.row.metrics = run.metrics;
    out.proof = std::move(run.proof);
  } catch (const Error& e) {
    out.row.status = status_for(e.kind());
    out.row.message = e.what();
  } catch (const std::exception& e) {
    out.row.status = Status::Error;
    out.row.message = e.what();
  }
  out.row.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

SuiteSummary run_benchmark(const std::string& suite_dir, const SuiteOptions& options) {
  const auto tasks = load_suite(suite_dir);
  if (options.proofs_dir) fs::create_directories(*options.proofs_dir);
  std::vector<std::pair<std::size_t, Calculus>> jobs;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    for (auto c : options.calculi) jobs.emplace_back(t, c);
  }
  std::vector<TaskOutcome> outcomes(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      outcomes[i] = run_task(tasks[jobs[i].first], jobs[i].second, options.task);
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(options.jobs, jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::sort(outcomes.begin(), outcomes.end(), [](const TaskOutcome& a, const TaskOutcome& b) {
    return std::tie(a.row.task, a.row.calculus) < std::tie(b.row.task, b.row.calculus);
  });
  SuiteSummary summary;
  for (auto& o : outcomes) {
    if (options.proofs_dir && o.proof) {
      const auto name = o.row.task + "." + to_string(o.row.calculus) + "." +
                        to_string(o.row.mode) + ".json";
      write_file(fs::path(*options.proofs_dir) / name, proof_to_json(*o.proof));
    }
    ++summary.counts[o.row.status];
    summary.rows.push_back(std::move(o.row));
  }
  return summary;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows, bool timing) {
  std::ostringstream os;
  os << kCsvHeader << "\n";
  for (const auto& r : rows) {
    os << r.task << ',' << to_string(r.calculus) << ',' << to_string(r.mode) << ','
       << to_string(r.status) << ',';
    if (r.status == Status::Ok && r.metrics) {
      const auto& m = *r.metrics;
      os << m.size << ',' << m.depth << ',' << m.justification << ','
         << format_decimal(m.bushiness) << ',' << m.cutwidth << ','
         << format_decimal(m.avg_step_complexity) << ',';
    } else {
      os << ",,,,,,";
    }
    if (timing) os << format_decimal(Rational(static_cast<long long>(r.runtime_ms * 1000), 1000), 3);
    os << "\n";
  }
  return os.str();
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

Rational parse_decimal(const std::string& s) {
  const auto dot = s.find('.');
  std::size_t used = 0;
  try {
    if (dot == std::string::npos) {
      const auto v = std::stoll(s, &used);
      if (used == s.size()) return Rational(v);
    } else {
      const std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      const auto v = std::stoll(digits, &used);
      long long den = 1;
      for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
      if (used == digits.size()) return Rational(v, den);
    }
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::Format, "not a number: '" + s + "'");
}

}  // namespace

std::vector<CsvRow> parse_results_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || split(line, ',') != split(kCsvHeader, ',')) {
    throw Error(ErrorKind::Format, "results CSV: unexpected header");
  }
  const auto columns = split(kCsvHeader, ',');
  std::vector<CsvRow> rows;
  for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line, ',');
    if (cells.size() != columns.size()) {
      throw Error(ErrorKind::Format, "results CSV: line " + std::to_string(lineno) + " has " +
                                         std::to_string(cells.size()) + " cells");
    }
    CsvRow row{cells[0], cells[1], cells[2], cells[3], {}};
    for (std::size_t i = 4; i < cells.size(); ++i) row.values[columns[i]] = cells[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string metric_column(const std::string& metric) {
  static const std::map<std::string, std::string> columns{
      {"size", "size"},
      {"depth", "depth"},
      {"justification", "justification"},
      {"justificationSize", "justification"},
      {"cutwidth", "cutwidth"},
      {"bushiness", "bushiness"},
      {"avgStepComplexity", "avg_step_complexity"},
  };
  auto it = columns.find(metric);
  if (it == columns.end()) throw Error(ErrorKind::Format, "unknown metric '" + metric + "'");
  return it->second;
}

std::vector<ScatterPoint> scatter_points(const std::vector<CsvRow>& rows,
                                         const std::string& metric, const std::string& left,
                                         const std::string& right) {
  const auto column = metric_column(metric);
  std::map<std::string, std::pair<std::optional<Rational>, std::optional<Rational>>> by_task;
  for (const auto& r : rows) {
    if (r.status != "ok") continue;
    if (r.calculus == left) by_task[r.task].first = parse_decimal(r.values.at(column));
    if (r.calculus == right) by_task[r.task].second = parse_decimal(r.values.at(column));
  }
  std::vector<ScatterPoint> points;
  for (const auto& [task, xy] : by_task) {
    if (xy.first && xy.second) points.push_back({task, *xy.first, *xy.second});
  }
  return points;
}

PairCount compare_pair(const std::vector<CsvRow>& rows, const std::string& metric,
                       const std::string& left, const std::string& right) {
  PairCount pc{left, right};
  for (const auto& p : scatter_points(rows, metric, left, right)) {
    if (p.x > p.y) {
      ++pc.higher;
    } else if (p.x < p.y) {
      ++pc.lower;
    } else {
      ++pc.equal;
    }
  }
  return pc;
}

std::vector<PairCount> compare_results(const std::vector<CsvRow>& rows, const std::string& metric) {
  metric_column(metric);
  std::vector<std::string> calculi;
  for (const auto& r : rows) {
    if (std::find(calculi.begin(), calculi.end(), r.calculus) == calculi.end()) {
      calculi.push_back(r.calculus);
    }
  }
  std::vector<PairCount> out;
  for (const auto& a : calculi) {
    for (const auto& b : calculi) {
      if (a != b) out.push_back(compare_pair(rows, metric, a, b));
    }
  }
  return out;
}

std::string scatter_data(const std::vector<ScatterPoint>& points, const std::string& left,
                         const std::string& right) {
  std::ostringstream os;
  os << "# task " << left << " " << right << "\n";
  for (const auto& p : points) {
    os << p.task << ' ' << format_decimal(p.x) << ' ' << format_decimal(p.y) << "\n";
  }
  return os.str();
}

std::string scatter_svg(const std::vector<ScatterPoint>& points, const std::string& metric,
                        const std::string& left, const std::string& right) {
  constexpr double kSize = 400, kPad = 40;
  double hi = 1;
  for (const auto& p : points) {
    hi = std::max({hi, boost::rational_cast<double>(p.x), boost::rational_cast<double>(p.y)});
  }
  auto sx = [&](double v) { return kPad + v / hi * (kSize - 2 * kPad); };
  auto sy = [&](double v) { return kSize - kPad - v / hi * (kSize - 2 * kPad); };
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
     << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "  <line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(hi) << "\" y2=\""
     << sy(hi) << "\" stroke=\"#bbb\" stroke-dasharray=\"4 4\"/>\n";
  os << "  <line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(hi) << "\" y2=\""
     << sy(0) << "\" stroke=\"black\"/>\n";
  os << "  <line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(0) << "\" y2=\""
     << sy(hi) << "\" stroke=\"black\"/>\n";
  os << "  <text x=\"" << kSize / 2 << "\" y=\"" << kSize - 8
     << "\" text-anchor=\"middle\" font-size=\"12\">" << left << " " << metric << "</text>\n";
  os << "  <text x=\"12\" y=\"" << kSize / 2 << "\" text-anchor=\"middle\" font-size=\"12\" "
     << "transform=\"rotate(-90 12 " << kSize / 2 << ")\">" << right << " " << metric
     << "</text>\n";
  os << "  <text x=\"" << sx(hi) << "\" y=\"" << sy(0) + 14
     << "\" text-anchor=\"end\" font-size=\"10\">" << hi << "</text>\n";
  for (const auto& p : points) {
    os << "  <circle cx=\"" << sx(boost::rational_cast<double>(p.x)) << "\" cy=\""
       << sy(boost::rational_cast<double>(p.y)) << "\" r=\"3\" fill=\"steelblue\""
       << " fill-opacity=\"0.6\"><title>" << p.task << "</title></circle>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace elproof
