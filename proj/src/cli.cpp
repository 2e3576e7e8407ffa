#include "freespec/cli.hpp"

#include "freespec/examples.hpp"
#include "freespec/json_io.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

namespace freespec::cli {

namespace {

using json_io::Json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Job {
  std::string set;
  std::string point;
  std::uint64_t seed = 0;
  double tol_feas = Tolerances{}.feas;
  double tol_ker = Tolerances{}.ker;
  std::string out;
  int jobs = 1;
  bool verbose = false;

  // subcommand specifics
  bool presplit = false;
  int samples = 100;
  int level = 1;
  std::string sample_kind = "interior";
  std::string oracle_kind = "dilation";
  long trials = 10000;

  Tolerances tolerances() const {
    Tolerances t;
    t.feas = tol_feas;
    t.ker = tol_ker;
    return t;
  }
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

int level_suffix(const std::string& s, const std::string& prefix) {
  const std::string tail = s.substr(prefix.size());
  if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError("expected '" + prefix + "<n>', got '" + s + "'");
  return std::stoi(tail);
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

LinearPencil load_pencil(const Job& job) {
  if (job.set.empty()) throw UsageError("--set is required");
  if (std::filesystem::exists(job.set)) return json_io::pencil_from_json(read_json_file(job.set));
  return examples::by_name(job.set).pencil;
}

struct PointSet {
  std::vector<MatrixTuple> points;
  bool list = false;  // came from a batch file; results are emitted as an array
};

// One or more points. A file may hold a tuple, an array of tuples, or
// {"points": [...]}.
PointSet load_points(const Job& job, const LinearPencil* a) {
  const std::string& p = job.point;
  if (p.empty()) throw UsageError("--point is required");
  if (p == "pauli") return {{examples::pauli_pair()}};
  auto need_pencil = [&]() -> const LinearPencil& {
    if (!a) throw UsageError("'" + p + "' needs --set");
    return *a;
  };
  if (starts_with(p, "zero:")) {
    const auto& pen = need_pencil();
    return {{MatrixTuple::zero(pen.g(), level_suffix(p, "zero:"), Field::kReal)}};
  }
  if (starts_with(p, "random:") || starts_with(p, "boundary:")) {
    const auto& pen = need_pencil();
    const bool boundary = starts_with(p, "boundary:");
    linalg::Rng rng(job.seed);
    return {{sample_point(pen, level_suffix(p, boundary ? "boundary:" : "random:"), pen.field(),
                          boundary ? SampleKind::kBoundary : SampleKind::kInterior, rng)}};
  }
  if (!std::filesystem::exists(p)) throw UsageError("unknown point source '" + p + "'");
  const Json j = read_json_file(p);
  PointSet out;
  const Json* list = nullptr;
  if (j.is_array()) list = &j;
  if (j.is_object() && j.contains("points")) list = &j["points"];
  if (list) {
    out.list = true;
    for (const auto& t : *list) out.points.push_back(json_io::tuple_from_json(t));
  } else {
    out.points.push_back(json_io::tuple_from_json(j));
  }
  return out;
}

// Applies fn to every point with up to `jobs` threads; results keep input order.
Json batch(const PointSet& set, int jobs, const std::function<Json(const MatrixTuple&, size_t)>& fn) {
  const auto& points = set.points;
  if (!set.list) return fn(points.front(), 0);
  std::vector<Json> results(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < points.size(); i = next++) {
      try {
        results[i] = fn(points[i], i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(points.size())));
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return Json(results);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDescentFailure:
    case ErrorCode::kBlockingFailure:
    case ErrorCode::kIterationCapExceeded:
    case ErrorCode::kHierarchyViolation:
      return kNumericalFailure;
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kInvalidTuple:
    case ErrorCode::kUnknownName:
    case ErrorCode::kLevelTooLarge:
      return kUsageError;
    default:
      return kDomainError;
  }
}

Json execute(const std::string& command, const Job& job, std::ostream& err) {
  const Tolerances tol = job.tolerances();
  if (command == "member") {
    const auto a = load_pencil(job);
    return batch(load_points(job, &a), job.jobs,
                 [&](const MatrixTuple& x, size_t) { return json_io::verdict_to_json(membership(a, x, tol)); });
  }
  if (command == "classify") {
    const auto a = load_pencil(job);
    return batch(load_points(job, &a), job.jobs,
                 [&](const MatrixTuple& x, size_t) { return json_io::report_to_json(classify(a, x, tol)); });
  }
  if (command == "decompose") {
    const auto a = load_pencil(job);
    return batch(load_points(job, &a), job.jobs, [&](const MatrixTuple& x, size_t i) {
      DilationOptions opts;
      opts.seed = job.seed + i;
      opts.presplit = job.presplit;
      return json_io::decomposition_to_json(decompose_to_free_extremes(a, x, tol, opts));
    });
  }
  if (command == "mconv-member") {
    const auto a = load_pencil(job);
    return batch(load_points(job, &a), job.jobs, [&](const MatrixTuple& y, size_t) {
      const auto r = mconv_membership_report(a.coefficients(), y, tol);
      return Json{{"member", r.member}, {"consistent", r.consistent}, {"margin", r.margin}};
    });
  }
  if (command == "dual-check") {
    const auto a = load_pencil(job);
    return batch(load_points(job, &a), job.jobs, [&](const MatrixTuple& y, size_t i) {
      const bool ok = polar_dual_check(a, y, job.samples, job.seed + i, tol);
      return Json{{"passed", ok}, {"samples", job.samples}, {"evidence_only", true}};
    });
  }
  if (command == "example") {
    if (!job.set.empty()) {
      const auto named = examples::by_name(job.set);
      Json j = json_io::pencil_to_json(named.pencil);
      j["name"] = named.name;
      j["coordinates"] = named.coordinates;
      return j;
    }
    if (!job.point.empty()) return json_io::tuple_to_json(load_points(job, nullptr).points.front());
    Json names = Json::array();
    for (const auto& n : examples::registry()) names.push_back(n);
    return Json{{"sets", names}, {"points", Json::array({"pauli", "zero:<n>", "random:<n>", "boundary:<n>"})}};
  }
  if (command == "sample") {
    const auto a = load_pencil(job);
    linalg::Rng rng(job.seed);
    if (job.sample_kind != "interior" && job.sample_kind != "boundary")
      throw UsageError("--kind must be interior or boundary");
    const auto kind = job.sample_kind == "boundary" ? SampleKind::kBoundary : SampleKind::kInterior;
    return json_io::tuple_to_json(sample_point(a, job.level, a.field(), kind, rng));
  }
  if (command == "oracle") {
    const auto a = load_pencil(job);
    if (job.oracle_kind != "dilation" && job.oracle_kind != "matrix") throw UsageError("--kind must be dilation or matrix");
    return batch(load_points(job, &a), job.jobs, [&](const MatrixTuple& x, size_t i) {
      const auto r = job.oracle_kind == "dilation" ? oracles::search_nontrivial_dilation(a, x, job.trials, job.seed + i)
                                            : oracles::refute_matrix_extreme(a, x, job.trials, job.seed + i);
      return json_io::search_report_to_json(r, join(a.field(), x.field()));
    });
  }
  err << "unknown command '" << command << "'\n";
  throw UsageError("unknown command");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free spectrahedra: membership, extreme points, decompositions", "freespec"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Job job;
  app.add_option("--set", job.set, "named set (cube:g, ball:g, mdg:d,g, pauli) or pencil JSON file");
  app.add_option("--point", job.point, "pauli | zero:n | random:n | boundary:n | tuple JSON file");
  app.add_option("--seed", job.seed, "random seed")->capture_default_str();
  app.add_option("--tol-feas", job.tol_feas, "membership band around lambda_min = 0")->capture_default_str();
  app.add_option("--tol-ker", job.tol_ker, "relative kernel / null-space threshold")->capture_default_str();
  app.add_option("--out", job.out, "write JSON here instead of stdout");
  app.add_option("--jobs", job.jobs, "worker threads for batch point files")->check(CLI::PositiveNumber);
  app.add_flag("--verbose", job.verbose, "timing and settings on stderr");

  app.add_subcommand("member", "membership verdict of X in D_A");
  app.add_subcommand("classify", "classical / matrix / free extreme report");
  app.add_subcommand("decompose", "matrix convex combination of free extreme points")
      ->add_flag("--presplit", job.presplit, "block-diagonalize X first");
  app.add_subcommand("mconv-member", "Y in mconv(A) via the Choi matrix");
  app.add_subcommand("dual-check", "sampled polar-dual test of Y")
      ->add_option("--samples", job.samples, "number of sampled X")
      ->capture_default_str();
  app.add_subcommand("example", "print a named pencil (--set) or point (--point)");
  auto* sample = app.add_subcommand("sample", "random point of D_A(n)");
  sample->add_option("--n", job.level, "matrix level")->capture_default_str();
  sample->add_option("--kind", job.sample_kind, "interior or boundary")->capture_default_str();
  auto* oracle = app.add_subcommand("oracle", "randomized falsifiers (evidence only)");
  oracle->add_option("--kind", job.oracle_kind, "dilation or matrix")->capture_default_str();
  oracle->add_option("--trials", job.trials, "number of random trials")->capture_default_str();

  std::vector<std::string> storage{"freespec"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsageError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  const auto start = std::chrono::steady_clock::now();
  int code = kOk;
  Json result;
  try {
    result = execute(command, job, err);
  } catch (const UsageError& e) {
    err << Json{{"error", "Usage"}, {"message", e.what()}}.dump() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << Json{{"error", to_string(e.code())}, {"message", e.what()}}.dump() << "\n";
    code = exit_code_for(e.code());
    return code;
  }
  if (job.verbose) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    err << "[freespec] " << command << " tol_feas=" << job.tol_feas << " tol_ker=" << job.tol_ker
        << " seed=" << job.seed << " jobs=" << job.jobs << " elapsed=" << secs << "s\n";
  }
  const std::string text = json_io::dump(result) + "\n";
  if (job.out.empty()) {
    out << text;
  } else {
    std::ofstream f(job.out);
    if (!f) {
      err << "cannot write '" << job.out << "'\n";
      return kUsageError;
    }
    f << text;
  }
  return code;
}

}  // namespace freespec::cli
