#include "gweave/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "gweave/cli/document.hpp"
#include "gweave/error.hpp"
#include "gweave/papersuite.hpp"

namespace gweave::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct LoadedInput {
  std::string path;
  std::string sha256;
  GFrame frame;
};

LoadedInput load_input(const std::string& path) {
  const std::string bytes = read_file(path);
  return {path, sha256_hex(bytes), parse_gframe(bytes)};
}

Json vector_json(const Vector& v) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return Json{{"real", re}, {"imag", im}};
}

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json selection_json(const WeavingSelection& s) {
  return Json{{"indices", s.indices()}, {"bitmask", s.bitmask_string()}};
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

class Report {
 public:
  explicit Report(std::string command) : start_(Clock::now()) { doc_["command"] = std::move(command); }

  void input(const LoadedInput& in) { inputs_.push_back(Json{{"path", in.path}, {"sha256", in.sha256}}); }
  Json& results() { return results_; }

  CommandOutcome finish(const CommandOptions& options, std::string text, int exit_code = kExitOk) {
    doc_["inputs"] = inputs_;
    doc_["results"] = results_;
    doc_["tolerances"] = Json{{"classification", options.tol},
                              {"absolute_floor", numkernel::kAbsoluteFloor},
                              {"hermitian", numkernel::kHermitianTolerance},
                              {"rank", numkernel::kRankTolerance}};
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    doc_["timing"] = Json{{"elapsed_ms", ms}};
    return {doc_, std::move(text), exit_code};
  }

 private:
  Clock::time_point start_;
  Json doc_;
  Json inputs_ = Json::array();
  Json results_ = Json::object();
};

Json bounds_json(const BoundsReport& b) {
  return Json{{"A", b.lower},
              {"B", b.upper},
              {"is_g_frame", b.is_frame},
              {"witness_low", vector_json(b.witness_low)},
              {"witness_high", vector_json(b.witness_high)}};
}

Json universal_json(const UniversalReport& u) {
  return Json{{"A", u.lower},
              {"B", u.upper},
              {"woven", u.woven},
              {"threshold", u.threshold},
              {"argmin_sigma", selection_json(u.argmin_sigma)},
              {"argmax_sigma", selection_json(u.argmax_sigma)},
              {"method", to_string(u.method)},
              {"subsets_examined", u.subsets_examined}};
}

void write_output(const GFrame& frame, const CommandOptions& options, Report& report) {
  if (options.out.empty()) {
    report.results()["output"] = nullptr;
    return;
  }
  save_gframe(frame, options.out);
  report.results()["output"] = Json{{"path", options.out}, {"sha256", sha256_hex(dump_gframe(frame))}};
}

}  // namespace

std::size_t default_cap() {
  if (const char* env = std::getenv("GWEAVE_EXHAUSTIVE_CAP")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<std::size_t>(value);
  }
  return kDefaultExhaustiveCap;
}

CommandOutcome cmd_bounds(const std::string& path, const CommandOptions& options) {
  Report report("bounds");
  const auto in = load_input(path);
  report.input(in);
  const auto b = optimal_bounds(in.frame, options.tol);
  report.results() = bounds_json(b);
  std::string text = std::string(b.is_frame ? "g-frame" : "NOT a g-frame") + ", A=" + fmt(b.lower) +
                     ", B=" + fmt(b.upper) + "\n";
  return report.finish(options, text);
}

CommandOutcome cmd_woven(const std::string& path_f, const std::string& path_g, const CommandOptions& options) {
  Report report("woven");
  const auto f = load_input(path_f);
  const auto g = load_input(path_g);
  report.input(f);
  report.input(g);
  WovenStrategy strategy;
  strategy.cap = options.cap;
  strategy.seed = options.seed;
  if (options.search_budget) {
    strategy.method = SearchMethod::Search;
    strategy.budget = *options.search_budget;
  }
  const auto v = is_woven(f.frame, g.frame, options.tol, strategy);
  Json& r = report.results();
  r["woven"] = v.woven;
  r["conclusive"] = v.conclusive;
  r["universal"] = universal_json(v.report);
  r["seed"] = options.seed;
  std::ostringstream text;
  if (v.woven) {
    text << "WOVEN, A=" << fmt(v.report.lower) << ", B=" << fmt(v.report.upper);
    if (!v.conclusive) text << " (search found no counterexample)";
  } else {
    r["certificate"] = selection_json(*v.certificate);
    r["certificate_lambda_min"] = v.certificate_spectrum(0);
    r["certificate_direction"] = vector_json(v.certificate_direction);
    text << "NOT WOVEN, certificate \xcf\x83=" << v.certificate->to_string() << " (\xcf\x83="
         << v.certificate->bitmask_string() << "), lambda_min=" << fmt(v.certificate_spectrum(0));
  }
  text << " [" << to_string(v.report.method) << ", " << v.report.subsets_examined << " subsets]\n";
  return report.finish(options, text.str());
}

CommandOutcome cmd_check(const std::string& path, const std::string& kind, const std::string& path2,
                         const CommandOptions& options) {
  Report report("check");
  const auto in = load_input(path);
  report.input(in);
  Json& r = report.results();
  r["kind"] = kind;
  std::ostringstream text;
  if (kind == "frame") {
    const auto b = optimal_bounds(in.frame, options.tol);
    r["verdict"] = b.is_frame;
    r["bounds"] = bounds_json(b);
    text << "frame: " << (b.is_frame ? "true" : "false") << " (" << fmt(b.lower) << ", " << fmt(b.upper) << ")";
  } else if (kind == "exact") {
    const auto e = is_g_exact(in.frame, options.tol);
    r["verdict"] = e.exact;
    Json witnesses = Json::array();
    for (auto w : e.witnesses) witnesses.push_back(w + 1);
    r["witness"] = e.witness ? Json(*e.witness + 1) : Json(nullptr);
    r["witnesses"] = witnesses;
    Json removal = Json::array();
    for (double x : e.removal_lower) removal.push_back(number_or_null(x));
    r["removal_lower"] = removal;
    r["threshold"] = e.threshold;
    text << "exact: " << (e.exact ? "true" : "false");
    if (e.witness) text << ", witness " << *e.witness + 1;
  } else if (kind == "riesz") {
    const auto rz = is_g_riesz_basis(in.frame, options.tol);
    r["verdict"] = rz.riesz;
    r["A"] = rz.lower;
    r["B"] = rz.upper;
    r["total_rows"] = rz.total_rows;
    r["detail"] = rz.detail;
    text << "riesz: " << (rz.riesz ? "true" : "false") << " (" << fmt(rz.lower) << ", " << fmt(rz.upper) << ")";
  } else if (kind == "onb") {
    const auto o = is_g_orthonormal_basis(in.frame, options.tol);
    r["verdict"] = o.onb;
    r["cross_residual"] = o.cross_residual;
    r["parseval_residual"] = o.parseval_residual;
    Json zeros = Json::array();
    for (const auto& z : o.zero_induced) zeros.push_back(Json{{"block", z.block + 1}, {"row", z.row + 1}});
    r["zero_induced"] = zeros;
    r["detail"] = o.detail;
    text << "onb: " << (o.onb ? "true" : "false");
    if (!o.zero_induced.empty()) {
      text << ", zero induced vector at block " << o.zero_induced.front().block + 1 << " row "
           << o.zero_induced.front().row + 1;
    }
  } else if (kind == "dual-with") {
    if (path2.empty()) throw Error(ErrorKind::SchemaError, "check dual-with needs a second family");
    const auto other = load_input(path2);
    report.input(other);
    const auto d = is_dual_pair(in.frame, other.frame, options.tol);
    r["verdict"] = d.holds;
    r["residual_synthesis"] = d.residual_synthesis;
    r["residual_analysis"] = d.residual_analysis;
    text << "dual pair: " << (d.holds ? "true" : "false") << " (residuals " << fmt(d.residual_synthesis) << ", "
         << fmt(d.residual_analysis) << ")";
  } else {
    throw Error(ErrorKind::SchemaError, "unknown check kind '" + kind + "'");
  }
  text << "\n";
  return report.finish(options, text.str());
}

CommandOutcome cmd_dual(const std::string& path, const CommandOptions& options) {
  Report report("dual");
  const auto in = load_input(path);
  report.input(in);
  const GFrame dual = canonical_dual(in.frame);
  const auto pair = is_dual_pair(in.frame, dual, options.tol);
  const auto b = optimal_bounds(dual, options.tol);
  Json& r = report.results();
  r["dual_bounds"] = Json{{"A", b.lower}, {"B", b.upper}};
  r["residual_synthesis"] = pair.residual_synthesis;
  r["residual_analysis"] = pair.residual_analysis;
  write_output(dual, options, report);
  const std::string text = "canonical dual: A=" + fmt(b.lower) + ", B=" + fmt(b.upper) +
                           ", residual " + fmt(pair.residual_synthesis) + "\n";
  return report.finish(options, text);
}

CommandOutcome cmd_transform_parseval(const std::string& path, const CommandOptions& options) {
  Report report("transform-parseval");
  const auto in = load_input(path);
  report.input(in);
  const GFrame parseval = transform_sqrt_inv(in.frame);
  const Eigen::Index d = parseval.domain_dim();
  const double residual = (frame_operator_matrix(parseval) - Matrix::Identity(d, d)).norm();
  const auto b = optimal_bounds(parseval, options.tol);
  Json& r = report.results();
  r["bounds"] = Json{{"A", b.lower}, {"B", b.upper}};
  r["parseval_residual"] = residual;
  write_output(parseval, options, report);
  return report.finish(options, "Parseval transform: residual " + fmt(residual) + "\n");
}

CommandOutcome cmd_paper_suite(const CommandOptions& options) {
  Report report("paper-suite");
  papersuite::SuiteConfig config;
  config.dim_scale = options.dim_scale;
  config.cap = options.cap;
  config.seed = options.seed;
  config.tol = options.tol;
  if (options.search_budget) config.search_budget = *options.search_budget;
  const auto suite = papersuite::run_suite(config);

  Json records = Json::array();
  std::ostringstream text;
  for (const auto& rec : suite.records) {
    Json computed = Json::object();
    for (const auto& [k, v] : rec.computed) computed[k] = number_or_null(v);
    Json expected = Json::array();
    for (const auto& e : rec.expected) {
      expected.push_back(Json{{"key", e.key}, {"value", e.value}, {"origin", e.origin}, {"compared", e.compared}});
    }
    records.push_back(Json{{"name", rec.name},
                           {"status", papersuite::to_string(rec.status)},
                           {"method", rec.method},
                           {"computed", computed},
                           {"expected", expected},
                           {"detail", rec.detail}});
    text << papersuite::to_string(rec.status) << "  " << rec.name << "  [" << rec.method << "]";
    if (!rec.detail.empty()) text << "  " << rec.detail;
    text << "\n";
  }
  Json& r = report.results();
  r["config"] = Json{{"dim_scale", config.dim_scale},
                     {"cap", config.cap},
                     {"search_budget", config.search_budget},
                     {"seed", config.seed}};
  r["records"] = records;
  r["passed"] = suite.count(papersuite::RecordStatus::Pass);
  r["failed"] = suite.count(papersuite::RecordStatus::Fail);
  r["skipped"] = suite.count(papersuite::RecordStatus::Skipped);
  text << suite.count(papersuite::RecordStatus::Pass) << " passed, " << suite.count(papersuite::RecordStatus::Fail)
       << " failed, " << suite.count(papersuite::RecordStatus::Skipped) << " skipped\n";
  return report.finish(options, text.str(), suite.passed() ? kExitOk : kExitSuiteFailure);
}

CommandOutcome cmd_export_examples(const std::string& dir, const CommandOptions& options) {
  namespace fs = std::filesystem;
  Report report("export-examples");
  fs::create_directories(dir);
  Json written = Json::array();
  std::ostringstream text;
  auto emit = [&](const std::string& name, const GFrame& frame) {
    const std::string path = (fs::path(dir) / (name + ".json")).string();
    save_gframe(frame, path);
    written.push_back(Json{{"path", path}, {"sha256", sha256_hex(dump_gframe(frame))}});
    text << path << "\n";
  };
  const std::size_t s = options.dim_scale;
  const Eigen::Index proj_d = static_cast<Eigen::Index>(3 + s);
  emit("projection", papersuite::build_projection_gframe(proj_d));
  emit("projection_onb", papersuite::build_projection_gframe(proj_d, papersuite::ProjectionCodomain::SingleLine));
  const papersuite::ExampleInstance pairs[] = {
      papersuite::build_shifted_cover_pair(8 + s),   papersuite::build_overlapping_cover_pair(8 + s),
      papersuite::build_split_weight_pair(9 + s),    papersuite::build_duplicated_rows_pair(4 + 2 * (s / 2)),
      papersuite::build_four_channel_pair(8 + s),
  };
  for (const auto& ex : pairs) {
    emit(ex.name + "_f", ex.f);
    emit(ex.name + "_g", *ex.g);
  }
  const auto& four = pairs[4];
  emit("four_channel_weave_1_2", weave(four.f, *four.g, WeavingSelection::from_indices(four.f.size(), {1, 2})));
  report.results()["written"] = written;
  return report.finish(options, text.str());
}

}  // namespace gweave::cli
