// magtool: command-line front end for the magnitude library.
//
// Every command prints one report on stdout:
//   {"command": [...], "inputs_digest": "...", "results": {...},
//    "timing": {"seconds": ...}, "version": "..."}
// or, with --format csv, the results as a CSV table.
// Exit codes: 0 ok, 2 invalid input, 3 magnitude undefined (mag only),
// 4 solver did not converge.

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "magnitude/convex_body.hpp"
#include "magnitude/dimension.hpp"
#include "magnitude/diversity.hpp"
#include "magnitude/engine.hpp"
#include "magnitude/error.hpp"
#include "magnitude/euclid.hpp"
#include "magnitude/io.hpp"
#include "magnitude/line.hpp"
#include "magnitude/pixels.hpp"
#include "magnitude/space_spec.hpp"

#ifndef MAGTOOL_VERSION
#define MAGTOOL_VERSION "0.0.0"
#endif

namespace {

using nlohmann::json;
using namespace magnitude;

enum Exit { kOk = 0, kInvalid = 2, kUndefined = 3, kNonConvergence = 4 };

struct SpaceArgs {
  std::string points_1d;
  std::string graph;
  std::string matrix;
  std::string spec;
  std::optional<unsigned> cantor;
  double length = 1.0;
  bool stdin_matrix = false;
};

struct Globals {
  std::string format = "json";
  double tol = 1e-9;
  std::optional<std::uint64_t> seed;
  std::string digest_material;
};

std::string slurp(std::istream& in) { return {std::istreambuf_iterator<char>(in), {}}; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  return slurp(in);
}

void add_space_options(CLI::App* cmd, SpaceArgs& a) {
  cmd->add_option("--points-1d", a.points_1d, "Comma-separated coordinates on the line");
  cmd->add_option("--graph", a.graph, "Named graph: k32, k3,2, cycle:N, path:N, complete:N");
  cmd->add_option("--matrix", a.matrix, "CSV distance matrix file");
  cmd->add_flag("--stdin-matrix", a.stdin_matrix, "Read a CSV distance matrix from stdin");
  cmd->add_option("--spec", a.spec, "Space spec JSON (file path or inline JSON)");
  cmd->add_option("--cantor", a.cantor, "Cantor endpoints of the given depth");
  cmd->add_option("--length", a.length, "Length for --cantor")->capture_default_str();
}

FiniteMetricSpace load_space(const SpaceArgs& a, Globals& g) {
  const int sources = !a.points_1d.empty() + !a.graph.empty() + !a.matrix.empty() + !a.spec.empty() +
                      a.cantor.has_value() + a.stdin_matrix;
  if (sources != 1)
    throw Error(ErrorCode::InvalidInput,
                "give exactly one of --points-1d, --graph, --matrix, --stdin-matrix, --spec, --cantor");
  if (!a.points_1d.empty()) {
    const auto pts = io::parse_number_list(a.points_1d);
    return generate_space(SpaceSpec{Points1dParams{pts}, std::nullopt});
  }
  if (!a.graph.empty()) return generate_space(SpaceSpec{named_graph(a.graph), std::nullopt});
  if (a.cantor) return generate_space(SpaceSpec{CantorParams{*a.cantor, a.length}, std::nullopt});
  if (a.stdin_matrix) {
    const std::string text = slurp(std::cin);
    g.digest_material += text;
    std::istringstream in(text);
    return validate_metric(io::read_matrix_csv(in));
  }
  if (!a.matrix.empty()) {
    const std::string text = read_file(a.matrix);
    g.digest_material += text;
    std::istringstream in(text);
    return validate_metric(io::read_matrix_csv(in));
  }
  const std::string text = a.spec.find('{') != std::string::npos ? a.spec : read_file(a.spec);
  g.digest_material += text;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadSpec, e.what());
  }
  auto spec = space_spec_from_json(j);
  if (!spec.seed && g.seed) spec.seed = g.seed;
  return generate_space(spec);
}

std::string unescape_newlines(std::string s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size() && s[i + 1] == 'n') {
      out += '\n';
      ++i;
    } else {
      out += s[i];
    }
  }
  return out;
}

// Rows for --format csv: a list when the command produces one, else a single row.
json csv_rows(const std::string& command, const json& results) {
  if (command == "magfn") return results.at("samples");
  if (command == "approx") return results.at("steps");
  if (command == "weights") {
    json rows = json::array();
    const auto& w = results.at("weighting");
    for (std::size_t i = 0; i < w.size(); ++i) rows.push_back({{"index", i}, {"weight", w[i]}});
    return rows;
  }
  if (command == "dim") {
    json rows = json::array();
    for (std::size_t i = 0; i < results.at("t").size(); ++i)
      rows.push_back({{"t", results["t"][i]}, {"quantity", results["quantity"][i]}});
    return rows;
  }
  if (command == "diversity") {
    json rows = json::array();
    const auto& mu = results.at("mu");
    for (std::size_t i = 0; i < mu.size(); ++i) rows.push_back({{"index", i}, {"mu", mu[i]}});
    return rows;
  }
  return results;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Magnitude, maximum diversity and l1 pixel geometry of metric spaces", "magtool"};
  app.set_version_flag("--version", MAGTOOL_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--tol", g.tol, "Solver tolerance (diversity gap, residual target)")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for randomized spaces without their own seed");

  // mag / weights
  SpaceArgs mag_space;
  double mag_t = 1.0;
  auto* mag = app.add_subcommand("mag", "Magnitude of tA");
  add_space_options(mag, mag_space);
  mag->add_option("--t", mag_t, "Scale factor")->capture_default_str();

  SpaceArgs w_space;
  double w_t = 1.0;
  auto* weights = app.add_subcommand("weights", "Weighting of tA");
  add_space_options(weights, w_space);
  weights->add_option("--t", w_t, "Scale factor")->capture_default_str();

  // magfn
  SpaceArgs fn_space;
  double tmin = 0.01, tmax = 10.0;
  std::size_t steps = 100;
  bool log_spacing = false;
  unsigned threads = 0;
  auto* magfn = app.add_subcommand("magfn", "Magnitude function sweep");
  add_space_options(magfn, fn_space);
  magfn->add_option("--tmin", tmin)->capture_default_str();
  magfn->add_option("--tmax", tmax)->capture_default_str();
  magfn->add_option("--steps", steps)->capture_default_str();
  magfn->add_flag("--log", log_spacing, "Log-spaced grid");
  magfn->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();

  // check
  SpaceArgs ck_space;
  std::string ck_ts = "1";
  auto* check = app.add_subcommand("check", "Positive definiteness and negative type report");
  add_space_options(check, ck_space);
  check->add_option("--t", ck_ts, "Comma-separated scales for the Cholesky test")->capture_default_str();

  // diversity
  SpaceArgs dv_space;
  double dv_t = 1.0;
  bool dv_exact = false, dv_no_polish = false;
  std::size_t dv_max_iter = 100000;
  auto* diversity = app.add_subcommand("diversity", "Maximum diversity of tA");
  add_space_options(diversity, dv_space);
  diversity->add_option("--t", dv_t)->capture_default_str();
  diversity->add_flag("--exact", dv_exact, "Support enumeration (at most 15 points)");
  diversity->add_flag("--no-polish", dv_no_polish, "Pure Frank-Wolfe iterations");
  diversity->add_option("--max-iterations", dv_max_iter)->capture_default_str()->check(CLI::PositiveNumber);

  // dim
  SpaceArgs dm_space;
  double dm_tmin = 10.0, dm_tmax = 1000.0;
  std::size_t dm_samples = 12;
  std::string dm_method = "diversity";
  auto* dim = app.add_subcommand("dim", "Dimension estimate from growth rates");
  add_space_options(dim, dm_space);
  dim->add_option("--tmin", dm_tmin)->capture_default_str();
  dim->add_option("--tmax", dm_tmax)->capture_default_str();
  dim->add_option("--samples", dm_samples)->capture_default_str();
  dim->add_option("--method", dm_method)->check(CLI::IsMember({"diversity", "covering"}))->capture_default_str();

  // pixel
  std::string px_ascii, px_file, px_body, px_t = "1", px_lambda = "1/8";
  bool px_weights = false, px_intrinsic = false, px_convexity = false, px_bounds = false;
  auto* pixel = app.add_subcommand("pixel", "Exact l1 computations on pixelated sets");
  pixel->add_option("--ascii", px_ascii, "2D pixel art; '#' is a cell, rows separated by newlines or \\n");
  pixel->add_option("--file", px_file, "Pixel file: 'dim <n> scale <p>/<q>' then one cell per line");
  pixel->add_option("--body", px_body, "Convex body JSON (file path or inline) for --bounds");
  pixel->add_option("--t", px_t, "Scale factor, exact (\"p/q\" or decimal)")->capture_default_str();
  pixel->add_option("--lambda", px_lambda, "Pixel spacing for --bounds")->capture_default_str();
  auto* mode = pixel->add_option_group("mode");
  mode->add_flag("--weights", px_weights, "Weight measure face coefficients");
  mode->add_flag("--intrinsic", px_intrinsic, "l1 intrinsic volumes and magnitude");
  mode->add_flag("--convexity", px_convexity, "l1-convexity verdict with witness");
  mode->add_flag("--bounds", px_bounds, "Pixel bounds for a convex body");
  mode->require_option(1);

  // oracle
  std::string or_kind;
  unsigned or_n = 3, or_p = 2;
  double or_r = 1.0, or_vol = 1.0, or_t = 1.0, or_len = 1.0;
  std::string or_points;
  std::optional<unsigned> or_depth;
  auto* oracle = app.add_subcommand("oracle", "Closed-form magnitudes");
  oracle->add_option("kind", or_kind, "line | interval | cantor | ball | sphere | asymptotic | conjecture")
      ->required()
      ->check(CLI::IsMember({"line", "interval", "cantor", "ball", "sphere", "asymptotic", "conjecture"}));
  oracle->add_option("--n", or_n, "Dimension")->capture_default_str();
  oracle->add_option("--R", or_r, "Radius")->capture_default_str();
  oracle->add_option("--p", or_p, "Norm exponent for asymptotic (1 or 2)")->capture_default_str();
  oracle->add_option("--vol", or_vol, "Volume for asymptotic")->capture_default_str();
  oracle->add_option("--t", or_t, "Scale factor")->capture_default_str();
  oracle->add_option("--length", or_len, "Interval or Cantor length")->capture_default_str();
  oracle->add_option("--points-1d", or_points, "Points for the line oracle");
  oracle->add_option("--depth", or_depth, "Finite Cantor depth (default: full series)");

  // approx
  std::string ap_family = "interval", ap_levels = "2,4,8,16,32";
  double ap_t = 1.0, ap_len = 1.0, ap_radius = 1.0;
  unsigned ap_dim = 3;
  auto* approx = app.add_subcommand("approx", "Finite approximations of a compact set");
  approx->add_option("--family", ap_family)
      ->check(CLI::IsMember({"interval", "cantor", "ball", "box"}))
      ->capture_default_str();
  approx->add_option("--levels", ap_levels, "Comma-separated refinement levels")->capture_default_str();
  approx->add_option("--t", ap_t)->capture_default_str();
  approx->add_option("--length", ap_len, "Interval/Cantor length or box side")->capture_default_str();
  approx->add_option("--dim", ap_dim, "Ball/box dimension")->capture_default_str();
  approx->add_option("--radius", ap_radius, "Ball radius")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  json command = json::array();
  for (int i = 1; i < argc; ++i) command.push_back(argv[i]);
  const auto started = std::chrono::steady_clock::now();
  std::string name = app.get_subcommands().front()->get_name();
  json results;
  int code = kOk;

  try {
    SolverOptions solver;
    solver.residual_target = std::max(g.tol, 1e-12);
    if (name == "mag") {
      const auto space = load_space(mag_space, g);
      const auto w = weighting(space, mag_t, solver);
      results = {{"t", mag_t}, {"points", space.size()}, {"status", to_string(w.status)}};
      if (w.defined()) {
        results["magnitude"] = w.magnitude;
        results["rcond"] = w.rcond;
        results["residual"] = w.residual;
        if (w.magnitude < 0.0) results["warning"] = "negative magnitude";
      } else {
        results["magnitude"] = nullptr;
        results["diagnostic"] = w.diagnostic;
        code = kUndefined;
      }
    } else if (name == "weights") {
      const auto space = load_space(w_space, g);
      results = io::to_json(weighting(space, w_t, solver));
      results["labels"] = space.labels();
    } else if (name == "magfn") {
      const auto space = load_space(fn_space, g);
      const auto grid = log_spacing ? log_grid(tmin, tmax, steps) : linear_grid(tmin, tmax, steps);
      results = io::to_json(magnitude_function(space, grid, solver, threads));
    } else if (name == "check") {
      const auto space = load_space(ck_space, g);
      results = io::to_json(definiteness_report(space, io::parse_number_list(ck_ts)));
    } else if (name == "diversity") {
      const auto space = load_space(dv_space, g);
      DiversityOptions opt;
      opt.tol = g.tol;
      opt.polish = !dv_no_polish;
      opt.max_iterations = dv_max_iter;
      results = to_json(dv_exact ? max_diversity_exact(space, dv_t) : max_diversity(space, dv_t, opt));
    } else if (name == "dim") {
      const auto space = load_space(dm_space, g);
      DimensionOptions opt;
      opt.method = dm_method == "diversity" ? DimensionMethod::DiversityGrowth : DimensionMethod::CoveringGrowth;
      opt.diversity.tol = g.tol;
      results = to_json(dimension_estimate(space, {dm_tmin, dm_tmax}, dm_samples, opt));
    } else if (name == "pixel") {
      using namespace magnitude::pixels;
      if (px_bounds) {
        if (px_body.empty()) throw Error(ErrorCode::InvalidInput, "--bounds needs --body");
        const std::string text = px_body.find('{') != std::string::npos ? px_body : read_file(px_body);
        g.digest_material += text;
        json j;
        try {
          j = json::parse(text);
        } catch (const json::exception& e) {
          throw Error(ErrorCode::BadSpec, e.what());
        }
        const auto body = convex_body_from_json(j);
        results = to_json(convex_body_pixel_bounds(body, parse_rational(px_lambda), parse_rational(px_t).get_d()));
      } else {
        if (px_ascii.empty() == px_file.empty()) throw Error(ErrorCode::InvalidInput, "give one of --ascii, --file");
        const std::string text = px_ascii.empty() ? read_file(px_file) : unescape_newlines(px_ascii);
        g.digest_material += text;
        const auto set = px_ascii.empty() ? parse_pixel_set(text) : pixel_set_from_ascii(text);
        if (px_weights) {
          results = to_json(weight_measure(set));
        } else if (px_intrinsic) {
          results = to_json(magnitude_via_intrinsic(set, parse_rational(px_t)));
        } else {
          const auto v = check_l1_convex(set);
          results = {{"l1_convex", v.convex}};
          results["witness"] = v.witness ? json::array({to_json(v.witness->first, set.dim()),
                                                        to_json(v.witness->second, set.dim())})
                                         : json();
        }
      }
    } else if (name == "oracle") {
      if (or_kind == "line") {
        auto pts = io::parse_number_list(or_points);
        std::sort(pts.begin(), pts.end());
        const auto r = line::line_magnitude(pts, or_t);
        results = {{"magnitude", r.magnitude}, {"weights", r.weights}};
      } else if (or_kind == "interval") {
        const auto m = line::interval_weight_measure(0.0, or_len, or_t);
        results = {{"magnitude", line::interval_magnitude(0.0, or_len, or_t)},
                   {"left_atom", m.left_atom},
                   {"lebesgue_mass", m.lebesgue_mass},
                   {"right_atom", m.right_atom}};
      } else if (or_kind == "cantor") {
        const auto s = line::cantor_magnitude(or_len, or_t, or_depth);
        results = {{"magnitude", s.value}, {"tail_bound", s.tail_bound}, {"terms", s.terms}};
      } else if (or_kind == "ball") {
        results = {{"n", or_n}, {"R", or_r}, {"magnitude", euclid::ball_magnitude(or_n, or_r)}};
      } else if (or_kind == "sphere") {
        results = {{"n", or_n}, {"R", or_r}, {"magnitude", euclid::sphere_magnitude_even(or_n, or_r)}};
      } else if (or_kind == "asymptotic") {
        results = euclid::to_json(euclid::asymptotic_prediction(or_n, or_p, or_vol));
      } else {
        results = euclid::to_json(euclid::conjecture_compare(or_n, or_r));
      }
    } else if (name == "approx") {
      std::vector<std::size_t> levels;
      for (double v : io::parse_number_list(ap_levels)) {
        if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
          throw Error(ErrorCode::InvalidInput, "levels must be nonnegative integers");
        levels.push_back(static_cast<std::size_t>(v));
      }
      SpaceFamily family;
      if (ap_family == "interval")
        family = interval_grid_family(ap_len);
      else if (ap_family == "cantor")
        family = cantor_family(ap_len);
      else if (ap_family == "ball")
        family = ball_sample_family(ap_dim, ap_radius, Norm::L2, g.seed.value_or(1));
      else
        family = box_grid_family(std::vector<double>(ap_dim, ap_len), Norm::L1);
      ApproximationOptions opt;
      opt.enforce_monotone = false;
      opt.solver = solver;
      results = {{"family", ap_family}, {"t", ap_t}, {"steps", io::to_json(approximate_compact_magnitude(family, levels, ap_t, opt))}};
    }
  } catch (const Error& e) {
    std::cerr << "magtool: " << e.what() << "\n";
    code = e.code() == ErrorCode::NonConvergence ? kNonConvergence : kInvalid;
    results = {{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
  } catch (const std::exception& e) {
    std::cerr << "magtool: " << e.what() << "\n";
    code = kInvalid;
    results = {{"error", {{"code", "InvalidInput"}, {"message", e.what()}}}};
  }

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (g.format == "csv" && !results.contains("error")) {
    std::cout << io::csv_from_records(csv_rows(name, results));
  } else {
    std::string material = command.dump() + '\0' + g.digest_material;
    json report{{"command", command},
                {"inputs_digest", io::hex64(io::fnv1a64(material))},
                {"results", results},
                {"timing", {{"seconds", seconds}}},
                {"version", MAGTOOL_VERSION}};
    std::cout << report.dump(2) << "\n";
  }
  return code;
}
