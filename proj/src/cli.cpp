#include "rearr/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rearr/functionals.hpp"
#include "rearr/io.hpp"
#include "rearr/lattice.hpp"
#include "rearr/optimize.hpp"
#include "rearr/oracle.hpp"
#include "rearr/rearrange.hpp"
#include "rearr/version.hpp"

namespace rearr {

namespace {

using nlohmann::json;

constexpr double kRelTol = 1e-9;

Kernel parse_kernel_spec(const std::string& spec) {
  if (spec == "delta0") return Kernel::delta0();
  std::istringstream in(spec);
  std::string head;
  std::getline(in, head, ':');
  if (head == "geometric") {
    std::string base, cutoff;
    if (!std::getline(in, base, ':') || !std::getline(in, cutoff))
      throw CLI::ValidationError("--kernel", "expected geometric:BASE:CUTOFF");
    return Kernel::geometric(std::stod(base), std::stoi(cutoff));
  }
  if (head == "step") {
    std::string radius;
    if (!std::getline(in, radius))
      throw CLI::ValidationError("--kernel", "expected step:RADIUS");
    return Kernel::step(std::stoi(radius));
  }
  throw CLI::ValidationError("--kernel", "unknown kernel spec '" + spec + "'");
}

Bivariate parse_bivariate_spec(const std::string& spec) {
  if (spec == "product") return Bivariate::product();
  if (spec.rfind("negabsdiff:", 0) == 0)
    return Bivariate::neg_abs_diff(std::stod(spec.substr(11)));
  throw CLI::ValidationError("--bivariate", "unknown bivariate spec '" + spec + "'");
}

std::vector<double> parse_value_list(const std::string& csv) {
  std::vector<double> values;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    values.push_back(std::stod(item));
  }
  if (values.empty()) throw CLI::ValidationError("--values", "empty value list");
  return values;
}

std::vector<Direction> parse_cycle_spec(const std::string& spec, int dim) {
  if (spec == "default") return direction_set(dim);
  if (spec.rfind("custom:", 0) != 0)
    throw CLI::ValidationError("--cycle", "expected 'default' or 'custom:LIST'");
  std::vector<Direction> cycle;
  std::istringstream in(spec.substr(7));
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.size() < 2) throw CLI::ValidationError("--cycle", "bad token '" + tok + "'");
    if (tok[0] == 'e') {
      cycle.push_back(Direction::axis(std::stoi(tok.substr(1)) - 1));
    } else if ((tok[0] == 'p' || tok[0] == 'm') && tok.size() == 3) {
      const int i = tok[1] - '1';
      const int j = tok[2] - '1';
      cycle.push_back(tok[0] == 'p' ? Direction::diag_plus(i, j) : Direction::diag_minus(i, j));
    } else {
      throw CLI::ValidationError("--cycle", "bad token '" + tok + "'");
    }
  }
  return cycle;
}

json shape_to_json(const ShapeClass& shape) {
  json cells = json::array();
  for (const Point& p : shape.canonical_points) cells.push_back(p);
  return cells;
}

struct Report {
  json body;
  std::string path;

  Report(const std::string& command, std::uint64_t seed) {
    body["command"] = command;
    body["version"] = library_version;
    body["seed"] = seed;
    body["inputs"] = json::object();
    body["results"] = json::object();
  }

  void add_input(const std::string& name, const std::string& file) {
    body["inputs"][name] = {{"path", file}, {"digest", file_digest(file)}};
  }

  void finish(bool pass) {
    body["pass"] = pass;
    const std::string text = body.dump(2) + "\n";
    if (path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(path);
      if (!out) throw std::runtime_error("cannot open " + path + " for writing");
      out << text;
    }
  }
};

bool ge_with_tolerance(double lhs, double rhs) {
  return lhs >= rhs - kRelTol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

bool close_with_tolerance(double lhs, double rhs) {
  return std::abs(lhs - rhs) <= kRelTol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

// ---------------------------------------------------------------- rearrange

struct RearrangeArgs {
  std::string input, output;
  std::string cycle = "default";
  std::size_t max_cycles = 0;
  bool trace = false;
};

int run_rearrange(const RearrangeArgs& args) {
  const SparseFunction u = read_sparse_function(args.input);
  RearrangeOptions opts;
  opts.max_cycles = args.max_cycles;
  if (args.trace) {
    opts.on_step = [&args](std::size_t step, const Direction& e, const SparseFunction& cur) {
      char suffix[32];
      std::snprintf(suffix, sizeof suffix, ".step%04zu", step);
      write_sparse_function(args.output + suffix, cur);
      std::cerr << "step " << step << " (" << to_string(e) << "): support "
                << cur.support_size() << "\n";
    };
  }
  const std::vector<Direction> cycle = parse_cycle_spec(args.cycle, u.dim());
  const SparseFunction result = schwarz_rearrange_cycled(u, cycle, opts);
  write_sparse_function(args.output, result);
  return 0;
}

// ------------------------------------------------------------------- verify

struct VerifyArgs {
  std::string check;
  std::string u_path, v_path;
  double p = 2.0;
  std::string kernel = "geometric:2:8";
  std::string bivariate = "product";
  std::string report_path;
  std::uint64_t seed = 42;
};

int run_verify(const VerifyArgs& args) {
  Report report("verify " + args.check, args.seed);
  report.path = args.report_path;
  const SparseFunction u = read_sparse_function(args.u_path);
  report.add_input("u", args.u_path);
  double lhs = 0.0, rhs = 0.0;
  bool pass = false;

  if (args.check == "polya-szego") {
    const SparseFunction us = schwarz_rearrange(u);
    lhs = sobolev_energy(us, args.p);
    rhs = sobolev_energy(u, args.p);
    pass = ge_with_tolerance(rhs, lhs);
  } else if (args.check == "cavalieri") {
    const SparseFunction us = schwarz_rearrange(u);
    const auto square = [](double t) { return t * t; };
    lhs = cavalieri_sum(u, square);
    rhs = cavalieri_sum(us, square);
    pass = close_with_tolerance(lhs, rhs);
  } else if (args.check == "weighted-f") {
    const SparseFunction us = schwarz_rearrange(u);
    const auto F = [](double r, double t) { return t * t / (1.0 + r); };
    int window = 0;
    for (const auto& [x, v] : u.entries())
      for (int c : x) window = std::max(window, std::abs(c));
    lhs = f_weighted_sum(u, F, window);
    rhs = f_weighted_sum(us, F, window);
    pass = ge_with_tolerance(rhs, lhs);
  } else {
    if (args.v_path.empty())
      throw CLI::ValidationError("--v", "check '" + args.check + "' needs a second function");
    const SparseFunction v = read_sparse_function(args.v_path);
    report.add_input("v", args.v_path);
    if (args.check == "riesz") {
      const Kernel H = parse_kernel_spec(args.kernel);
      const Bivariate G = parse_bivariate_spec(args.bivariate);
      lhs = riesz_sum(u, v, G, H);
      rhs = riesz_sum(schwarz_rearrange(u), schwarz_rearrange(v), G, H);
      pass = ge_with_tolerance(rhs, lhs);
    } else if (args.check == "hardy-littlewood") {
      lhs = hardy_littlewood_sum(u, v);
      rhs = hardy_littlewood_sum(schwarz_rearrange(u), schwarz_rearrange(v));
      pass = ge_with_tolerance(rhs, lhs);
    } else if (args.check == "contraction") {
      const auto diff_power = [p = args.p](const SparseFunction& a, const SparseFunction& b) {
        double s = 0.0;
        for (const auto& [x, va] : a.entries()) s += std::pow(std::abs(va - b.at(x)), p);
        for (const auto& [x, vb] : b.entries())
          if (a.at(x) == 0.0) s += std::pow(vb, p);
        return s;
      };
      lhs = diff_power(schwarz_rearrange(u), schwarz_rearrange(v));
      rhs = diff_power(u, v);
      pass = ge_with_tolerance(rhs, lhs);
    } else {
      throw CLI::ValidationError("check", "unknown check '" + args.check + "'");
    }
  }
  report.body["results"]["lhs"] = lhs;
  report.body["results"]["rhs"] = rhs;
  report.body["results"]["gap"] = rhs - lhs;
  report.finish(pass);
  return pass ? 0 : 1;
}

// ------------------------------------------------------------------- oracle

int run_oracle_pentominoes(int n, const std::string& report_path, std::uint64_t seed) {
  Report report("oracle pentominoes", seed);
  report.path = report_path;
  const std::vector<ShapeClass> shapes = enumerate_connected_supports(n);
  report.body["results"]["size"] = n;
  report.body["results"]["count"] = shapes.size();
  json all = json::array();
  for (const ShapeClass& s : shapes) all.push_back(shape_to_json(s));
  report.body["results"]["shapes"] = all;
  report.finish(true);
  return 0;
}

int run_oracle_minimizers(const std::string& values_csv, const std::string& report_path,
                          std::uint64_t seed) {
  Report report("oracle minimizers", seed);
  report.path = report_path;
  const ValueMultiset values = [&] {
    ValueMultiset v = parse_value_list(values_csv);
    std::sort(v.begin(), v.end(), std::greater<double>());
    return v;
  }();
  const MinimizerSearch search = equimeasurable_minimizers(values);
  report.body["results"]["values"] = values;
  report.body["results"]["min_energy_sq"] = search.min_energy_sq;
  json winners = json::array();
  for (const ShapeClass& s : search.minimizers) winners.push_back(shape_to_json(s));
  report.body["results"]["minimizers"] = winners;
  report.body["results"]["unique"] = search.minimizers.size() == 1;
  report.finish(true);
  return 0;
}

int run_oracle_obstruction(const std::string& report_path, std::uint64_t seed) {
  Report report("oracle obstruction", seed);
  report.path = report_path;
  const ObstructionReport r = pruss_obstruction();
  json& res = report.body["results"];
  res["eigen_multiset"] = r.eigen_multiset;
  res["eigen_multiset_unique"] = r.eigen_multiset_unique;
  json eigen_min = json::array();
  for (const ShapeClass& s : r.eigen_minimizers) eigen_min.push_back(shape_to_json(s));
  res["eigen_minimizers"] = eigen_min;
  res["multiset1"] = r.multiset1;
  res["shape1"] = shape_to_json(r.shape1);
  res["unique1"] = r.unique1;
  res["max_at_center"] = r.max_at_center;
  res["multiset2"] = r.multiset2;
  res["shape2"] = shape_to_json(r.shape2);
  res["unique2"] = r.unique2;
  res["diagonal_forced"] = r.diagonal_forced;
  res["contradiction"] = r.contradiction;
  report.finish(r.contradiction);
  return r.contradiction ? 0 : 1;
}

int run_oracle_riesz_max(const std::string& vu_csv, const std::string& vv_csv, int window,
                         const std::string& kernel, const std::string& bivariate,
                         const std::string& report_path, std::uint64_t seed) {
  Report report("oracle riesz-max", seed);
  report.path = report_path;
  ValueMultiset vu = parse_value_list(vu_csv);
  ValueMultiset vv = parse_value_list(vv_csv);
  std::sort(vu.begin(), vu.end(), std::greater<double>());
  std::sort(vv.begin(), vv.end(), std::greater<double>());
  const RieszMaxResult r =
      brute_force_riesz_max(vu, vv, window, parse_bivariate_spec(bivariate),
                            parse_kernel_spec(kernel));
  json& res = report.body["results"];
  res["max"] = r.max_value;
  json pu = json::array(), pv = json::array();
  for (const auto& [pos, val] : r.placement_u) pu.push_back({{"pos", pos}, {"value", val}});
  for (const auto& [pos, val] : r.placement_v) pv.push_back({{"pos", pos}, {"value", val}});
  res["placement_u"] = pu;
  res["placement_v"] = pv;
  report.finish(true);
  return 0;
}

// ----------------------------------------------------------------- minimize

json trace_to_json(const MinimizationTrace& trace) {
  json out;
  out["iterations"] = trace.energies.size();
  out["rearrangement_steps"] = trace.rearrangement_steps;
  json drops = json::array();
  for (const auto& [before, after] : trace.rearrangement_energies)
    drops.push_back({{"before", before}, {"after", after}});
  out["rearrangement_energies"] = drops;
  out["final_energy"] = trace.energies.empty() ? 0.0 : trace.energies.back();
  return out;
}

struct MinimizeArgs {
  std::string problem;
  double c = 1.0, sigma = 0.5, omega = 1.0, p = 2.0, q = 7.0;
  int dim = 2, radius = 10;
  std::size_t iters = 50000;
  double tol = 1e-8;
  std::string report_path, solution_path;
  std::uint64_t seed = 42;
};

int run_minimize(const MinimizeArgs& args) {
  Report report("minimize " + args.problem, args.seed);
  report.path = args.report_path;
  const TruncatedDomain domain{args.dim, args.radius};
  DescentOptions opts;
  opts.max_iters = args.iters;
  opts.tol = args.tol;
  json& res = report.body["results"];
  bool converged = false;
  SparseFunction solution(args.dim);

  if (args.problem == "dnls") {
    const DnlsResult r = minimize_dnls(args.c, args.sigma, domain, opts);
    res["I_c"] = r.energy;
    res["omega"] = r.omega;
    res["el_residual"] = r.el_residual;
    res["schwarz_symmetric"] = is_schwarz_symmetric(r.minimizer);
    res["l2_norm"] = lp_norm(r.minimizer, 2.0);
    res["trace"] = trace_to_json(r.trace);
    converged = r.converged;
    solution = r.minimizer;
  } else if (args.problem == "wave") {
    const WaveResult r = minimize_wave(args.omega, args.sigma, domain, opts);
    res["I_omega"] = r.objective;
    res["schwarz_symmetric"] = is_schwarz_symmetric(r.minimizer);
    res["constraint_norm"] = lp_norm(r.minimizer, 2.0 + 2.0 * args.sigma);
    res["trace"] = trace_to_json(r.trace);
    converged = r.converged;
    solution = r.minimizer;
  } else if (args.problem == "sobolev") {
    const SobolevResult r = minimize_sobolev_extremal(args.p, args.q, domain, opts);
    res["I"] = r.energy;
    res["schwarz_symmetric"] = is_schwarz_symmetric(r.minimizer);
    res["constraint_norm"] = lp_norm(r.minimizer, args.q);
    res["trace"] = trace_to_json(r.trace);
    converged = r.converged;
    solution = r.minimizer;
  } else {
    throw CLI::ValidationError("problem", "unknown problem '" + args.problem + "'");
  }
  res["converged"] = converged;
  if (!args.solution_path.empty()) write_sparse_function(args.solution_path, solution);
  report.finish(converged);
  return converged ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& argv_like) {
  CLI::App app{"Discrete Schwarz rearrangement on lattice graphs"};
  app.require_subcommand(1);
  std::uint64_t seed = 42;
  int threads = 1;
  app.add_option("--seed", seed, "Seed echoed into reports and used by randomized helpers");
  app.add_option("--threads", threads, "Cap on internal parallelism (results do not depend on it)");

  RearrangeArgs rearrange_args;
  CLI::App* rearrange_cmd = app.add_subcommand("rearrange", "Schwarz-rearrange a function file");
  rearrange_cmd->add_option("--input", rearrange_args.input, "Input sparse-function file")
      ->required();
  rearrange_cmd->add_option("--output", rearrange_args.output, "Output file")->required();
  rearrange_cmd->add_option("--cycle", rearrange_args.cycle,
                            "Direction cycle: default | custom:e1,e2,p12,m12,...");
  rearrange_cmd->add_option("--max-cycles", rearrange_args.max_cycles,
                            "Cycle budget (0 = automatic)");
  rearrange_cmd->add_flag("--trace", rearrange_args.trace,
                          "Write one function file per one-step rearrangement");

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Check a rearrangement inequality");
  verify_cmd
      ->add_option("check", verify_args.check,
                   "polya-szego | riesz | hardy-littlewood | contraction | cavalieri | weighted-f")
      ->required();
  verify_cmd->add_option("--u", verify_args.u_path, "First function")->required();
  verify_cmd->add_option("--v", verify_args.v_path, "Second function (pair checks)");
  verify_cmd->add_option("--p", verify_args.p, "Exponent for energy/contraction checks");
  verify_cmd->add_option("--kernel", verify_args.kernel,
                         "delta0 | geometric:BASE:CUTOFF | step:RADIUS");
  verify_cmd->add_option("--bivariate", verify_args.bivariate, "product | negabsdiff:P");
  verify_cmd->add_option("--report", verify_args.report_path, "Write the JSON report here");

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Brute-force ground truth");
  int pent_n = 5;
  std::string oracle_report;
  CLI::App* pent_cmd = oracle_cmd->add_subcommand("pentominoes", "Enumerate free polyominoes");
  pent_cmd->add_option("--n", pent_n, "Polyomino size (<= 8)");
  pent_cmd->add_option("--report", oracle_report, "Write the JSON report here");
  std::string minimizer_values;
  CLI::App* mini_cmd =
      oracle_cmd->add_subcommand("minimizers", "Optimal shapes for a value multiset");
  mini_cmd->add_option("--values", minimizer_values, "Comma-separated positive values")
      ->required();
  mini_cmd->add_option("--report", oracle_report, "Write the JSON report here");
  CLI::App* obstruction_cmd =
      oracle_cmd->add_subcommand("obstruction", "Certify the total-order obstruction");
  obstruction_cmd->add_option("--report", oracle_report, "Write the JSON report here");
  std::string rm_vu, rm_vv, rm_kernel = "geometric:2:4", rm_bivariate = "product";
  int rm_window = 4;
  CLI::App* rm_cmd = oracle_cmd->add_subcommand("riesz-max", "Exhaustive 1-D Riesz maximum");
  rm_cmd->add_option("--values-u", rm_vu, "Values of the first multiset")->required();
  rm_cmd->add_option("--values-v", rm_vv, "Values of the second multiset")->required();
  rm_cmd->add_option("--window", rm_window, "Placement window [-w, w]");
  rm_cmd->add_option("--kernel", rm_kernel, "Kernel spec");
  rm_cmd->add_option("--bivariate", rm_bivariate, "Bivariate spec");
  rm_cmd->add_option("--report", oracle_report, "Write the JSON report here");

  MinimizeArgs minimize_args;
  CLI::App* minimize_cmd = app.add_subcommand("minimize", "Constrained minimization");
  minimize_cmd->add_option("problem", minimize_args.problem, "dnls | wave | sobolev")
      ->required();
  minimize_cmd->add_option("--c", minimize_args.c, "Mass constraint for dnls");
  minimize_cmd->add_option("--sigma", minimize_args.sigma, "Nonlinearity exponent");
  minimize_cmd->add_option("--omega", minimize_args.omega, "Frequency for the wave problem");
  minimize_cmd->add_option("--p", minimize_args.p, "Gradient exponent for sobolev");
  minimize_cmd->add_option("--q", minimize_args.q, "Constraint exponent for sobolev");
  minimize_cmd->add_option("--dim", minimize_args.dim, "Lattice dimension");
  minimize_cmd->add_option("--radius", minimize_args.radius, "Domain box radius");
  minimize_cmd->add_option("--iters", minimize_args.iters, "Iteration budget");
  minimize_cmd->add_option("--tol", minimize_args.tol, "Stationarity tolerance");
  minimize_cmd->add_option("--report", minimize_args.report_path, "Write the JSON report here");
  minimize_cmd->add_option("--solution", minimize_args.solution_path,
                           "Write the minimizer as a sparse-function file");

  std::vector<const char*> argv;
  argv.reserve(argv_like.size());
  for (const std::string& s : argv_like) argv.push_back(s.c_str());

  const auto started = std::chrono::steady_clock::now();
  int code = 0;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    verify_args.seed = seed;
    minimize_args.seed = seed;
    if (*rearrange_cmd) {
      code = run_rearrange(rearrange_args);
    } else if (*verify_cmd) {
      code = run_verify(verify_args);
    } else if (*oracle_cmd) {
      if (*pent_cmd)
        code = run_oracle_pentominoes(pent_n, oracle_report, seed);
      else if (*mini_cmd)
        code = run_oracle_minimizers(minimizer_values, oracle_report, seed);
      else if (*obstruction_cmd)
        code = run_oracle_obstruction(oracle_report, seed);
      else if (*rm_cmd)
        code = run_oracle_riesz_max(rm_vu, rm_vv, rm_window, rm_kernel, rm_bivariate,
                                    oracle_report, seed);
      else
        throw CLI::CallForHelp();
    } else if (*minimize_cmd) {
      code = run_minimize(minimize_args);
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
  // Wall time goes to stderr, not into the report, so reports stay
  // byte-identical across runs.
  std::cerr << "wall time: " << elapsed.count() << " ms\n";
  return code;
}

}  // namespace rearr
