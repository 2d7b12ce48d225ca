// Copyright 2026 The optchan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "optchan/cli.hpp"

#include "optchan/diagnostics.hpp"
#include "optchan/fixtures.hpp"
#include "optchan/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

namespace optchan::cli {

namespace {

using io::Json;

struct SolveArgs {
  std::vector<std::string> files;
  std::optional<double> tol;
  std::optional<int> max_iters;
  std::string output;
  std::string format = "text";
  bool skip_generation_check = false;
};

struct CostArgs {
  std::string recipe;
  double eps = 1.0;
  double coupling = -1.0;
  double k = 2.0;
  int spins = 1;
  int m = 2;
  std::string input;
  std::string output;
  std::string format = "text";
  bool skip_generation_check = false;
};

struct PaperArgs {
  std::string id;
  fixtures::PaperParams params;
  std::optional<double> tol;
  std::optional<int> max_iters;
  std::string format = "text";
};

struct DecomposeArgs {
  std::string kappa;
  std::string cost;
  std::string format = "text";
  double load_tol = ChoiState::kDefaultTolerance;
  bool skip_generation_check = false;
};

struct SampleArgs {
  std::string problem;
  unsigned long long seed = 0;
  int count = 1;
  std::optional<double> tol;
  std::string output;
  bool skip_generation_check = false;
};

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(6) << x;
  return s.str();
}

void print_transitions(std::ostream& out, const std::vector<TransitionReport>& rows, bool with_cost) {
  out << "elementary transitions (" << rows.size() << "):\n";
  out << std::left << "  " << std::setw(4) << "#" << std::setw(14) << "probability";
  if (with_cost) out << std::setw(14) << "cost";
  out << std::setw(14) << "entropy_bits" << std::setw(9) << "support" << std::setw(9) << "channel"
      << "group\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& t = rows[i];
    out << "  " << std::setw(4) << i << std::setw(14) << fmt(t.probability);
    if (with_cost) out << std::setw(14) << fmt(t.cost);
    out << std::setw(14) << fmt(t.entanglement_entropy) << std::setw(9) << t.support_dim
        << std::setw(9) << (t.is_channel ? "yes" : "no") << t.degenerate_group
        << (t.degenerate ? " (degenerate)" : "") << "\n";
  }
  out << std::right;
}

Json transitions_json(const std::vector<TransitionReport>& rows) {
  io::ReportFile tmp;
  tmp.transitions = rows;
  return io::report_to_json(tmp)["transitions"];
}

struct SolveOutcome {
  std::string file;
  std::optional<io::ReportFile> report;
  std::string error;
};

SolveOutcome solve_file(const std::string& file, const SolveArgs& args) {
  SolveOutcome outcome{file, std::nullopt, {}};
  try {
    TransportProblem problem =
        io::problem_from_json(io::read_json_file(file), {.check_generation = !args.skip_generation_check});
    if (args.tol) problem.options.tol = *args.tol;
    if (args.max_iters) problem.options.max_iters = *args.max_iters;
    problem.options.validate();
    const auto start = std::chrono::steady_clock::now();
    const Solution solution = solve(problem);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    outcome.report = io::make_report(solution, problem.cost, wall);
    for (const auto& w : problem.cost.warnings) outcome.error += "warning: " + w + "\n";
  } catch (const std::exception& e) {
    outcome.report.reset();
    outcome.error = e.what();
  }
  return outcome;
}

void print_solve_text(std::ostream& out, const io::ReportFile& r) {
  out << "status        " << to_string(r.status) << "\n";
  out << "optimal_cost  " << fmt(r.optimal_cost) << "\n";
  out << "iterations    " << r.iterations << " (tol " << fmt(r.tolerance) << ", " << fmt(r.wall_time_s)
      << " s)\n";
  out << "residuals     primal " << fmt(r.primal_residual);
  for (std::size_t i = 0; i < r.constraint_residuals.size(); ++i)
    out << ", constraint " << i << " " << fmt(r.constraint_residuals[i]);
  out << "\n";
  if (r.status == SolveStatus::Converged) print_transitions(out, r.transitions, true);
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  if (args.files.size() > 1 && !args.output.empty()) {
    err << "error: --output requires a single problem file\n";
    return kInputError;
  }
  std::vector<SolveOutcome> outcomes;
  if (args.files.size() == 1) {
    outcomes.push_back(solve_file(args.files.front(), args));
  } else {
    std::vector<std::future<SolveOutcome>> jobs;
    for (const auto& f : args.files) jobs.push_back(std::async(std::launch::async, solve_file, f, std::cref(args)));
    for (auto& j : jobs) outcomes.push_back(j.get());
  }

  int code = kOk;
  for (const auto& o : outcomes) {
    if (!o.report) {
      err << "error: " << o.file << ": " << o.error << "\n";
      code = code == kOk ? kInputError : code;
      continue;
    }
    if (!o.error.empty()) err << o.error;
    const io::ReportFile& r = *o.report;
    if (args.files.size() > 1) out << "== " << o.file << "\n";
    if (args.format == "json") out << io::report_to_json(r).dump(2) << "\n";
    else print_solve_text(out, r);
    if (!args.output.empty()) io::write_json_file(args.output, io::report_to_json(r));
    if (code == kOk) code = exit_code(r.status);
  }
  return code;
}

CostMatrix build_cost(const CostArgs& args) {
  const bool check = !args.skip_generation_check;
  if (args.recipe == "energy") return energy_example_cost(args.eps, args.coupling);
  if (args.recipe == "time") return time_example_cost(args.k);
  if (args.recipe == "spin") {
    if (args.spins < 1 || args.spins > 4) throw std::invalid_argument("--spins must be 1..4");
    return cost_quadratic_generators(spin_generator_set(args.spins, check));
  }
  if (args.recipe == "schwinger") {
    if (args.m < 2 || args.m > 16) throw std::invalid_argument("--m must be 2..16");
    return cost_quadratic_generators(schwinger_generator_set(args.m, check));
  }
  if (args.recipe == "file") {
    if (args.input.empty()) throw std::invalid_argument("--recipe file needs --input");
    return io::cost_file_from_json(io::read_json_file(args.input), {.check_generation = check});
  }
  throw std::invalid_argument("unknown recipe '" + args.recipe + "'");
}

int cmd_cost(const CostArgs& args, std::ostream& out, std::ostream& err) {
  CostMatrix cost;
  try {
    cost = build_cost(args);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  for (const auto& w : cost.warnings) err << "warning: " << w << "\n";
  const auto eig = eig_hermitian(cost.matrix);
  const bool square = cost.dims.m == cost.dims.n;
  const Vector om = square ? omega(cost.dims.m) : Vector();

  if (args.format == "json") {
    Json rows = Json::array();
    for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
      const Vector v = eig.eigenvectors.col(i);
      Json row{{"eigenvalue", eig.eigenvalues(i)}, {"entanglement_entropy", entanglement_entropy(v, cost.dims)}};
      if (square) row["omega_overlap"] = std::norm(om.dot(v));
      rows.push_back(std::move(row));
    }
    out << Json{{"provenance", to_string(cost.provenance)}, {"spectrum", rows}}.dump(2) << "\n";
  } else {
    out << "cost matrix: " << to_string(cost.provenance) << " on (" << cost.dims.m << "," << cost.dims.n
        << ")\n";
    out << std::left << "  " << std::setw(4) << "#" << std::setw(14) << "eigenvalue" << std::setw(14)
        << "entropy_bits" << (square ? "|<Omega|v>|^2" : "") << "\n";
    for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
      const Vector v = eig.eigenvectors.col(i);
      out << "  " << std::setw(4) << i << std::setw(14) << fmt(eig.eigenvalues(i)) << std::setw(14)
          << fmt(entanglement_entropy(v, cost.dims));
      if (square) out << fmt(std::norm(om.dot(v)));
      out << "\n";
    }
    out << std::right;
  }
  if (!args.output.empty()) io::write_json_file(args.output, io::cost_file_json(cost));
  return kOk;
}

int cmd_paper(PaperArgs args, std::ostream& out, std::ostream& err) {
  if (args.tol) args.params.options.tol = *args.tol;
  if (args.max_iters) args.params.options.max_iters = *args.max_iters;
  std::vector<fixtures::Check> checks;
  try {
    args.params.options.validate();
    checks = fixtures::run_paper_example(args.id, args.params);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  bool all = true;
  for (const auto& c : checks) all = all && c.passed();
  if (args.format == "json") {
    Json rows = Json::array();
    for (const auto& c : checks)
      rows.push_back({{"check", c.name}, {"expected", c.expected}, {"actual", c.actual},
                      {"tolerance", c.tolerance}, {"pass", c.passed()}});
    out << Json{{"example", args.id}, {"checks", rows}, {"pass", all}}.dump(2) << "\n";
  } else {
    out << "example " << args.id << "\n";
    for (const auto& c : checks) {
      const char* rel = c.kind == fixtures::Check::Kind::Near      ? "~"
                        : c.kind == fixtures::Check::Kind::AtLeast ? ">="
                                                                   : "<=";
      out << "  [" << (c.passed() ? "PASS" : "FAIL") << "] " << std::left << std::setw(52) << c.name
          << std::right << " actual " << std::setw(12) << fmt(c.actual) << "  expected " << rel << " "
          << fmt(c.expected) << " (tol " << fmt(c.tolerance) << ")\n";
    }
    out << (all ? "all checks passed" : "some checks FAILED") << "\n";
  }
  return all ? kOk : kInputError;
}

int cmd_decompose(const DecomposeArgs& args, std::ostream& out, std::ostream& err) {
  std::optional<ChoiState> choi;
  std::optional<CostMatrix> cost;
  try {
    choi = io::choi_from_json(io::read_json_file(args.kappa), args.load_tol);
    if (!args.cost.empty())
      cost = io::cost_file_from_json(io::read_json_file(args.cost),
                                     {.check_generation = !args.skip_generation_check});
    if (cost && !(cost->dims == choi->dims()))
      throw std::invalid_argument("cost matrix dims differ from the Choi state dims");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  const auto rows = transition_table(*choi, cost ? &*cost : nullptr);
  if (args.format == "json") {
    Json j{{"transitions", transitions_json(rows)}};
    if (cost) j["total_cost"] = frobenius_inner(cost->matrix, choi->matrix());
    out << j.dump(2) << "\n";
  } else {
    if (cost) out << "total cost  " << fmt(frobenius_inner(cost->matrix, choi->matrix())) << "\n";
    print_transitions(out, rows, cost.has_value());
  }
  return kOk;
}

int cmd_sample(const SampleArgs& args, std::ostream& out, std::ostream& err) {
  TransportProblem problem;
  try {
    problem = io::problem_from_json(io::read_json_file(args.problem),
                                    {.check_generation = !args.skip_generation_check});
    if (args.tol) problem.options.tol = *args.tol;
    problem.options.validate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  Json samples = Json::array();
  for (int i = 0; i < args.count; ++i) {
    const unsigned long long seed = args.seed + static_cast<unsigned long long>(i);
    try {
      const ChoiState s = feasible_sample(problem, seed);
      const double c = frobenius_inner(problem.cost.matrix, s.matrix());
      out << "seed " << seed << "  cost " << fmt(c) << "\n";
      Json entry = io::choi_file_json(s.matrix(), s.dims());
      entry["seed"] = seed;
      entry["cost"] = c;
      samples.push_back(std::move(entry));
    } catch (const SolveFailure& e) {
      err << "error: " << e.what() << "\n";
      return exit_code(e.status());
    }
  }
  if (!args.output.empty()) io::write_json_file(args.output, args.count == 1 ? samples[0] : samples);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cost-optimal quantum channels: solve, build cost matrices, decompose Choi states.",
               "optchan"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one or more problem files");
  solve_cmd->add_option("problems", solve_args.files, "Problem JSON files")->required();
  solve_cmd->add_option("--tol", solve_args.tol, "Residual tolerance");
  solve_cmd->add_option("--max-iters", solve_args.max_iters, "Iteration budget");
  solve_cmd->add_option("--output", solve_args.output, "Write the JSON report here");
  solve_cmd->add_option("--format", solve_args.format)->check(CLI::IsMember({"text", "json"}));
  solve_cmd->add_flag("--skip-generation-check", solve_args.skip_generation_check);

  CostArgs cost_args;
  auto* cost_cmd = app.add_subcommand("cost", "Build a cost matrix and print its spectrum");
  cost_cmd->add_option("--recipe", cost_args.recipe)
      ->required()
      ->check(CLI::IsMember({"energy", "time", "spin", "schwinger", "file"}));
  cost_cmd->add_option("--eps", cost_args.eps, "Energy splitting (energy)");
  cost_cmd->add_option("--J", cost_args.coupling, "Coupling J < 0 (energy)");
  cost_cmd->add_option("--k", cost_args.k, "Cost of the flip transition (time)");
  cost_cmd->add_option("--spins", cost_args.spins, "Number of spins (spin)");
  cost_cmd->add_option("--m", cost_args.m, "Dimension (schwinger)");
  cost_cmd->add_option("--input", cost_args.input, "Cost file (file)");
  cost_cmd->add_option("--output", cost_args.output, "Write the cost matrix here");
  cost_cmd->add_option("--format", cost_args.format)->check(CLI::IsMember({"text", "json"}));
  cost_cmd->add_flag("--skip-generation-check", cost_args.skip_generation_check);

  PaperArgs paper_args;
  auto* paper_cmd = app.add_subcommand("paper", "Reproduce a worked example and check it");
  paper_cmd->add_option("id", paper_args.id, "energy | time | mindisturb")->required();
  paper_cmd->add_option("--eps", paper_args.params.eps);
  paper_cmd->add_option("--J", paper_args.params.coupling);
  paper_cmd->add_option("--k", paper_args.params.k);
  paper_cmd->add_option("--tol", paper_args.tol);
  paper_cmd->add_option("--max-iters", paper_args.max_iters);
  paper_cmd->add_option("--format", paper_args.format)->check(CLI::IsMember({"text", "json"}));

  DecomposeArgs decompose_args;
  auto* decompose_cmd = app.add_subcommand("decompose", "Elementary transitions of a Choi state");
  decompose_cmd->add_option("kappa", decompose_args.kappa, "Choi state or report file")->required();
  decompose_cmd->add_option("--cost", decompose_args.cost, "Cost file for per-transition costs");
  decompose_cmd->add_option("--load-tol", decompose_args.load_tol, "Tolerance for the Choi invariants");
  decompose_cmd->add_option("--format", decompose_args.format)->check(CLI::IsMember({"text", "json"}));
  decompose_cmd->add_flag("--skip-generation-check", decompose_args.skip_generation_check);

  SampleArgs sample_args;
  auto* sample_cmd = app.add_subcommand("sample", "Draw feasible Choi states by alternating projections");
  sample_cmd->add_option("problem", sample_args.problem)->required();
  sample_cmd->add_option("--seed", sample_args.seed);
  sample_cmd->add_option("--count", sample_args.count)->check(CLI::Range(1, 100000));
  sample_cmd->add_option("--tol", sample_args.tol);
  sample_cmd->add_option("--output", sample_args.output);
  sample_cmd->add_flag("--skip-generation-check", sample_args.skip_generation_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args, out, err);
    if (*cost_cmd) return cmd_cost(cost_args, out, err);
    if (*paper_cmd) return cmd_paper(paper_args, out, err);
    if (*decompose_cmd) return cmd_decompose(decompose_args, out, err);
    if (*sample_cmd) return cmd_sample(sample_args, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace optchan::cli
