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


#include "optchan/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace optchan::io {

namespace {

std::string at(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }
std::string dot(const std::string& field, const std::string& key) {
  return field.empty() ? key : field + "." + key;
}

const Json& require_key(const Json& j, const std::string& field, const std::string& key) {
  if (!j.is_object()) throw ParseError(field.empty() ? "<root>" : field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(dot(field, key), "missing required field");
  return *it;
}

double number(const Json& j, const std::string& field) {
  if (!j.is_number()) throw ParseError(field, "expected a number");
  return j.get<double>();
}

long long integer(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ParseError(field, "expected an integer");
  return j.get<long long>();
}

Complex complex_entry(const Json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError(field, "expected a [re, im] pair");
}

Dims dims_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) throw ParseError(field, "expected [m, n]");
  const long long m = integer(j[0], at(field, 0)), n = integer(j[1], at(field, 1));
  if (m < 1 || n < 1) throw ParseError(field, "dimensions must be positive");
  if (m * n > 256) throw ParseError(field, "m*n above 256 is not supported");
  return {static_cast<Index>(m), static_cast<Index>(n)};
}

Json dims_to_json(Dims d) { return Json::array({d.m, d.n}); }

// Runs a library validator and rethrows its complaint against a field.
template <typename F>
auto checked(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(field, e.what());
  }
}

void require_shape(const Matrix& x, Index rows, Index cols, const std::string& field) {
  if (x.rows() != rows || x.cols() != cols) {
    std::ostringstream msg;
    msg << "expected a " << rows << "x" << cols << " matrix, got " << x.rows() << "x" << x.cols();
    throw ParseError(field, msg.str());
  }
}

}  // namespace

Json matrix_to_json(const Matrix& x) {
  Json rows = Json::array();
  for (Index i = 0; i < x.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < x.cols(); ++j) row.push_back({x(i, j).real(), x(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ParseError(field, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw ParseError(at(field, 0), "expected a non-empty row");
  const std::size_t cols = j[0].size();
  Matrix x(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rf = at(field, r);
    if (!j[r].is_array() || j[r].size() != cols)
      throw ParseError(rf, "expected a row of " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c)
      x(static_cast<Index>(r), static_cast<Index>(c)) = complex_entry(j[r][c], at(rf, c));
  }
  return x;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

Vector vector_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ParseError(field, "expected a non-empty array");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = complex_entry(j[i], at(field, i));
  return v;
}

namespace {

GeneratorSet generators_from_json(const Json& j, const std::string& field, bool check) {
  if (j.is_object()) {
    if (j.contains("spin")) {
      const long long r = integer(j["spin"], dot(field, "spin"));
      if (r < 1 || r > 4) throw ParseError(dot(field, "spin"), "spin count must be 1..4");
      return checked(field, [&] { return spin_generator_set(static_cast<int>(r), check); });
    }
    if (j.contains("schwinger")) {
      const long long m = integer(j["schwinger"], dot(field, "schwinger"));
      if (m < 2 || m > 16) throw ParseError(dot(field, "schwinger"), "dimension must be 2..16");
      return checked(field, [&] { return schwinger_generator_set(static_cast<Index>(m), check); });
    }
    throw ParseError(field, "expected {\"spin\": r}, {\"schwinger\": m} or an array of matrices");
  }
  if (!j.is_array() || j.empty()) throw ParseError(field, "expected a non-empty array of generators");
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < j.size(); ++i) gens.push_back(matrix_from_json(j[i], at(field, i)));
  return checked(field, [&] { return GeneratorSet::make(std::move(gens), check); });
}

}  // namespace

CostMatrix cost_from_json(const Json& spec, Dims dims, const std::string& field,
                          const ParseOptions& options) {
  if (!spec.is_object()) throw ParseError(field, "expected an object");
  const Json& recipe_json = require_key(spec, field, "recipe");
  if (!recipe_json.is_string()) throw ParseError(dot(field, "recipe"), "expected a string");
  const std::string recipe = recipe_json.get<std::string>();
  CostMatrix cost;
  if (recipe == "sum") {
    const std::string sf = dot(field, "terms");
    const Json& terms = require_key(spec, field, "terms");
    if (!terms.is_array() || terms.empty()) throw ParseError(sf, "expected a non-empty array");
    std::vector<std::pair<double, CostMatrix>> parts;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string tf = at(sf, i);
      const double w = terms[i].is_object() && terms[i].contains("weight")
                           ? number(terms[i]["weight"], dot(tf, "weight"))
                           : 1.0;
      parts.emplace_back(w, cost_from_json(require_key(terms[i], tf, "cost"), dims, dot(tf, "cost"), options));
    }
    cost = weighted_sum(parts);
  } else {
    bool check = options.check_generation;
    if (spec.contains("check_generation")) {
      if (!spec["check_generation"].is_boolean())
        throw ParseError(dot(field, "check_generation"), "expected a boolean");
      check = check && spec["check_generation"].get<bool>();
    }
    if (recipe == "raw") {
      const std::string mf = dot(field, "matrix");
      Matrix c = matrix_from_json(require_key(spec, field, "matrix"), mf);
      require_shape(c, dims.total(), dims.total(), mf);
      cost = checked(mf, [&] { return make_raw_cost(std::move(c), dims); });
    } else if (recipe == "mixture") {
      const std::string tf = dot(field, "terms");
      const Json& terms = require_key(spec, field, "terms");
      if (!terms.is_array() || terms.empty()) throw ParseError(tf, "expected a non-empty array");
      std::vector<PureTerm> parsed;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string ef = at(tf, i);
        parsed.push_back({number(require_key(terms[i], ef, "cost"), dot(ef, "cost")),
                          vector_from_json(require_key(terms[i], ef, "state"), dot(ef, "state"))});
      }
      cost = checked(tf, [&] { return cost_from_pure_mixture(dims, parsed); });
    } else if (recipe == "observable_difference") {
      const Matrix oa = matrix_from_json(require_key(spec, field, "O_A"), dot(field, "O_A"));
      const Matrix ob = matrix_from_json(require_key(spec, field, "O_B"), dot(field, "O_B"));
      require_shape(oa, dims.m, dims.m, dot(field, "O_A"));
      require_shape(ob, dims.n, dims.n, dot(field, "O_B"));
      cost = checked(field, [&] { return cost_observable_difference(oa, ob); });
    } else if (recipe == "quadratic_generators") {
      const GeneratorSet gens =
          generators_from_json(require_key(spec, field, "generators"), dot(field, "generators"), check);
      cost = cost_quadratic_generators(gens);
    } else if (recipe == "energy_example") {
      const double eps = number(require_key(spec, field, "eps"), dot(field, "eps"));
      const double j = number(require_key(spec, field, "J"), dot(field, "J"));
      cost = checked(field, [&] { return energy_example_cost(eps, j); });
    } else if (recipe == "time_example") {
      const double k = number(require_key(spec, field, "k"), dot(field, "k"));
      cost = checked(dot(field, "k"), [&] { return time_example_cost(k); });
    } else {
      throw ParseError(dot(field, "recipe"), "unknown recipe '" + recipe + "'");
    }
  }
  if (!(cost.dims == dims)) {
    std::ostringstream msg;
    msg << "cost is on (" << cost.dims.m << "," << cost.dims.n << ") but dims are (" << dims.m
        << "," << dims.n << ")";
    throw ParseError(field, msg.str());
  }
  return cost;
}

namespace {

void check_schema(const Json& j) {
  const Json& v = require_key(j, "", "schema_version");
  if (!v.is_string() || v.get<std::string>() != kSchemaVersion)
    throw ParseError("schema_version", std::string("expected \"") + kSchemaVersion + "\"");
}

SolverOptions options_from_json(const Json& j, const std::string& field) {
  SolverOptions opt;
  if (!j.is_object()) throw ParseError(field, "expected an object");
  for (const auto& [key, value] : j.items()) {
    const std::string f = dot(field, key);
    if (key == "tol") opt.tol = number(value, f);
    else if (key == "max_iters") opt.max_iters = static_cast<int>(integer(value, f));
    else if (key == "over_relaxation") opt.over_relaxation = number(value, f);
    else if (key == "penalty") opt.penalty = number(value, f);
    else throw ParseError(f, "unknown solver option");
  }
  checked(field, [&] { opt.validate(); return 0; });
  return opt;
}

}  // namespace

TransportProblem problem_from_json(const Json& j, const ParseOptions& options) {
  check_schema(j);
  TransportProblem p;
  p.dims = dims_from_json(require_key(j, "", "dims"), "dims");
  p.cost = cost_from_json(require_key(j, "", "cost"), p.dims, "cost", options);
  if (j.contains("constraints")) {
    const Json& cs = j["constraints"];
    if (!cs.is_array()) throw ParseError("constraints", "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string cf = at("constraints", i);
      ConstraintPair pair{matrix_from_json(require_key(cs[i], cf, "input"), dot(cf, "input")),
                          matrix_from_json(require_key(cs[i], cf, "output"), dot(cf, "output"))};
      require_shape(pair.input, p.dims.m, p.dims.m, dot(cf, "input"));
      require_shape(pair.output, p.dims.n, p.dims.n, dot(cf, "output"));
      checked(dot(cf, "input"), [&] { require_density(pair.input, "density matrix"); return 0; });
      checked(dot(cf, "output"), [&] { require_density(pair.output, "density matrix"); return 0; });
      p.constraints.push_back(std::move(pair));
    }
  }
  if (j.contains("solver")) p.options = options_from_json(j["solver"], "solver");
  return p;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path, std::string("invalid JSON: ") + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

Json cost_file_json(const CostMatrix& cost) {
  return {{"schema_version", kSchemaVersion},
          {"dims", dims_to_json(cost.dims)},
          {"provenance", to_string(cost.provenance)},
          {"matrix", matrix_to_json(cost.matrix)}};
}

CostMatrix cost_file_from_json(const Json& j, const ParseOptions& options) {
  check_schema(j);
  const Dims dims = dims_from_json(require_key(j, "", "dims"), "dims");
  if (j.contains("matrix"))
    return cost_from_json(Json{{"recipe", "raw"}, {"matrix", j["matrix"]}}, dims, "", options);
  return cost_from_json(require_key(j, "", "cost"), dims, "cost", options);
}

Json choi_file_json(const Matrix& kappa, Dims dims) {
  return {{"schema_version", kSchemaVersion}, {"dims", dims_to_json(dims)}, {"matrix", matrix_to_json(kappa)}};
}

ChoiState choi_from_json(const Json& j, double tolerance) {
  const bool nested = j.is_object() && j.contains("kappa_star");
  const Json& body = nested ? j["kappa_star"] : j;
  const std::string field = nested ? "kappa_star" : "";
  if (!nested) check_schema(j);
  const Dims dims = dims_from_json(require_key(body, field, "dims"), dot(field, "dims"));
  const std::string mf = dot(field, "matrix");
  Matrix kappa = matrix_from_json(require_key(body, field, "matrix"), mf);
  require_shape(kappa, dims.total(), dims.total(), mf);
  // A solver report vouches for its state at 10x the solver tolerance, as Solution::choi does.
  double tol = tolerance;
  if (nested && j.contains("solver_meta") && j["solver_meta"].is_object() &&
      j["solver_meta"].contains("tolerance") && j["solver_meta"]["tolerance"].is_number())
    tol = std::max(tol, 10.0 * j["solver_meta"]["tolerance"].get<double>());
  return checked(mf, [&] { return ChoiState::from_matrix(std::move(kappa), dims, tol); });
}

SolveStatus status_from_string(const std::string& s, const std::string& field) {
  if (s == "Converged") return SolveStatus::Converged;
  if (s == "MaxIters") return SolveStatus::MaxIters;
  if (s == "Infeasible") return SolveStatus::Infeasible;
  throw ParseError(field, "unknown status '" + s + "'");
}

ReportFile make_report(const Solution& solution, const CostMatrix& cost, double wall_time_s) {
  ReportFile r;
  r.status = solution.status;
  r.optimal_cost = solution.cost_value;
  r.dims = solution.dims;
  r.kappa_star = solution.kappa_star;
  r.primal_residual = solution.primal_residual;
  r.constraint_residuals = solution.constraint_residuals;
  if (solution.status == SolveStatus::Converged) r.transitions = full_report(solution, cost).transitions;
  r.iterations = solution.iterations;
  r.tolerance = solution.tolerance;
  r.wall_time_s = wall_time_s;
  return r;
}

Json report_to_json(const ReportFile& r) {
  Json transitions = Json::array();
  for (const auto& t : r.transitions) {
    transitions.push_back({{"probability", t.probability},
                           {"cost", t.cost},
                           {"entanglement_entropy", t.entanglement_entropy},
                           {"schmidt_coeffs", std::vector<double>(t.schmidt_coeffs.begin(), t.schmidt_coeffs.end())},
                           {"support_dim", t.support_dim},
                           {"is_channel", t.is_channel},
                           {"degenerate_group", t.degenerate_group},
                           {"degenerate", t.degenerate}});
  }
  return {{"schema_version", kSchemaVersion},
          {"status", to_string(r.status)},
          {"optimal_cost", r.optimal_cost},
          {"kappa_star", {{"dims", dims_to_json(r.dims)}, {"matrix", matrix_to_json(r.kappa_star)}}},
          {"primal_residual", r.primal_residual},
          {"constraint_residuals", r.constraint_residuals},
          {"transitions", std::move(transitions)},
          {"solver_meta", {{"iterations", r.iterations}, {"tolerance", r.tolerance}, {"wall_time_s", r.wall_time_s}}}};
}

ReportFile report_from_json(const Json& j) {
  check_schema(j);
  ReportFile r;
  const Json& status = require_key(j, "", "status");
  if (!status.is_string()) throw ParseError("status", "expected a string");
  r.status = status_from_string(status.get<std::string>(), "status");
  r.optimal_cost = number(require_key(j, "", "optimal_cost"), "optimal_cost");
  const Json& kappa = require_key(j, "", "kappa_star");
  r.dims = dims_from_json(require_key(kappa, "kappa_star", "dims"), "kappa_star.dims");
  r.kappa_star = matrix_from_json(require_key(kappa, "kappa_star", "matrix"), "kappa_star.matrix");
  require_shape(r.kappa_star, r.dims.total(), r.dims.total(), "kappa_star.matrix");
  r.primal_residual = number(require_key(j, "", "primal_residual"), "primal_residual");
  const Json& residuals = require_key(j, "", "constraint_residuals");
  if (!residuals.is_array()) throw ParseError("constraint_residuals", "expected an array");
  for (std::size_t i = 0; i < residuals.size(); ++i)
    r.constraint_residuals.push_back(number(residuals[i], at("constraint_residuals", i)));
  const Json& transitions = require_key(j, "", "transitions");
  if (!transitions.is_array()) throw ParseError("transitions", "expected an array");
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const std::string tf = at("transitions", i);
    const Json& t = transitions[i];
    TransitionReport tr;
    tr.probability = number(require_key(t, tf, "probability"), dot(tf, "probability"));
    tr.cost = number(require_key(t, tf, "cost"), dot(tf, "cost"));
    tr.entanglement_entropy = number(require_key(t, tf, "entanglement_entropy"), dot(tf, "entanglement_entropy"));
    const Json& sc = require_key(t, tf, "schmidt_coeffs");
    if (!sc.is_array()) throw ParseError(dot(tf, "schmidt_coeffs"), "expected an array");
    tr.schmidt_coeffs.resize(static_cast<Index>(sc.size()));
    for (std::size_t q = 0; q < sc.size(); ++q)
      tr.schmidt_coeffs(static_cast<Index>(q)) = number(sc[q], at(dot(tf, "schmidt_coeffs"), q));
    tr.support_dim = static_cast<Index>(integer(require_key(t, tf, "support_dim"), dot(tf, "support_dim")));
    const Json& ch = require_key(t, tf, "is_channel");
    if (!ch.is_boolean()) throw ParseError(dot(tf, "is_channel"), "expected a boolean");
    tr.is_channel = ch.get<bool>();
    tr.degenerate_group = static_cast<Index>(integer(require_key(t, tf, "degenerate_group"), dot(tf, "degenerate_group")));
    const Json& dg = require_key(t, tf, "degenerate");
    if (!dg.is_boolean()) throw ParseError(dot(tf, "degenerate"), "expected a boolean");
    tr.degenerate = dg.get<bool>();
    r.transitions.push_back(std::move(tr));
  }
  const Json& meta = require_key(j, "", "solver_meta");
  r.iterations = static_cast<int>(integer(require_key(meta, "solver_meta", "iterations"), "solver_meta.iterations"));
  r.tolerance = number(require_key(meta, "solver_meta", "tolerance"), "solver_meta.tolerance");
  r.wall_time_s = number(require_key(meta, "solver_meta", "wall_time_s"), "solver_meta.wall_time_s");
  return r;
}

}  // namespace optchan::io
