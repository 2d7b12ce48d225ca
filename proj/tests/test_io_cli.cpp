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
#include "optchan/fixtures.hpp"
#include "optchan/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace optchan {
namespace {

namespace fs = std::filesystem;
using io::Json;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::vector<const char*> argv{"optchan"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("optchan_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string write(const std::string& name, const Json& j) { return write(name, j.dump()); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

Json density_json(double a, double b) { return io::matrix_to_json(fixtures::diag2(a, b)); }

Json time_flip_file(double k) {
  return {{"schema_version", "1"},
          {"dims", {2, 2}},
          {"cost", {{"recipe", "time_example"}, {"k", k}}},
          {"constraints", {{{"input", density_json(1, 0)}, {"output", density_json(0, 1)}}}}};
}

TEST(Json, MatrixRoundTripIsExact) {
  Matrix x(2, 2);
  x << Complex(0.1, 1.0 / 3.0), Complex(std::sqrt(2.0), -1e-300), Complex(-7e10, 0), Complex(1, 1);
  const Json j = Json::parse(io::matrix_to_json(x).dump());
  EXPECT_EQ(io::matrix_from_json(j, "x"), x);
  // Bare numbers are real entries.
  EXPECT_EQ(io::matrix_from_json(Json::parse("[[1, 0], [0, 1]]"), "x"), Matrix(Matrix::Identity(2, 2)));
}

TEST(Json, ProblemRecipes) {
  const TransportProblem p = io::problem_from_json(time_flip_file(2.0));
  EXPECT_EQ(p.cost.provenance, CostRecipe::TimeExample);
  EXPECT_LT((p.cost.matrix - time_example_cost(2.0).matrix).norm(), 1e-15);
  ASSERT_EQ(p.constraints.size(), 1u);

  Json sum = {{"schema_version", "1"},
              {"dims", {2, 2}},
              {"cost",
               {{"recipe", "sum"},
                {"terms",
                 {{{"weight", 2.0}, {"cost", {{"recipe", "energy_example"}, {"eps", 1.0}, {"J", -1.0}}}},
                  {{"cost", {{"recipe", "quadratic_generators"}, {"generators", {{"spin", 1}}}}}}}}}},
              {"solver", {{"tol", 1e-7}, {"max_iters", 100}}}};
  const TransportProblem q = io::problem_from_json(sum);
  EXPECT_EQ(q.cost.provenance, CostRecipe::WeightedSum);
  EXPECT_LT((q.cost.matrix - 2.0 * energy_example_cost(1.0, -1.0).matrix -
             cost_quadratic_generators(spin_generator_set(1)).matrix)
                .norm(),
            1e-14);
  EXPECT_EQ(q.options.tol, 1e-7);
  EXPECT_EQ(q.options.max_iters, 100);

  Json od = {{"schema_version", "1"},
             {"dims", {2, 2}},
             {"cost", {{"recipe", "observable_difference"}, {"O_A", io::matrix_to_json(pauli(2))},
                       {"O_B", io::matrix_to_json(pauli(3))}}}};
  EXPECT_LT((io::problem_from_json(od).cost.matrix - cost_observable_difference(pauli(2), pauli(3)).matrix).norm(),
            1e-15);

  Json mix = {{"schema_version", "1"},
              {"dims", {2, 2}},
              {"cost", {{"recipe", "mixture"}, {"terms", {{{"cost", 1.0}, {"state", io::vector_to_json(omega(2))}}}}}}};
  EXPECT_EQ(io::problem_from_json(mix).cost.warnings.size(), 1u);

  Json gens = {{"schema_version", "1"},
               {"dims", {2, 2}},
               {"cost", {{"recipe", "quadratic_generators"},
                         {"generators", {io::matrix_to_json(Matrix::Identity(2, 2))}},
                         {"check_generation", false}}}};
  EXPECT_EQ(io::problem_from_json(gens).cost.matrix.norm(), 0.0);
  gens["cost"].erase("check_generation");
  EXPECT_THROW(io::problem_from_json(gens), io::ParseError);
  EXPECT_NO_THROW(io::problem_from_json(gens, {.check_generation = false}));
}

struct Malformed {
  std::string name;
  std::string patch;  // JSON merge patch applied to a valid file
  std::string field;  // expected prefix of the reported field
};

TEST(Json, MalformedProblemsNameTheField) {
  const std::vector<Malformed> cases{
      {"schema", R"({"schema_version": "2"})", "schema_version"},
      {"dims_type", R"({"dims": "2x2"})", "dims"},
      {"dims_zero", R"({"dims": [0, 2]})", "dims"},
      {"dims_cost", R"({"dims": [2, 3]})", "cost"},
      {"cost_missing", R"({"cost": null})", "cost"},
      {"recipe", R"({"cost": {"recipe": "wormhole"}})", "cost.recipe"},
      {"k_type", R"({"cost": {"k": "two"}})", "cost.k"},
      {"k_sign", R"({"cost": {"k": -1}})", "cost"},
      {"check_generation", R"({"cost": {"check_generation": "no"}})", "cost.check_generation"},
      {"solver_key", R"({"solver": {"tolerance": 1e-6}})", "solver.tolerance"},
      {"solver_tol", R"({"solver": {"tol": -1}})", "solver"},
      {"constraints", R"({"constraints": 3})", "constraints"},
  };
  for (const auto& c : cases) {
    Json j = time_flip_file(2.0);
    j.merge_patch(Json::parse(c.patch));
    try {
      io::problem_from_json(j);
      ADD_FAILURE() << c.name << ": accepted";
    } catch (const io::ParseError& e) {
      EXPECT_EQ(e.field().rfind(c.field, 0), 0u) << c.name << ": " << e.what();
    }
  }

  Json j = time_flip_file(2.0);
  j["constraints"][0]["input"] = density_json(0.7, 0.7);
  try {
    io::problem_from_json(j);
    ADD_FAILURE();
  } catch (const io::ParseError& e) {
    EXPECT_NE(e.field().find("constraints"), std::string::npos) << e.what();
    EXPECT_NE(e.field().find("input"), std::string::npos) << e.what();
  }

  j = time_flip_file(2.0);
  j["cost"] = {{"recipe", "raw"}, {"matrix", io::matrix_to_json(Matrix::Identity(3, 3))}};
  EXPECT_THROW(io::problem_from_json(j), io::ParseError);
  Matrix nh = Matrix::Identity(4, 4);
  nh(0, 1) = 1.0;
  j["cost"]["matrix"] = io::matrix_to_json(nh);
  EXPECT_THROW(io::problem_from_json(j), io::ParseError);
  j["cost"]["matrix"] = Json::parse("[[[1, 0, 0]]]");
  EXPECT_THROW(io::problem_from_json(j), io::ParseError);
}

TEST(Report, RoundTripAndReverify) {
  const TransportProblem p = fixtures::time_problem(2.0, true);
  const Solution s = solve(p);
  const io::ReportFile r = io::make_report(s, p.cost, 0.125);
  const io::ReportFile back = io::report_from_json(Json::parse(io::report_to_json(r).dump()));
  EXPECT_EQ(back.status, r.status);
  EXPECT_EQ(back.optimal_cost, r.optimal_cost);
  EXPECT_EQ(back.kappa_star, r.kappa_star);
  EXPECT_EQ(back.constraint_residuals, r.constraint_residuals);
  EXPECT_EQ(back.primal_residual, r.primal_residual);
  EXPECT_EQ(back.iterations, r.iterations);
  EXPECT_EQ(back.tolerance, r.tolerance);
  EXPECT_EQ(back.wall_time_s, r.wall_time_s);
  ASSERT_EQ(back.transitions.size(), r.transitions.size());
  for (std::size_t i = 0; i < r.transitions.size(); ++i) {
    EXPECT_EQ(back.transitions[i].probability, r.transitions[i].probability);
    EXPECT_EQ(back.transitions[i].cost, r.transitions[i].cost);
    EXPECT_EQ(back.transitions[i].schmidt_coeffs, r.transitions[i].schmidt_coeffs);
    EXPECT_EQ(back.transitions[i].support_dim, r.transitions[i].support_dim);
    EXPECT_EQ(back.transitions[i].is_channel, r.transitions[i].is_channel);
  }
  const VerificationReport v = verify_solution(p, back.kappa_star);
  EXPECT_NEAR(v.cost, back.optimal_cost, 1e-9);
  ASSERT_EQ(v.constraint_residuals.size(), back.constraint_residuals.size());
  for (std::size_t i = 0; i < v.constraint_residuals.size(); ++i)
    EXPECT_NEAR(v.constraint_residuals[i], back.constraint_residuals[i], 1e-9);
  EXPECT_NO_THROW(io::choi_from_json(io::report_to_json(r)));
}

TEST(Report, UnconvergedHasNoTransitions) {
  TransportProblem p = fixtures::time_problem(2.0, true);
  p.constraints.push_back({fixtures::diag2(1, 0), fixtures::diag2(1, 0)});
  const io::ReportFile r = io::make_report(solve(p), p.cost, 0.0);
  EXPECT_EQ(r.status, SolveStatus::Infeasible);
  EXPECT_TRUE(r.transitions.empty());
}

using Cli = TempDir;

TEST_F(Cli, SolveTimeFlip) {
  const CliResult r = cli({"solve", write("t.json", time_flip_file(2.0)), "--output", path("r.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("optimal_cost  1.75\n"), std::string::npos) << r.out;
  const io::ReportFile rep = io::report_from_json(io::read_json_file(path("r.json")));
  EXPECT_NEAR(rep.optimal_cost, 1.75, 1e-5);
  EXPECT_EQ(rep.transitions.size(), 2u);
}

TEST_F(Cli, SolveJsonFormatAndOverrides) {
  const CliResult r = cli({"solve", write("t.json", time_flip_file(2.0)), "--format", "json", "--tol", "1e-6",
                     "--max-iters", "5000"});
  EXPECT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["status"], "Converged");
  EXPECT_EQ(j["solver_meta"]["tolerance"], 1e-6);
}

TEST_F(Cli, SolveContradictoryIsInfeasible) {
  Json j = time_flip_file(2.0);
  j["constraints"].push_back({{"input", density_json(1, 0)}, {"output", density_json(1, 0)}});
  const CliResult r = cli({"solve", write("bad.json", j), "--output", path("r.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("Infeasible"), std::string::npos);
  EXPECT_EQ(io::report_from_json(io::read_json_file(path("r.json"))).status, SolveStatus::Infeasible);
}

TEST_F(Cli, SolveBudgetExhausted) {
  Json j = time_flip_file(2.0);
  const CliResult r = cli({"solve", write("t.json", j), "--max-iters", "2"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("MaxIters"), std::string::npos);
}

TEST_F(Cli, SolveMinimalDisturbance) {
  const Json j = {{"schema_version", "1"},
                  {"dims", {2, 2}},
                  {"cost", {{"recipe", "quadratic_generators"}, {"generators", {{"spin", 1}}}}}};
  const CliResult r = cli({"solve", write("md.json", j), "--output", path("r.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  const io::ReportFile rep = io::report_from_json(io::read_json_file(path("r.json")));
  EXPECT_NEAR(rep.optimal_cost, 0.0, 1e-6);
  ASSERT_EQ(rep.transitions.size(), 1u);
  EXPECT_NEAR(rep.transitions[0].entanglement_entropy, 1.0, 1e-6);
}

TEST_F(Cli, SolveBatch) {
  const std::string a = write("a.json", time_flip_file(2.0)), b = write("b.json", time_flip_file(0.5));
  const CliResult r = cli({"solve", a, b});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("optimal_cost  1.75\n"), std::string::npos);
  EXPECT_NE(r.out.find("optimal_cost  0.5\n"), std::string::npos);
  EXPECT_LT(r.out.find("a.json"), r.out.find("b.json"));
  EXPECT_EQ(cli({"solve", a, b, "--output", path("r.json")}).code, 1);
}

TEST_F(Cli, MalformedFilesExitOneNamingTheField) {
  Json j = time_flip_file(2.0);
  j["cost"]["k"] = "two";
  CliResult r = cli({"solve", write("m1.json", j)});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("cost.k"), std::string::npos) << r.err;

  r = cli({"solve", write("m2.json", std::string("{\"schema_version\": \"1\", "))});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("invalid JSON"), std::string::npos) << r.err;

  r = cli({"solve", path("missing.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("cannot open"), std::string::npos) << r.err;

  for (const std::string text : {"[]", "null", "42", "{\"dims\": [2, 2]}", "\"x\""}) {
    r = cli({"solve", write("m3.json", text)});
    EXPECT_EQ(r.code, 1) << text;
    EXPECT_FALSE(r.err.empty()) << text;
  }
}

TEST_F(Cli, BadArgumentsExitOne) {
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"frobnicate"}).code, 1);
  EXPECT_EQ(cli({"solve", "x.json", "--tol", "abc"}).code, 1);
  EXPECT_EQ(cli({"cost", "--recipe", "nope"}).code, 1);
  EXPECT_EQ(cli({"cost", "--recipe", "energy", "--J", "1"}).code, 1);
  EXPECT_EQ(cli({"cost", "--recipe", "time", "--k", "0"}).code, 1);
  EXPECT_EQ(cli({"cost", "--recipe", "spin", "--spins", "9"}).code, 1);
  EXPECT_EQ(cli({"cost", "--recipe", "file"}).code, 1);
  EXPECT_EQ(cli({"solve", "--help"}).code, 0);
}

TEST_F(Cli, CostSpectra) {
  CliResult r = cli({"cost", "--recipe", "energy", "--eps", "1", "--J", "-1", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json spec = Json::parse(r.out)["spectrum"];
  EXPECT_NEAR(spec[0]["eigenvalue"].get<double>(), -std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(spec[1]["eigenvalue"].get<double>(), -1.0, 1e-12);
  EXPECT_NEAR(spec[1]["entanglement_entropy"].get<double>(), 1.0, 1e-9);

  r = cli({"cost", "--recipe", "time", "--k", "1", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  spec = Json::parse(r.out)["spectrum"];
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(spec[i]["eigenvalue"].get<double>(), double(i), 1e-12);
    EXPECT_NEAR(spec[i]["entanglement_entropy"].get<double>(), 1.0, 1e-9);
  }

  r = cli({"cost", "--recipe", "spin", "--spins", "2", "--format", "json", "--output", path("c.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  spec = Json::parse(r.out)["spectrum"];
  EXPECT_NEAR(spec[0]["eigenvalue"].get<double>(), 0.0, 1e-10);
  EXPECT_NEAR(spec[0]["omega_overlap"].get<double>(), 1.0, 1e-10);

  // The written cost file loads back through the file recipe.
  r = cli({"cost", "--recipe", "file", "--input", path("c.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("raw"), std::string::npos);

  r = cli({"cost", "--recipe", "schwinger", "--m", "4"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("(4,4)"), std::string::npos);
  r = cli({"cost", "--recipe", "energy"});
  EXPECT_NE(r.out.find("-1.41421"), std::string::npos) << r.out;
}

TEST_F(Cli, PaperExamples) {
  for (const std::string id : {"energy", "time", "mindisturb"}) {
    const CliResult r = cli({"paper", id});
    EXPECT_EQ(r.code, 0) << id << "\n" << r.out << r.err;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
  }
  CliResult r = cli({"paper", "time", "--k", "0.5"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(cli({"paper", "teleport"}).code, 1);
  r = cli({"paper", "energy", "--format", "json", "--J", "-2"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(Json::parse(r.out)["pass"].get<bool>());
}

TEST_F(Cli, Decompose) {
  ASSERT_EQ(cli({"solve", write("t.json", time_flip_file(2.0)), "--output", path("r.json")}).code, 0);
  CliResult r = cli({"decompose", path("r.json"), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json t = Json::parse(r.out)["transitions"];
  ASSERT_EQ(t.size(), 2u);
  EXPECT_NEAR(t[0]["probability"].get<double>(), 0.625, 1e-4);
  EXPECT_NEAR(t[1]["probability"].get<double>(), 0.375, 1e-4);

  ASSERT_EQ(cli({"cost", "--recipe", "time", "--k", "2", "--output", path("c.json")}).code, 0);
  r = cli({"decompose", path("r.json"), "--cost", path("c.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("total cost  1.75"), std::string::npos) << r.out;

  r = cli({"decompose", write("omega.json", io::choi_file_json(projector(omega(2)), {2, 2})), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  t = Json::parse(r.out)["transitions"];
  ASSERT_EQ(t.size(), 1u);
  EXPECT_NEAR(t[0]["probability"].get<double>(), 1.0, 1e-12);
  EXPECT_TRUE(t[0]["is_channel"].get<bool>());

  r = cli({"decompose", write("mixed.json", io::choi_file_json(Matrix::Identity(4, 4) / 4.0, {2, 2}))});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("transitions (4)"), std::string::npos);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 6) << r.out;
  EXPECT_NE(r.out.find("(degenerate)"), std::string::npos);

  Matrix bad = projector(basis_ket(4, 0));
  r = cli({"decompose", write("bad.json", io::choi_file_json(bad, {2, 2}))});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("Tr_B"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("residual"), std::string::npos) << r.err;

  r = cli({"decompose", path("r.json"), "--cost", write("c3.json", io::cost_file_json(time_example_cost(1.0)).dump())});
  EXPECT_EQ(r.code, 0);
  r = cli({"decompose", path("r.json"), "--cost", write("c4.json", io::cost_file_json(cost_quadratic_generators(spin_generator_set(2))))});
  EXPECT_EQ(r.code, 1);
}

TEST_F(Cli, Sample) {
  const std::string f = write("t.json", time_flip_file(2.0));
  CliResult r = cli({"sample", f, "--seed", "7", "--output", path("s.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const ChoiState s = io::choi_from_json(io::read_json_file(path("s.json")));
  EXPECT_GE(frobenius_inner(time_example_cost(2.0).matrix, s.matrix()), 1.75 - 1e-4);
  EXPECT_EQ(cli({"sample", f, "--seed", "7"}).out, r.out);
  r = cli({"sample", f, "--seed", "7", "--count", "5"});
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);

  Json j = time_flip_file(2.0);
  j["constraints"].push_back({{"input", density_json(1, 0)}, {"output", density_json(1, 0)}});
  EXPECT_EQ(cli({"sample", write("bad.json", j), "--seed", "1"}).code, 2);
}

}  // namespace
}  // namespace optchan
