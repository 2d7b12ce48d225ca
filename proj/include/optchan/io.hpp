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


// JSON problem, cost, Choi-state and report files (schema_version "1").
//
// Complex matrices are arrays of rows, each row an array of [re, im] pairs;
// a bare number is accepted as a real entry. Indices are 0-based and all
// matrices are expressed in the fixed basis used by the channel-state
// duality, on which the partial transpose and O_A^T depend.

#pragma once

#include "optchan/cost.hpp"
#include "optchan/diagnostics.hpp"
#include "optchan/sdp.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace optchan::io {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

/// Malformed or invalid input; the message starts with the offending field path.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& field, const std::string& reason)
      : std::invalid_argument(field + ": " + reason), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

Json matrix_to_json(const Matrix& x);
Matrix matrix_from_json(const Json& j, const std::string& field);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j, const std::string& field);

struct ParseOptions {
  bool check_generation = true;  // overridden per cost block by "check_generation"
};

CostMatrix cost_from_json(const Json& spec, Dims dims, const std::string& field,
                          const ParseOptions& options = {});

TransportProblem problem_from_json(const Json& j, const ParseOptions& options = {});

/// Reads and parses; file and JSON syntax errors are reported as ParseError.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// {"schema_version", "dims", "provenance", "matrix"}
Json cost_file_json(const CostMatrix& cost);
/// Accepts a cost file ("matrix") or a cost specification under "cost".
CostMatrix cost_file_from_json(const Json& j, const ParseOptions& options = {});

/// {"schema_version", "dims", "matrix"}; also accepted nested as "kappa_star".
Json choi_file_json(const Matrix& kappa, Dims dims);
/// Loads a Choi state from a Choi file or a report file and validates it at
/// the given tolerance (for reports, at least 10x the recorded solver
/// tolerance); violations name the invariant and residual.
ChoiState choi_from_json(const Json& j, double tolerance = ChoiState::kDefaultTolerance);

struct ReportFile {
  SolveStatus status = SolveStatus::MaxIters;
  double optimal_cost = 0.0;
  Dims dims;
  Matrix kappa_star;
  double primal_residual = 0.0;
  std::vector<double> constraint_residuals;
  std::vector<TransitionReport> transitions;
  int iterations = 0;
  double tolerance = 0.0;
  double wall_time_s = 0.0;
};

/// Transitions are filled in only for converged solutions.
ReportFile make_report(const Solution& solution, const CostMatrix& cost, double wall_time_s);

Json report_to_json(const ReportFile& report);
ReportFile report_from_json(const Json& j);

SolveStatus status_from_string(const std::string& s, const std::string& field);

}  // namespace optchan::io
