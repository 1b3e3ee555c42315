/*
 * Copyright 2026 The ncent Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#pragma once

#include <string>
#include <vector>

namespace ncent {

enum class Family { commutative_1d, commutative_2d, nc_single, nc_pair };

Family parse_family(const std::string& name);
const char* to_string(Family f);

// Inputs for every family; each family reads only its own fields.
struct ReportParams {
  double eta = 1.0, zeta = 0.0;  // 1d-commutative
  double alpha = 1.0;            // 2d-commutative, nc-single, nc-pair
  double a1 = 0.0;               // 2d-commutative, nc-single
  double theta = 1.0;            // nc-single, nc-pair
  double b1 = 0.0;               // nc-pair: a = (b1, 0)
  double p0x = 0.0, p0y = 0.0;   // nc-single, nc-pair
};

struct EntanglementReport {
  Family family;
  ReportParams params;
  std::string regime;  // "figure" or "general" for nc-pair, empty otherwise
  double nu_tilde_x;
  double nu_tilde_y;   // NaN when the family has a single mode pair
  double nu_min_theta;
  double margin;       // nu_min^2 - nu_tilde^2
  bool entangled;
  double log_negativity;
};

EntanglementReport entanglement_report(Family family, const ReportParams& params);
std::string to_json(const EntanglementReport& r);

struct Check {
  std::string name;
  bool passed;
  double value;      // worst deviation or the checked quantity
  double threshold;
  bool gating = true;  // diagnostics do not affect the suite outcome
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  bool passed() const;
};

// Suites: core, oracle, reductions, closed-forms; "all" runs the first three.
std::vector<SuiteResult> run_verification(const std::string& suite);
std::string to_json(const std::vector<SuiteResult>& results);

}  // namespace ncent
