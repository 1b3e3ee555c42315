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
#include <string_view>

#include "ncent/symplectic.hpp"

namespace ncent::io {

enum class Format { csv, json };

// CSV: header of basis labels (e.g. "x1@1,p1@1"), then one row per line.
std::string to_csv(const VarianceMatrix& v);
VarianceMatrix from_csv(std::string_view text);

// JSON: {"basis": [...labels...], "matrix": [[...], ...]}.
std::string to_json(const VarianceMatrix& v);
VarianceMatrix from_json(std::string_view text);

// Detects the format from the first non-blank character.
VarianceMatrix parse_variance(std::string_view text);

VarianceMatrix load_variance(const std::string& path);
void save_variance(const std::string& path, const VarianceMatrix& v, Format format);

// Shortest decimal text that reads back to the same double.
std::string format_exact(double x);
// Fixed number of significant digits, used for report output.
std::string format_sig(double x, int digits = 12);

}  // namespace ncent::io
