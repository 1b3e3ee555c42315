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

#include "ncent/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "ncent/error.hpp"

namespace ncent::io {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s) {
  s = trim(s);
  double x = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw Error(ErrorKind::parse, "bad number '" + std::string(s) + "'");
  }
  return x;
}

}  // namespace

std::string format_exact(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_sig(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  std::string s(buf);
  // Keep floats recognisable as floats ("1.0", not "1").
  if (std::isfinite(x) && s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string to_csv(const VarianceMatrix& v) {
  std::ostringstream os;
  auto labels = v.basis().labels();
  for (std::size_t i = 0; i < labels.size(); ++i) os << (i ? "," : "") << labels[i];
  os << '\n';
  for (Eigen::Index i = 0; i < v.dim(); ++i) {
    for (Eigen::Index j = 0; j < v.dim(); ++j) os << (j ? "," : "") << format_exact(v(i, j));
    os << '\n';
  }
  return os.str();
}

VarianceMatrix from_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  for (auto line : split(text, '\n')) {
    line = trim(line);
    if (!line.empty() && line.front() != '#') lines.push_back(line);
  }
  if (lines.empty()) throw Error(ErrorKind::parse, "empty CSV input");
  std::vector<std::string> labels;
  for (auto cell : split(lines[0], ',')) labels.emplace_back(trim(cell));
  BasisDescriptor basis = BasisDescriptor::from_labels(labels);
  const auto n = static_cast<Eigen::Index>(basis.size());
  if (static_cast<Eigen::Index>(lines.size()) != n + 1) {
    throw Error(ErrorKind::parse, "expected " + std::to_string(n) + " matrix rows, found " +
                                      std::to_string(lines.size() - 1));
  }
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    auto cells = split(lines[i + 1], ',');
    if (static_cast<Eigen::Index>(cells.size()) != n) {
      throw Error(ErrorKind::parse, "row " + std::to_string(i + 1) + " has " + std::to_string(cells.size()) +
                                        " entries, expected " + std::to_string(n));
    }
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = parse_double(cells[j]);
  }
  return VarianceMatrix(std::move(m), std::move(basis));
}

std::string to_json(const VarianceMatrix& v) {
  nlohmann::ordered_json j;
  j["basis"] = v.basis().labels();
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.dim(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < v.dim(); ++k) row.push_back(v(i, k));
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j.dump(2) + "\n";
}

VarianceMatrix from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    auto labels = j.at("basis").get<std::vector<std::string>>();
    auto rows = j.at("matrix").get<std::vector<std::vector<double>>>();
    BasisDescriptor basis = BasisDescriptor::from_labels(labels);
    const auto n = static_cast<Eigen::Index>(basis.size());
    if (static_cast<Eigen::Index>(rows.size()) != n) throw Error(ErrorKind::parse, "matrix row count does not match basis");
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (static_cast<Eigen::Index>(rows[i].size()) != n) throw Error(ErrorKind::parse, "ragged matrix row");
      for (Eigen::Index k = 0; k < n; ++k) m(i, k) = rows[i][k];
    }
    return VarianceMatrix(std::move(m), std::move(basis));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("JSON: ") + e.what());
  }
}

VarianceMatrix parse_variance(std::string_view text) {
  auto pos = text.find_first_not_of(" \t\r\n");
  if (pos == std::string_view::npos) throw Error(ErrorKind::parse, "empty input");
  return text[pos] == '{' ? from_json(text) : from_csv(text);
}

VarianceMatrix load_variance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_variance(ss.str());
}

void save_variance(const std::string& path, const VarianceMatrix& v, Format format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::invalid_argument, "cannot write " + path);
  out << (format == Format::csv ? to_csv(v) : to_json(v));
}

}  // namespace ncent::io
