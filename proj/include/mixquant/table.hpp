#pragma once

// Table rows for the CLI: one row per n with split metadata, the left half of
// the codebook (plus the center point when n is odd), and optional oracle
// columns. Numeric fields serialize at 17 significant digits so CSV and JSON
// forms round-trip bit-exactly.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "mixquant/oracle.hpp"
#include "mixquant/selector.hpp"
#include "mixquant/version.hpp"

namespace mixquant {

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct TableRow {
  int n = 0;
  int k = 0;
  int m = 0;
  std::string case_label;  // "V1", "V2", or "explicit"
  std::vector<double> codebook;  // left half + center
  double error = 0.0;
  std::optional<double> oracle_error;
  std::optional<double> gap;
  std::string note;  // nonempty when the solver failed for this n

  friend bool operator==(const TableRow& a, const TableRow& b) {
    return a.n == b.n && a.k == b.k && a.m == b.m && a.case_label == b.case_label &&
           a.codebook == b.codebook && a.error == b.error &&
           a.oracle_error == b.oracle_error && a.gap == b.gap && a.note == b.note;
  }
};

/// Occupancy of [0, 1/2] and (1/2, 3/4) in a codebook; the center point 3/4
/// counts toward neither.
inline std::pair<int, int> occupancy(const Codebook& cb) {
  int k = 0, m = 0;
  for (double x : cb) {
    if (x <= 0.5 + 1e-12)
      ++k;
    else if (x < 0.75 - 1e-12)
      ++m;
  }
  return {k, m};
}

inline TableRow make_row(const QuantizationResult& r) {
  TableRow row;
  row.n = r.n;
  if (r.split) {
    row.k = r.split->k;
    row.m = r.split->m;
    row.case_label = to_string(r.split->split_case);
  } else {
    auto [k, m] = occupancy(r.codebook);
    row.k = k;
    row.m = m;
    row.case_label = "explicit";
  }
  for (double x : r.codebook)
    if (x <= 0.75 + 1e-12) row.codebook.push_back(x);
  row.error = r.error;
  return row;
}

// --- CSV form ---------------------------------------------------------------

inline const char* table_csv_header() {
  return "n,k,m,case,codebook,error,oracle_error,gap,note";
}

inline std::string to_csv(const TableRow& row) {
  std::ostringstream os;
  os << row.n << ',' << row.k << ',' << row.m << ',' << row.case_label << ',';
  for (std::size_t i = 0; i < row.codebook.size(); ++i)
    os << (i ? ";" : "") << format_double(row.codebook[i]);
  os << ',' << format_double(row.error) << ',';
  if (row.oracle_error) os << format_double(*row.oracle_error);
  os << ',';
  if (row.gap) os << format_double(*row.gap);
  os << ',' << row.note;
  return os.str();
}

inline TableRow from_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  if (fields.size() != 9) throw std::invalid_argument("from_csv: malformed row: " + line);
  TableRow row;
  row.n = std::stoi(fields[0]);
  row.k = std::stoi(fields[1]);
  row.m = std::stoi(fields[2]);
  row.case_label = fields[3];
  std::istringstream cb(fields[4]);
  std::string tok;
  while (std::getline(cb, tok, ';'))
    if (!tok.empty()) row.codebook.push_back(std::strtod(tok.c_str(), nullptr));
  row.error = std::strtod(fields[5].c_str(), nullptr);
  if (!fields[6].empty()) row.oracle_error = std::strtod(fields[6].c_str(), nullptr);
  if (!fields[7].empty()) row.gap = std::strtod(fields[7].c_str(), nullptr);
  row.note = fields[8];
  return row;
}

// --- JSON form --------------------------------------------------------------

inline nlohmann::json to_json(const TableRow& row) {
  nlohmann::json j{{"n", row.n},          {"k", row.k},
                   {"m", row.m},          {"case", row.case_label},
                   {"codebook", row.codebook}, {"error", row.error}};
  if (row.oracle_error) j["oracle_error"] = *row.oracle_error;
  if (row.gap) j["gap"] = *row.gap;
  if (!row.note.empty()) j["note"] = row.note;
  return j;
}

inline TableRow from_json(const nlohmann::json& j) {
  TableRow row;
  row.n = j.at("n").get<int>();
  row.k = j.at("k").get<int>();
  row.m = j.at("m").get<int>();
  row.case_label = j.at("case").get<std::string>();
  row.codebook = j.at("codebook").get<std::vector<double>>();
  row.error = j.at("error").get<double>();
  if (j.contains("oracle_error")) row.oracle_error = j["oracle_error"].get<double>();
  if (j.contains("gap")) row.gap = j["gap"].get<double>();
  if (j.contains("note")) row.note = j["note"].get<std::string>();
  return row;
}

/// Full-codebook JSON for a single quantization result.
inline nlohmann::json result_json(const QuantizationResult& r, double tol) {
  TableRow row = make_row(r);
  return nlohmann::json{{"n", r.n},
                        {"k", row.k},
                        {"m", row.m},
                        {"case", row.case_label},
                        {"codebook", r.codebook.points()},
                        {"error", r.error},
                        {"meta", {{"tol", tol}, {"version", kVersion}}}};
}

// --- Generation -------------------------------------------------------------

struct TableOptions {
  bool with_oracle = false;
  int jobs = 1;
  int restarts = 64;
  double tol = 1e-12;
  std::uint64_t seed = 0;
};

inline TableRow compute_row(int n, const TableOptions& opt) {
  TableRow row;
  row.n = n;
  try {
    QuantizationResult r = solve(n);
    row = make_row(r);
    if (opt.with_oracle) {
      const StepDensity d = StepDensity::mixture(0.5);
      OracleReport rep = lloyd(d, n, opt.restarts, 100000, opt.tol, opt.seed);
      row.oracle_error = rep.error;
      row.gap = std::abs(rep.error - r.error);
    }
  } catch (const std::exception& e) {
    row.note = e.what();
  }
  return row;
}

/// Rows for n = from..to, computed with up to `jobs` workers, returned in
/// ascending n. Content does not depend on the worker count.
inline std::vector<TableRow> generate_table(int from, int to, const TableOptions& opt) {
  if (from < 1 || to < from)
    throw std::invalid_argument("generate_table: need 1 <= from <= to");
  const int count = to - from + 1;
  std::vector<TableRow> rows(count);
  const int jobs = std::max(1, opt.jobs);
  if (jobs == 1 || count == 1) {
    for (int i = 0; i < count; ++i) rows[i] = compute_row(from + i, opt);
    return rows;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      rows[i] = compute_row(from + i, opt);
    }
  };
  std::vector<std::thread> pool;
  for (int j = 0; j < std::min(jobs, count); ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return rows;
}

}  // namespace mixquant
