#pragma once

// Knot tables: CSV ingestion, batch computation, and the separation statistic.

#include "rho1/convert.hpp"
#include "rho1/invariant.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace rho1 {

struct TableRow {
  std::string name;
  std::string dt;
  std::size_t line = 0;
};

struct TableInput {
  std::vector<TableRow> rows;
  std::vector<std::string> errors;  // rejected rows, with line numbers
};

struct KnotRecord {
  std::string name;
  std::string dt;
  std::optional<InvariantPair> computed;
  double seconds = 0.0;
  std::string error;  // set when computed is empty
};

struct SeparationReport {
  std::size_t total_knots = 0;
  std::size_t distinct_values = 0;
  std::size_t deficit = 0;
  std::vector<std::vector<std::string>> collision_classes;
};

namespace detail {

inline std::string trim(std::string s) {
  auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && blank(s.back())) s.pop_back();
  std::size_t k = 0;
  while (k < s.size() && blank(s[k])) ++k;
  s = s.substr(k);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

}  // namespace detail

/// Reads a `name,dt` CSV. A missing or wrong header is an error for the whole
/// input; bad rows are reported and skipped.
inline TableInput read_table(std::istream& in) {
  TableInput out;
  std::string line;
  std::size_t number = 0;
  bool header = false;
  std::set<std::string> names;
  while (std::getline(in, line)) {
    ++number;
    std::string t = detail::trim(line);
    if (t.empty()) continue;
    if (!header) {
      if (t != "name,dt") throw ParseError("expected CSV header 'name,dt', found '" + t + "'");
      header = true;
      continue;
    }
    auto comma = t.find(',');
    std::string where = "line " + std::to_string(number) + ": ";
    if (comma == std::string::npos) {
      out.errors.push_back(where + "missing comma");
      continue;
    }
    TableRow row{detail::trim(t.substr(0, comma)), detail::trim(t.substr(comma + 1)), number};
    if (row.name.empty()) {
      out.errors.push_back(where + "empty name");
      continue;
    }
    if (!names.insert(row.name).second) {
      out.errors.push_back(where + "duplicate name " + row.name);
      continue;
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

inline KnotRecord compute_record(const TableRow& row) {
  KnotRecord rec{row.name, row.dt, std::nullopt, 0.0, {}};
  auto start = std::chrono::steady_clock::now();
  try {
    rec.computed = invariant_pair(pd_to_upright(parse_dt(row.dt)));
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

/// Computes every row on `workers` threads; results are in input order.
inline std::vector<KnotRecord> compute_table(const std::vector<TableRow>& rows, unsigned workers = 1) {
  std::vector<KnotRecord> out(rows.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < rows.size(); k = next++) out[k] = compute_record(rows[k]);
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(rows.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

/// Canonical text of the pair, the key for counting distinct values.
inline std::string value_key(const LaurentPoly& delta, const LaurentPoly& rho1) {
  return delta.str() + " | " + rho1.str();
}

/// Counts distinct (Delta, rho_1) values among the computed records. With
/// `unoriented`, a value and its mirror (Delta(1/T), -rho_1) count as one.
inline SeparationReport separation(const std::vector<KnotRecord>& records, bool unoriented = false) {
  std::map<std::string, std::vector<std::string>> classes;
  SeparationReport rep;
  for (const auto& r : records) {
    if (!r.computed) continue;
    ++rep.total_knots;
    std::string key = value_key(r.computed->delta, r.computed->rho1);
    if (unoriented)
      key = std::min(key, value_key(r.computed->delta.invert_variable(), -r.computed->rho1));
    classes[key].push_back(r.name);
  }
  rep.distinct_values = classes.size();
  rep.deficit = rep.total_knots - rep.distinct_values;
  for (auto& [key, names] : classes)
    if (names.size() > 1) rep.collision_classes.push_back(names);
  return rep;
}

/// {"low": lowest exponent, "coeffs": [...], "text": canonical string}.
inline nlohmann::json laurent_json(const LaurentPoly& p) {
  nlohmann::json j;
  j["text"] = p.str();
  j["low"] = p.is_zero() ? 0 : p.low_degree();
  j["coeffs"] = nlohmann::json::array();
  if (!p.is_zero())
    for (int e = p.low_degree(); e <= p.high_degree(); ++e) {
      Rational c = p.coeff(e);
      if (coeff::is_integral(c) && boost::multiprecision::abs(numerator(c)) < Integer(1) << 62)
        j["coeffs"].push_back(static_cast<long long>(numerator(c)));
      else
        j["coeffs"].push_back(coeff::to_string(c));
    }
  return j;
}

inline nlohmann::json record_json(const KnotRecord& r, bool timing = true) {
  nlohmann::json j;
  j["name"] = r.name;
  if (r.computed) {
    j["delta"] = laurent_json(r.computed->delta);
    j["rho1"] = laurent_json(r.computed->rho1);
    j["w"] = r.computed->writhe;
    j["phi"] = r.computed->total_rotation;
    if (!r.computed->warnings.empty()) j["warnings"] = r.computed->warnings;
  } else {
    j["error"] = r.error;
  }
  if (timing) j["seconds"] = r.seconds;
  return j;
}

/// content * (T-1)^power * rest, with rest not divisible by (T-1)^2.
struct Factored {
  Integer content;
  int t1_power = 0;
  IntLaurent rest;

  std::string str() const {
    if (content == 0) return "0";
    std::string out = content.str();
    if (t1_power) out += " * (T-1)^" + std::to_string(t1_power);
    return out + " * (" + rest.str() + ")";
  }
};

inline Factored factor_out(const LaurentPoly& p) {
  Factored f{Integer(0), 0, {}};
  if (p.is_zero()) return f;
  if (!p.has_integral_coefficients()) throw std::invalid_argument("factor_out needs integer coefficients");
  IntLaurent q;
  for (int e = p.low_degree(); e <= p.high_degree(); ++e) q += IntLaurent::monomial(numerator(p.coeff(e)), e);
  Integer g = 0;
  q.for_each_term([&](int, const Integer& c) { g = gcd(g, c); });
  f.content = g;
  q = divide_exact(q, IntLaurent(g));
  IntLaurent t1 = IntLaurent::T() - 1, sq = t1 * t1;
  while (divides(sq, q)) {
    q = divide_exact(q, sq);
    f.t1_power += 2;
  }
  f.rest = q;
  return f;
}

}  // namespace rho1
