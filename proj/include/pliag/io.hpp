#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pliag/diagnostics.hpp"
#include "pliag/errors.hpp"
#include "pliag/solver.hpp"
#include "pliag/types.hpp"

namespace pliag {

// 17 significant digits round-trip double exactly through decimal
inline std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// columns: k, phi, bregman_step, delay_max, alpha. Row k carries the step
// quantities leaving iterate k; the final row has no step and stores zeros.
template <class Scalar>
std::string trace_to_csv(const Trace<Scalar>& tr) {
  std::ostringstream out;
  out << "k,phi,bregman_step,delay_max,alpha\n";
  for (int k = 0; k <= tr.length(); ++k) {
    double step = k < tr.length() ? double(tr.bregman_steps[size_t(k)]) : 0.0;
    int dmax = 0;
    if (k < tr.length())
      for (int d : tr.delays[size_t(k)]) dmax = std::max(dmax, d);
    out << k << ',' << format_g17(double(tr.objective_values[size_t(k)])) << ','
        << format_g17(step) << ',' << dmax << ',' << format_g17(double(tr.alpha))
        << '\n';
  }
  return out.str();
}

template <class Scalar>
nlohmann::json certificate_to_json(const Certificate<Scalar>& c) {
  nlohmann::json per_k = nlohmann::json::array();
  for (size_t i = 0; i < c.bound.size(); ++i) {
    per_k.push_back({{"k", c.k_start + int(i)},
                     {"bound", double(c.bound[i])},
                     {"observed", double(c.observed[i])}});
  }
  nlohmann::json j{{"kind", to_string(c.kind)},
                   {"K", c.K},
                   {"alpha", double(c.alpha)},
                   {"mu", double(c.mu)},
                   {"max_violation", double(c.max_violation)},
                   {"pass", c.pass},
                   {"tolerance", double(c.tolerance)},
                   {"step_within_bound", c.step_within_bound},
                   {"per_k", std::move(per_k)}};
  if (c.kind == CertificateKind::HolderDistance) j["theta"] = double(c.theta);
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidData("cannot open for writing: " + path);
  f << content;
  if (!f) throw InvalidData("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidData("cannot open: " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (trim(s.substr(pos)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidConfig("not a number in " + what + ": '" + s + "'");
}

}  // namespace detail

// comma-separated entries, one row
inline Vector<double> parse_vector(const std::string& s) {
  auto parts = detail::split(s, ',');
  Vector<double> v(Index(parts.size()));
  for (size_t i = 0; i < parts.size(); ++i)
    v[Index(i)] = detail::parse_double(detail::trim(parts[i]), "vector entry");
  return v;
}

// rows separated by ';', entries by ','
inline Matrix<double> parse_matrix(const std::string& s) {
  auto rows = detail::split(s, ';');
  if (rows.empty()) throw InvalidConfig("empty matrix literal");
  std::vector<Vector<double>> parsed;
  for (const auto& r : rows) parsed.push_back(parse_vector(detail::trim(r)));
  Matrix<double> m(Index(parsed.size()), parsed[0].size());
  for (size_t i = 0; i < parsed.size(); ++i) {
    if (parsed[i].size() != m.cols()) throw InvalidConfig("ragged matrix literal");
    m.row(Index(i)) = parsed[i];
  }
  return m;
}

// CSV matrix file: one row per line, comma separated; blank lines and
// '#' comment lines are skipped
inline Matrix<double> read_matrix_csv(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::vector<Vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    rows.push_back(parse_vector(t));
  }
  if (rows.empty()) throw InvalidData("empty matrix file: " + path);
  Matrix<double> m(Index(rows.size()), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw InvalidData("ragged matrix file: " + path);
    m.row(Index(i)) = rows[i];
  }
  return m;
}

}  // namespace pliag
