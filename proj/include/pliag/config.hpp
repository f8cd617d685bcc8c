#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "pliag/errors.hpp"
#include "pliag/io.hpp"
#include "pliag/problems.hpp"
#include "pliag/solver.hpp"
#include "pliag/stepsizes.hpp"
#include "pliag/types.hpp"

namespace pliag {

// Flat key = value runfile. Matrices are inline ('1,0;0,1') or CSV paths via
// the *_csv variants; '#' starts a comment; unknown and duplicate keys are
// rejected.
struct RunConfig {
  std::string problem;
  std::string method{"piag"};
  int tau{0};
  std::string delay{"constant"};
  std::uint64_t seed{0};
  std::string step{"sublinear"};
  double alpha{0};  // manual step value
  int iterations{100};
  std::optional<Vector<double>> x0;
  std::string certificate{"none"};
  double theta{0};  // holder certificate; 0 = take the problem record's value
  double mu{0};     // growth modulus override; 0 = take the problem record's value
  std::string trace_csv;
  std::string report_json;
  double divergence_factor{1e3};

  // problem parameters
  std::optional<Matrix<double>> A, E, C;
  std::optional<Vector<double>> b, d, box_lower, box_upper;
  double lambda{1};
  double radius{0};
  double beta{0};
  double l1{0};
  double cs_alpha{1};
  double cs_mu{0};
  double eps{0};
};

namespace detail {

inline int parse_int(const std::string& s, const std::string& what) {
  double v = parse_double(s, what);
  int i = int(v);
  if (double(i) != v) throw InvalidConfig(what + " must be an integer: '" + s + "'");
  return i;
}

}  // namespace detail

inline RunConfig parse_run_config_text(const std::string& text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = detail::trim(line);
    size_t hash = t.find('#');
    if (hash != std::string::npos) t = detail::trim(t.substr(0, hash));
    if (t.empty()) continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw InvalidConfig("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = detail::trim(t.substr(0, eq));
    std::string val = detail::trim(t.substr(eq + 1));
    if (key.empty() || val.empty())
      throw InvalidConfig("line " + std::to_string(lineno) + ": empty key or value");
    if (!seen.insert(key).second)
      throw InvalidConfig("duplicate key: " + key);

    if (key == "problem") cfg.problem = val;
    else if (key == "method") cfg.method = val;
    else if (key == "tau") cfg.tau = detail::parse_int(val, "tau");
    else if (key == "delay") cfg.delay = val;
    else if (key == "seed") cfg.seed = std::uint64_t(detail::parse_double(val, "seed"));
    else if (key == "step") cfg.step = val;
    else if (key == "alpha") cfg.alpha = detail::parse_double(val, "alpha");
    else if (key == "iterations") cfg.iterations = detail::parse_int(val, "iterations");
    else if (key == "x0") cfg.x0 = parse_vector(val);
    else if (key == "certificate") cfg.certificate = val;
    else if (key == "theta") cfg.theta = detail::parse_double(val, "theta");
    else if (key == "mu") cfg.mu = detail::parse_double(val, "mu");
    else if (key == "trace_csv") cfg.trace_csv = val;
    else if (key == "report_json") cfg.report_json = val;
    else if (key == "divergence_factor")
      cfg.divergence_factor = detail::parse_double(val, "divergence_factor");
    else if (key == "A") cfg.A = parse_matrix(val);
    else if (key == "A_csv") cfg.A = read_matrix_csv(val);
    else if (key == "E") cfg.E = parse_matrix(val);
    else if (key == "E_csv") cfg.E = read_matrix_csv(val);
    else if (key == "C") cfg.C = parse_matrix(val);
    else if (key == "C_csv") cfg.C = read_matrix_csv(val);
    else if (key == "b") cfg.b = parse_vector(val);
    else if (key == "b_csv") cfg.b = Vector<double>(read_matrix_csv(val).reshaped());
    else if (key == "d") cfg.d = parse_vector(val);
    else if (key == "d_csv") cfg.d = Vector<double>(read_matrix_csv(val).reshaped());
    else if (key == "box_lower") cfg.box_lower = parse_vector(val);
    else if (key == "box_upper") cfg.box_upper = parse_vector(val);
    else if (key == "lambda") cfg.lambda = detail::parse_double(val, "lambda");
    else if (key == "radius") cfg.radius = detail::parse_double(val, "radius");
    else if (key == "beta") cfg.beta = detail::parse_double(val, "beta");
    else if (key == "l1") cfg.l1 = detail::parse_double(val, "l1");
    else if (key == "cs_alpha") cfg.cs_alpha = detail::parse_double(val, "cs_alpha");
    else if (key == "cs_mu") cfg.cs_mu = detail::parse_double(val, "cs_mu");
    else if (key == "eps") cfg.eps = detail::parse_double(val, "eps");
    else throw InvalidConfig("unknown key: " + key);
  }
  if (cfg.problem.empty()) throw InvalidConfig("missing required key: problem");
  return cfg;
}

inline RunConfig parse_run_config(const std::string& path) {
  return parse_run_config_text(read_text_file(path));
}

inline std::optional<Box<double>> config_box(const RunConfig& cfg) {
  if (!cfg.box_lower != !cfg.box_upper)
    throw InvalidConfig("box_lower and box_upper must be given together");
  if (!cfg.box_lower) return std::nullopt;
  return Box<double>{*cfg.box_lower, *cfg.box_upper};
}

inline ProblemSpec<double> build_problem(const RunConfig& cfg) {
  if (cfg.problem == "lasso") {
    if (!cfg.A || !cfg.b) throw InvalidConfig("lasso needs A and b");
    if (cfg.radius <= 0) throw InvalidConfig("lasso needs radius > 0");
    return make_lasso(*cfg.A, *cfg.b, cfg.lambda, cfg.radius);
  }
  if (cfg.problem == "poisson") {
    if (!cfg.A || !cfg.b) throw InvalidConfig("poisson needs A and b");
    return make_poisson_elastic_net(*cfg.A, *cfg.b, cfg.beta, cfg.l1, config_box(cfg));
  }
  if (cfg.problem == "quartic") {
    if (!cfg.E || !cfg.C) throw InvalidConfig("quartic needs E and C");
    Index dim = cfg.E->cols();
    Matrix<double> A = cfg.A ? *cfg.A : Matrix<double>(0, dim);
    Vector<double> b = cfg.b ? *cfg.b : Vector<double>(Vector<double>::Zero(A.rows()));
    Vector<double> d = cfg.d ? *cfg.d : Vector<double>(Vector<double>::Zero(cfg.C->rows()));
    return make_quartic_problem(*cfg.E, A, *cfg.C, b, d, config_box(cfg));
  }
  if (cfg.problem == "dual_cs") {
    if (!cfg.A || !cfg.b) throw InvalidConfig("dual_cs needs A and b");
    return make_dual_cs(*cfg.A, *cfg.b, cfg.cs_alpha, cfg.cs_mu);
  }
  if (cfg.problem == "holder_toy") return make_holder_toy(cfg.eps);
  throw InvalidConfig("unknown problem: " + cfg.problem);
}

// p must outlive the returned config (it is referenced, not copied)
inline SolverConfig<double> build_solver_config(const RunConfig& cfg,
                                                const ProblemSpec<double>& p) {
  SolverConfig<double> sc = named_method(method_tag_from_string(cfg.method), p, cfg.tau,
                                         cfg.iterations);
  MethodTag tag = method_tag_from_string(cfg.method);
  if (tag != MethodTag::Pg && tag != MethodTag::Nolips) {
    if (cfg.delay == "zero") sc.schedule = DelaySchedule::zero();
    else if (cfg.delay == "constant") sc.schedule = DelaySchedule::constant(cfg.tau);
    else if (cfg.delay == "cyclic") sc.schedule = DelaySchedule::cyclic(cfg.tau);
    else if (cfg.delay == "uniform_random")
      sc.schedule = DelaySchedule::uniform_random(cfg.tau, cfg.seed);
    else throw InvalidConfig("unknown delay kind: " + cfg.delay);
  }

  if (cfg.step == "sublinear") sc.step = StepPolicy<double>::sublinear();
  else if (cfg.step == "linear") sc.step = StepPolicy<double>::linear();
  else if (cfg.step == "piag_holder") sc.step = StepPolicy<double>::piag_holder();
  else if (cfg.step == "manual") sc.step = StepPolicy<double>::manual(cfg.alpha);
  else throw InvalidConfig("unknown step mode: " + cfg.step);

  if (cfg.x0) {
    if (cfg.x0->size() != p.dim()) throw InvalidConfig("x0 dimension mismatch");
    sc.x0 = *cfg.x0;
  }
  sc.divergence_factor = cfg.divergence_factor;
  sc.throw_on_divergence = false;  // recorded in the trace; certificates decide
  return sc;
}

}  // namespace pliag
