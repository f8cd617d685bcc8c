#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pliag/diagnostics.hpp"
#include "pliag/errors.hpp"
#include "pliag/problems.hpp"
#include "pliag/sampling.hpp"
#include "pliag/solver.hpp"
#include "pliag/stepsizes.hpp"
#include "pliag/types.hpp"

// Self-contained check suites behind the `verify` command. Each suite builds
// its own instances, runs the relevant certificates or estimators at sizes
// that finish in a few seconds, and reports one line per check.

namespace pliag {

struct CheckResult {
  std::string name;
  bool pass{false};
  double value{0};  // headline number: a margin, violation, or estimate
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

inline std::vector<std::string> suite_names() {
  return {"kernels", "descent", "sublinear", "linear", "holder", "recursion", "appendixB"};
}

namespace detail {

inline ProblemSpec<double> suite_lasso5() {
  Matrix<double> A = Matrix<double>::Zero(5, 5);
  A(0, 0) = 1.0;
  A(1, 1) = 1.5;
  A(2, 2) = 2.0;
  A(3, 3) = 0.7;
  A(4, 4) = 1.2;
  Vector<double> b(5);
  b << 2.0, -1.0, 3.0, 0.5, -2.0;
  return make_lasso<double>(A, b, 1.0, 10.0);
}

inline ProblemSpec<double> suite_lasso2() {
  Matrix<double> A = Matrix<double>::Zero(2, 2);
  A(0, 0) = 1.0;
  A(1, 1) = 2.0;
  Vector<double> b(2);
  b << 2.0, 3.0;
  return make_lasso<double>(A, b, 1.0, 7.0);
}

// E = C = I2, A empty: the objective coincides with the quartic(1,1) kernel,
// so the recorded growth modulus 1/3 is exact.
inline ProblemSpec<double> suite_quartic2() {
  Matrix<double> I = Matrix<double>::Identity(2, 2);
  Matrix<double> A(0, 2);
  Vector<double> b(0);
  Vector<double> d = Vector<double>::Zero(2);
  return make_quartic_problem<double>(I, A, I, b, d);
}

inline ProblemSpec<double> suite_poisson() {
  Matrix<double> A(3, 2);
  A << 1.0, 2.0, 2.0, 0.5, 0.5, 1.0;
  Vector<double> b(3);
  b << 1.0, 2.0, 1.5;
  Vector<double> lo = Vector<double>::Constant(2, 0.2);
  Vector<double> hi = Vector<double>::Constant(2, 5.0);
  return make_poisson_elastic_net<double>(A, b, 0.5, 0.1, Box<double>{lo, hi});
}

inline ProblemSpec<double> half_squared_norm(int d) {
  ProblemSpec<double> p;
  p.name = "half_squared_norm";
  p.kernel = LegendreKernel<double>::euclidean(d);
  ComponentOracle<double> c;
  c.index = 0;
  c.value = [](const Vector<double>& x) { return 0.5 * x.squaredNorm(); };
  c.gradient = [](const Vector<double>& x) { return Vector<double>(x); };
  c.rel_smoothness = 1.0;
  QuadraticForm<double> qf;
  qf.P = Matrix<double>::Identity(d, d);
  qf.q = Vector<double>::Zero(d);
  qf.c = 0.0;
  c.quadratic = std::move(qf);
  p.components.push_back(std::move(c));
  p.solutions = std::vector<Vector<double>>{Vector<double>::Zero(d)};
  p.optimal_value = 0.0;
  GrowthRecord<double> g;
  g.mode = GrowthMode::Quadratic;
  g.mu = 1.0;
  g.theta = 1.0;
  g.region = SampleRegion<double>::cube(d, -3.0, 3.0);
  p.growth = std::move(g);
  return p;
}

inline std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline CheckResult margin_check(const std::string& name, double margin, double floor,
                                const std::string& what) {
  CheckResult r;
  r.name = name;
  r.value = margin;
  r.pass = margin >= floor;
  r.detail = what + " = " + format_value(margin) + " (needs >= " + format_value(floor) + ")";
  return r;
}

inline CheckResult violation_check(const std::string& name, double violation, double tol,
                                   const std::string& what) {
  CheckResult r;
  r.name = name;
  r.value = violation;
  r.pass = violation <= tol;
  r.detail = what + " = " + format_value(violation) + " (tolerance " + format_value(tol) + ")";
  return r;
}

inline CheckResult certificate_check(const std::string& name, const Certificate<double>& c) {
  CheckResult r;
  r.name = name;
  r.value = c.max_violation;
  r.pass = c.pass && c.step_within_bound;
  r.detail = "max violation " + format_value(c.max_violation) + " over " +
             std::to_string(c.K) + " iterations, alpha = " + format_value(c.alpha);
  if (!c.step_within_bound) r.detail += "; step exceeds its admissible bound";
  if (!c.note.empty()) r.detail += "; " + c.note;
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// suites
// ---------------------------------------------------------------------------

inline SuiteReport suite_kernels(std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "kernels";

  struct Instance {
    std::string tag;
    LegendreKernel<double> kernel;
    PointSampler<double> points;
  };
  Vector<double> blo = Vector<double>::Constant(3, 0.5);
  Vector<double> bhi = Vector<double>::Constant(3, 4.0);
  std::vector<Instance> instances;
  instances.push_back({"euclidean", LegendreKernel<double>::euclidean(3),
                       cube_sampler<double>(3, -4.0, 4.0, seed ^ 0x11u)});
  instances.push_back({"burg", LegendreKernel<double>::burg(3, Box<double>{blo, bhi}),
                       box_sampler<double>(blo, bhi, seed ^ 0x22u)});
  instances.push_back(
      {"quartic", LegendreKernel<double>::quartic(2, 1.0, 1.0, make_cube<double>(2, -2.0, 2.0)),
       cube_sampler<double>(2, -2.0, 2.0, seed ^ 0x33u)});

  for (auto& in : instances) {
    double worst = 0;
    double min_breg = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 1000; ++i) {
      Vector<double> x = in.points();
      Vector<double> y = in.points();
      Vector<double> z = in.points();
      worst = std::max(worst, three_point_residual(in.kernel, x, y, z));
      min_breg = std::min(min_breg, bregman(in.kernel, x, y));
    }
    rep.checks.push_back(detail::violation_check("three_point_" + in.tag, worst, 1e-9,
                                                 "max identity residual over 1000 triples"));
    rep.checks.push_back(detail::margin_check("bregman_nonneg_" + in.tag, min_breg, 0.0,
                                              "min sampled distance"));
  }

  {
    bool exact = true;
    for (int k = 1; k <= 8; ++k)
      exact = exact && ell(instances[0].kernel, k) == double(k);
    CheckResult r;
    r.name = "ell_euclidean_identity";
    r.pass = exact;
    r.value = ell(instances[0].kernel, 8);
    r.detail = exact ? "l(k) = k for k = 1..8" : "l(k) deviates from k";
    rep.checks.push_back(r);
  }
  {
    const auto& burg = instances[1].kernel;  // moduli 1/16 and 4, so l(2) = 128
    bool mono = ell(burg, 1) == 1.0;
    double prev = 1.0;
    for (int k = 2; k <= 10 && mono; ++k) {
      double v = ell(burg, k);
      mono = v >= prev;
      prev = v;
    }
    CheckResult r;
    r.name = "ell_burg_amplified";
    r.pass = mono && std::abs(ell(burg, 2) - 128.0) <= 1e-12;
    r.value = ell(burg, 2);
    r.detail = "l(1) = 1, l(2) = " + detail::format_value(ell(burg, 2)) + ", nondecreasing to k = 10";
    rep.checks.push_back(r);
  }

  for (size_t idx : {size_t(1), size_t(2)}) {
    auto& in = instances[idx];
    const auto& m = *in.kernel.moduli();
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 1000; ++i) {
      Vector<double> x = in.points();
      Vector<double> y = in.points();
      double d2 = (y - x).squaredNorm();
      double D = bregman(in.kernel, y, x);
      double lo_gap = D - 0.5 * m.mu_w * d2;   // lower envelope
      double hi_gap = 0.5 * m.L_w * d2 - D;    // upper envelope
      double scale = std::max(1.0, D);
      worst = std::max(worst, std::max(-lo_gap, -hi_gap) / scale);
    }
    rep.checks.push_back(detail::violation_check(
        "moduli_sandwich_" + in.tag, worst, 1e-9,
        "max relative envelope violation over 1000 pairs"));
  }

  for (auto& in : instances) {
    double worst = 0;
    const double h = 1e-6;
    for (int i = 0; i < 50; ++i) {
      Vector<double> x = in.points();
      Vector<double> g = grad_kernel(in.kernel, x);
      for (Index j = 0; j < x.size(); ++j) {
        Vector<double> xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        if (!in.kernel.in_domain_interior(xp) || !in.kernel.in_domain_interior(xm)) continue;
        double fd = (eval_kernel(in.kernel, xp) - eval_kernel(in.kernel, xm)) / (2 * h);
        worst = std::max(worst, std::abs(fd - g[j]) / std::max(1.0, std::abs(g[j])));
      }
    }
    rep.checks.push_back(detail::violation_check("grad_fd_" + in.tag, worst, 1e-6,
                                                 "max relative gradient error, 50 points"));
  }
  return rep;
}

inline SuiteReport suite_descent(std::uint64_t) {
  SuiteReport rep;
  rep.suite = "descent";

  struct Run {
    std::string tag;
    ProblemSpec<double> p;
    MethodTag method;
    int tau;
  };
  std::vector<Run> runs;
  runs.push_back({"lasso_pg", detail::suite_lasso5(), MethodTag::Pg, 0});
  runs.push_back({"lasso_piag_tau3", detail::suite_lasso5(), MethodTag::Piag, 3});
  runs.push_back({"quartic_ne_piag_tau2", detail::suite_quartic2(), MethodTag::NePiag, 2});

  for (auto& r : runs) {
    SolverConfig<double> cfg = named_method<double>(r.method, r.p, r.tau, 150);
    cfg.step = StepPolicy<double>::sublinear();
    Trace<double> tr = run(cfg);
    double L = aggregate_L(r.p, cfg.policy);
    double at_opt = descent_residual(r.p, tr, (*r.p.solutions)[0], L, r.tau);
    double at_self = descent_residual_self(r.p, tr, L, r.tau);
    rep.checks.push_back(detail::violation_check("descent_at_solution_" + r.tag, at_opt, 1e-8,
                                                 "max normalized residual"));
    rep.checks.push_back(detail::violation_check("descent_at_iterates_" + r.tag, at_self, 1e-8,
                                                 "max normalized residual"));
  }
  return rep;
}

inline SuiteReport suite_sublinear(std::uint64_t) {
  SuiteReport rep;
  rep.suite = "sublinear";
  ProblemSpec<double> p = detail::suite_lasso5();
  for (int tau : {0, 3}) {
    SolverConfig<double> cfg = named_method<double>(MethodTag::Piag, p, tau, 400);
    cfg.step = StepPolicy<double>::sublinear();
    Trace<double> tr = run(cfg);
    double L = aggregate_L(p, cfg.policy);
    Certificate<double> c = certify_sublinear(p, tr, (*p.solutions)[0], L, tau);
    rep.checks.push_back(
        detail::certificate_check("sublinear_lasso_tau" + std::to_string(tau), c));
  }
  return rep;
}

inline SuiteReport suite_linear(std::uint64_t) {
  SuiteReport rep;
  rep.suite = "linear";
  {
    ProblemSpec<double> p = detail::suite_quartic2();
    for (int tau : {0, 3}) {
      SolverConfig<double> cfg = named_method<double>(MethodTag::NePiag, p, tau, 250);
      cfg.step = StepPolicy<double>::linear();
      Trace<double> tr = run(cfg);
      double L = aggregate_L(p, cfg.policy);
      Certificate<double> c = certify_linear(p, tr, p.growth->mu, 1e-9, L, tau);
      rep.checks.push_back(
          detail::certificate_check("linear_quartic_tau" + std::to_string(tau), c));
    }
  }
  {
    ProblemSpec<double> p = detail::suite_lasso2();
    SolverConfig<double> cfg = named_method<double>(MethodTag::Piag, p, 0, 250);
    cfg.step = StepPolicy<double>::linear();
    Trace<double> tr = run(cfg);
    double L = aggregate_L(p, cfg.policy);
    Certificate<double> c = certify_linear(p, tr, p.growth->mu, 1e-9, L, 0);
    rep.checks.push_back(detail::certificate_check("linear_lasso_estimated_mu", c));
  }
  return rep;
}

inline SuiteReport suite_holder(std::uint64_t) {
  SuiteReport rep;
  rep.suite = "holder";
  ProblemSpec<double> p = make_holder_toy<double>(0.0);
  for (int tau : {0, 2}) {
    SolverConfig<double> cfg = named_method<double>(MethodTag::Piag, p, tau, 60);
    cfg.step = StepPolicy<double>::piag_holder();
    cfg.x0[0] = 0.9;
    Trace<double> tr = run(cfg);
    Certificate<double> c = certify_holder(p, tr, p.growth->mu, p.growth->theta);
    rep.checks.push_back(detail::certificate_check("holder_toy_tau" + std::to_string(tau), c));
  }
  return rep;
}

inline SuiteReport suite_recursion(std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "recursion";

  {
    RecursionInstance<double> inst;
    inst.a = 0.5;
    inst.b = 1.0;
    inst.c = 0.1;
    inst.k0 = 1;
    RecursionReport<double> r = recursion_oracle_42(inst, 200, 100, seed);
    CheckResult c;
    c.name = "window_contraction_example";
    c.pass = r.pass;
    c.value = double(r.violations);
    c.detail = "condition value " +
               detail::format_value(lemma42_condition_value(inst.a, inst.c, inst.k0)) +
               " <= b = 1; violations " + std::to_string(r.violations) + "/" +
               std::to_string(r.trials * r.horizon);
    rep.checks.push_back(c);
  }
  {
    RecursionInstance<double> inst;
    inst.a = 0.5;
    inst.b = 1.0;
    inst.c = 1.0;
    inst.k0 = 1;
    CheckResult c;
    c.name = "window_contraction_rejects_bad_c";
    try {
      recursion_oracle_42(inst, 10, 10, seed);
      c.pass = false;
      c.detail = "condition value 3 > b = 1 was not rejected";
    } catch (const ConditionViolated&) {
      c.pass = true;
      c.detail = "condition value 3 > b = 1 rejected as required";
    }
    rep.checks.push_back(c);
  }
  {
    // valid instances by construction: c scaled so the window condition holds
    std::mt19937_64 rng(seed ^ 0x5eedULL);
    std::uniform_real_distribution<double> ua(0.05, 0.95);
    std::uniform_real_distribution<double> ub(0.5, 2.0);
    std::uniform_real_distribution<double> uu(0.0, 1.0);
    int bad = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < 30; ++t) {
      RecursionInstance<double> inst;
      inst.a = ua(rng);
      inst.b = ub(rng);
      inst.k0 = int(rng() % 6);
      double cap = inst.b * (1.0 - inst.a) * std::pow(inst.a, double(inst.k0)) /
                   (1.0 - std::pow(inst.a, double(inst.k0 + 1)));
      inst.c = cap * uu(rng);
      inst.V0 = uu(rng) * 2.0;
      RecursionReport<double> r = recursion_oracle_42(inst, 100, 80, seed + t);
      if (!r.pass) ++bad;
      worst = std::max(worst, r.worst_factor);
    }
    CheckResult c;
    c.name = "window_contraction_random_valid";
    c.pass = bad == 0;
    c.value = worst;
    c.detail = "30 random admissible instances, failures " + std::to_string(bad) +
               ", worst observed/bound ratio " + detail::format_value(worst);
    rep.checks.push_back(c);
  }
  {
    RecursionInstance<double> inst;
    inst.a = 0.5;
    inst.d = 0.5;
    inst.theta = 0.5;
    inst.b = 1.0;
    inst.c = 0.1;
    inst.k0 = 1;
    inst.V0 = 1.0;
    RecursionReport<double> r = recursion_oracle_51(inst, 200, 100, seed);
    CheckResult c;
    c.name = "holder_recursion_example";
    c.pass = r.pass;
    c.value = double(r.violations);
    c.detail = "rho = 0.75; violations " + std::to_string(r.violations) + "/" +
               std::to_string(r.trials * r.horizon);
    rep.checks.push_back(c);
  }
  {
    RecursionInstance<double> inst;
    inst.a = 0.5;
    inst.d = 0.5;
    inst.theta = 0.5;
    inst.b = 1.0;
    inst.c = 0.1;
    inst.k0 = 1;
    inst.V0 = 1.5;
    CheckResult c;
    c.name = "holder_recursion_rejects_large_V0";
    try {
      recursion_oracle_51(inst, 10, 10, seed);
      c.pass = false;
      c.detail = "V0 = 1.5 was not rejected";
    } catch (const InvalidInstance&) {
      c.pass = true;
      c.detail = "V0 = 1.5 rejected as required";
    }
    rep.checks.push_back(c);
  }
  {
    // theta = 1 collapses the update to the plain window recursion
    RecursionInstance<double> inst;
    inst.a = 0.6;
    inst.d = 0.4;
    inst.theta = 1.0;
    inst.b = 1.0;
    inst.c = 0.05;
    inst.k0 = 2;
    inst.V0 = 1.0;
    RecursionReport<double> r = recursion_oracle_51(inst, 100, 80, seed ^ 0x77u);
    CheckResult c;
    c.name = "holder_recursion_theta_one";
    c.pass = r.pass;
    c.value = double(r.violations);
    c.detail = "rho = 1; violations " + std::to_string(r.violations) + "/" +
               std::to_string(r.trials * r.horizon);
    rep.checks.push_back(c);
  }
  return rep;
}

inline SuiteReport suite_appendixB(std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "appendixB";

  {
    auto k11 = LegendreKernel<double>::quartic(2, 1.0, 1.0);
    auto k21 = LegendreKernel<double>::quartic(2, 2.0, 1.0);
    double r11 = symmetry_ratio_min(k11, pair_sampler(cube_sampler<double>(2, -5.0, 5.0, seed)),
                                    20000);
    double r21 = symmetry_ratio_min(
        k21, pair_sampler(cube_sampler<double>(2, -5.0, 5.0, seed ^ 0x9u)), 20000);
    rep.checks.push_back(detail::margin_check("symmetry_quartic_1_1", r11, 0.2 - 1e-9,
                                              "min sampled ratio, 20000 pairs"));
    rep.checks.push_back(detail::margin_check("symmetry_quartic_2_1", r21, 0.1 - 1e-9,
                                              "min sampled ratio, 20000 pairs"));
  }
  {
    ProblemSpec<double> p = detail::suite_quartic2();
    double mu_c2 = p.growth->mu / 5.0;  // growth modulus scaled by the symmetry floor
    double m = sufficient_condition_check_c2(
        p, p.kernel, mu_c2, pair_sampler(cube_sampler<double>(2, -2.0, 2.0, seed ^ 0x1u)),
        5000);
    rep.checks.push_back(
        detail::margin_check("c2_margin_quartic", m, -1e-9, "min relative slack, 5000 pairs"));
  }
  {
    ProblemSpec<double> p = detail::half_squared_norm(2);
    double m = sufficient_condition_check_c2(
        p, p.kernel, 1.0, pair_sampler(cube_sampler<double>(2, -3.0, 3.0, seed ^ 0x2u)), 2000);
    rep.checks.push_back(detail::margin_check("c2_margin_euclidean_quadratic", m, -1e-12,
                                              "min relative slack, 2000 pairs"));
  }
  {
    ProblemSpec<double> p = detail::suite_lasso5();
    double m = sufficient_condition_check_c1(p, p.kernel,
                                             p.growth->region.sampler(seed ^ 0x3u), 5000);
    rep.checks.push_back(
        detail::margin_check("c1_margin_lasso", m, -1e-9, "min relative slack, 5000 samples"));
  }
  {
    ProblemSpec<double> p = detail::suite_quartic2();
    double v = bdg_estimate(p, p.kernel, cube_sampler<double>(2, -5.0, 5.0, seed ^ 0x4u), 20000);
    rep.checks.push_back(detail::margin_check("bdg_estimate_quartic", v, 0.29,
                                              "estimated growth modulus"));
  }
  {
    ProblemSpec<double> p = detail::half_squared_norm(2);
    double v = quadratic_growth_estimate(p, cube_sampler<double>(2, -3.0, 3.0, seed ^ 0x5u),
                                         4000);
    CheckResult c;
    c.name = "quadratic_growth_estimate_exact";
    c.value = v;
    c.pass = std::abs(v - 0.9) <= 1e-12;  // ratio is 1 everywhere, times the 0.9 safety factor
    c.detail = "estimate " + detail::format_value(v) + " (expects 0.9)";
    rep.checks.push_back(c);
  }
  {
    double m_toy = growth_margin(make_holder_toy<double>(0.0), 4000, seed ^ 0x6u);
    double m_lasso = growth_margin(detail::suite_lasso5(), 4000, seed ^ 0x7u);
    rep.checks.push_back(detail::margin_check("growth_margin_holder_toy", m_toy, -1e-12,
                                              "min relative slack, 4000 samples"));
    rep.checks.push_back(detail::margin_check("growth_margin_lasso", m_lasso, -1e-9,
                                              "min relative slack, 4000 samples"));
  }
  {
    ProblemSpec<double> p = detail::suite_poisson();
    Vector<double> lo = Vector<double>::Constant(2, 0.2);
    Vector<double> hi = Vector<double>::Constant(2, 5.0);
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& comp : p.components) {
      double m = relative_smoothness_margin(
          comp, p.kernel,
          pair_sampler(box_sampler<double>(lo, hi, seed ^ (0x8u + comp.index))), 2000);
      worst = std::min(worst, m);
    }
    rep.checks.push_back(detail::margin_check("rel_smoothness_poisson_burg", worst, -1e-9,
                                              "min relative slack across components"));
  }
  {
    ProblemSpec<double> p = detail::suite_quartic2();
    double m = relative_smoothness_margin(
        p.components[0], p.kernel,
        pair_sampler(cube_sampler<double>(2, -2.0, 2.0, seed ^ 0xCu)), 2000);
    rep.checks.push_back(detail::margin_check("rel_smoothness_quartic", m, -1e-9,
                                              "min relative slack, 2000 pairs"));
  }
  return rep;
}

inline SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "kernels") return suite_kernels(seed);
  if (name == "descent") return suite_descent(seed);
  if (name == "sublinear") return suite_sublinear(seed);
  if (name == "linear") return suite_linear(seed);
  if (name == "holder") return suite_holder(seed);
  if (name == "recursion") return suite_recursion(seed);
  if (name == "appendixB") return suite_appendixB(seed);
  throw InvalidConfig("run_suite: unknown suite '" + name + "'");
}

}  // namespace pliag
