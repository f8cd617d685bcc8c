#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pliag/solver.hpp"

using namespace pliag;

namespace {

Vector<double> vec1(double a) {
  Vector<double> v(1);
  v << a;
  return v;
}

// 1/2 (x - b)^2 in one dimension, with the closed quadratic form attached
ComponentOracle<double> shifted_square(int index, double b) {
  ComponentOracle<double> c;
  c.index = index;
  c.value = [b](const Vector<double>& x) { return 0.5 * (x[0] - b) * (x[0] - b); };
  c.gradient = [b](const Vector<double>& x) { return vec1(x[0] - b); };
  c.rel_smoothness = 1.0;
  QuadraticForm<double> qf;
  qf.P = Matrix<double>::Identity(1, 1);
  qf.q = vec1(-b);
  qf.c = 0.5 * b * b;
  c.quadratic = std::move(qf);
  return c;
}

ProblemSpec<double> two_quadratics() {
  ProblemSpec<double> p;
  p.name = "pair";
  p.kernel = LegendreKernel<double>::euclidean(1);
  p.reg = Regularizer<double>::zero();
  p.components.push_back(shifted_square(0, 0.0));
  p.components.push_back(shifted_square(1, 2.0));
  p.solutions = std::vector<Vector<double>>{vec1(1.0)};
  p.optimal_value = 1.0;
  return p;
}

ProblemSpec<double> boxed_poisson() {
  Matrix<double> A(2, 1);
  A << 1.0, 1.0;
  Vector<double> b(2);
  b << 1.0, 2.0;
  Vector<double> lo = vec1(0.2), hi = vec1(5.0);
  return make_poisson_elastic_net<double>(A, b, 0.0, 0.0, Box<double>{lo, hi});
}

}  // namespace

TEST_CASE("proximal gradient recovers the shrinkage fixed point") {
  auto p = make_lasso<double>(Matrix<double>::Identity(1, 1), vec1(2.0), 1.0, 3.0);
  SolverConfig<double> cfg;
  cfg.problem = &p;
  cfg.step = StepPolicy<double>::manual(1.0);
  cfg.iterations = 3;
  cfg.x0 = vec1(0.0);
  auto tr = run(cfg);
  CHECK(tr.iterates[1][0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(tr.iterates[2][0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(tr.objective_values[1] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(tr.alpha == 1.0);
}

TEST_CASE("exact minimizer in one step at alpha = 1/L") {
  ProblemSpec<double> p;
  p.kernel = LegendreKernel<double>::euclidean(1);
  p.components.push_back(shifted_square(0, 0.0));
  SolverConfig<double> cfg;
  cfg.problem = &p;
  cfg.step = StepPolicy<double>::manual(1.0);
  cfg.iterations = 2;
  cfg.x0 = vec1(1.0);
  auto tr = run(cfg);
  CHECK(tr.iterates[1][0] == 0.0);
  CHECK(tr.iterates[2][0] == 0.0);
  CHECK(tr.bregman_steps[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(tr.bregman_steps[1] == 0.0);
}

TEST_CASE("alternating projections hand trace") {
  auto p = two_quadratics();
  SolverConfig<double> cfg;
  cfg.problem = &p;
  cfg.policy = SelectionPolicy::iap_cyclic();
  cfg.schedule = DelaySchedule::zero();
  cfg.step = StepPolicy<double>::manual(0.25);
  cfg.iterations = 3;
  cfg.x0 = vec1(0.0);
  auto tr = run(cfg);
  CHECK(tr.iterates[1][0] == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(tr.iterates[2][0] == doctest::Approx(0.64).epsilon(1e-14));
  CHECK(tr.iterates[3][0] == doctest::Approx(0.784).epsilon(1e-14));
  CHECK(tr.kept_sets[0] == std::vector<int>{0});
  CHECK(tr.kept_sets[1] == std::vector<int>{1});
  CHECK(tr.kept_sets[2] == std::vector<int>{0});
}

TEST_CASE("kept-component steps refuse ill-posed step sizes") {
  auto p = two_quadratics();
  SolverConfig<double> cfg;
  cfg.problem = &p;
  cfg.policy = SelectionPolicy::iap_cyclic();
  cfg.step = StepPolicy<double>::manual(0.75);  // cap is 1/(ell(2) * 1) = 0.5
  cfg.iterations = 1;
  cfg.x0 = vec1(0.0);
  CHECK_THROWS_AS(run(cfg), InvalidConfig);
}

TEST_CASE("pg equals the zero-delay full aggregate") {
  Matrix<double> A(2, 2);
  A << 1.0, 0.3, 0.0, 2.0;
  Vector<double> b(2);
  b << 2.0, -1.0;
  auto p = make_lasso<double>(A, b, 1.0, 10.0);
  auto cfg_pg = named_method<double>(MethodTag::Pg, p, 0, 80);
  auto cfg_manual = cfg_pg;
  cfg_manual.policy = SelectionPolicy::full_aggregate();
  cfg_manual.schedule = DelaySchedule::constant(0);
  auto t1 = run(cfg_pg);
  auto t2 = run(cfg_manual);
  REQUIRE(t1.length() == t2.length());
  for (int k = 0; k <= t1.length(); ++k)
    CHECK((t1.iterates[size_t(k)] - t2.iterates[size_t(k)]).lpNorm<Eigen::Infinity>() <=
          1e-12);
}

TEST_CASE("named methods enforce their compatibility rules") {
  auto lasso = make_lasso<double>(Matrix<double>::Identity(2, 2), Vector<double>::Zero(2),
                                  1.0, 1.0);
  auto poisson = boxed_poisson();
  Matrix<double> I1 = Matrix<double>::Identity(1, 1);
  auto quartic = make_quartic_problem<double>(I1, Matrix<double>(0, 1), I1,
                                              Vector<double>(0), vec1(0.0));

  CHECK_THROWS_AS(named_method<double>(MethodTag::Pg, poisson, 0, 1), IncompatibleTag);
  CHECK_THROWS_AS(named_method<double>(MethodTag::Nolips, lasso, 0, 1), IncompatibleTag);
  CHECK_THROWS_AS(named_method<double>(MethodTag::Iag, lasso, 2, 1), IncompatibleTag);
  CHECK_THROWS_AS(named_method<double>(MethodTag::Iap, lasso, 2, 1), IncompatibleTag);
  CHECK_THROWS_AS(named_method<double>(MethodTag::NeIap, quartic, 1, 1), IncompatibleTag);
  CHECK_THROWS_AS(named_method<double>(MethodTag::NePiag, lasso, 1, 1), IncompatibleTag);
  CHECK_THROWS_AS(named_method<double>(MethodTag::Pg, lasso, -1, 1), InvalidConfig);

  // compatible picks round-trip through their string tags
  for (auto tag : {MethodTag::Pg, MethodTag::Piag})
    CHECK(method_tag_from_string(to_string(tag)) == tag);
  CHECK_THROWS_AS(method_tag_from_string("sgd"), InvalidConfig);
}

TEST_CASE("ne_iap sweeps burg components one at a time") {
  auto p = boxed_poisson();
  auto cfg = named_method<double>(MethodTag::NeIap, p, 1, 40);
  auto tr = run(cfg);
  CHECK(tr.length() == 40);
  for (int k = 0; k <= tr.length(); ++k) CHECK(tr.iterates[size_t(k)].minCoeff() > 0.0);
  CHECK(tr.kept_sets[0] == std::vector<int>{0});
  CHECK(tr.kept_sets[1] == std::vector<int>{1});
  CHECK(tr.objective_values.back() < tr.objective_values.front());
}

TEST_CASE("nolips mirror descent approaches the poisson solution") {
  auto p = boxed_poisson();
  auto cfg = named_method<double>(MethodTag::Nolips, p, 0, 400);
  auto tr = run(cfg);
  REQUIRE(p.solutions.has_value());
  CHECK(std::abs(tr.iterates.back()[0] - (*p.solutions)[0][0]) <= 1e-3);
  CHECK(tr.box_exit_ks.empty());
}

TEST_CASE("trace bookkeeping matches the iteration budget") {
  auto p = make_lasso<double>(Matrix<double>::Identity(2, 2), Vector<double>::Zero(2), 1.0,
                              1.0);
  auto cfg = named_method<double>(MethodTag::Piag, p, 3, 17);
  auto tr = run(cfg);
  CHECK(tr.length() == 17);
  CHECK(tr.iterates.size() == 18);
  CHECK(tr.objective_values.size() == 18);
  CHECK(tr.bregman_steps.size() == 17);
  CHECK(tr.delays.size() == 17);
  CHECK(tr.kept_sets.size() == 17);
  CHECK(tr.alpha > 0.0);
  CHECK(tr.divergence_at == -1);
  for (int k = 0; k < 17; ++k) {
    for (int d : tr.delays[size_t(k)]) CHECK(d == std::min(k, 3));
    CHECK(tr.kept_sets[size_t(k)].empty());
  }
}

TEST_CASE("divergence guard") {
  ProblemSpec<double> p;
  p.kernel = LegendreKernel<double>::euclidean(1);
  p.components.push_back(shifted_square(0, 0.0));
  SolverConfig<double> cfg;
  cfg.problem = &p;
  cfg.step = StepPolicy<double>::manual(10.0);  // x <- -9x blows up
  cfg.iterations = 50;
  cfg.x0 = vec1(1.0);
  CHECK_THROWS_AS(run(cfg), DivergenceGuard);

  cfg.throw_on_divergence = false;
  auto tr = run(cfg);
  CHECK(tr.divergence_at > 0);
  CHECK(tr.length() == tr.divergence_at);
  CHECK(tr.length() < 50);
}

TEST_CASE("config validation") {
  auto p = make_lasso<double>(Matrix<double>::Identity(1, 1), vec1(0.0), 1.0, 1.0);
  SolverConfig<double> cfg;
  CHECK_THROWS_AS(run(cfg), InvalidConfig);  // no problem attached
  cfg.problem = &p;
  cfg.iterations = -1;
  cfg.x0 = vec1(0.0);
  CHECK_THROWS_AS(run(cfg), InvalidConfig);
  cfg.iterations = 1;
  cfg.x0 = Vector<double>::Zero(2);
  CHECK_THROWS_AS(run(cfg), InvalidConfig);  // dimension mismatch

  auto poisson = boxed_poisson();
  SolverConfig<double> cfg2;
  cfg2.problem = &poisson;
  cfg2.iterations = 1;
  cfg2.x0 = vec1(-1.0);
  CHECK_THROWS_AS(run(cfg2), DomainViolation);
}

TEST_CASE("runs are deterministic under random delay schedules") {
  Matrix<double> A(3, 2);
  A << 1.0, 0.2, 0.4, 1.5, 0.0, 0.7;
  Vector<double> b(3);
  b << 1.0, -0.5, 0.25;
  auto p = make_lasso<double>(A, b, 0.3, 10.0);
  SolverConfig<double> cfg;
  cfg.problem = &p;
  cfg.schedule = DelaySchedule::uniform_random(4, 20260817);
  cfg.iterations = 60;
  cfg.x0 = Vector<double>::Zero(2);
  auto t1 = run(cfg);
  auto t2 = run(cfg);
  REQUIRE(t1.length() == t2.length());
  for (int k = 0; k <= t1.length(); ++k) {
    CHECK(t1.iterates[size_t(k)][0] == t2.iterates[size_t(k)][0]);
    CHECK(t1.iterates[size_t(k)][1] == t2.iterates[size_t(k)][1]);
  }
  for (int k = 0; k < t1.length(); ++k)
    for (int d : t1.delays[size_t(k)]) {
      CHECK(d >= 0);
      CHECK(d <= std::min(k, 4));
    }
}

TEST_CASE("default starts are interior") {
  auto poisson = boxed_poisson();
  CHECK(default_start(poisson)[0] == doctest::Approx(2.6));  // kernel box midpoint

  Matrix<double> A(2, 1);
  A << 1.0, 1.0;
  Vector<double> b(2);
  b << 1.0, 2.0;
  auto bare = make_poisson_elastic_net<double>(A, b, 0.0, 0.0);
  CHECK(default_start(bare)[0] == 1.0);  // ones for the positive orthant

  auto lasso = make_lasso<double>(Matrix<double>::Identity(2, 2), Vector<double>::Zero(2),
                                  1.0, 1.0);
  CHECK(default_start(lasso).norm() == 0.0);

  ProblemSpec<double> boxed;
  boxed.kernel = LegendreKernel<double>::euclidean(1);
  boxed.components.push_back(shifted_square(0, 0.0));
  Vector<double> lo = vec1(1.0), hi = vec1(3.0);
  boxed.reg = Regularizer<double>::indicator_box(Box<double>{lo, hi});
  CHECK(default_start(boxed)[0] == 2.0);
}
