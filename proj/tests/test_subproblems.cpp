#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pliag/subproblems.hpp"

using namespace pliag;

namespace {

const std::vector<ComponentOracle<double>> kNoComponents;

SubproblemInstance<double> make_inst(const LegendreKernel<double>& k,
                                     const Regularizer<double>& reg,
                                     const Vector<double>& s, const Vector<double>& anchor,
                                     double alpha) {
  SubproblemInstance<double> inst;
  inst.kernel = &k;
  inst.reg = &reg;
  inst.components = &kNoComponents;
  inst.s = s;
  inst.anchor = anchor;
  inst.alpha = alpha;
  return inst;
}

Vector<double> vec1(double a) {
  Vector<double> v(1);
  v << a;
  return v;
}

Vector<double> vec2(double a, double b) {
  Vector<double> v(2);
  v << a, b;
  return v;
}

ComponentOracle<double> quadratic_component(const Matrix<double>& P, const Vector<double>& q,
                                             double c) {
  ComponentOracle<double> comp;
  comp.index = 0;
  comp.value = [P, q, c](const Vector<double>& x) {
    return 0.5 * x.dot(P * x) + q.dot(x) + c;
  };
  comp.gradient = [P, q](const Vector<double>& x) { return Vector<double>(P * x + q); };
  comp.rel_smoothness = P.norm();
  QuadraticForm<double> qf;
  qf.P = P;
  qf.q = q;
  qf.c = c;
  comp.quadratic = std::move(qf);
  return comp;
}

}  // namespace

TEST_CASE("elastic net coordinate update: frozen value") {
  double u = elastic_net_coordinate_update(1.0, 0.1, 0.2, 0.5, 1.0);
  CHECK(u == doctest::Approx(2.0 / (0.3 + std::sqrt(8.09))).epsilon(1e-15));
  CHECK(u == doctest::Approx(0.636073).epsilon(1e-6));
}

TEST_CASE("elastic net coordinate update solves its stationarity equation") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ulam(0.01, 1.0), umu(0.0, 1.0), ugam(-1.0, 1.0),
      ubeta(0.01, 2.0), ux(0.1, 10.0);
  for (int i = 0; i < 1000; ++i) {
    double lam = ulam(rng), mu = umu(rng), gam = ugam(rng), beta = ubeta(rng), x = ux(rng);
    double u = elastic_net_coordinate_update(lam, mu, gam, beta, x);
    CHECK(u > 0.0);
    double B = lam * mu * x + lam * gam * x + 1.0 - 2.0 * lam * beta * x * x;
    double res = 4.0 * lam * beta * x * u * u + B * u - x;
    CHECK(std::abs(res) <= 1e-12 * std::max(1.0, std::abs(B) * u + x));
  }
}

TEST_CASE("elastic net coordinate update rejects degenerate input") {
  CHECK_THROWS_AS(elastic_net_coordinate_update(1.0, 0.1, 0.2, 0.0, 1.0), DegenerateBeta);
  CHECK_THROWS_AS(elastic_net_coordinate_update(0.0, 0.1, 0.2, 0.5, 1.0), InvalidData);
  CHECK_THROWS_AS(elastic_net_coordinate_update(1.0, 0.1, 0.2, 0.5, -1.0), InvalidData);
}

TEST_CASE("euclidean prox closed forms") {
  auto k = LegendreKernel<double>::euclidean(3);
  Vector<double> anchor(3), s(3);
  anchor << 2.0, -0.5, 0.3;
  s << 0.0, 0.0, 0.0;

  auto zero = Regularizer<double>::zero();
  auto inst = make_inst(k, zero, vec1(0.5).replicate(3, 1), anchor, 0.5);
  Vector<double> x = solve_subproblem(inst);
  CHECK((x - (anchor.array() - 0.25).matrix()).norm() == 0.0);

  auto l1 = Regularizer<double>::l1(1.0);
  inst = make_inst(k, l1, s, anchor, 1.0);
  x = solve_subproblem(inst);
  CHECK(x[0] == 1.0);
  CHECK(x[1] == 0.0);
  CHECK(x[2] == 0.0);
  CHECK(optimality_residual(inst, x) <= 1e-10);
}

TEST_CASE("l1 ball prox lands on the sphere when the ball binds") {
  auto k = LegendreKernel<double>::euclidean(2);
  auto reg = Regularizer<double>::l1(0.0, 2.0);
  auto inst = make_inst(k, reg, Vector<double>::Zero(2), vec2(3.0, 3.0), 1.0);
  Vector<double> x = solve_subproblem(inst);
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(optimality_residual(inst, x) <= 1e-10);

  // asymmetric case: projection of (4, 1) has threshold 2, zeroing coordinate 1
  inst.anchor = vec2(4.0, 1.0);
  x = solve_subproblem(inst);
  CHECK(x[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(0.0).scale(1.0));
  CHECK(std::abs(x.lpNorm<1>() - 2.0) <= 1e-12);
  CHECK(optimality_residual(inst, x) <= 1e-10);
}

TEST_CASE("positive-part soft threshold and box clip") {
  auto k = LegendreKernel<double>::euclidean(2);
  auto pos = Regularizer<double>::l1_positive(0.3);
  auto inst = make_inst(k, pos, vec2(0.2, -0.1), vec2(1.0, -2.0), 0.5);
  Vector<double> x = solve_subproblem(inst);
  CHECK(x[0] == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(x[1] == 0.0);
  CHECK(optimality_residual(inst, x) <= 1e-10);

  auto box = Regularizer<double>::indicator_box(make_cube<double>(2, -1.0, 1.0));
  inst = make_inst(k, box, Vector<double>::Zero(2), vec2(2.0, -3.0), 1.0);
  x = solve_subproblem(inst);
  CHECK(x[0] == 1.0);
  CHECK(x[1] == -1.0);
  CHECK(optimality_residual(inst, x) <= 1e-10);
}

TEST_CASE("separable bisection agrees with euclidean closed forms") {
  auto k = LegendreKernel<double>::euclidean(3);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ua(-3.0, 3.0), us(-2.0, 2.0), ual(0.1, 2.0);
  auto l1 = Regularizer<double>::l1(0.7);
  auto pos = Regularizer<double>::l1_positive(0.4);
  for (int i = 0; i < 200; ++i) {
    Vector<double> anchor(3), s(3);
    for (int j = 0; j < 3; ++j) {
      anchor[j] = ua(rng);
      s[j] = us(rng);
    }
    double alpha = ual(rng);
    for (const auto* reg : {&l1, &pos}) {
      auto inst = make_inst(k, *reg, s, anchor, alpha);
      Vector<double> closed = solve_subproblem(inst);
      Vector<double> bis = generic_separable_update(inst);
      CHECK((closed - bis).lpNorm<Eigen::Infinity>() <= 1e-10);
    }
  }
}

TEST_CASE("kept quadratic solve") {
  auto k = LegendreKernel<double>::euclidean(1);
  auto zero = Regularizer<double>::zero();
  std::vector<ComponentOracle<double>> comps;
  comps.push_back(quadratic_component(Matrix<double>::Identity(1, 1),
                                      Vector<double>::Zero(1), 0.0));  // 1/2 x^2
  SubproblemInstance<double> inst;
  inst.kernel = &k;
  inst.reg = &zero;
  inst.components = &comps;
  inst.kept = {0};
  inst.s = Vector<double>::Zero(1);
  inst.anchor = vec1(2.0);
  inst.alpha = 1.0;
  Vector<double> x = solve_subproblem(inst);
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(optimality_residual(inst, x) <= 1e-12);

  // box-clipped variant against a grid scan of the 1-D objective
  auto box = Regularizer<double>::indicator_box(make_cube<double>(1, -0.2, 0.4));
  inst.reg = &box;
  x = solve_subproblem(inst);
  CHECK(x[0] == doctest::Approx(0.4).epsilon(1e-14));
  double best = std::numeric_limits<double>::infinity();
  double arg = 0;
  for (int i = 0; i <= 60000; ++i) {
    double u = -0.2 + 0.6 * double(i) / 60000.0;
    double val = 0.5 * u * u + 0.5 * (u - 2.0) * (u - 2.0);
    if (val < best) {
      best = val;
      arg = u;
    }
  }
  CHECK(std::abs(arg - x[0]) <= 1e-4);
}

TEST_CASE("kept quadratic solve in 2-D with aggregated linear term") {
  auto k = LegendreKernel<double>::euclidean(2);
  auto zero = Regularizer<double>::zero();
  std::vector<ComponentOracle<double>> comps;
  comps.push_back(quadratic_component(Matrix<double>::Identity(2, 2),
                                      Vector<double>::Zero(2), 0.0));
  Matrix<double> P2(2, 2);
  P2 << 2.0, 0.0, 0.0, 0.0;
  comps.push_back(quadratic_component(P2, vec2(1.0, 0.0), 0.0));
  SubproblemInstance<double> inst;
  inst.kernel = &k;
  inst.reg = &zero;
  inst.components = &comps;
  inst.kept = {0, 1};
  inst.kept_quadratic_weight = 0.1;
  inst.s = vec2(-0.5, 0.3);
  inst.anchor = vec2(1.0, -1.0);
  inst.alpha = 0.8;
  Vector<double> x = solve_subproblem(inst);
  CHECK(optimality_residual(inst, x) <= 1e-10);
}

TEST_CASE("scalar kept path handles non-quadratic components and kinks") {
  auto k = LegendreKernel<double>::euclidean(1);
  // kept 1/2 (u - 2)^2 with h = 0.4 |u|: stationarity gives u = 0.8
  auto l1 = Regularizer<double>::l1(0.4);
  std::vector<ComponentOracle<double>> comps;
  comps.push_back(
      quadratic_component(Matrix<double>::Identity(1, 1), vec1(-2.0), 2.0));
  SubproblemInstance<double> inst;
  inst.kernel = &k;
  inst.reg = &l1;
  inst.components = &comps;
  inst.kept = {0};
  inst.s = Vector<double>::Zero(1);
  inst.anchor = vec1(0.0);
  inst.alpha = 1.0;
  Vector<double> x = solve_subproblem(inst);
  CHECK(x[0] == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(optimality_residual(inst, x) <= 1e-8);

  // quartic component, value/gradient oracles only
  ComponentOracle<double> quart;
  quart.index = 0;
  quart.value = [](const Vector<double>& v) { return 0.25 * std::pow(v[0], 4); };
  quart.gradient = [](const Vector<double>& v) { return vec1(v[0] * v[0] * v[0]); };
  quart.rel_smoothness = 1.0;
  std::vector<ComponentOracle<double>> comps2{quart};
  inst.components = &comps2;
  inst.anchor = vec1(1.2);
  inst.alpha = 0.7;
  inst.s = vec1(0.1);
  x = solve_subproblem(inst);
  CHECK(optimality_residual(inst, x) <= 1e-8);
}

TEST_CASE("burg coordinate closed form") {
  auto zero = Regularizer<double>::zero();
  {
    // no quadratic terms: pure mirror step 1/u = 1/x + alpha s
    auto k = LegendreKernel<double>::burg(1);
    auto inst = make_inst(k, zero, vec1(0.5), vec1(1.0), 1.0);
    Vector<double> x = solve_subproblem(inst);
    CHECK(x[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  }
  {
    auto k = LegendreKernel<double>::burg(3, std::nullopt, 0.3);
    auto pos = Regularizer<double>::l1_positive(0.2);
    Vector<double> anchor(3), s(3);
    anchor << 0.5, 1.0, 2.0;
    s << -0.3, 0.1, 0.4;
    auto inst = make_inst(k, pos, s, anchor, 0.8);
    inst.kept_quadratic_weight = 0.25;
    Vector<double> closed = solve_subproblem(inst);
    Vector<double> bis = generic_separable_update(inst);
    CHECK(closed.minCoeff() > 0.0);
    CHECK((closed - bis).lpNorm<Eigen::Infinity>() <= 1e-8);
    CHECK(optimality_residual(inst, closed) <= 1e-8);
  }
}

TEST_CASE("burg closed form matches bisection across random draws") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ua(0.1, 5.0), us(-1.0, 1.0), ual(0.1, 2.0),
      uq(0.0, 0.5), umu(0.0, 0.5);
  for (int i = 0; i < 200; ++i) {
    auto k = LegendreKernel<double>::burg(2, std::nullopt, uq(rng));
    auto pos = Regularizer<double>::l1_positive(umu(rng));
    Vector<double> anchor = vec2(ua(rng), ua(rng));
    Vector<double> s = vec2(us(rng), us(rng));
    auto inst = make_inst(k, pos, s, anchor, ual(rng));
    inst.kept_quadratic_weight = uq(rng);
    Vector<double> closed = solve_subproblem(inst);
    Vector<double> bis = generic_separable_update(inst);
    CHECK(closed.minCoeff() > 0.0);
    CHECK((closed - bis).lpNorm<Eigen::Infinity>() <=
          1e-8 * std::max(1.0, closed.lpNorm<Eigen::Infinity>()));
  }
}

TEST_CASE("quartic kernel mirror step") {
  auto k = LegendreKernel<double>::quartic(2, 1.0, 1.0, make_cube<double>(2, -2.0, 2.0));
  {
    // s = 0 leaves the point fixed
    Vector<double> x = vec2(0.7, -0.4);
    Vector<double> out = quartic_kernel_update(k, Vector<double>(Vector<double>::Zero(2)), x, 0.5);
    CHECK((out - x).norm() <= 1e-13);
  }
  {
    // grad w(x+) = (2, 0): radial cubic r^3 + r = 2 has root 1
    Vector<double> out = quartic_kernel_update(k, vec2(-2.0, 0.0), Vector<double>(Vector<double>::Zero(2)), 1.0);
    CHECK(out[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(out[1] == 0.0);
  }
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ub(0.2, 2.0), ux(-2.0, 2.0), us(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    auto kk = LegendreKernel<double>::quartic(2, ub(rng), ub(rng),
                                              make_cube<double>(2, -2.0, 2.0));
    Vector<double> x = vec2(ux(rng), ux(rng));
    Vector<double> s = vec2(us(rng), us(rng));
    double alpha = 0.1 + 0.4 * ub(rng);
    Vector<double> out = quartic_kernel_update(kk, s, x, alpha);
    Vector<double> v = grad_kernel(kk, x) - alpha * s;
    double lhs = out.norm() * (kk.beta() * out.squaredNorm() + kk.gamma());
    CHECK(std::abs(lhs - v.norm()) <= 1e-12 * std::max(1.0, v.norm()));
    CHECK((grad_kernel(kk, out) - v).norm() <= 1e-11 * std::max(1.0, v.norm()));
  }
  auto eu = LegendreKernel<double>::euclidean(2);
  CHECK_THROWS_AS(quartic_kernel_update(eu, Vector<double>(Vector<double>::Zero(2)),
                                        Vector<double>(Vector<double>::Zero(2)), 1.0),
                  UnsupportedCombination);
}

TEST_CASE("dispatch rejects unsupported combinations") {
  auto eu = LegendreKernel<double>::euclidean(2);
  auto qk = LegendreKernel<double>::quartic(2, 1.0, 1.0, make_cube<double>(2, -2.0, 2.0));
  auto bk = LegendreKernel<double>::burg(2);
  auto zero = Regularizer<double>::zero();
  auto l1 = Regularizer<double>::l1(1.0);

  auto inst = make_inst(eu, zero, Vector<double>::Zero(2), Vector<double>::Zero(2), 0.0);
  CHECK_THROWS_AS(solve_subproblem(inst), InvalidConfig);  // alpha not positive

  inst = make_inst(qk, l1, Vector<double>::Zero(2), Vector<double>::Zero(2), 1.0);
  CHECK_THROWS_AS(solve_subproblem(inst), UnsupportedCombination);

  std::vector<ComponentOracle<double>> comps;
  comps.push_back(quadratic_component(Matrix<double>::Identity(2, 2),
                                      Vector<double>::Zero(2), 0.0));
  inst = make_inst(qk, zero, Vector<double>::Zero(2), Vector<double>::Zero(2), 1.0);
  inst.components = &comps;
  inst.kept = {0};
  CHECK_THROWS_AS(solve_subproblem(inst), UnsupportedKeptComponent);

  inst = make_inst(bk, zero, Vector<double>::Ones(2), Vector<double>::Ones(2), 1.0);
  inst.components = &comps;
  inst.kept = {0};
  CHECK_THROWS_AS(solve_subproblem(inst), UnsupportedKeptComponent);

  // non-quadratic kept component in d > 1
  ComponentOracle<double> plain;
  plain.index = 0;
  plain.value = [](const Vector<double>& v) { return v.squaredNorm(); };
  plain.gradient = [](const Vector<double>& v) { return Vector<double>(2.0 * v); };
  plain.rel_smoothness = 2.0;
  std::vector<ComponentOracle<double>> comps2{plain};
  inst = make_inst(eu, zero, Vector<double>::Zero(2), Vector<double>::Zero(2), 1.0);
  inst.components = &comps2;
  inst.kept = {0};
  CHECK_THROWS_AS(solve_subproblem(inst), UnsupportedKeptComponent);

  // quadratic kept with a multi-dimensional non-plain regularizer
  inst = make_inst(eu, l1, Vector<double>::Zero(2), Vector<double>::Zero(2), 1.0);
  inst.components = &comps;
  inst.kept = {0};
  CHECK_THROWS_AS(solve_subproblem(inst), UnsupportedCombination);

  // generic fallback preconditions
  inst = make_inst(qk, zero, Vector<double>::Zero(2), Vector<double>::Zero(2), 1.0);
  CHECK_THROWS_AS(generic_separable_update(inst), UnsupportedCombination);
  auto ball = Regularizer<double>::l1(1.0, 2.0);
  inst = make_inst(eu, ball, Vector<double>::Zero(2), Vector<double>::Zero(2), 1.0);
  CHECK_THROWS_AS(generic_separable_update(inst), UnsupportedCombination);
  inst = make_inst(eu, zero, Vector<double>::Zero(2), Vector<double>::Zero(2), 1.0);
  inst.components = &comps;
  inst.kept = {0};
  CHECK_THROWS_AS(generic_separable_update(inst), UnsupportedCombination);
}
