#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pliag/kernels.hpp"
#include "pliag/sampling.hpp"

using namespace pliag;

namespace {

Vector<double> vec2(double a, double b) {
  Vector<double> v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("euclidean kernel evaluations") {
  auto k = LegendreKernel<double>::euclidean(2);
  CHECK(eval_kernel(k, vec2(3, 4)) == doctest::Approx(12.5).epsilon(1e-15));
  Vector<double> g = grad_kernel(k, vec2(3, 4));
  CHECK(g[0] == 3.0);
  CHECK(g[1] == 4.0);
  CHECK(bregman(k, vec2(1, 2), vec2(0, 0)) == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("burg kernel evaluations") {
  auto k = LegendreKernel<double>::burg(2);
  CHECK(eval_kernel(k, vec2(1, 1)) == doctest::Approx(0.0));
  Vector<double> g = grad_kernel(k, vec2(2, 4));
  CHECK(g[0] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(g[1] == doctest::Approx(-0.25).epsilon(1e-15));

  auto k1 = LegendreKernel<double>::burg(1);
  Vector<double> y(1), x(1);
  y << 2.0;
  x << 1.0;
  CHECK(bregman(k1, y, x) == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-14));

  CHECK_THROWS_AS(eval_kernel(k, vec2(-1, 1)), DomainViolation);
  CHECK_THROWS_AS(grad_kernel(k, vec2(0, 1)), DomainViolation);
}

TEST_CASE("quartic kernel evaluations") {
  auto k = LegendreKernel<double>::quartic(2, 1.0, 1.0);
  CHECK(eval_kernel(k, vec2(1, 0)) == doctest::Approx(0.75).epsilon(1e-15));
  Vector<double> g = grad_kernel(k, vec2(1, 0));
  CHECK(g[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(g[1] == doctest::Approx(0.0));
  CHECK(bregman(k, vec2(1, 0), vec2(0, 0)) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("bregman distances are nonnegative and vanish only at y = x") {
  auto quartic = LegendreKernel<double>::quartic(3, 0.7, 1.3);
  auto burg = LegendreKernel<double>::burg(3);
  auto pts_q = cube_sampler<double>(3, -4.0, 4.0, 11);
  auto pts_b = cube_sampler<double>(3, 0.2, 5.0, 12);
  for (int i = 0; i < 500; ++i) {
    Vector<double> x = pts_q();
    Vector<double> y = pts_q();
    CHECK(bregman(quartic, y, x) >= 0.0);
    CHECK(bregman(quartic, x, x) == doctest::Approx(0.0));
    Vector<double> u = pts_b();
    Vector<double> v = pts_b();
    CHECK(bregman(burg, v, u) >= 0.0);
    CHECK(bregman(burg, u, u) == doctest::Approx(0.0));
  }
}

TEST_CASE("delay amplification factor") {
  auto eu = LegendreKernel<double>::euclidean(2);
  CHECK(ell(eu, 3) == 3.0);
  CHECK(ell(eu, 1) == 1.0);

  auto k = LegendreKernel<double>::euclidean(2);
  k.set_moduli(1.0, 4.0);
  CHECK(ell(k, 1) == 1.0);

  Vector<double> lo = Vector<double>::Constant(2, 0.5);
  Vector<double> hi = Vector<double>::Constant(2, 1.0);
  auto burg = LegendreKernel<double>::burg(2, Box<double>{lo, hi});
  burg.set_moduli(1.0, 4.0);
  CHECK(ell(burg, 2) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(ell(burg, 1) == 1.0);
  double prev = 1.0;
  for (int j = 2; j <= 12; ++j) {
    CHECK(ell(burg, j) >= prev);
    prev = ell(burg, j);
  }

  auto naked = LegendreKernel<double>::burg(2);
  CHECK_THROWS_AS(ell(naked, 2), MissingModuli);
  CHECK_THROWS_AS(ell(eu, 0), InvalidData);
}

TEST_CASE("three point identity holds for all kernels") {
  auto eu = LegendreKernel<double>::euclidean(3);
  auto burg = LegendreKernel<double>::burg(3);
  auto quartic = LegendreKernel<double>::quartic(3, 1.0, 1.0);
  auto pts = cube_sampler<double>(3, -5.0, 5.0, 21);
  auto pos = cube_sampler<double>(3, 0.1, 6.0, 22);
  for (int i = 0; i < 1000; ++i) {
    Vector<double> x = pts(), y = pts(), z = pts();
    CHECK(three_point_residual(eu, x, y, z) <= 1e-12 * (1 + x.norm() + y.norm() + z.norm()));
    CHECK(three_point_residual(quartic, x, y, z) <= 1e-9);
    Vector<double> u = pos(), v = pos(), w = pos();
    CHECK(three_point_residual(burg, u, v, w) <= 1e-9);
  }
  Vector<double> ones = Vector<double>::Ones(3);
  CHECK(three_point_residual(burg, ones, ones, ones) == doctest::Approx(0.0));
}

TEST_CASE("kernel gradients match finite differences") {
  auto eu = LegendreKernel<double>::euclidean(2);
  auto burg = LegendreKernel<double>::burg(2);
  auto quartic = LegendreKernel<double>::quartic(2, 1.0, 1.0);
  auto pts = cube_sampler<double>(2, -3.0, 3.0, 31);
  auto pos = cube_sampler<double>(2, 0.3, 4.0, 32);
  const double h = 1e-6;
  auto check_fd = [&](const LegendreKernel<double>& k, const Vector<double>& x) {
    Vector<double> g = grad_kernel(k, x);
    for (Index j = 0; j < x.size(); ++j) {
      Vector<double> xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      double fd = (eval_kernel(k, xp) - eval_kernel(k, xm)) / (2 * h);
      CHECK(std::abs(fd - g[j]) / std::max(1.0, std::abs(g[j])) <= 1e-6);
    }
  };
  for (int i = 0; i < 200; ++i) {
    check_fd(eu, pts());
    check_fd(quartic, pts());
    check_fd(burg, pos());
  }
}

TEST_CASE("symmetry ratio of the euclidean kernel is one") {
  auto eu = LegendreKernel<double>::euclidean(2);
  double r = symmetry_ratio_min(eu, pair_sampler(cube_sampler<double>(2, -5.0, 5.0, 41)), 200);
  CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("symmetry ratio rejects coincident pairs") {
  auto quartic = LegendreKernel<double>::quartic(2, 1.0, 1.0);
  Vector<double> same = vec2(1, 1);
  PairSampler<double> degenerate = [same]() { return std::make_pair(same, same); };
  CHECK_THROWS_AS(symmetry_ratio_min(quartic, degenerate, 3), DegeneratePair);
}

TEST_CASE("quartic bregman closed form matches the definition") {
  auto k = LegendreKernel<double>::quartic(2, 1.7, 0.4);
  auto pts = cube_sampler<double>(2, -3.0, 3.0, 51);
  for (int i = 0; i < 300; ++i) {
    Vector<double> y = pts(), x = pts();
    double direct = eval_kernel(k, y) - eval_kernel(k, x) - grad_kernel(k, x).dot(y - x);
    CHECK(bregman(k, y, x) ==
          doctest::Approx(direct).epsilon(1e-9).scale(std::max(1.0, std::abs(direct))));
  }
}

TEST_CASE("moduli envelope on the declared box") {
  Vector<double> lo = Vector<double>::Constant(2, 0.5);
  Vector<double> hi = Vector<double>::Constant(2, 4.0);
  auto burg = LegendreKernel<double>::burg(2, Box<double>{lo, hi});
  REQUIRE(burg.moduli().has_value());
  CHECK(burg.moduli()->mu_w == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
  CHECK(burg.moduli()->L_w == doctest::Approx(4.0).epsilon(1e-15));

  auto quartic =
      LegendreKernel<double>::quartic(2, 1.0, 1.0, make_cube<double>(2, -2.0, 2.0));
  REQUIRE(quartic.moduli().has_value());
  CHECK(quartic.moduli()->mu_w == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(quartic.moduli()->L_w == doctest::Approx(25.0).epsilon(1e-15));  // 3*1*8 + 1

  auto in_box = box_sampler<double>(lo, hi, 61);
  for (int i = 0; i < 400; ++i) {
    Vector<double> x = in_box(), y = in_box();
    double d2 = (y - x).squaredNorm();
    double D = bregman(burg, y, x);
    CHECK(D >= 0.5 * burg.moduli()->mu_w * d2 - 1e-9 * std::max(1.0, D));
    CHECK(D <= 0.5 * burg.moduli()->L_w * d2 + 1e-9 * std::max(1.0, D));
  }
}
