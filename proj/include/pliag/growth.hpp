#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "pliag/errors.hpp"
#include "pliag/kernels.hpp"
#include "pliag/sampling.hpp"
#include "pliag/types.hpp"

namespace pliag {

enum class GrowthMode { Quadratic, Bregman, Holder };

// Region on which a growth constant was estimated / is declared valid.
template <class Scalar>
struct SampleRegion {
  enum class Kind { Cube, L1Ball, PositiveBox } kind{Kind::Cube};
  Vector<Scalar> lower, upper;  // Cube / PositiveBox
  Scalar radius{0};             // L1Ball
  Index dim{0};

  PointSampler<Scalar> sampler(std::uint64_t seed) const {
    switch (kind) {
      case Kind::L1Ball:
        return l1_ball_sampler<Scalar>(dim, radius, seed);
      case Kind::Cube:
      case Kind::PositiveBox:
        return box_sampler<Scalar>(lower, upper, seed);
    }
    throw InvalidData("SampleRegion: unknown kind");
  }

  static SampleRegion cube(Index d, Scalar lo, Scalar hi) {
    SampleRegion r;
    r.kind = Kind::Cube;
    r.lower = Vector<Scalar>::Constant(d, lo);
    r.upper = Vector<Scalar>::Constant(d, hi);
    r.dim = d;
    return r;
  }
  static SampleRegion box(Vector<Scalar> lo, Vector<Scalar> hi) {
    SampleRegion r;
    r.kind = Kind::Cube;
    r.dim = lo.size();
    r.lower = std::move(lo);
    r.upper = std::move(hi);
    return r;
  }
  static SampleRegion l1_ball(Index d, Scalar radius) {
    SampleRegion r;
    r.kind = Kind::L1Ball;
    r.radius = radius;
    r.dim = d;
    return r;
  }
};

// Declared growth of the objective gap away from the solution set:
//   Quadratic  Phi - Phi* >= mu/2 * d^2(x, X)
//   Bregman    Phi - Phi* >= mu * inf_z D_w(z, x)
//   Holder     Phi - Phi* >= mu/2 * d(x, X)^(2 theta)
template <class Scalar>
struct GrowthRecord {
  GrowthMode mode{GrowthMode::Quadratic};
  Scalar mu{0};
  Scalar theta{1};
  SampleRegion<Scalar> region;
};

template <class Scalar>
Scalar distance_to_set(const std::vector<Vector<Scalar>>& X, const Vector<Scalar>& x) {
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (const auto& z : X) best = std::min(best, (x - z).norm());
  return best;
}

template <class Scalar>
Scalar min_bregman_to_set(const LegendreKernel<Scalar>& k,
                          const std::vector<Vector<Scalar>>& X, const Vector<Scalar>& x) {
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (const auto& z : X) best = std::min(best, bregman(k, z, x));
  return best;
}

namespace detail {

// Shared scaffolding of the sampled growth estimators: collects the min of
// ratio(y) over usable samples and applies the 0.9 safety factor.
template <class Scalar, class Ratio>
Scalar sampled_growth_min(PointSampler<Scalar> sampler, int n, Ratio ratio) {
  if (n < 1) throw InvalidData("growth estimate: need n >= 1");
  Scalar best = std::numeric_limits<Scalar>::infinity();
  int usable = 0;
  for (int i = 0; i < n; ++i) {
    Vector<Scalar> y = sampler();
    Scalar r;
    if (!ratio(y, r)) continue;
    best = std::min(best, r);
    ++usable;
  }
  if (usable == 0)
    throw DegenerateSample("growth estimate: no sample with usable gap/denominator");
  return Scalar(0.9) * best;
}

}  // namespace detail

// mu-hat for the quadratic growth inequality, from sampled ratios
// 2 (Phi(y) - Phi*) / d^2(y, X) with a 0.9 safety factor.
template <class Scalar>
Scalar quadratic_growth_estimate_fn(const std::function<Scalar(const Vector<Scalar>&)>& phi,
                                    Scalar phi_star, const std::vector<Vector<Scalar>>& X,
                                    PointSampler<Scalar> sampler, int n) {
  if (X.empty()) throw UnknownSolutionSet("quadratic_growth_estimate: empty X");
  return detail::sampled_growth_min<Scalar>(
      std::move(sampler), n, [&](const Vector<Scalar>& y, Scalar& out) {
        Scalar d2 = distance_to_set(X, y);
        d2 *= d2;
        if (d2 < Scalar(1e-14)) return false;
        Scalar gap = phi(y) - phi_star;
        if (!std::isfinite(gap)) return false;
        out = Scalar(2) * gap / d2;
        return true;
      });
}

// mu-hat for the Bregman distance growth inequality, from sampled ratios
// (Phi(y) - Phi*) / inf_z D_w(z, y) with a 0.9 safety factor.
template <class Scalar>
Scalar bdg_estimate_fn(const std::function<Scalar(const Vector<Scalar>&)>& phi,
                       Scalar phi_star, const std::vector<Vector<Scalar>>& X,
                       const LegendreKernel<Scalar>& kernel, PointSampler<Scalar> sampler,
                       int n) {
  if (X.empty()) throw UnknownSolutionSet("bdg_estimate: empty X");
  return detail::sampled_growth_min<Scalar>(
      std::move(sampler), n, [&](const Vector<Scalar>& y, Scalar& out) {
        if (!kernel.in_domain_interior(y)) return false;
        Scalar den = min_bregman_to_set(kernel, X, y);
        if (den < Scalar(1e-14)) return false;
        Scalar gap = phi(y) - phi_star;
        if (!std::isfinite(gap)) return false;
        out = gap / den;
        return true;
      });
}

}  // namespace pliag
