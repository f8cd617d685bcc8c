#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "pliag/errors.hpp"
#include "pliag/kernels.hpp"
#include "pliag/problems.hpp"
#include "pliag/types.hpp"

namespace pliag {

// One iteration's inner problem:
//   min_x  h(x) + sum_{i in kept} f_i(x) + kqw ||x||^2 + <s, x> + (1/alpha) D_w(x, anchor)
template <class Scalar>
struct SubproblemInstance {
  const LegendreKernel<Scalar>* kernel{nullptr};
  const Regularizer<Scalar>* reg{nullptr};
  const std::vector<ComponentOracle<Scalar>>* components{nullptr};
  std::vector<int> kept;
  Scalar kept_quadratic_weight{0};
  Vector<Scalar> s;
  Vector<Scalar> anchor;
  Scalar alpha{0};
};

// ---------------------------------------------------------------------------
// closed forms
// ---------------------------------------------------------------------------

// Elastic-net coordinate update in the burg geometry with the quadratic term
// kept: positive root of
//   4 lam beta x u^2 + (lam mu x + lam gam x + 1 - 2 lam beta x^2) u - x = 0,
// evaluated through the cancellation-free branch of the quadratic formula.
template <class Scalar>
Scalar elastic_net_coordinate_update(Scalar lam, Scalar mu, Scalar gam, Scalar beta,
                                     Scalar x) {
  if (beta <= Scalar(1e-14)) throw DegenerateBeta("elastic_net_coordinate_update: beta ~ 0");
  if (lam <= Scalar(0) || x <= Scalar(0))
    throw InvalidData("elastic_net_coordinate_update: need lam > 0 and x > 0");
  Scalar B = lam * mu * x + lam * gam * x + Scalar(1) - Scalar(2) * lam * beta * x * x;
  Scalar disc = std::sqrt(B * B + Scalar(16) * lam * beta * x * x);
  if (B >= Scalar(0)) return Scalar(2) * x / (B + disc);
  return (disc - B) / (Scalar(8) * lam * beta * x);
}

namespace detail {

// Positive root of 2 lam (b1 + b2) x u^2 + (lam (mu + gam) x + 1 - 2 lam b2 x^2) u - x = 0,
// the stationarity of mu u + gam u + b1 u^2 + (1/lam) Dburg(u, x) + b2 (u - x)^2.
// b1 is the kept quadratic weight; b2 the kernel quad_coef divided by lam.
template <class Scalar>
Scalar burg_coordinate_root(Scalar lam, Scalar mu, Scalar gam, Scalar b1, Scalar b2,
                            Scalar x) {
  Scalar bsum = b1 + b2;
  if (bsum <= Scalar(1e-15)) {
    Scalar denom = Scalar(1) + lam * (mu + gam) * x;
    if (denom <= Scalar(1e-12))
      throw BracketFailure("burg coordinate update: subproblem unbounded below");
    return x / denom;
  }
  Scalar B = lam * (mu + gam) * x + Scalar(1) - Scalar(2) * lam * b2 * x * x;
  Scalar disc = std::sqrt(B * B + Scalar(8) * lam * bsum * x * x);
  if (B >= Scalar(0)) return Scalar(2) * x / (B + disc);
  return (disc - B) / (Scalar(4) * lam * bsum * x);
}

}  // namespace detail

// Mirror step for the quartic kernel with h = 0: grad w(x+) = grad w(x) - alpha s
// reduces to the radial cubic beta r^3 + gamma r = ||v||.
template <class Scalar>
Vector<Scalar> quartic_kernel_update(const LegendreKernel<Scalar>& k,
                                     const Vector<Scalar>& s, const Vector<Scalar>& x,
                                     Scalar alpha) {
  if (k.kind() != KernelKind::Quartic)
    throw UnsupportedCombination("quartic_kernel_update: kernel is not quartic");
  const Scalar beta = k.beta(), gamma = k.gamma();
  Vector<Scalar> v = grad_kernel(k, x) - alpha * s;
  Scalar c = v.norm();
  if (c == Scalar(0)) return Vector<Scalar>::Zero(x.size());
  // monotone cubic: Newton from an upper bound, polished to 1e-14
  Scalar r = std::max(std::cbrt(c / beta), c / gamma);
  for (int it = 0; it < 200; ++it) {
    Scalar p = beta * r * r * r + gamma * r - c;
    Scalar dp = Scalar(3) * beta * r * r + gamma;
    Scalar step = p / dp;
    r -= step;
    if (std::abs(step) <= Scalar(1e-14) * std::max(Scalar(1), r)) break;
  }
  return v / (beta * r * r + gamma);
}

namespace detail {

// Exact threshold for prox of lambda||.||_1 + indicator of the l1 ball:
// raise the soft threshold above t0 until the image lands on the sphere.
template <class Scalar>
Vector<Scalar> prox_l1_ball(const Vector<Scalar>& v, Scalar t0, Scalar radius) {
  Vector<Scalar> z = shrink(v, t0);
  if (z.template lpNorm<1>() <= radius) return z;
  std::vector<Scalar> a(size_t(v.size()));
  for (Index j = 0; j < v.size(); ++j) a[size_t(j)] = std::abs(v[j]);
  std::sort(a.begin(), a.end(), std::greater<Scalar>());
  Scalar cum = 0;
  Scalar t = t0;
  for (size_t m = 1; m <= a.size(); ++m) {
    cum += a[m - 1];
    Scalar cand = (cum - radius) / Scalar(m);
    Scalar next = m < a.size() ? a[m] : Scalar(0);
    if (cand >= next - Scalar(1e-15) && cand <= a[m - 1] + Scalar(1e-15)) {
      t = std::max(cand, t0);
      break;
    }
  }
  return shrink(v, t);
}

// 1-D convex minimize over [dlo, dhi] by bisection on the subgradient.
// smooth_grad covers every differentiable part; the kink weight enters as
// +/- hw depending on the sign of u (L1-type terms).
template <class Scalar>
Scalar scalar_bisection_min(const std::function<Scalar(Scalar)>& smooth_grad, Scalar hw,
                            bool kink_at_zero, Scalar dlo, Scalar dhi, Scalar anchor,
                            Scalar tol = Scalar(1e-12)) {
  auto G = [&](Scalar u) {
    Scalar g = smooth_grad(u);
    if (kink_at_zero) g += u >= Scalar(0) ? hw : -hw;
    return g;
  };
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  // boundary optima; a DomainViolation at dlo means dlo is an open barrier
  // edge (burg kept components throw there), never the minimizer
  if (dlo != -inf) {
    bool attainable = true;
    Scalar glo = 0;
    try {
      glo = smooth_grad(dlo) + (kink_at_zero ? (dlo >= Scalar(0) ? hw : -hw) : Scalar(0));
    } catch (const DomainViolation&) {
      attainable = false;
    }
    if (attainable && glo >= Scalar(0)) return dlo;
  }
  if (dhi != inf) {
    Scalar ghi = G(dhi);
    if (ghi <= Scalar(0)) return dhi;
  }
  // kink optimality at zero
  if (kink_at_zero && dlo < Scalar(0) && dhi > Scalar(0)) {
    Scalar g0 = smooth_grad(Scalar(0));
    if (g0 - hw <= Scalar(0) && g0 + hw >= Scalar(0)) return Scalar(0);
  }
  // bracket around the anchor; finite passed boundaries already have the
  // opposite sign, open sides expand geometrically
  Scalar scale = std::max(Scalar(1), std::abs(anchor));
  Scalar lo = anchor, hi = anchor;
  if (G(anchor) > Scalar(0)) {
    if (dlo > -inf && dlo != Scalar(0)) {
      lo = dlo;
    } else if (dlo == Scalar(0)) {
      // open positive domain: the kernel barrier forces G -> -inf near 0
      lo = anchor / Scalar(2);
      bool found = false;
      for (int i = 0; i < 2000 && lo > Scalar(0); ++i) {
        if (G(lo) <= Scalar(0)) {
          found = true;
          break;
        }
        lo /= Scalar(2);
      }
      if (!found) throw BracketFailure("scalar minimize: no sign change above 0");
    } else {
      Scalar step = scale;
      bool found = false;
      for (int i = 0; i < 200; ++i) {
        lo = anchor - step;
        if (G(lo) <= Scalar(0)) {
          found = true;
          break;
        }
        step *= Scalar(2);
      }
      if (!found) throw BracketFailure("scalar minimize: no sign change below anchor");
    }
  } else {
    if (dhi < inf) {
      hi = dhi;
    } else {
      Scalar step = scale;
      bool found = false;
      for (int i = 0; i < 200; ++i) {
        hi = anchor + step;
        if (G(hi) >= Scalar(0)) {
          found = true;
          break;
        }
        step *= Scalar(2);
      }
      if (!found) throw BracketFailure("scalar minimize: no sign change above anchor");
    }
  }
  for (int i = 0; i < 200; ++i) {
    Scalar mid = (lo + hi) / Scalar(2);
    if (G(mid) > Scalar(0))
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= tol * std::max(Scalar(1), std::max(std::abs(lo), std::abs(hi)))) break;
  }
  return (lo + hi) / Scalar(2);
}

}  // namespace detail

// Coordinate-wise bisection fallback; requires empty kept set and separable
// h and w. Shared reference path for validating the closed forms.
template <class Scalar>
Vector<Scalar> generic_separable_update(const SubproblemInstance<Scalar>& inst) {
  const auto& k = *inst.kernel;
  const auto& reg = *inst.reg;
  if (!inst.kept.empty())
    throw UnsupportedCombination("generic_separable_update: kept set must be empty");
  if (k.kind() == KernelKind::Quartic)
    throw UnsupportedCombination("generic_separable_update: quartic kernel is not separable");
  if (!reg.separable())
    throw UnsupportedCombination("generic_separable_update: h is not separable");

  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  const Scalar alpha = inst.alpha;
  const Scalar kqw = inst.kept_quadratic_weight;
  Vector<Scalar> out(inst.anchor.size());
  for (Index j = 0; j < inst.anchor.size(); ++j) {
    Scalar xj = inst.anchor[j];
    Scalar sj = inst.s[j];
    Scalar dlo = -inf, dhi = inf;
    if (k.kind() == KernelKind::Burg) dlo = Scalar(0);
    Scalar hw = 0;
    bool kink = false;
    Scalar linear_h = 0;
    switch (reg.kind()) {
      case RegKind::Zero:
        break;
      case RegKind::L1:
      case RegKind::Abs:
        hw = reg.weight();
        kink = true;
        break;
      case RegKind::L1Positive:
        dlo = std::max(dlo, Scalar(0));
        linear_h = reg.weight();
        break;
      case RegKind::IndicatorBox:
        dlo = std::max(dlo, reg.box()->lower[j]);
        dhi = std::min(dhi, reg.box()->upper[j]);
        break;
    }
    auto smooth_grad = [&, xj, sj](Scalar u) {
      Scalar g = sj + linear_h + Scalar(2) * kqw * u;
      if (k.kind() == KernelKind::Euclidean) {
        g += (u - xj) / alpha;
      } else {
        g += (-Scalar(1) / u + Scalar(1) / xj) / alpha +
             Scalar(2) * k.quad_coef() * (u - xj) / alpha;
      }
      return g;
    };
    Scalar anchor = k.kind() == KernelKind::Burg ? std::max(xj, Scalar(1e-8)) : xj;
    out[j] = detail::scalar_bisection_min<Scalar>(smooth_grad, hw, kink, dlo, dhi, anchor);
  }
  return out;
}

namespace detail {

template <class Scalar>
Vector<Scalar> solve_euclidean_prox(const SubproblemInstance<Scalar>& inst) {
  const auto& reg = *inst.reg;
  Vector<Scalar> v = inst.anchor - inst.alpha * inst.s;
  switch (reg.kind()) {
    case RegKind::Zero:
      return v;
    case RegKind::L1:
    case RegKind::Abs: {
      Scalar t = inst.alpha * reg.weight();
      if (reg.ball_radius()) return prox_l1_ball(v, t, *reg.ball_radius());
      return shrink(v, t);
    }
    case RegKind::L1Positive: {
      Scalar t = inst.alpha * reg.weight();
      return v.unaryExpr([t](Scalar a) { return std::max(a - t, Scalar(0)); });
    }
    case RegKind::IndicatorBox: {
      Vector<Scalar> out(v.size());
      for (Index j = 0; j < v.size(); ++j)
        out[j] = std::min(std::max(v[j], reg.box()->lower[j]), reg.box()->upper[j]);
      return out;
    }
  }
  throw UnsupportedCombination("euclidean prox: unknown regularizer");
}

// kept components all quadratic, h = 0 (or a 1-D box): solve
// (sum P_i + 2 kqw I + I/alpha) x = anchor/alpha - s - sum q_i
template <class Scalar>
Vector<Scalar> solve_euclidean_kept_quadratic(const SubproblemInstance<Scalar>& inst) {
  const Index d = inst.anchor.size();
  Matrix<Scalar> P = Matrix<Scalar>::Zero(d, d);
  Vector<Scalar> q = Vector<Scalar>::Zero(d);
  for (int i : inst.kept) {
    const auto& c = (*inst.components)[size_t(i)];
    P += c.quadratic->P;
    q += c.quadratic->q;
  }
  P.diagonal().array() += Scalar(2) * inst.kept_quadratic_weight;
  Matrix<Scalar> M = P;
  M.diagonal().array() += Scalar(1) / inst.alpha;
  Vector<Scalar> rhs = inst.anchor / inst.alpha - inst.s - q;
  Vector<Scalar> x = M.ldlt().solve(rhs);
  if (inst.reg->kind() == RegKind::IndicatorBox) {
    if (d != 1)
      throw UnsupportedCombination("kept quadratic with box supported in 1-D only");
    x[0] = std::min(std::max(x[0], inst.reg->box()->lower[0]), inst.reg->box()->upper[0]);
  }
  return x;
}

// 1-D kept components through their value/gradient oracles.
template <class Scalar>
Vector<Scalar> solve_scalar_kept(const SubproblemInstance<Scalar>& inst) {
  const auto& k = *inst.kernel;
  const auto& reg = *inst.reg;
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  Scalar xj = inst.anchor[0];
  Scalar dlo = k.kind() == KernelKind::Burg ? Scalar(0) : -inf;
  Scalar dhi = inf;
  Scalar hw = 0;
  bool kink = false;
  Scalar linear_h = 0;
  switch (reg.kind()) {
    case RegKind::Zero:
      break;
    case RegKind::L1:
    case RegKind::Abs:
      hw = reg.weight();
      kink = true;
      break;
    case RegKind::L1Positive:
      dlo = std::max(dlo, Scalar(0));
      linear_h = reg.weight();
      break;
    case RegKind::IndicatorBox:
      dlo = std::max(dlo, reg.box()->lower[0]);
      dhi = std::min(dhi, reg.box()->upper[0]);
      break;
  }
  auto smooth_grad = [&](Scalar u) {
    Vector<Scalar> p(1);
    p[0] = u;
    Scalar g = inst.s[0] + linear_h + Scalar(2) * inst.kept_quadratic_weight * u;
    for (int i : inst.kept) g += (*inst.components)[size_t(i)].gradient(p)[0];
    if (k.kind() == KernelKind::Euclidean) {
      g += (u - xj) / inst.alpha;
    } else if (k.kind() == KernelKind::Burg) {
      g += (-Scalar(1) / u + Scalar(1) / xj) / inst.alpha +
           Scalar(2) * k.quad_coef() * (u - xj) / inst.alpha;
    } else {
      Scalar gq = (k.beta() * u * u + k.gamma()) * u;
      Scalar gx = (k.beta() * xj * xj + k.gamma()) * xj;
      g += (gq - gx) / inst.alpha;
    }
    return g;
  };
  Scalar anchor = k.kind() == KernelKind::Burg ? std::max(xj, Scalar(1e-8)) : xj;
  Vector<Scalar> out(1);
  out[0] = scalar_bisection_min<Scalar>(smooth_grad, hw, kink, dlo, dhi, anchor);
  return out;
}

}  // namespace detail

// Registry dispatch keyed on (kernel kind, regularizer kind, kept class).
// Unsupported combinations fail loudly rather than fall back silently.
template <class Scalar>
Vector<Scalar> solve_subproblem(const SubproblemInstance<Scalar>& inst) {
  if (inst.alpha <= Scalar(0)) throw InvalidConfig("solve_subproblem: alpha must be > 0");
  const auto& k = *inst.kernel;
  const auto& reg = *inst.reg;
  const bool has_kept_components = !inst.kept.empty();

  switch (k.kind()) {
    case KernelKind::Euclidean: {
      if (!has_kept_components && inst.kept_quadratic_weight == Scalar(0))
        return detail::solve_euclidean_prox(inst);
      bool all_quadratic = true;
      for (int i : inst.kept)
        if (!(*inst.components)[size_t(i)].quadratic) all_quadratic = false;
      bool h_plain = reg.kind() == RegKind::Zero ||
                     (reg.kind() == RegKind::IndicatorBox && inst.anchor.size() == 1);
      if (all_quadratic && h_plain) return detail::solve_euclidean_kept_quadratic(inst);
      if (inst.anchor.size() == 1) return detail::solve_scalar_kept(inst);
      if (!all_quadratic)
        throw UnsupportedKeptComponent(
            "kept components must be quadratic or the problem 1-D");
      throw UnsupportedCombination("euclidean kept quadratic supports h = 0 or a 1-D box");
    }
    case KernelKind::Burg: {
      if (has_kept_components) {
        if (inst.anchor.size() == 1) return detail::solve_scalar_kept(inst);
        throw UnsupportedKeptComponent("burg kept components supported in 1-D only");
      }
      Scalar mu = 0;
      switch (reg.kind()) {
        case RegKind::Zero:
          break;
        case RegKind::L1:
        case RegKind::Abs:
        case RegKind::L1Positive:
          mu = reg.weight();
          break;
        case RegKind::IndicatorBox:
          return generic_separable_update(inst);
      }
      Scalar b1 = inst.kept_quadratic_weight;
      Scalar b2 = k.quad_coef() / inst.alpha;
      Vector<Scalar> out(inst.anchor.size());
      for (Index j = 0; j < inst.anchor.size(); ++j)
        out[j] = detail::burg_coordinate_root(inst.alpha, mu, inst.s[j], b1, b2,
                                              inst.anchor[j]);
      return out;
    }
    case KernelKind::Quartic: {
      if (has_kept_components || inst.kept_quadratic_weight != Scalar(0))
        throw UnsupportedKeptComponent("quartic kernel supports no kept components");
      if (reg.kind() != RegKind::Zero)
        throw UnsupportedCombination("quartic kernel supports h = 0 only");
      return quartic_kernel_update(k, inst.s, inst.anchor, inst.alpha);
    }
  }
  throw UnsupportedCombination("solve_subproblem: unknown kernel kind");
}

// inf-norm distance from the required dual vector to the subdifferential of h
// at x_plus; small values certify first-order optimality of the inner solve.
template <class Scalar>
Scalar optimality_residual(const SubproblemInstance<Scalar>& inst,
                           const Vector<Scalar>& x_plus) {
  const auto& k = *inst.kernel;
  const auto& reg = *inst.reg;
  Vector<Scalar> r = -(inst.s + (grad_kernel(k, x_plus) - grad_kernel(k, inst.anchor)) /
                                    inst.alpha);
  r -= Scalar(2) * inst.kept_quadratic_weight * x_plus;
  for (int i : inst.kept) r -= (*inst.components)[size_t(i)].gradient(x_plus);

  const Scalar tol = Scalar(1e-10) * std::max(Scalar(1), x_plus.template lpNorm<Eigen::Infinity>());
  Scalar lam = reg.weight();
  Scalar worst = 0;
  switch (reg.kind()) {
    case RegKind::Zero:
      return r.template lpNorm<Eigen::Infinity>();
    case RegKind::L1:
    case RegKind::Abs: {
      Scalar nu = 0;
      if (reg.ball_radius() &&
          x_plus.template lpNorm<1>() >= *reg.ball_radius() - Scalar(1e-9)) {
        for (Index j = 0; j < r.size(); ++j)
          if (std::abs(x_plus[j]) > tol) nu = std::max(nu, std::abs(r[j]) - lam);
        nu = std::max(nu, Scalar(0));
      }
      for (Index j = 0; j < r.size(); ++j) {
        if (std::abs(x_plus[j]) > tol)
          worst = std::max(worst, std::abs(r[j] - (lam + nu) * (x_plus[j] > Scalar(0)
                                                                    ? Scalar(1)
                                                                    : Scalar(-1))));
        else
          worst = std::max(worst, std::max(std::abs(r[j]) - (lam + nu), Scalar(0)));
      }
      return worst;
    }
    case RegKind::L1Positive: {
      for (Index j = 0; j < r.size(); ++j) {
        if (x_plus[j] > tol)
          worst = std::max(worst, std::abs(r[j] - lam));
        else
          worst = std::max(worst, std::max(r[j] - lam, Scalar(0)));
      }
      return worst;
    }
    case RegKind::IndicatorBox: {
      for (Index j = 0; j < r.size(); ++j) {
        Scalar lo = reg.box()->lower[j], hi = reg.box()->upper[j];
        if (x_plus[j] >= hi - tol)
          worst = std::max(worst, std::max(-r[j], Scalar(0)));
        else if (x_plus[j] <= lo + tol)
          worst = std::max(worst, std::max(r[j], Scalar(0)));
        else
          worst = std::max(worst, std::abs(r[j]));
      }
      return worst;
    }
  }
  throw UnsupportedCombination("optimality_residual: unknown regularizer");
}

}  // namespace pliag
