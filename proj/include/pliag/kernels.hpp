#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <utility>

#include "pliag/errors.hpp"
#include "pliag/sampling.hpp"
#include "pliag/types.hpp"

namespace pliag {

enum class KernelKind { Euclidean, Burg, Quartic };

template <class Scalar>
struct Box {
  Vector<Scalar> lower;
  Vector<Scalar> upper;

  bool contains(const Vector<Scalar>& x, Scalar margin = Scalar(0)) const {
    if (x.size() != lower.size()) return false;
    for (Index j = 0; j < x.size(); ++j)
      if (x[j] < lower[j] - margin || x[j] > upper[j] + margin) return false;
    return true;
  }
};

template <class Scalar>
Box<Scalar> make_cube(Index dim, Scalar lo, Scalar hi) {
  return Box<Scalar>{Vector<Scalar>::Constant(dim, lo), Vector<Scalar>::Constant(dim, hi)};
}

// Relative strong convexity / smoothness moduli of the kernel on its box:
// mu_w * I <= Hess w <= L_w * I there. These feed the delay amplification l(k).
template <class Scalar>
struct KernelModuli {
  Scalar mu_w;
  Scalar L_w;
};

// Legendre kernel w generating the Bregman distance D_w(y, x).
// Supported kinds:
//   euclidean     w(x) = 1/2 ||x||^2
//   burg          w(x) = -sum_j log x_j (+ sigma ||x||^2), dom w = positive orthant
//   quartic(b,g)  w(x) = b/4 ||x||^4 + g/2 ||x||^2
// The burg quadratic coefficient sigma represents the augmented kernel used by
// the elastic-net formulation (quadratic term folded into the geometry).
template <class Scalar>
class LegendreKernel {
 public:
  static LegendreKernel euclidean(Index dim) {
    LegendreKernel k;
    k.kind_ = KernelKind::Euclidean;
    k.dim_ = dim;
    k.moduli_ = KernelModuli<Scalar>{Scalar(1), Scalar(1)};
    return k;
  }

  // Moduli for burg exist only on a positive box: 1/u_max^2 <= 1/x_j^2 <= 1/l_min^2.
  static LegendreKernel burg(Index dim, std::optional<Box<Scalar>> box = {},
                             Scalar quad_coef = Scalar(0)) {
    LegendreKernel k;
    k.kind_ = KernelKind::Burg;
    k.dim_ = dim;
    k.quad_coef_ = quad_coef;
    if (box) {
      if (box->lower.minCoeff() <= Scalar(0))
        throw InvalidData("burg kernel box must have strictly positive lower bounds");
      Scalar u = box->upper.maxCoeff();
      Scalar l = box->lower.minCoeff();
      k.moduli_ = KernelModuli<Scalar>{Scalar(1) / (u * u) + Scalar(2) * quad_coef,
                                       Scalar(1) / (l * l) + Scalar(2) * quad_coef};
      k.box_ = std::move(box);
    }
    return k;
  }

  static LegendreKernel quartic(Index dim, Scalar beta, Scalar gamma,
                                std::optional<Box<Scalar>> box = {}) {
    if (beta <= Scalar(0) || gamma <= Scalar(0))
      throw InvalidData("quartic kernel needs beta > 0 and gamma > 0");
    LegendreKernel k;
    k.kind_ = KernelKind::Quartic;
    k.dim_ = dim;
    k.beta_ = beta;
    k.gamma_ = gamma;
    if (box) {
      // Hess w = beta(||x||^2 I + 2 x x^T) + gamma I, so on ||x|| <= r the
      // spectrum sits in [gamma, 3 beta r^2 + gamma].
      Scalar r2 = 0;
      for (Index j = 0; j < dim; ++j) {
        Scalar m = std::max(std::abs(box->lower[j]), std::abs(box->upper[j]));
        r2 += m * m;
      }
      k.moduli_ = KernelModuli<Scalar>{gamma, Scalar(3) * beta * r2 + gamma};
      k.box_ = std::move(box);
    }
    return k;
  }

  KernelKind kind() const { return kind_; }
  Index dim() const { return dim_; }
  Scalar beta() const { return beta_; }
  Scalar gamma() const { return gamma_; }
  Scalar quad_coef() const { return quad_coef_; }
  const std::optional<KernelModuli<Scalar>>& moduli() const { return moduli_; }
  const std::optional<Box<Scalar>>& box() const { return box_; }
  Scalar domain_margin() const { return dom_margin_; }

  void set_moduli(Scalar mu_w, Scalar L_w) {
    if (mu_w <= Scalar(0) || L_w < mu_w) throw InvalidData("moduli need 0 < mu_w <= L_w");
    moduli_ = KernelModuli<Scalar>{mu_w, L_w};
  }

  bool in_domain_interior(const Vector<Scalar>& x) const {
    if (x.size() != dim_) return false;
    if (kind_ == KernelKind::Burg) return x.minCoeff() > dom_margin_;
    return true;
  }

 private:
  KernelKind kind_{KernelKind::Euclidean};
  Index dim_{0};
  Scalar beta_{1}, gamma_{1};
  Scalar quad_coef_{0};
  Scalar dom_margin_{Scalar(1e-12)};
  std::optional<KernelModuli<Scalar>> moduli_;
  std::optional<Box<Scalar>> box_;
};

namespace detail {
template <class Scalar>
void check_domain(const LegendreKernel<Scalar>& k, const Vector<Scalar>& x,
                  const char* where) {
  if (x.size() != k.dim())
    throw DomainViolation(std::string(where) + ": dimension mismatch");
  if (!k.in_domain_interior(x))
    throw DomainViolation(std::string(where) + ": point outside kernel domain interior");
}
}  // namespace detail

template <class Scalar>
Scalar eval_kernel(const LegendreKernel<Scalar>& k, const Vector<Scalar>& x) {
  detail::check_domain(k, x, "eval_kernel");
  switch (k.kind()) {
    case KernelKind::Euclidean:
      return Scalar(0.5) * x.squaredNorm();
    case KernelKind::Burg:
      return -x.array().log().sum() + k.quad_coef() * x.squaredNorm();
    case KernelKind::Quartic: {
      Scalar n2 = x.squaredNorm();
      return k.beta() / Scalar(4) * n2 * n2 + k.gamma() / Scalar(2) * n2;
    }
  }
  throw InvalidData("eval_kernel: unknown kind");
}

template <class Scalar>
Vector<Scalar> grad_kernel(const LegendreKernel<Scalar>& k, const Vector<Scalar>& x) {
  detail::check_domain(k, x, "grad_kernel");
  switch (k.kind()) {
    case KernelKind::Euclidean:
      return x;
    case KernelKind::Burg:
      return (-x.array().inverse() + Scalar(2) * k.quad_coef() * x.array()).matrix();
    case KernelKind::Quartic:
      return (k.beta() * x.squaredNorm() + k.gamma()) * x;
  }
  throw InvalidData("grad_kernel: unknown kind");
}

// D_w(y, x) = w(y) - w(x) - <grad w(x), y - x>, evaluated through forms that
// are nonnegative term by term so rounding cannot produce negative distances.
template <class Scalar>
Scalar bregman(const LegendreKernel<Scalar>& k, const Vector<Scalar>& y,
               const Vector<Scalar>& x) {
  detail::check_domain(k, x, "bregman(x)");
  detail::check_domain(k, y, "bregman(y)");
  switch (k.kind()) {
    case KernelKind::Euclidean:
      return Scalar(0.5) * (y - x).squaredNorm();
    case KernelKind::Burg: {
      Scalar total = 0;
      for (Index j = 0; j < x.size(); ++j) {
        Scalar u = (y[j] - x[j]) / x[j];
        Scalar term = u - std::log1p(u);
        if (term < Scalar(0)) term = 0;  // rounding guard; summand >= 0 analytically
        total += term;
      }
      return total + k.quad_coef() * (y - x).squaredNorm();
    }
    case KernelKind::Quartic: {
      // b/4 (||y||^2 - ||x||^2)^2 + 1/2 (g + b ||x||^2) ||y - x||^2
      Scalar ny = y.squaredNorm(), nx = x.squaredNorm();
      Scalar diff = ny - nx;
      return k.beta() / Scalar(4) * diff * diff +
             Scalar(0.5) * (k.gamma() + k.beta() * nx) * (y - x).squaredNorm();
    }
  }
  throw InvalidData("bregman: unknown kind");
}

// Delay amplification l(j): l(1) = 1 always; euclidean l(j) = j; otherwise
// l(j) = j * L_w / mu_w using the kernel moduli on its declared box.
template <class Scalar>
Scalar ell(const LegendreKernel<Scalar>& k, int j) {
  if (j < 1) throw InvalidData("ell: argument must be >= 1");
  if (j == 1) return Scalar(1);
  if (k.kind() == KernelKind::Euclidean) return Scalar(j);
  if (!k.moduli())
    throw MissingModuli("ell: non-euclidean kernel without moduli (declare a box)");
  return Scalar(j) * k.moduli()->L_w / k.moduli()->mu_w;
}

template <class Scalar>
std::function<Scalar(int)> ell_fn(const LegendreKernel<Scalar>& k) {
  return [k](int j) { return ell(k, j); };
}

template <class Scalar>
std::function<Scalar(int)> identity_ell() {
  return [](int j) { return Scalar(j); };
}

// |D(x,z) - D(x,y) - D(y,z) - <grad w(y) - grad w(z), x - y>|; the three-point
// identity makes this zero up to rounding for any Legendre kernel.
template <class Scalar>
Scalar three_point_residual(const LegendreKernel<Scalar>& k, const Vector<Scalar>& x,
                            const Vector<Scalar>& y, const Vector<Scalar>& z) {
  Scalar lhs = bregman(k, x, z) - bregman(k, x, y) - bregman(k, y, z);
  Scalar rhs = (grad_kernel(k, y) - grad_kernel(k, z)).dot(x - y);
  return std::abs(lhs - rhs);
}

// min over sampled pairs of D_w(x, y) / D_w(y, x); lower-bounds the kernel's
// symmetry coefficient on the sampled region.
template <class Scalar>
Scalar symmetry_ratio_min(const LegendreKernel<Scalar>& k, PairSampler<Scalar> pairs,
                          int n) {
  if (n < 1) throw InvalidData("symmetry_ratio_min: need n >= 1");
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (int i = 0; i < n; ++i) {
    auto [x, y] = pairs();
    Scalar num = bregman(k, x, y);
    Scalar den = bregman(k, y, x);
    if (den <= Scalar(0) || num <= Scalar(0)) {
      if ((x - y).norm() <= Scalar(1e-14)) throw DegeneratePair("symmetry_ratio_min: x == y");
      continue;  // distance underflow; pair carries no information
    }
    best = std::min(best, num / den);
  }
  if (!std::isfinite(best))
    throw DegeneratePair("symmetry_ratio_min: no informative pair sampled");
  return best;
}

// Construction record for configuration-driven kernels.
struct KernelConfig {
  std::string name;  // euclidean | burg | quartic
  Index dimension{0};
  double beta{1.0};
  double gamma{1.0};
  std::optional<double> box_lower;
  std::optional<double> box_upper;
};

template <class Scalar>
LegendreKernel<Scalar> kernel_from_config(const KernelConfig& cfg) {
  std::optional<Box<Scalar>> box;
  if (cfg.box_lower && cfg.box_upper)
    box = make_cube<Scalar>(cfg.dimension, Scalar(*cfg.box_lower), Scalar(*cfg.box_upper));
  if (cfg.name == "euclidean") return LegendreKernel<Scalar>::euclidean(cfg.dimension);
  if (cfg.name == "burg") return LegendreKernel<Scalar>::burg(cfg.dimension, box);
  if (cfg.name == "quartic")
    return LegendreKernel<Scalar>::quartic(cfg.dimension, Scalar(cfg.beta),
                                           Scalar(cfg.gamma), box);
  throw InvalidData("kernel_from_config: unknown kernel name '" + cfg.name + "'");
}

}  // namespace pliag
