#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pliag/errors.hpp"
#include "pliag/growth.hpp"
#include "pliag/kernels.hpp"
#include "pliag/types.hpp"

namespace pliag {

// Soft threshold: sign(s) * max(|s| - mu, 0), applied coordinate-wise.
template <class Scalar>
Scalar shrink(Scalar s, Scalar mu) {
  Scalar m = std::abs(s) - mu;
  if (m <= Scalar(0)) return Scalar(0);
  return s > Scalar(0) ? m : -m;
}

template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> shrink(
    const Eigen::MatrixBase<Derived>& s, typename Derived::Scalar mu) {
  using Scalar = typename Derived::Scalar;
  Vector<Scalar> out(s.size());
  for (Index j = 0; j < s.size(); ++j) out[j] = shrink<Scalar>(s[j], mu);
  return out;
}

enum class RegKind { Zero, L1, L1Positive, IndicatorBox, Abs };

// Prox-friendly regularizer h. L1 optionally carries an l1-ball indicator
// (the constrained lasso regularizer); L1Positive adds the positivity
// indicator used by the burg geometry.
template <class Scalar>
class Regularizer {
 public:
  static Regularizer zero() { return Regularizer{}; }

  static Regularizer l1(Scalar weight, std::optional<Scalar> ball_radius = {}) {
    if (weight < Scalar(0)) throw InvalidData("l1 weight must be >= 0");
    if (ball_radius && *ball_radius <= Scalar(0))
      throw InvalidRadius("l1 ball radius must be positive");
    Regularizer r;
    r.kind_ = RegKind::L1;
    r.weight_ = weight;
    r.ball_radius_ = ball_radius;
    return r;
  }

  static Regularizer l1_positive(Scalar weight) {
    if (weight < Scalar(0)) throw InvalidData("l1 weight must be >= 0");
    Regularizer r;
    r.kind_ = RegKind::L1Positive;
    r.weight_ = weight;
    return r;
  }

  static Regularizer indicator_box(Box<Scalar> box) {
    Regularizer r;
    r.kind_ = RegKind::IndicatorBox;
    r.box_ = std::move(box);
    return r;
  }

  static Regularizer abs() {
    Regularizer r;
    r.kind_ = RegKind::Abs;
    r.weight_ = Scalar(1);
    return r;
  }

  RegKind kind() const { return kind_; }
  Scalar weight() const { return weight_; }
  const std::optional<Scalar>& ball_radius() const { return ball_radius_; }
  const std::optional<Box<Scalar>>& box() const { return box_; }
  bool separable() const { return kind_ != RegKind::L1 || !ball_radius_; }

  Scalar value(const Vector<Scalar>& x) const {
    constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();
    switch (kind_) {
      case RegKind::Zero:
        return Scalar(0);
      case RegKind::Abs:
      case RegKind::L1: {
        Scalar n1 = x.template lpNorm<1>();
        if (ball_radius_ && n1 > *ball_radius_ * (Scalar(1) + Scalar(1e-12)) + Scalar(1e-12))
          return inf;
        return weight_ * n1;
      }
      case RegKind::L1Positive:
        if (x.minCoeff() < Scalar(0)) return inf;
        return weight_ * x.sum();
      case RegKind::IndicatorBox:
        return box_->contains(x, Scalar(1e-12)) ? Scalar(0) : inf;
    }
    throw InvalidData("Regularizer::value: unknown kind");
  }

 private:
  RegKind kind_{RegKind::Zero};
  Scalar weight_{0};
  std::optional<Scalar> ball_radius_;
  std::optional<Box<Scalar>> box_;
};

// 1/2 x^T P x + q^T x + c; advertised by components that admit a closed-form
// kept-term solve.
template <class Scalar>
struct QuadraticForm {
  Matrix<Scalar> P;
  Vector<Scalar> q;
  Scalar c{0};
};

template <class Scalar>
struct ComponentOracle {
  int index{0};
  std::function<Scalar(const Vector<Scalar>&)> value;
  std::function<Vector<Scalar>(const Vector<Scalar>&)> gradient;
  Scalar rel_smoothness{0};  // L_n with L_n * w - f_n convex
  std::optional<QuadraticForm<Scalar>> quadratic;
};

template <class Scalar>
struct ProblemSpec {
  std::string name;
  std::vector<ComponentOracle<Scalar>> components;
  Regularizer<Scalar> reg = Regularizer<Scalar>::zero();
  LegendreKernel<Scalar> kernel = LegendreKernel<Scalar>::euclidean(0);
  // Quadratic term kept exact in every subproblem (elastic-net beta ||x||^2);
  // it is matched by the kernel's quad_coef so relative smoothness of the
  // aggregated components is unchanged.
  Scalar kept_quadratic_weight{0};
  std::optional<std::vector<Vector<Scalar>>> solutions;  // X, when known
  std::optional<Scalar> optimal_value;                   // Phi*
  std::optional<GrowthRecord<Scalar>> growth;

  Index dim() const { return kernel.dim(); }
  int num_components() const { return int(components.size()); }

  Scalar smooth_value(const Vector<Scalar>& x) const {
    Scalar s = kept_quadratic_weight * x.squaredNorm();
    for (const auto& c : components) s += c.value(x);
    return s;
  }

  Vector<Scalar> smooth_gradient(const Vector<Scalar>& x) const {
    Vector<Scalar> g = Scalar(2) * kept_quadratic_weight * x;
    for (const auto& c : components) g += c.gradient(x);
    return g;
  }

  // Phi(x) = sum_n f_n(x) + kept quadratic + h(x); +inf outside dom h.
  Scalar objective(const Vector<Scalar>& x) const {
    if (!kernel.in_domain_interior(x))
      throw DomainViolation("objective: x outside kernel domain");
    Scalar h = reg.value(x);
    if (!std::isfinite(h)) return h;
    return smooth_value(x) + h;
  }

  Scalar sum_L() const {
    Scalar s = 0;
    for (const auto& c : components) s += c.rel_smoothness;
    return s;
  }
};

template <class Scalar>
Scalar objective(const ProblemSpec<Scalar>& p, const Vector<Scalar>& x) {
  return p.objective(x);
}

// Largest singular value by power iteration on M^T M.
template <class Scalar>
Scalar power_iteration_norm(const Matrix<Scalar>& M, Scalar rel_tol = Scalar(1e-10),
                            int max_iter = 20000) {
  if (M.size() == 0) return Scalar(0);
  Matrix<Scalar> G = M.transpose() * M;
  if (G.norm() == Scalar(0)) return Scalar(0);
  Vector<Scalar> v(G.rows());
  for (Index j = 0; j < v.size(); ++j) v[j] = Scalar(1) + Scalar(0.01) * Scalar(j);
  v.normalize();
  Scalar lambda = 0;
  for (int it = 0; it < max_iter; ++it) {
    Vector<Scalar> u = G * v;
    Scalar next = v.dot(u);
    Scalar un = u.norm();
    if (un == Scalar(0)) return Scalar(0);
    v = u / un;
    if (it > 0 && std::abs(next - lambda) <= rel_tol * std::max(Scalar(1), std::abs(next))) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(lambda, Scalar(0)));
}

template <class Scalar>
Scalar smallest_singular_value(const Matrix<Scalar>& M) {
  if (M.size() == 0) return Scalar(0);
  if (M.rows() < M.cols()) return Scalar(0);  // nontrivial null space as a map on R^d
  Eigen::JacobiSVD<Matrix<Scalar>> svd(M);
  return svd.singularValues().minCoeff();
}

// Multi-scale grid refinement for d <= 2 convex minimization; shrinks the box
// around the incumbent until the cell width is below tol.
template <class Scalar>
Vector<Scalar> refine_minimum(const std::function<Scalar(const Vector<Scalar>&)>& f,
                              Vector<Scalar> lower, Vector<Scalar> upper,
                              Scalar tol = Scalar(1e-11)) {
  const Index d = lower.size();
  if (d < 1 || d > 2) throw InvalidData("refine_minimum: supports d in {1, 2}");
  const int m = 17;
  Vector<Scalar> best = (lower + upper) / Scalar(2);
  Scalar best_val = std::numeric_limits<Scalar>::infinity();
  for (int level = 0; level < 120; ++level) {
    Vector<Scalar> step = (upper - lower) / Scalar(m - 1);
    Vector<Scalar> x(d);
    int counts[2] = {m, d == 2 ? m : 1};
    for (int i = 0; i < counts[0]; ++i) {
      x[0] = lower[0] + step[0] * Scalar(i);
      for (int j = 0; j < counts[1]; ++j) {
        if (d == 2) x[1] = lower[1] + step[1] * Scalar(j);
        Scalar v = f(x);
        if (v < best_val) {
          best_val = v;
          best = x;
        }
      }
    }
    if (step.maxCoeff() <= tol) break;
    for (Index k = 0; k < d; ++k) {
      Scalar hw = Scalar(2) * step[k];
      lower[k] = best[k] - hw;
      upper[k] = best[k] + hw;
    }
  }
  return best;
}

// min over sampled pairs of f(x) + <grad f(x), y - x> + L D_w(y, x) - f(y);
// nonnegative when L w - f is convex (relative smoothness).
template <class Scalar>
Scalar relative_smoothness_margin(const ComponentOracle<Scalar>& c,
                                  const LegendreKernel<Scalar>& kernel,
                                  PairSampler<Scalar> pairs, int n) {
  if (n < 1) throw InvalidData("relative_smoothness_margin: need n >= 1");
  Scalar worst = std::numeric_limits<Scalar>::infinity();
  for (int i = 0; i < n; ++i) {
    auto [x, y] = pairs();
    Scalar lhs = c.value(x) + c.gradient(x).dot(y - x) +
                 c.rel_smoothness * bregman(kernel, y, x);
    worst = std::min(worst, lhs - c.value(y));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Problem factories
// ---------------------------------------------------------------------------

// min 1/2 ||Ax - b||^2 (row-wise components) + lambda ||x||_1, constrained to
// the l1 ball of radius R so the feasible set is compact.
template <class Scalar>
ProblemSpec<Scalar> make_lasso(const Matrix<Scalar>& A, const Vector<Scalar>& b,
                               Scalar lambda, Scalar R) {
  if (A.rows() != b.size() || A.rows() == 0)
    throw InvalidData("make_lasso: A and b shapes disagree");
  if (lambda <= Scalar(0)) throw InvalidData("make_lasso: lambda must be positive");
  Scalar min_radius = b.squaredNorm() / (Scalar(2) * lambda);
  if (R < min_radius)
    throw InvalidRadius("make_lasso: R must be at least ||b||^2 / (2 lambda)");

  const Index d = A.cols();
  ProblemSpec<Scalar> p;
  p.name = "lasso";
  p.kernel = LegendreKernel<Scalar>::euclidean(d);
  p.reg = Regularizer<Scalar>::l1(lambda, R);
  for (Index i = 0; i < A.rows(); ++i) {
    Vector<Scalar> a = A.row(i).transpose();
    Scalar bi = b[i];
    ComponentOracle<Scalar> c;
    c.index = int(i);
    c.value = [a, bi](const Vector<Scalar>& x) {
      Scalar r = a.dot(x) - bi;
      return Scalar(0.5) * r * r;
    };
    c.gradient = [a, bi](const Vector<Scalar>& x) {
      return Vector<Scalar>((a.dot(x) - bi) * a);
    };
    c.rel_smoothness = a.squaredNorm();
    QuadraticForm<Scalar> qf;
    qf.P = a * a.transpose();
    qf.q = -bi * a;
    qf.c = Scalar(0.5) * bi * bi;
    c.quadratic = std::move(qf);
    p.components.push_back(std::move(c));
  }

  bool diagonal = A.rows() == A.cols();
  if (diagonal)
    for (Index i = 0; i < A.rows() && diagonal; ++i)
      for (Index j = 0; j < A.cols(); ++j)
        if (i != j && A(i, j) != Scalar(0)) {
          diagonal = false;
          break;
        }

  if (diagonal) {
    Vector<Scalar> xs(d);
    for (Index j = 0; j < d; ++j) {
      Scalar ajj = A(j, j);
      xs[j] = ajj == Scalar(0) ? Scalar(0) : shrink(ajj * b[j], lambda) / (ajj * ajj);
    }
    p.solutions = std::vector<Vector<Scalar>>{xs};
  } else if (d <= 2) {
    auto f = [&p](const Vector<Scalar>& x) { return p.objective(x); };
    Vector<Scalar> lo = Vector<Scalar>::Constant(d, -R);
    Vector<Scalar> hi = Vector<Scalar>::Constant(d, R);
    p.solutions = std::vector<Vector<Scalar>>{refine_minimum<Scalar>(f, lo, hi)};
  }
  if (p.solutions) {
    p.optimal_value = p.objective((*p.solutions)[0]);
    GrowthRecord<Scalar> g;
    g.mode = GrowthMode::Quadratic;
    g.theta = Scalar(1);
    g.region = SampleRegion<Scalar>::l1_ball(d, R);
    g.mu = quadratic_growth_estimate_fn<Scalar>(
        [&p](const Vector<Scalar>& x) { return p.objective(x); }, *p.optimal_value,
        *p.solutions, g.region.sampler(0xBD60u), 10000);
    p.growth = std::move(g);
  }
  return p;
}

// min sum_i [ <a_i, x> - b_i log <a_i, x> ] + beta ||x||^2 + mu ||x||_1 over
// x >= 0, in the burg geometry. beta > 0 folds into the kernel quad_coef so
// the components keep rel_smoothness b_i; the beta term itself is kept exact
// in every subproblem via kept_quadratic_weight.
template <class Scalar>
ProblemSpec<Scalar> make_poisson_elastic_net(const Matrix<Scalar>& A,
                                             const Vector<Scalar>& b, Scalar beta,
                                             Scalar mu_l1,
                                             std::optional<Box<Scalar>> box = {}) {
  if (A.rows() != b.size() || A.rows() == 0)
    throw InvalidData("make_poisson_elastic_net: A and b shapes disagree");
  if (beta < Scalar(0) || mu_l1 < Scalar(0))
    throw InvalidData("make_poisson_elastic_net: beta and mu must be >= 0");
  for (Index i = 0; i < A.rows(); ++i) {
    if (b[i] <= Scalar(0)) throw InvalidData("make_poisson_elastic_net: b_i must be > 0");
    if (A.row(i).minCoeff() < Scalar(0) || A.row(i).maxCoeff() <= Scalar(0))
      throw InvalidData("make_poisson_elastic_net: rows a_i must be >= 0 and nonzero");
  }

  const Index d = A.cols();
  const Scalar L = b.sum();
  ProblemSpec<Scalar> p;
  p.name = "poisson_elastic_net";
  p.kernel = LegendreKernel<Scalar>::burg(d, std::move(box),
                                          beta > Scalar(0) ? beta / L : Scalar(0));
  p.kept_quadratic_weight = beta;
  p.reg = mu_l1 > Scalar(0) ? Regularizer<Scalar>::l1_positive(mu_l1)
                            : Regularizer<Scalar>::zero();
  for (Index i = 0; i < A.rows(); ++i) {
    Vector<Scalar> a = A.row(i).transpose();
    Scalar bi = b[i];
    ComponentOracle<Scalar> c;
    c.index = int(i);
    c.value = [a, bi](const Vector<Scalar>& x) {
      Scalar t = a.dot(x);
      if (t <= Scalar(0)) throw DomainViolation("poisson component: <a, x> <= 0");
      return t - bi * std::log(t);
    };
    c.gradient = [a, bi](const Vector<Scalar>& x) {
      Scalar t = a.dot(x);
      if (t <= Scalar(0)) throw DomainViolation("poisson component: <a, x> <= 0");
      return Vector<Scalar>((Scalar(1) - bi / t) * a);
    };
    c.rel_smoothness = bi;
    p.components.push_back(std::move(c));
  }

  if (d == 1) {
    // 2 beta x^2 + (sum a + mu) x - sum b = 0 on x > 0
    Scalar sa = A.sum() + mu_l1;
    Scalar sb = b.sum();
    Scalar xs = beta > Scalar(0)
                    ? (std::sqrt(sa * sa + Scalar(8) * beta * sb) - sa) / (Scalar(4) * beta)
                    : sb / sa;
    Vector<Scalar> v(1);
    v[0] = xs;
    p.solutions = std::vector<Vector<Scalar>>{v};
    p.optimal_value = p.objective(v);
  }
  return p;
}

// min 1/4 ||Ex||^4 + 1/4 ||Ax - b||_4^4 + 1/2 ||Cx - d||^2 in the
// quartic(1,1) geometry, with the Bregman-growth constant
// mu = min(sigma_min(E)^4 / 3, sigma_min(C)^2).
template <class Scalar>
ProblemSpec<Scalar> make_quartic_problem(const Matrix<Scalar>& E, const Matrix<Scalar>& A,
                                         const Matrix<Scalar>& C, const Vector<Scalar>& b,
                                         const Vector<Scalar>& d_vec,
                                         std::optional<Box<Scalar>> box = {}) {
  const Index d = E.cols();
  if (A.size() > 0 && A.cols() != d) throw InvalidData("make_quartic_problem: A shape");
  if (C.cols() != d) throw InvalidData("make_quartic_problem: C shape");
  if (A.rows() != b.size()) throw InvalidData("make_quartic_problem: b shape");
  if (C.rows() != d_vec.size()) throw InvalidData("make_quartic_problem: d shape");

  Scalar nE = power_iteration_norm(E);
  Scalar nA = power_iteration_norm(A);
  Scalar nC = power_iteration_norm(C);
  Scalar nb = b.norm();
  Scalar sigE = smallest_singular_value(E);
  Scalar sigC = smallest_singular_value(C);
  if (sigE <= Scalar(0) || sigC <= Scalar(0))
    throw SingularInput("make_quartic_problem: E and C must have full column rank");

  Scalar L = Scalar(3) * nE * nE * nE * nE + Scalar(3) * nA * nA * nA * nA +
             Scalar(6) * nA * nA * nA * nb + Scalar(3) * nA * nA * nb * nb + nC * nC;
  Scalar mu = std::min(sigE * sigE * sigE * sigE / Scalar(3), sigC * sigC);

  if (!box) box = make_cube<Scalar>(d, Scalar(-2), Scalar(2));

  ProblemSpec<Scalar> p;
  p.name = "quartic";
  p.kernel = LegendreKernel<Scalar>::quartic(d, Scalar(1), Scalar(1), box);
  p.reg = Regularizer<Scalar>::zero();
  ComponentOracle<Scalar> c;
  c.index = 0;
  c.value = [E, A, C, b, d_vec](const Vector<Scalar>& x) {
    Scalar e2 = (E * x).squaredNorm();
    Scalar q = 0;
    if (A.size() > 0) q = (A * x - b).array().pow(4).sum();
    return e2 * e2 / Scalar(4) + q / Scalar(4) + Scalar(0.5) * (C * x - d_vec).squaredNorm();
  };
  c.gradient = [E, A, C, b, d_vec](const Vector<Scalar>& x) {
    Vector<Scalar> ex = E * x;
    Vector<Scalar> g = ex.squaredNorm() * (E.transpose() * ex);
    if (A.size() > 0) {
      Vector<Scalar> r = A * x - b;
      g += A.transpose() * Vector<Scalar>(r.array().cube().matrix());
    }
    g += C.transpose() * (C * x - d_vec);
    return g;
  };
  c.rel_smoothness = L;
  p.components.push_back(std::move(c));

  bool homogeneous = b.norm() == Scalar(0) && d_vec.norm() == Scalar(0);
  if (homogeneous) {
    p.solutions = std::vector<Vector<Scalar>>{Vector<Scalar>::Zero(d)};
    p.optimal_value = Scalar(0);
  } else if (d <= 2) {
    auto f = [&p](const Vector<Scalar>& x) { return p.objective(x); };
    p.solutions = std::vector<Vector<Scalar>>{
        refine_minimum<Scalar>(f, p.kernel.box()->lower, p.kernel.box()->upper)};
    p.optimal_value = p.objective((*p.solutions)[0]);
  }
  if (p.solutions) {
    GrowthRecord<Scalar> g;
    g.mode = GrowthMode::Bregman;
    g.mu = mu;
    g.theta = Scalar(1);
    g.region = SampleRegion<Scalar>::box(p.kernel.box()->lower, p.kernel.box()->upper);
    p.growth = std::move(g);
  }
  return p;
}

// Dual of a compressed-sensing denoising model:
// F(x) = -<b, x> + alpha/2 ||shrink_mu(A^T x)||^2, split column-wise.
template <class Scalar>
ProblemSpec<Scalar> make_dual_cs(const Matrix<Scalar>& A, const Vector<Scalar>& b,
                                 Scalar alpha, Scalar mu) {
  if (alpha <= Scalar(0)) throw InvalidData("make_dual_cs: alpha must be positive");
  if (mu < Scalar(0)) throw InvalidData("make_dual_cs: mu must be >= 0");
  if (A.size() > 0 && A.rows() != b.size()) throw InvalidData("make_dual_cs: shapes");
  const Index d = b.size();

  ProblemSpec<Scalar> p;
  p.name = "dual_cs";
  p.kernel = LegendreKernel<Scalar>::euclidean(d);
  p.reg = Regularizer<Scalar>::zero();

  const Index m = A.cols();
  if (m == 0) {
    ComponentOracle<Scalar> c;
    c.index = 0;
    c.value = [b](const Vector<Scalar>& x) { return -b.dot(x); };
    c.gradient = [b](const Vector<Scalar>&) { return Vector<Scalar>(-b); };
    c.rel_smoothness = Scalar(0);
    p.components.push_back(std::move(c));
  } else {
    for (Index j = 0; j < m; ++j) {
      Vector<Scalar> a = A.col(j);
      bool carries_linear = j == 0;
      ComponentOracle<Scalar> c;
      c.index = int(j);
      c.value = [a, b, mu, alpha, carries_linear](const Vector<Scalar>& x) {
        Scalar s = shrink(a.dot(x), mu);
        Scalar v = alpha / Scalar(2) * s * s;
        if (carries_linear) v -= b.dot(x);
        return v;
      };
      c.gradient = [a, b, mu, alpha, carries_linear](const Vector<Scalar>& x) {
        Vector<Scalar> g = alpha * shrink(a.dot(x), mu) * a;
        if (carries_linear) g -= b;
        return g;
      };
      c.rel_smoothness = alpha * a.squaredNorm();
      p.components.push_back(std::move(c));
    }
  }

  if (d == 1 && m == 1 && A(0, 0) != Scalar(0) && b[0] != Scalar(0)) {
    Scalar a0 = A(0, 0);
    Scalar s = b[0] / (alpha * a0);
    Vector<Scalar> xs(1);
    xs[0] = (s > Scalar(0) ? mu + s : -mu + s) / a0;
    p.solutions = std::vector<Vector<Scalar>>{xs};
    p.optimal_value = p.objective(xs);
    GrowthRecord<Scalar> g;
    g.mode = GrowthMode::Quadratic;
    g.theta = Scalar(1);
    g.region = SampleRegion<Scalar>::cube(1, xs[0] - Scalar(3), xs[0] + Scalar(3));
    g.mu = quadratic_growth_estimate_fn<Scalar>(
        [&p](const Vector<Scalar>& x) { return p.objective(x); }, *p.optimal_value,
        *p.solutions, g.region.sampler(0xDC50u), 10000);
    p.growth = std::move(g);
  }
  return p;
}

// 1-D F(x) = eps x^2 with h(x) = |x|: Holder growth with theta = 1/2, mu = 1
// on |x| <= 1 (|x| + eps x^2 >= |x| / 2 there).
template <class Scalar>
ProblemSpec<Scalar> make_holder_toy(Scalar eps) {
  if (eps < Scalar(0)) throw InvalidData("make_holder_toy: eps must be >= 0");
  ProblemSpec<Scalar> p;
  p.name = "holder_toy";
  p.kernel = LegendreKernel<Scalar>::euclidean(1);
  p.reg = Regularizer<Scalar>::abs();
  ComponentOracle<Scalar> c;
  c.index = 0;
  c.value = [eps](const Vector<Scalar>& x) { return eps * x[0] * x[0]; };
  c.gradient = [eps](const Vector<Scalar>& x) {
    Vector<Scalar> g(1);
    g[0] = Scalar(2) * eps * x[0];
    return g;
  };
  c.rel_smoothness = Scalar(2) * eps;
  p.components.push_back(std::move(c));
  p.solutions = std::vector<Vector<Scalar>>{Vector<Scalar>::Zero(1)};
  p.optimal_value = Scalar(0);
  GrowthRecord<Scalar> g;
  g.mode = GrowthMode::Holder;
  g.mu = Scalar(1);
  g.theta = Scalar(0.5);
  g.region = SampleRegion<Scalar>::cube(1, Scalar(-1), Scalar(1));
  p.growth = std::move(g);
  return p;
}

}  // namespace pliag
