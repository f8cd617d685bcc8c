#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "pliag/errors.hpp"
#include "pliag/growth.hpp"
#include "pliag/kernels.hpp"
#include "pliag/problems.hpp"
#include "pliag/sampling.hpp"
#include "pliag/solver.hpp"
#include "pliag/stepsizes.hpp"
#include "pliag/types.hpp"

namespace pliag {

// T_k(x) = Phi(x_k) - Phi(x) + L ell(tau+1) sum_{i=1}^{tau} i D_w(x_{k-tau+i}, x_{k-tau+i-1});
// increments involving pre-initial iterates are zero (x_j = x_0 for j <= 0).
template <class Scalar>
Scalar lyapunov_T(const ProblemSpec<Scalar>& p, const Trace<Scalar>& tr, int k,
                  const Vector<Scalar>& x_ref, Scalar L, int tau) {
  if (k < 0 || k > tr.length()) throw IndexOutOfTrace("lyapunov_T: k outside trace");
  Scalar t = tr.objective_values[size_t(k)] - p.objective(x_ref);
  if (tau > 0 && L > Scalar(0)) {
    Scalar amp = L * ell(p.kernel, tau + 1);
    Scalar sum = 0;
    for (int i = 1; i <= tau; ++i) {
      int m = k - tau + i - 1;  // index of the stored increment D_w(x_{m+1}, x_m)
      if (m >= 0) sum += Scalar(i) * tr.bregman_steps[size_t(m)];
    }
    t += amp * sum;
  }
  return t;
}

// Gamma_alpha(x) = Phi(x) - Phi* + (1/alpha) min_{z in X} D_w(z, x)
template <class Scalar>
Scalar lyapunov_gamma(const ProblemSpec<Scalar>& p, const Vector<Scalar>& x, Scalar alpha) {
  if (!p.solutions || p.solutions->empty() || !p.optimal_value)
    throw UnknownSolutionSet("lyapunov_gamma: problem has no stored solution set");
  return p.objective(x) - *p.optimal_value +
         min_bregman_to_set(p.kernel, *p.solutions, x) / alpha;
}

template <class Scalar>
Scalar lyapunov_gamma(const ProblemSpec<Scalar>& p, const Trace<Scalar>& tr, int k,
                      Scalar alpha) {
  if (k < 0 || k > tr.length()) throw IndexOutOfTrace("lyapunov_gamma: k outside trace");
  if (!p.solutions || p.solutions->empty() || !p.optimal_value)
    throw UnknownSolutionSet("lyapunov_gamma: problem has no stored solution set");
  return tr.objective_values[size_t(k)] - *p.optimal_value +
         min_bregman_to_set(p.kernel, *p.solutions, tr.iterates[size_t(k)]) / alpha;
}

enum class CertificateKind { Sublinear, LinearGamma, HolderDistance };

inline const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::Sublinear: return "sublinear";
    case CertificateKind::LinearGamma: return "linear_gamma";
    case CertificateKind::HolderDistance: return "holder_distance";
  }
  return "?";
}

template <class Scalar>
struct Certificate {
  CertificateKind kind{CertificateKind::Sublinear};
  int K{0};
  int k_start{0};  // first iterate index the per-k arrays cover
  Scalar alpha{0};
  Scalar mu{0};
  Scalar theta{0};
  Scalar tolerance{Scalar(1e-9)};
  std::vector<Scalar> bound;     // theoretical bound at k_start + i
  std::vector<Scalar> observed;  // measured quantity at k_start + i
  Scalar max_violation{-std::numeric_limits<Scalar>::infinity()};
  bool pass{false};
  bool step_within_bound{true};
  std::string note;
};

namespace detail {

// bounds that decay below rounding noise must not fail on absolute jitter
template <class Scalar>
Scalar rel_violation(Scalar observed, Scalar bound) {
  return (observed - bound) / std::max(Scalar(1), std::abs(bound));
}

}  // namespace detail

// T_k(x_ref) <= D_w(x_ref, x_0) / (alpha k) for 1 <= k <= K, plus the
// no-increase property of T_k itself.
template <class Scalar>
Certificate<Scalar> certify_sublinear(const ProblemSpec<Scalar>& p, const Trace<Scalar>& tr,
                                      const Vector<Scalar>& x_ref, Scalar L, int tau,
                                      Scalar tol = Scalar(1e-9)) {
  Certificate<Scalar> c;
  c.kind = CertificateKind::Sublinear;
  c.K = tr.length();
  c.k_start = 1;
  c.alpha = tr.alpha;
  c.tolerance = tol;
  try {
    Scalar cap = sublinear_step(L, tau, ell_fn(p.kernel));
    c.step_within_bound = tr.alpha <= cap * (Scalar(1) + Scalar(1e-12));
  } catch (const Error&) {
    c.step_within_bound = false;
  }

  const Scalar d0 = bregman(p.kernel, x_ref, tr.iterates[0]);
  Scalar worst = -std::numeric_limits<Scalar>::infinity();
  Scalar worst_mono = worst;
  Scalar prev_T = lyapunov_T(p, tr, 0, x_ref, L, tau);
  for (int k = 1; k <= c.K; ++k) {
    Scalar T = lyapunov_T(p, tr, k, x_ref, L, tau);
    Scalar bnd = d0 / (tr.alpha * Scalar(k));
    c.bound.push_back(bnd);
    c.observed.push_back(T);
    worst = std::max(worst, detail::rel_violation(T, bnd));
    worst_mono = std::max(worst_mono, detail::rel_violation(T, prev_T));
    prev_T = T;
  }
  c.max_violation = worst;
  bool mono_ok = c.K < 1 || worst_mono <= Scalar(1e-10);
  c.pass = worst <= tol && mono_ok;
  if (!mono_ok) c.note = "T_k increased beyond the 1e-10 slack";
  if (tr.divergence_at >= 0) c.note += (c.note.empty() ? "" : "; ") + std::string("divergence guard fired");
  return c;
}

// Gamma contraction (primary), the function-value corollary with the same
// bound, and the distance bound with the (k+1) exponent.
template <class Scalar>
Certificate<Scalar> certify_linear(const ProblemSpec<Scalar>& p, const Trace<Scalar>& tr,
                                   Scalar mu, Scalar tol = Scalar(1e-9), Scalar L = Scalar(-1),
                                   int tau = -1) {
  if (mu <= Scalar(0)) throw MissingGrowth("certify_linear: needs a growth modulus mu > 0");
  Certificate<Scalar> c;
  c.kind = CertificateKind::LinearGamma;
  c.K = tr.length();
  c.alpha = tr.alpha;
  c.mu = mu;
  c.tolerance = tol;
  if (L > Scalar(0) && tau >= 0) {
    Scalar cap = linear_step(L, mu, tau, ell_fn(p.kernel));
    c.step_within_bound = tr.alpha <= cap * (Scalar(1) + Scalar(1e-12));
  }

  const Scalar a = rate_linear(tr.alpha, mu);
  const Scalar gamma0 = lyapunov_gamma(p, tr, 0, tr.alpha);
  Scalar worst = -std::numeric_limits<Scalar>::infinity();
  Scalar decay = 1;  // a^k, kept multiplicatively
  for (int k = 0; k <= c.K; ++k) {
    Scalar gamma_k = lyapunov_gamma(p, tr, k, tr.alpha);
    Scalar gap_k = tr.objective_values[size_t(k)] - *p.optimal_value;
    Scalar dist_k = min_bregman_to_set(p.kernel, *p.solutions, tr.iterates[size_t(k)]);
    Scalar bnd = decay * gamma0;
    c.bound.push_back(bnd);
    c.observed.push_back(gamma_k);
    worst = std::max(worst, detail::rel_violation(gamma_k, bnd));
    worst = std::max(worst, detail::rel_violation(gap_k, bnd));
    worst = std::max(worst, detail::rel_violation(dist_k, tr.alpha * gamma0 * decay * a));
    decay *= a;
  }
  c.max_violation = worst;
  c.pass = worst <= tol;
  if (tr.divergence_at >= 0) c.note = "divergence guard fired";
  return c;
}

// d^2(x_k, X) <= a^{k/eta} d^2(x_0, X) with eta = (alpha mu theta + 1)/(1 + alpha mu)
template <class Scalar>
Certificate<Scalar> certify_holder(const ProblemSpec<Scalar>& p, const Trace<Scalar>& tr,
                                   Scalar mu, Scalar theta, Scalar tol = Scalar(1e-9)) {
  if (p.kernel.kind() != KernelKind::Euclidean)
    throw UnsupportedCombination("certify_holder: euclidean kernel only");
  if (!p.solutions || p.solutions->empty())
    throw UnknownSolutionSet("certify_holder: problem has no stored solution set");
  Certificate<Scalar> c;
  c.kind = CertificateKind::HolderDistance;
  c.K = tr.length();
  c.alpha = tr.alpha;
  c.mu = mu;
  c.theta = theta;
  c.tolerance = tol;

  const Scalar d0 = distance_to_set(*p.solutions, tr.iterates[0]);
  if (d0 > Scalar(1) + Scalar(1e-12))
    throw InitialDistanceTooLarge("certify_holder: d(x_0, X) must be <= 1");
  const Scalar eta = holder_eta(tr.alpha, mu, theta);
  const Scalar a = rate_linear(tr.alpha, mu);
  const Scalar d0sq = d0 * d0;
  Scalar worst = -std::numeric_limits<Scalar>::infinity();
  for (int k = 0; k <= c.K; ++k) {
    Scalar dk = distance_to_set(*p.solutions, tr.iterates[size_t(k)]);
    Scalar obs = dk * dk;
    Scalar bnd = std::pow(a, Scalar(k) / eta) * d0sq;
    c.bound.push_back(bnd);
    c.observed.push_back(obs);
    worst = std::max(worst, detail::rel_violation(obs, bnd));
  }
  c.max_violation = worst;
  c.pass = worst <= tol;
  if (tr.divergence_at >= 0) c.note = "divergence guard fired";
  return c;
}

// Largest normalized violation over the trace of
// Phi(x_{k+1}) <= Phi(x) + [D_w(x,x_k) - D_w(x,x_{k+1}) - D_w(x_{k+1},x_k)]/alpha + Delta_k,
// Delta_k = L ell(tau+1) sum_{j=k-tau}^k D_w(x_{j+1}, x_j).
template <class Scalar>
Scalar descent_residual(const ProblemSpec<Scalar>& p, const Trace<Scalar>& tr,
                        const Vector<Scalar>& x_ref, Scalar L, int tau) {
  const Scalar amp = L > Scalar(0) ? L * ell(p.kernel, tau + 1) : Scalar(0);
  const Scalar phi_ref = p.objective(x_ref);
  Scalar worst = -std::numeric_limits<Scalar>::infinity();
  for (int k = 0; k < tr.length(); ++k) {
    Scalar delta = 0;
    for (int j = k - tau; j <= k; ++j)
      if (j >= 0) delta += tr.bregman_steps[size_t(j)];
    delta *= amp;
    Scalar lhs = tr.objective_values[size_t(k + 1)];
    Scalar rhs = phi_ref +
                 (bregman(p.kernel, x_ref, tr.iterates[size_t(k)]) -
                  bregman(p.kernel, x_ref, tr.iterates[size_t(k + 1)]) -
                  tr.bregman_steps[size_t(k)]) /
                     tr.alpha +
                 delta;
    worst = std::max(worst, (lhs - rhs) / std::max(Scalar(1), std::max(std::abs(lhs), std::abs(rhs))));
  }
  return worst;
}

// Same inequality with the reference point taken as x_k at every step, where
// it collapses to Phi(x_{k+1}) <= Phi(x_k) - [D_w(x_k,x_{k+1}) + D_w(x_{k+1},x_k)]/alpha + Delta_k.
template <class Scalar>
Scalar descent_residual_self(const ProblemSpec<Scalar>& p, const Trace<Scalar>& tr, Scalar L,
                             int tau) {
  const Scalar amp = L > Scalar(0) ? L * ell(p.kernel, tau + 1) : Scalar(0);
  Scalar worst = -std::numeric_limits<Scalar>::infinity();
  for (int k = 0; k < tr.length(); ++k) {
    Scalar delta = 0;
    for (int j = k - tau; j <= k; ++j)
      if (j >= 0) delta += tr.bregman_steps[size_t(j)];
    delta *= amp;
    Scalar lhs = tr.objective_values[size_t(k + 1)];
    Scalar rhs = tr.objective_values[size_t(k)] -
                 (bregman(p.kernel, tr.iterates[size_t(k)], tr.iterates[size_t(k + 1)]) +
                  tr.bregman_steps[size_t(k)]) /
                     tr.alpha +
                 delta;
    worst = std::max(worst, (lhs - rhs) / std::max(Scalar(1), std::max(std::abs(lhs), std::abs(rhs))));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// recursion lemma oracles
// ---------------------------------------------------------------------------

template <class Scalar>
struct RecursionInstance {
  Scalar a{Scalar(0.5)};
  Scalar b{1};
  Scalar c{0};
  Scalar d{0};  // weight of the V^theta term; 0 selects the plain recursion
  Scalar theta{1};
  int k0{0};
  Scalar V0{1};
};

template <class Scalar>
struct RecursionReport {
  bool pass{true};
  int violations{0};
  Scalar worst_factor{0};  // max over trials and k of V-term / bound
  int trials{0};
  int horizon{0};
};

namespace detail {

// w_k choices stressing the recursions: the window sum rewards past spikes,
// so each strategy mixes extremes of the admissible range.
enum class WStrategy { Zeros, Greedy, Random, Spikes };

template <class Scalar>
Scalar admissible_w(Scalar rhs_base, Scalar b, Scalar c, std::mt19937_64& rng,
                    WStrategy st) {
  // rhs_base = a V_k + c S_k >= 0; w_k must keep rhs_base + (c - b) w_k >= 0
  Scalar wmax;
  if (b - c > Scalar(1e-300))
    wmax = rhs_base / (b - c);
  else
    wmax = rhs_base + Scalar(1);  // w has no effect on the update; any cap works
  switch (st) {
    case WStrategy::Zeros:
      return Scalar(0);
    case WStrategy::Greedy:
      return wmax;
    case WStrategy::Random:
      return std::uniform_real_distribution<Scalar>(0, 1)(rng) * wmax;
    case WStrategy::Spikes:
      return std::uniform_real_distribution<Scalar>(0, 1)(rng) < Scalar(0.1)
                 ? wmax
                 : Scalar(0);
  }
  return Scalar(0);
}

}  // namespace detail

// Simulates V_{k+1} = a V_k - b w_k + c sum_{j=k-k0}^k w_j with adversarial
// nonnegative w, checking V_k <= a^k V0 throughout (log-space, slack 1e-10).
template <class Scalar>
RecursionReport<Scalar> recursion_oracle_42(const RecursionInstance<Scalar>& inst, int trials,
                                            int horizon, std::uint64_t seed) {
  if (!(inst.a > Scalar(0) && inst.a < Scalar(1)) || inst.b < Scalar(0) ||
      inst.c < Scalar(0) || inst.k0 < 0 || inst.V0 < Scalar(0))
    throw InvalidInstance("recursion_oracle_42: parameters out of range");
  if (!lemma42_condition_holds(inst.a, inst.b, inst.c, inst.k0))
    throw ConditionViolated("recursion_oracle_42: window condition fails");

  RecursionReport<Scalar> rep;
  rep.trials = trials;
  rep.horizon = horizon;
  const Scalar log_a = std::log(inst.a);
  const Scalar log_V0 = inst.V0 > Scalar(0) ? std::log(inst.V0)
                                            : -std::numeric_limits<Scalar>::infinity();
  Scalar worst_log = -std::numeric_limits<Scalar>::infinity();
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix64(seed ^ mix64(std::uint64_t(t) + 1)));
    auto st = detail::WStrategy(t % 4);
    Scalar V = inst.V0;
    std::deque<Scalar> window(size_t(inst.k0) + 1, Scalar(0));  // w_{k-k0} .. w_k
    Scalar wsum_past = 0;                                       // sum of w_{k-k0} .. w_{k-1}
    for (int k = 0; k < horizon; ++k) {
      Scalar base = inst.a * V + inst.c * wsum_past;
      Scalar w = detail::admissible_w(base, inst.b, inst.c, rng, st);
      V = std::max(base + (inst.c - inst.b) * w, Scalar(0));  // analytically >= 0
      window.pop_front();
      window.push_back(w);
      wsum_past = 0;
      for (size_t i = 1; i < window.size(); ++i) wsum_past += window[i];
      if (V > Scalar(0)) {
        Scalar excess = std::log(V) - (Scalar(k + 1) * log_a + log_V0);
        worst_log = std::max(worst_log, excess);
        if (excess > Scalar(1e-10)) ++rep.violations;
      }
    }
  }
  rep.worst_factor = std::isfinite(worst_log) ? std::exp(worst_log) : Scalar(0);
  rep.pass = rep.violations == 0;
  return rep;
}

// Simulates d V_{k+1}^theta + a V_{k+1} = a V_k - b w_k + c sum_{j=k-k0}^k w_j
// (the update inverted by bisection) and checks V_k^rho <= a^k V0 for k >= 1
// with rho = (1-a) theta + a. The k = 0 instance of the claim needs V0 = 1.
template <class Scalar>
RecursionReport<Scalar> recursion_oracle_51(const RecursionInstance<Scalar>& inst, int trials,
                                            int horizon, std::uint64_t seed) {
  if (!(inst.a > Scalar(0) && inst.a <= Scalar(1)) || inst.b < Scalar(0) ||
      inst.c < Scalar(0) || inst.k0 < 0 || inst.theta <= Scalar(0) ||
      inst.theta > Scalar(1) || inst.d < Scalar(0))
    throw InvalidInstance("recursion_oracle_51: parameters out of range");
  if (std::abs(inst.a + inst.d - Scalar(1)) > Scalar(1e-12))
    throw InvalidInstance("recursion_oracle_51: needs a + d = 1");
  if (inst.V0 > Scalar(1) || inst.V0 < Scalar(0))
    throw InvalidInstance("recursion_oracle_51: needs V0 in [0, 1]");
  if (!lemma42_condition_holds(inst.a, inst.b, inst.c, inst.k0))
    throw ConditionViolated("recursion_oracle_51: window condition fails");

  RecursionReport<Scalar> rep;
  rep.trials = trials;
  rep.horizon = horizon;
  const Scalar rho = (Scalar(1) - inst.a) * inst.theta + inst.a;
  const Scalar log_a = std::log(inst.a);
  const Scalar log_V0 = inst.V0 > Scalar(0) ? std::log(inst.V0)
                                            : -std::numeric_limits<Scalar>::infinity();
  auto invert = [&](Scalar rhs) {
    if (rhs <= Scalar(0)) return Scalar(0);
    if (inst.d == Scalar(0)) return rhs / inst.a;
    auto over = [&](Scalar v) {
      return inst.d * std::pow(v, inst.theta) + inst.a * v > rhs;
    };
    // root scales like (rhs/d)^(1/theta), so bisect log v for uniform relative
    // precision; the lower end keeps d v^theta + a v <= rhs throughout, so the
    // returned iterate never oversteps the recursion
    const Scalar vfloor = std::numeric_limits<Scalar>::min();
    if (over(vfloor)) return Scalar(0);  // root below normal range; 0 is admissible
    Scalar llo = std::log(vfloor), lhi = std::log(rhs / inst.a);
    for (int i = 0; i < 200; ++i) {
      Scalar lmid = (llo + lhi) / Scalar(2);
      if (over(std::exp(lmid)))
        lhi = lmid;
      else
        llo = lmid;
    }
    return std::exp(llo);
  };

  Scalar worst_log = -std::numeric_limits<Scalar>::infinity();
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix64(seed ^ mix64(std::uint64_t(t) + 1)));
    auto st = detail::WStrategy(t % 4);
    Scalar V = inst.V0;
    std::deque<Scalar> window(size_t(inst.k0) + 1, Scalar(0));
    Scalar wsum_past = 0;
    for (int k = 0; k < horizon; ++k) {
      Scalar base = inst.a * V + inst.c * wsum_past;
      Scalar w = detail::admissible_w(base, inst.b, inst.c, rng, st);
      V = invert(base + (inst.c - inst.b) * w);
      window.pop_front();
      window.push_back(w);
      wsum_past = 0;
      for (size_t i = 1; i < window.size(); ++i) wsum_past += window[i];
      if (V > Scalar(0)) {
        Scalar excess = rho * std::log(V) - (Scalar(k + 1) * log_a + log_V0);
        worst_log = std::max(worst_log, excess);
        if (excess > Scalar(1e-10)) ++rep.violations;
      }
    }
  }
  rep.worst_factor = std::isfinite(worst_log) ? std::exp(worst_log) : Scalar(0);
  rep.pass = rep.violations == 0;
  return rep;
}

// ---------------------------------------------------------------------------
// growth estimators and sufficient conditions
// ---------------------------------------------------------------------------

template <class Scalar>
Scalar bdg_estimate(const ProblemSpec<Scalar>& p, const LegendreKernel<Scalar>& kernel,
                    const PointSampler<Scalar>& sampler, int n) {
  if (!p.solutions || p.solutions->empty() || !p.optimal_value)
    throw UnknownSolutionSet("bdg_estimate: problem has no stored solution set");
  return bdg_estimate_fn<Scalar>([&p](const Vector<Scalar>& y) { return p.objective(y); },
                                 *p.optimal_value, *p.solutions, kernel, sampler, n);
}

template <class Scalar>
Scalar quadratic_growth_estimate(const ProblemSpec<Scalar>& p,
                                 const PointSampler<Scalar>& sampler, int n) {
  if (!p.solutions || p.solutions->empty() || !p.optimal_value)
    throw UnknownSolutionSet("quadratic_growth_estimate: problem has no stored solution set");
  return quadratic_growth_estimate_fn<Scalar>(
      [&p](const Vector<Scalar>& y) { return p.objective(y); }, *p.optimal_value,
      *p.solutions, sampler, n);
}

// C1: quadratic growth modulus nu plus gradient-Lipschitz kernel imply the
// Bregman growth inequality at mu = nu / L_w; returns the minimum relative
// slack of that inequality over n samples.
template <class Scalar>
Scalar sufficient_condition_check_c1(const ProblemSpec<Scalar>& p,
                                     const LegendreKernel<Scalar>& kernel,
                                     const PointSampler<Scalar>& sampler, int n) {
  if (!p.growth || p.growth->mode != GrowthMode::Quadratic)
    throw MissingGrowth("sufficient_condition_check_c1: needs a quadratic growth record");
  if (!kernel.moduli())
    throw MissingModuli("sufficient_condition_check_c1: kernel has no moduli");
  if (!p.solutions || p.solutions->empty() || !p.optimal_value)
    throw UnknownSolutionSet("sufficient_condition_check_c1: no stored solution set");
  const Scalar mu = p.growth->mu / kernel.moduli()->L_w;
  Scalar margin = std::numeric_limits<Scalar>::infinity();
  int used = 0;
  for (int i = 0; i < n; ++i) {
    Vector<Scalar> y = sampler();
    if (!kernel.in_domain_interior(y)) continue;
    Scalar gap = p.objective(y) - *p.optimal_value;
    if (!std::isfinite(gap)) continue;
    Scalar rhs = mu * min_bregman_to_set(kernel, *p.solutions, y);
    Scalar scale = std::max(Scalar(1), std::max(std::abs(gap), std::abs(rhs)));
    margin = std::min(margin, (gap - rhs) / scale);
    ++used;
  }
  if (used == 0) throw DegenerateSample("sufficient_condition_check_c1: no usable sample");
  return margin;
}

// C2: F(y) >= F(x) + <grad F(x), y - x> + mu D_w(x, y) over interior pairs;
// returns the minimum relative slack.
template <class Scalar>
Scalar sufficient_condition_check_c2(const ProblemSpec<Scalar>& p,
                                     const LegendreKernel<Scalar>& kernel, Scalar mu,
                                     const PairSampler<Scalar>& pairs, int n) {
  Scalar margin = std::numeric_limits<Scalar>::infinity();
  int used = 0;
  for (int i = 0; i < n; ++i) {
    auto [x, y] = pairs();
    if (!kernel.in_domain_interior(x) || !kernel.in_domain_interior(y)) continue;
    Scalar fy = p.smooth_value(y);
    Scalar fx = p.smooth_value(x);
    Scalar lin = p.smooth_gradient(x).dot(y - x);
    Scalar rhs_growth = mu * bregman(kernel, x, y);  // note the reversed argument order
    Scalar slack = fy - fx - lin - rhs_growth;
    Scalar scale = std::max({Scalar(1), std::abs(fy), std::abs(fx), std::abs(lin),
                             std::abs(rhs_growth)});
    margin = std::min(margin, slack / scale);
    ++used;
  }
  if (used == 0) throw DegenerateSample("sufficient_condition_check_c2: no usable sample");
  return margin;
}

// growth-record consistency: minimum relative slack of the recorded
// inequality on its own sampling region
template <class Scalar>
Scalar growth_margin(const ProblemSpec<Scalar>& p, int n, std::uint64_t seed) {
  if (!p.growth) throw MissingGrowth("growth_margin: problem has no growth record");
  if (!p.solutions || p.solutions->empty() || !p.optimal_value)
    throw UnknownSolutionSet("growth_margin: no stored solution set");
  const GrowthRecord<Scalar>& g = *p.growth;
  PointSampler<Scalar> sampler = g.region.sampler(seed);
  Scalar margin = std::numeric_limits<Scalar>::infinity();
  int used = 0;
  for (int i = 0; i < n; ++i) {
    Vector<Scalar> y = sampler();
    if (!p.kernel.in_domain_interior(y)) continue;
    Scalar gap = p.objective(y) - *p.optimal_value;
    if (!std::isfinite(gap)) continue;
    Scalar rhs = 0;
    switch (g.mode) {
      case GrowthMode::Quadratic: {
        Scalar d = distance_to_set(*p.solutions, y);
        rhs = g.mu / Scalar(2) * d * d;
        break;
      }
      case GrowthMode::Bregman:
        rhs = g.mu * min_bregman_to_set(p.kernel, *p.solutions, y);
        break;
      case GrowthMode::Holder: {
        Scalar d = distance_to_set(*p.solutions, y);
        rhs = g.mu / Scalar(2) * std::pow(d * d, g.theta);
        break;
      }
    }
    Scalar scale = std::max(Scalar(1), std::max(std::abs(gap), std::abs(rhs)));
    margin = std::min(margin, (gap - rhs) / scale);
    ++used;
  }
  if (used == 0) throw DegenerateSample("growth_margin: no usable sample");
  return margin;
}

}  // namespace pliag
