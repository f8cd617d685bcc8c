#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "pliag/aggregation.hpp"
#include "pliag/errors.hpp"
#include "pliag/kernels.hpp"
#include "pliag/problems.hpp"
#include "pliag/stepsizes.hpp"
#include "pliag/subproblems.hpp"
#include "pliag/types.hpp"

namespace pliag {

template <class Scalar>
struct SolverConfig {
  const ProblemSpec<Scalar>* problem{nullptr};
  SelectionPolicy policy = SelectionPolicy::full_aggregate();
  DelaySchedule schedule = DelaySchedule::zero();
  StepPolicy<Scalar> step = StepPolicy<Scalar>::sublinear();
  int iterations{0};
  Vector<Scalar> x0;
  // a blow-up of Phi past phi(x0) + factor * max(1, |phi(x0)|) stops the run
  Scalar divergence_factor{Scalar(1e3)};
  bool throw_on_divergence{true};
};

template <class Scalar>
struct Trace {
  std::vector<Vector<Scalar>> iterates;      // x_0 .. x_K
  std::vector<Scalar> objective_values;      // Phi(x_k), one per iterate
  std::vector<Scalar> bregman_steps;         // D_w(x_{k+1}, x_k), one per step
  std::vector<std::vector<int>> delays;      // per step, per component
  std::vector<std::vector<int>> kept_sets;   // I_k per step
  Scalar alpha{0};
  int divergence_at{-1};                     // iterate index where the guard fired
  std::vector<int> box_exit_ks;              // iterates outside the declared moduli box

  int length() const { return int(iterates.size()) - 1; }
};

template <class Scalar>
Scalar resolve_alpha(const SolverConfig<Scalar>& cfg) {
  const ProblemSpec<Scalar>& p = *cfg.problem;
  Scalar L = aggregate_L(p, cfg.policy);
  Scalar mu = p.growth ? p.growth->mu : Scalar(0);
  return cfg.step.resolve(L, mu, cfg.schedule.tau, ell_fn(p.kernel));
}

template <class Scalar>
Trace<Scalar> run(const SolverConfig<Scalar>& cfg) {
  if (!cfg.problem) throw InvalidConfig("run: config has no problem");
  const ProblemSpec<Scalar>& p = *cfg.problem;
  const int N = p.num_components();
  if (N == 0) throw InvalidConfig("run: problem has no components");
  if (cfg.iterations < 0) throw InvalidConfig("run: negative iteration budget");
  if (cfg.x0.size() != p.dim()) throw InvalidConfig("run: x0 dimension mismatch");
  if (!p.kernel.in_domain_interior(cfg.x0))
    throw DomainViolation("run: x0 outside the kernel domain interior");

  const int tau = cfg.schedule.tau;
  const Scalar alpha = resolve_alpha(cfg);

  // well-posedness of subproblems with kept components: the linearized bundle
  // must stay a minorant, alpha <= 1/(ell(2) sum_{j in J_k} L_j) worst case
  if (cfg.policy.may_keep()) {
    Scalar worst_J = aggregate_L(p, cfg.policy);
    if (worst_J > Scalar(0)) {
      Scalar bound = Scalar(1) / (ell(p.kernel, 2) * worst_J);
      if (alpha > bound * (Scalar(1) + Scalar(1e-12)))
        throw InvalidConfig("run: alpha exceeds the kept-component well-posedness bound");
    }
  }

  Trace<Scalar> tr;
  tr.alpha = alpha;
  tr.iterates.reserve(size_t(cfg.iterations) + 1);
  tr.iterates.push_back(cfg.x0);
  tr.objective_values.push_back(p.objective(cfg.x0));

  const Scalar phi0 = tr.objective_values[0];
  const Scalar guard =
      phi0 + cfg.divergence_factor * std::max(Scalar(1), std::abs(phi0));

  IterateWindow<Scalar> window(tau, cfg.x0);
  GradientTable<Scalar> table(N);

  for (int k = 0; k < cfg.iterations; ++k) {
    auto part = cfg.policy.partition(k, N);
    auto dl = cfg.schedule.delays_at(k, N);
    table.refresh(p, window, k, dl, part.linearized);

    SubproblemInstance<Scalar> inst;
    inst.kernel = &p.kernel;
    inst.reg = &p.reg;
    inst.components = &p.components;
    inst.kept = part.kept;
    inst.kept_quadratic_weight = p.kept_quadratic_weight;
    inst.s = table.aggregate(part.linearized);
    inst.anchor = window.at(k);
    inst.alpha = alpha;

    Vector<Scalar> x_next = solve_subproblem(inst);
    if (!p.kernel.in_domain_interior(x_next))
      throw DomainViolation("run: iterate left the kernel domain interior");

    tr.bregman_steps.push_back(bregman(p.kernel, x_next, tr.iterates.back()));
    tr.delays.push_back(std::move(dl));
    tr.kept_sets.push_back(std::move(part.kept));
    Scalar phi = p.objective(x_next);
    tr.iterates.push_back(std::move(x_next));
    tr.objective_values.push_back(phi);
    window.push(tr.iterates.back());

    if (p.kernel.box() && !p.kernel.box()->contains(tr.iterates.back()))
      tr.box_exit_ks.push_back(k + 1);

    if (!std::isfinite(phi) || phi > guard) {
      tr.divergence_at = k + 1;
      if (cfg.throw_on_divergence)
        throw DivergenceGuard("run: objective exceeded the divergence guard at iterate " +
                              std::to_string(k + 1));
      break;
    }
  }
  return tr;
}

enum class MethodTag { Pg, Nolips, Iag, Iap, Piag, NePiag, NeIap };

inline const char* to_string(MethodTag t) {
  switch (t) {
    case MethodTag::Pg: return "pg";
    case MethodTag::Nolips: return "nolips";
    case MethodTag::Iag: return "iag";
    case MethodTag::Iap: return "iap";
    case MethodTag::Piag: return "piag";
    case MethodTag::NePiag: return "ne_piag";
    case MethodTag::NeIap: return "ne_iap";
  }
  return "?";
}

inline MethodTag method_tag_from_string(const std::string& s) {
  if (s == "pg") return MethodTag::Pg;
  if (s == "nolips") return MethodTag::Nolips;
  if (s == "iag") return MethodTag::Iag;
  if (s == "iap") return MethodTag::Iap;
  if (s == "piag") return MethodTag::Piag;
  if (s == "ne_piag") return MethodTag::NePiag;
  if (s == "ne_iap") return MethodTag::NeIap;
  throw InvalidConfig("unknown method tag: " + s);
}

// Interior default start: kernel box midpoint when declared, otherwise ones
// for the positive-orthant kernel and zeros elsewhere; a box regularizer
// overrides with its own midpoint.
template <class Scalar>
Vector<Scalar> default_start(const ProblemSpec<Scalar>& p) {
  Vector<Scalar> x;
  if (p.kernel.box()) {
    x = (p.kernel.box()->lower + p.kernel.box()->upper) / Scalar(2);
  } else if (p.kernel.kind() == KernelKind::Burg) {
    x = Vector<Scalar>::Ones(p.dim());
  } else {
    x = Vector<Scalar>::Zero(p.dim());
  }
  if (p.reg.kind() == RegKind::IndicatorBox)
    x = (p.reg.box()->lower + p.reg.box()->upper) / Scalar(2);
  return x;
}

// Configurations matching the classic schemes the general iteration subsumes.
// pg/nolips run with no delay; the incremental tags sweep components
// cyclically, which also drives their delay pattern.
template <class Scalar>
SolverConfig<Scalar> named_method(MethodTag tag, const ProblemSpec<Scalar>& p, int tau,
                                  int iterations) {
  if (tau < 0) throw InvalidConfig("named_method: tau must be >= 0");
  const bool euclidean = p.kernel.kind() == KernelKind::Euclidean;
  const bool h_zero =
      p.reg.kind() == RegKind::Zero && p.kept_quadratic_weight == Scalar(0);

  SolverConfig<Scalar> cfg;
  cfg.problem = &p;
  cfg.iterations = iterations;
  cfg.x0 = default_start(p);

  switch (tag) {
    case MethodTag::Pg:
      if (!euclidean) throw IncompatibleTag("pg needs the euclidean kernel");
      cfg.schedule = DelaySchedule::zero();
      break;
    case MethodTag::Nolips:
      if (euclidean) throw IncompatibleTag("nolips needs a non-euclidean kernel");
      cfg.schedule = DelaySchedule::zero();
      break;
    case MethodTag::Iag:
      if (!euclidean || !h_zero) throw IncompatibleTag("iag needs euclidean kernel and h = 0");
      cfg.schedule = DelaySchedule::cyclic(tau);
      break;
    case MethodTag::Iap:
      if (!euclidean || !h_zero) throw IncompatibleTag("iap needs euclidean kernel and h = 0");
      if (p.num_components() < 2) throw IncompatibleTag("iap needs at least two components");
      cfg.policy = SelectionPolicy::iap_cyclic();
      cfg.schedule = DelaySchedule::cyclic(tau);
      break;
    case MethodTag::Piag:
      if (!euclidean) throw IncompatibleTag("piag needs the euclidean kernel");
      cfg.schedule = DelaySchedule::constant(tau);
      break;
    case MethodTag::NePiag:
      if (euclidean) throw IncompatibleTag("ne_piag needs a non-euclidean kernel");
      cfg.schedule = DelaySchedule::constant(tau);
      break;
    case MethodTag::NeIap:
      if (euclidean) throw IncompatibleTag("ne_iap needs a non-euclidean kernel");
      if (!h_zero) throw IncompatibleTag("ne_iap needs h = 0");
      if (p.num_components() < 2) throw IncompatibleTag("ne_iap needs at least two components");
      cfg.policy = SelectionPolicy::iap_cyclic();
      cfg.schedule = DelaySchedule::cyclic(tau);
      break;
  }
  return cfg;
}

}  // namespace pliag
