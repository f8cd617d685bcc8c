#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include "pliag/errors.hpp"

namespace pliag {

// Largest step with the 1/k guarantee: 2 / (L ell(tau+1) (tau+1) (tau+2)).
template <class Scalar>
Scalar sublinear_step(Scalar L, int tau, const std::function<Scalar(int)>& ell) {
  if (L <= Scalar(0) || tau < 0) throw InvalidConfig("sublinear_step: need L > 0, tau >= 0");
  return Scalar(2) / (L * ell(tau + 1) * Scalar(tau + 1) * Scalar(tau + 2));
}

namespace detail {

// alpha0 solving (1 + alpha mu)^(tau+1) = 1 + ratio; expm1/log1p plus one
// Newton step on (tau+1) log1p(alpha mu) - log1p(ratio) caps the cancellation
// for large tau.
template <class Scalar>
Scalar root_step(Scalar mu, Scalar ratio, int tau) {
  Scalar alpha = std::expm1(std::log1p(ratio) / Scalar(tau + 1)) / mu;
  Scalar F = Scalar(tau + 1) * std::log1p(alpha * mu) - std::log1p(ratio);
  alpha -= F * (Scalar(1) + alpha * mu) / (Scalar(tau + 1) * mu);
  return alpha;
}

}  // namespace detail

// alpha0 = [(1 + (mu/L)/ell(tau+1))^{1/(tau+1)} - 1] / mu
template <class Scalar>
Scalar linear_step(Scalar L, Scalar mu, int tau, const std::function<Scalar(int)>& ell) {
  if (L <= Scalar(0) || mu <= Scalar(0) || tau < 0)
    throw InvalidConfig("linear_step: need L, mu > 0 and tau >= 0");
  return detail::root_step(mu, (mu / L) / ell(tau + 1), tau);
}

// alpha0 = [(1 + mu/((tau+1)L))^{1/(tau+1)} - 1] / mu  (euclidean setting).
// L = 0 means the smooth part vanishes and any step is admissible; 1/mu keeps
// the rate formula meaningful.
template <class Scalar>
Scalar piag_holder_step(Scalar L, Scalar mu, int tau) {
  if (mu <= Scalar(0) || tau < 0) throw InvalidConfig("piag_holder_step: need mu > 0, tau >= 0");
  if (L <= Scalar(0)) return Scalar(1) / mu;
  return detail::root_step(mu, mu / (Scalar(tau + 1) * L), tau);
}

// per-step contraction factor 1/(1 + alpha mu)
template <class Scalar>
Scalar rate_linear(Scalar alpha, Scalar mu) {
  if (alpha <= Scalar(0) || mu < Scalar(0)) throw InvalidConfig("rate_linear: need alpha > 0, mu >= 0");
  return Scalar(1) / (Scalar(1) + alpha * mu);
}

// 1 - 1/([ell(tau+1) Q + 1](tau+1))
template <class Scalar>
Scalar rate_bound_result04(Scalar Q, int tau, const std::function<Scalar(int)>& ell) {
  if (Q < Scalar(1) || tau < 0) throw InvalidConfig("rate_bound_result04: need Q >= 1, tau >= 0");
  return Scalar(1) - Scalar(1) / ((ell(tau + 1) * Q + Scalar(1)) * Scalar(tau + 1));
}

// 1 - 1/(49 Q (tau+1))
template <class Scalar>
Scalar rate_bound_best(Scalar Q, int tau) {
  if (Q < Scalar(1) || tau < 0) throw InvalidConfig("rate_bound_best: need Q >= 1, tau >= 0");
  return Scalar(1) - Scalar(1) / (Scalar(49) * Q * Scalar(tau + 1));
}

// eta = (alpha mu theta + 1) / (1 + alpha mu); interpolates theta -> 1
template <class Scalar>
Scalar holder_eta(Scalar alpha, Scalar mu, Scalar theta) {
  if (alpha <= Scalar(0) || mu <= Scalar(0) || theta <= Scalar(0) || theta > Scalar(1))
    throw InvalidConfig("holder_eta: need alpha, mu > 0 and theta in (0,1]");
  return (alpha * mu * theta + Scalar(1)) / (Scalar(1) + alpha * mu);
}

// (c/(1-a)) (1-a^{k0+1}) / a^{k0}, evaluated as c * sum_{j=0}^{k0} a^{-j}
// so a = 1 needs no special case.
template <class Scalar>
Scalar lemma42_condition_value(Scalar a, Scalar c, int k0) {
  if (a <= Scalar(0) || a > Scalar(1) || c < Scalar(0) || k0 < 0)
    throw InvalidConfig("lemma42_condition_value: need a in (0,1], c >= 0, k0 >= 0");
  Scalar sum = 0, term = 1;
  for (int j = 0; j <= k0; ++j) {
    sum += term;
    term /= a;
  }
  return c * sum;
}

template <class Scalar>
bool lemma42_condition_holds(Scalar a, Scalar b, Scalar c, int k0) {
  if (b < Scalar(0)) throw InvalidConfig("lemma42_condition_holds: need b >= 0");
  return lemma42_condition_value(a, c, k0) <= b;
}

enum class StepMode { Sublinear, Linear, PiagHolder, Manual };

template <class Scalar>
struct StepPolicy {
  StepMode mode{StepMode::Sublinear};
  Scalar alpha_manual{0};

  static StepPolicy sublinear() { return {StepMode::Sublinear, Scalar(0)}; }
  static StepPolicy linear() { return {StepMode::Linear, Scalar(0)}; }
  static StepPolicy piag_holder() { return {StepMode::PiagHolder, Scalar(0)}; }
  static StepPolicy manual(Scalar alpha) {
    if (alpha <= Scalar(0)) throw InvalidConfig("StepPolicy::manual: alpha must be > 0");
    return {StepMode::Manual, alpha};
  }

  Scalar resolve(Scalar L, Scalar mu, int tau, const std::function<Scalar(int)>& ell) const {
    switch (mode) {
      case StepMode::Sublinear:
        return sublinear_step(L, tau, ell);
      case StepMode::Linear:
        if (mu <= Scalar(0)) throw MissingGrowth("linear step mode needs a growth modulus");
        return linear_step(L, mu, tau, ell);
      case StepMode::PiagHolder:
        if (mu <= Scalar(0)) throw MissingGrowth("piag_holder step mode needs a growth modulus");
        return piag_holder_step(L, mu, tau);
      case StepMode::Manual:
        if (alpha_manual <= Scalar(0)) throw InvalidConfig("manual step mode: alpha not set");
        return alpha_manual;
    }
    throw InvalidConfig("StepPolicy: unknown mode");
  }
};

}  // namespace pliag
