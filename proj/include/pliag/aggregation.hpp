#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "pliag/errors.hpp"
#include "pliag/problems.hpp"
#include "pliag/types.hpp"

namespace pliag {

// Deterministic staleness model: delays_at(k) yields, per component, how many
// iterations old the gradient used at iteration k is. Values are clipped to
// min(k, tau), which coincides with the convention x_j = x_0 for j < 0.
struct DelaySchedule {
  enum class Kind { Zero, Constant, Cyclic, UniformRandom };

  Kind kind{Kind::Zero};
  int tau{0};
  std::uint64_t seed{0};

  static DelaySchedule zero() { return {Kind::Zero, 0, 0}; }
  static DelaySchedule constant(int c) {
    if (c < 0) throw InvalidData("DelaySchedule::constant: c must be >= 0");
    return {Kind::Constant, c, 0};
  }
  static DelaySchedule cyclic(int tau) {
    if (tau < 0) throw InvalidData("DelaySchedule::cyclic: tau must be >= 0");
    return {Kind::Cyclic, tau, 0};
  }
  static DelaySchedule uniform_random(int tau, std::uint64_t seed) {
    if (tau < 0) throw InvalidData("DelaySchedule::uniform_random: tau must be >= 0");
    return {Kind::UniformRandom, tau, seed};
  }

  std::vector<int> delays_at(int k, int n_components) const {
    if (k < 0 || n_components <= 0) throw InvalidData("delays_at: bad arguments");
    std::vector<int> d(size_t(n_components), 0);
    for (int n = 0; n < n_components; ++n) {
      int raw = 0;
      switch (kind) {
        case Kind::Zero:
          raw = 0;
          break;
        case Kind::Constant:
          raw = tau;
          break;
        case Kind::Cyclic:
          raw = (k + n) % (tau + 1);
          break;
        case Kind::UniformRandom: {
          // counter-based draw keyed by (seed, k, n); order-independent
          std::uint64_t h = counter_hash(seed, std::uint64_t(k), std::uint64_t(n));
          raw = int((unsigned __int128)(h) * (unsigned __int128)(tau + 1) >> 64);
          break;
        }
      }
      d[size_t(n)] = std::min(raw, std::min(k, tau));
    }
    return d;
  }
};

// Which components are kept exact (I_k) versus linearized with stale
// gradients (J_k). Partitions are always complementary.
struct SelectionPolicy {
  enum class Kind { FullAggregate, IapCyclic, IapFixed, Custom };

  Kind kind{Kind::FullAggregate};
  int fixed_index{0};
  std::function<std::vector<int>(int, int)> custom_kept;  // k, N -> I_k

  static SelectionPolicy full_aggregate() { return {}; }
  static SelectionPolicy iap_cyclic() { return {Kind::IapCyclic, 0, nullptr}; }
  static SelectionPolicy iap_fixed(int i) { return {Kind::IapFixed, i, nullptr}; }
  static SelectionPolicy custom(std::function<std::vector<int>(int, int)> kept) {
    return {Kind::Custom, 0, std::move(kept)};
  }

  bool may_keep() const { return kind != Kind::FullAggregate; }

  struct Partition {
    std::vector<int> kept;        // I_k, ascending
    std::vector<int> linearized;  // J_k, ascending
  };

  Partition partition(int k, int n_components) const {
    if (n_components <= 0) throw InvalidData("partition: no components");
    Partition part;
    switch (kind) {
      case Kind::FullAggregate:
        break;
      case Kind::IapCyclic:
        if (n_components < 2)
          throw InvalidConfig("iap_cyclic needs >= 2 components (J_k must be nonempty)");
        part.kept = {k % n_components};
        break;
      case Kind::IapFixed:
        if (fixed_index < 0 || fixed_index >= n_components)
          throw InvalidConfig("iap_fixed: index out of range");
        if (n_components < 2)
          throw InvalidConfig("iap_fixed needs >= 2 components (J_k must be nonempty)");
        part.kept = {fixed_index};
        break;
      case Kind::Custom: {
        part.kept = custom_kept(k, n_components);
        std::sort(part.kept.begin(), part.kept.end());
        for (int i : part.kept)
          if (i < 0 || i >= n_components) throw InvalidConfig("custom kept index out of range");
        break;
      }
    }
    size_t ki = 0;
    for (int n = 0; n < n_components; ++n) {
      if (ki < part.kept.size() && part.kept[ki] == n) {
        ++ki;
        continue;
      }
      part.linearized.push_back(n);
    }
    if (part.linearized.empty())
      throw InvalidConfig("partition: J_k must be nonempty");
    return part;
  }
};

// max over k of sum_{j in J_k} L_j for the policy's possible partitions.
template <class Scalar>
Scalar aggregate_L(const ProblemSpec<Scalar>& p, const SelectionPolicy& policy) {
  Scalar total = p.sum_L();
  switch (policy.kind) {
    case SelectionPolicy::Kind::FullAggregate:
    case SelectionPolicy::Kind::Custom:  // conservative: custom may linearize all
      return total;
    case SelectionPolicy::Kind::IapCyclic: {
      Scalar worst = 0;
      for (const auto& c : p.components)
        worst = std::max(worst, total - c.rel_smoothness);
      return worst;
    }
    case SelectionPolicy::Kind::IapFixed:
      return total - p.components[size_t(policy.fixed_index)].rel_smoothness;
  }
  return total;
}

// Ring buffer over the last tau+1 iterates, pre-filled with x_0 so stale
// lookups before iteration tau resolve to the start point.
template <class Scalar>
class IterateWindow {
 public:
  IterateWindow(int tau, Vector<Scalar> x0) : tau_(tau) {
    if (tau < 0) throw InvalidData("IterateWindow: tau must be >= 0");
    slots_.assign(size_t(tau_) + 1, x0);
    latest_ = 0;
  }

  // x_{k+1} becomes the newest entry
  void push(const Vector<Scalar>& x) {
    ++latest_;
    slots_[size_t(latest_ % (tau_ + 1))] = x;
  }

  int latest_index() const { return latest_; }

  const Vector<Scalar>& at(int j) const {
    if (j > latest_ || j < latest_ - tau_)
      throw IndexOutOfTrace("IterateWindow::at: index outside retained window");
    int jj = std::max(j, 0);
    return slots_[size_t(jj % (tau_ + 1))];
  }

 private:
  int tau_;
  int latest_;
  std::vector<Vector<Scalar>> slots_;
};

// Stale gradient store: g_n = grad f_n evaluated at x_{e_n}.
template <class Scalar>
class GradientTable {
 public:
  explicit GradientTable(int n_components)
      : grads_(size_t(n_components)), eval_at_(size_t(n_components), -1) {}

  int size() const { return int(grads_.size()); }
  int evaluated_at(int n) const { return eval_at_[size_t(n)]; }
  const Vector<Scalar>& gradient(int n) const {
    if (eval_at_[size_t(n)] < 0) throw Uninitialized("GradientTable: slot never refreshed");
    return grads_[size_t(n)];
  }

  // Re-evaluates the slots in J at their delayed iterates for iteration k.
  void refresh(const ProblemSpec<Scalar>& p, const IterateWindow<Scalar>& window, int k,
               const std::vector<int>& delays, const std::vector<int>& linearized) {
    if (int(delays.size()) != size()) throw InvalidData("refresh: delays size mismatch");
    for (int n : linearized) {
      int e = k - delays[size_t(n)];
      const Vector<Scalar>& x = window.at(e);
      if (!p.kernel.in_domain_interior(x))
        throw DomainViolation("refresh: stale iterate left the kernel domain");
      grads_[size_t(n)] = p.components[size_t(n)].gradient(x);
      eval_at_[size_t(n)] = e;
    }
  }

  // sum in ascending index order; keeps floating-point reduction deterministic
  Vector<Scalar> aggregate(const std::vector<int>& indices) const {
    if (indices.empty()) throw InvalidData("aggregate: empty index set");
    Vector<Scalar> s;
    bool first = true;
    for (int n : indices) {
      const Vector<Scalar>& g = gradient(n);
      if (first) {
        s = g;
        first = false;
      } else {
        s += g;
      }
    }
    return s;
  }

  // staleness bound check: every slot in use satisfies k - e_n <= min(k, tau)
  int max_staleness(int k) const {
    int worst = 0;
    for (size_t n = 0; n < grads_.size(); ++n)
      if (eval_at_[n] >= 0) worst = std::max(worst, k - eval_at_[n]);
    return worst;
  }

 private:
  std::vector<Vector<Scalar>> grads_;
  std::vector<int> eval_at_;
};

}  // namespace pliag
