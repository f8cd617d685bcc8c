#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <utility>

#include "pliag/errors.hpp"
#include "pliag/types.hpp"

namespace pliag {

template <class Scalar>
using PointSampler = std::function<Vector<Scalar>()>;

template <class Scalar>
using PairSampler = std::function<std::pair<Vector<Scalar>, Vector<Scalar>>()>;

// splitmix64; used to derive per-(seed, k, n) values without sequential state.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t k, std::uint64_t n) {
  return mix64(seed ^ mix64(k ^ mix64(n)));
}

template <class Scalar>
PointSampler<Scalar> box_sampler(Vector<Scalar> lower, Vector<Scalar> upper,
                                 std::uint64_t seed) {
  if (lower.size() != upper.size() || (upper - lower).minCoeff() < Scalar(0))
    throw InvalidData("box_sampler: inconsistent bounds");
  auto eng = std::make_shared<std::mt19937_64>(seed);
  return [lower = std::move(lower), upper = std::move(upper), eng]() {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vector<Scalar> x(lower.size());
    for (Index j = 0; j < x.size(); ++j)
      x[j] = lower[j] + (upper[j] - lower[j]) * Scalar(u(*eng));
    return x;
  };
}

template <class Scalar>
PointSampler<Scalar> cube_sampler(Index dim, Scalar lo, Scalar hi, std::uint64_t seed) {
  Vector<Scalar> l = Vector<Scalar>::Constant(dim, lo);
  Vector<Scalar> u = Vector<Scalar>::Constant(dim, hi);
  return box_sampler<Scalar>(std::move(l), std::move(u), seed);
}

// Uniform sample from the closed l1 ball of radius R: exponential magnitudes
// normalized to the simplex, random signs, radius scaled by U^(1/d).
template <class Scalar>
PointSampler<Scalar> l1_ball_sampler(Index dim, Scalar radius, std::uint64_t seed) {
  if (radius <= Scalar(0)) throw InvalidRadius("l1_ball_sampler: radius must be positive");
  auto eng = std::make_shared<std::mt19937_64>(seed);
  return [dim, radius, eng]() {
    std::exponential_distribution<double> ex(1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vector<Scalar> x(dim);
    double total = 0;
    for (Index j = 0; j < dim; ++j) {
      x[j] = Scalar(ex(*eng));
      total += double(x[j]);
    }
    double r = double(radius) * std::pow(u(*eng), 1.0 / double(dim));
    for (Index j = 0; j < dim; ++j) {
      double sign = u(*eng) < 0.5 ? -1.0 : 1.0;
      x[j] = Scalar(sign * double(x[j]) / total * r);
    }
    return x;
  };
}

template <class Scalar>
PairSampler<Scalar> pair_sampler(PointSampler<Scalar> points) {
  return [points = std::move(points)]() {
    auto x = points();
    auto y = points();
    return std::make_pair(x, y);
  };
}

}  // namespace pliag
