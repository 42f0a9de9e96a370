#pragma once

#include <cmath>

#include "roughdrive/core/multi_index.hpp"

namespace rd {

// Picard-style weighted norms with the fixed weight g(t) = e^t: paths are
// weighted by e^{-t/lambda}, Hölder quotients are restricted to pairs and
// triples with |t - s| <= lambda. Sups are taken over grid nodes.
struct WeightedNormParams {
  double lambda = 1.0;  // tunable scale, > 0
  double gamma = 0.5;   // Hölder exponent, in (0, 3] for the map norms

  void validate_lambda() const {
    if (!(lambda > 0.0)) throw Error("WeightedNormParams: lambda must be > 0");
  }
  void validate() const {
    validate_lambda();
    if (!(gamma > 0.0) || gamma > 3.0)
      throw Error("WeightedNormParams: gamma must lie in (0, 3]");
  }
};

// sup_t e^{-t/lambda} |f_t|
template <class E>
double weighted_path_norm(const Path<E>& f, const WeightedNormParams& p) {
  p.validate_lambda();
  double best = 0.0;
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    const double w = std::exp(-f.grid.node(i) / p.lambda);
    best = std::max(best, w * value::norm(f.values[i]));
  }
  return best;
}

// sup over node pairs s < t, t - s <= lambda, of e^{-t/lambda}|a_{ts}|/(t-s)^gamma
template <class E>
double weighted_holder_norm2(const TwoIndexMap<E>& a, const WeightedNormParams& p) {
  p.validate();
  const TimeGrid& g = a.grid();
  double best = 0.0;
  for (std::size_t j = 1; j < g.size(); ++j) {
    const double t = g.node(j);
    const double w = std::exp(-t / p.lambda);
    for (std::size_t i = 0; i < j; ++i) {
      const double dt = t - g.node(i);
      if (dt > p.lambda) continue;
      const double q = w * value::norm(a.at(i, j)) / std::pow(dt, p.gamma);
      best = std::max(best, q);
    }
  }
  return best;
}

// Same for 3-index maps, over triples s < u < t with t - s <= lambda.
template <class E>
double weighted_holder_norm3(const ThreeIndexMap<E>& b, const WeightedNormParams& p) {
  p.validate();
  const TimeGrid& g = b.grid();
  double best = 0.0;
  for (std::size_t k = 2; k < g.size(); ++k) {
    const double t = g.node(k);
    const double w = std::exp(-t / p.lambda);
    for (std::size_t i = 0; i + 2 <= k; ++i) {
      const double dt = t - g.node(i);
      if (dt > p.lambda) continue;
      const double denom = std::pow(dt, p.gamma);
      for (std::size_t j = i + 1; j < k; ++j) {
        const double q = w * value::norm(b.at(i, j, k)) / denom;
        best = std::max(best, q);
      }
    }
  }
  return best;
}

}  // namespace rd
