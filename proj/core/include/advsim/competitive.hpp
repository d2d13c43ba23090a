#pragma once

#include <string>
#include <utility>
#include <vector>

#include "advsim/rational.hpp"

namespace advsim {

// Pair of competitive ratios of an advice-augmented online algorithm:
// r under trusted advice, w under adversarially chosen advice.
// Invariant: r <= w (the adversary may always play the trusted string).
struct CompetitivePair {
  double r = 0.0;
  double w = 0.0;

  friend bool operator==(const CompetitivePair& a, const CompetitivePair& b) {
    return a.r == b.r && a.w == b.w;
  }
};

// Exact variant used where the ratios are rational by construction
// (ski rental, bin-packing weights).
struct RationalPair {
  Rational r;
  Rational w;

  CompetitivePair to_double() const { return {r.to_double(), w.to_double()}; }

  friend bool operator==(const RationalPair& a, const RationalPair& b) {
    return a.r == b.r && a.w == b.w;
  }
};

// a dominates b iff a is at least as good in both coordinates.
inline bool dominates(const CompetitivePair& a, const CompetitivePair& b) {
  return a.r <= b.r && a.w <= b.w;
}
inline bool dominates(const RationalPair& a, const RationalPair& b) {
  return a.r <= b.r && a.w <= b.w;
}

// Subset of `points` not strictly dominated by another element. Input order
// is preserved among survivors; identical pairs are all kept.
template <class T, class PairOf>
std::vector<T> pareto_frontier(const std::vector<T>& points, PairOf pair_of) {
  std::vector<T> out;
  for (size_t i = 0; i < points.size(); ++i) {
    bool removed = false;
    for (size_t j = 0; j < points.size() && !removed; ++j) {
      if (j == i) continue;
      const auto& pi = pair_of(points[i]);
      const auto& pj = pair_of(points[j]);
      removed = dominates(pj, pi) && !(pj == pi);
    }
    if (!removed) out.push_back(points[i]);
  }
  return out;
}

inline std::vector<std::pair<std::string, CompetitivePair>> pareto_frontier(
    const std::vector<std::pair<std::string, CompetitivePair>>& points) {
  return pareto_frontier(points, [](const auto& p) { return p.second; });
}

// Running empirical supremum over evaluated inputs, with the witness input
// that attained it. `additive_slack` records the constant subtracted before
// the ratio was formed on asymptotic problems (0 elsewhere).
struct RatioAccumulator {
  double max_ratio = 0.0;
  std::string arg_max;
  double additive_slack = 0.0;

  void observe(double ratio, const std::string& witness) {
    if (ratio > max_ratio) {
      max_ratio = ratio;
      arg_max = witness;
    }
  }
};

}  // namespace advsim
