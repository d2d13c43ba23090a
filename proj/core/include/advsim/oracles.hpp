#pragma once

#include <optional>
#include <vector>

#include "advsim/rational.hpp"

namespace advsim::oracles {

// Independent brute-force references for the [algorithm, test] dual routes.
// These intentionally use different strategies than the primary paths
// (Gaussian elimination vs closed forms, partition enumeration vs
// branch-and-bound, day simulation vs cost formulas) so agreement between
// the two is evidence rather than tautology.

// Exact solution of the tight bidding system
//   x_m = u,   sum_{j<=i} x_j = w x_{i-1}  for i = 2..m
// by rational Gaussian elimination. m <= 8.
std::vector<Rational> solve_tight(int m, const Rational& u, const Rational& w);

// Exact bin-packing optimum by plain set-partition enumeration. n <= 10.
int exhaustive_bin_opt(const std::vector<double>& items);

// Exact list-update optimum by exhaustive search over per-request
// reconfigurations (no memoization). m <= 3, n <= 7.
long exhaustive_list_opt(const std::vector<int>& seq, int m);

// Ski-rental policy cost by literal day-by-day simulation.
long ski_cost_by_simulation(std::optional<int> buy_day, int B, int D);

}  // namespace advsim::oracles
