#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "advsim/competitive.hpp"

namespace advsim::bidding {

// Roots of x^2 - wx + w, the characteristic polynomial of the tight-bid
// recurrence, plus p = rho1 - 1. Defined for w >= 4.
struct RootPair {
  double rho1 = 0;
  double rho2 = 0;
  double p = 0;
};

RootPair roots(double w);

// The four coupled sequences describing optimal tight bid systems.
//   a_i = a_{i-1} / (w - 1 - b_{i-1})        a_0 = 1
//   b_i = (1 + b_{i-1}) / (w - 1 - b_{i-1})  b_0 = 0
//   c_i = c_{i-1} + d_{i-1} a_{i-1}          c_0 = 0
//   d_i = d_{i-1} (1 + b_{i-1})              d_0 = 1
struct AbcdState {
  double a = 1, b = 0, c = 0, d = 1;
  int index = 0;
};

AbcdState abcd_step(const AbcdState& s, double w);
AbcdState abcd_recurrence(double w, int i);
AbcdState abcd(double w, int i);  // closed forms; w=4 and w>4 branches

// An increasing sequence of positive bids, stored as a rule so that bids for
// huge hidden values cost O(index) to evaluate. x_0 is 1 by convention for
// ratio accounting. A finite `length` means the strategy gives up after that
// many bids.
class BidSequence {
 public:
  BidSequence() = default;
  BidSequence(std::function<double(int)> rule, std::optional<int> length = std::nullopt)
      : rule_(std::move(rule)), length_(length) {}

  static BidSequence from_list(std::vector<double> bids);
  static BidSequence doubling();  // x_i = 2^i
  // Geometric bids base^(i - 1 + offset), i >= 1.
  static BidSequence geometric(double base, double offset);
  // Extends a materialized prefix forever, keeping the budget constraints
  // sum_{j<=i} x_j <= w x_{i-1} tight beyond the prefix.
  static BidSequence tight_extension(std::vector<double> prefix, double w);
  static BidSequence scaled(const BidSequence& base, double factor);

  double bid(int i) const;  // 1-based
  std::optional<int> length() const { return length_; }

 private:
  std::function<double(int)> rule_;
  std::optional<int> length_;
};

// Cost of playing X against hidden value u: sum of bids through the first
// bid >= u. Throws std::domain_error if a finite sequence is exhausted.
double simulate(const BidSequence& x, double u);

// The optimal w-competitive strategy that finds a trusted u exactly with its
// m-th bid. Infeasible (a_{m-1} u > w) is a distinguished empty result.
struct OptimalBid {
  std::vector<double> bids;  // the m bids; bids.back() == u
  double objective = 0;      // (sum bids)/u == c_m
  double w = 0;

  BidSequence sequence() const;  // infinite tight extension
};

std::optional<OptimalBid> optimal_bid_sequence(int m, double u, double w);

// Picks the smallest feasible m (feasibility is monotone in m) and returns
// the optimal strategy and its trusted ratio r = c_m < rho1.
struct ParetoStrategy {
  OptimalBid bid;
  int m_star = 0;
  double r_star = 0;
};

ParetoStrategy pareto_strategy(double u, double w);

// k-bit advice strategy: geometric bids rho^(i-1+a/K) with K = 2^k and
// advice symbol a = ceil(K log_rho u) mod K, so the first covering bid
// overshoots a trusted u by at most rho^(1/K). rho is rho2 while
// w <= (1+K)^2/K and 1+K beyond.
struct KbitStrategy {
  int advice_symbol = 0;
  double rho = 0;
  BidSequence sequence;
};

double kbit_rho(int k, double w);
BidSequence kbit_sequence(int k, double w, int advice_symbol);
KbitStrategy kbit_strategy(int k, double w, double u_advice);
double kbit_trusted_bound(int k, double w);           // per-branch closed form
double kbit_untrusted_value(double rho);              // rho^2/(rho-1)

// A family of strategies indexed by an advice payload, with the rule mapping
// a true hidden value to its trusted payload and the payload set swept for
// the adversarial supremum.
struct AdvisedFamily {
  std::function<BidSequence(double payload)> make;
  std::function<double(double u)> advice_for;
  std::function<std::vector<double>(double grid_max)> advice_payloads;
};

AdvisedFamily xstar_family(double w);
AdvisedFamily kbit_family(int k, double w);
AdvisedFamily doubling_family();

// Log-uniform grid over [1, grid_max] plus, per strategy under test, points
// just above each of its bids (multiplicative offset 1e-9).
struct UGrid {
  double grid_max = 1 << 20;
  int points_per_octave = 8;

  std::vector<double> base_points() const;
};

struct EmpiricalPair {
  CompetitivePair pair;
  double trusted_witness_u = 0;
  double untrusted_witness_u = 0;
  double untrusted_witness_payload = 0;
};

EmpiricalPair empirical_pair(const AdvisedFamily& family, double w, const UGrid& grid);

// Equiprobable mixture of X*_u and rho1 * X*_u (one random bit). Expected
// ratios, with the adversarial hidden values placed just above each bid of
// either branch. Requires w > 4.
struct MixtureMeasurement {
  CompetitivePair expected;  // expected trusted / untrusted ratios
  double trusted_bound = 0;    // rho1 (1 + rho1) / 2
  double untrusted_bound = 0;  // (1 + rho1) w / (2 rho1)
};

MixtureMeasurement randomized_mixture_pair(double w, const UGrid& grid);

// Growth and prefix-sum facts holding for every 4-competitive sequence:
//   x_i <= (2 + 2/i) x_{i-1}   and   sum_{j<=i} x_j >= (2 - 2/i) x_i.
void check_four_competitive_growth(const BidSequence& x, int count);

// Empirical untrusted ratio of a sequence alone: sup of prefix-sum/x_{i-1}
// over i in [1, count], with x_0 = 1.
double untrusted_sup(const BidSequence& x, int count);

// Round-based adversarial lower-bound game over K strategies that are each
// (empirically) 4-competitive. Returns the largest trusted-ratio witness the
// advice function is forced into. `round_index` is the i of the construction
// and must be large enough that prefix sums are within (2 - 0.01) x_i.
double adversary_game(const std::vector<BidSequence>& strategies,
                      const std::function<int(double)>& advice_fn, int round_index);

constexpr double kAdversarialOffset = 1e-9;  // u placed at bid*(1+offset)

}  // namespace advsim::bidding
