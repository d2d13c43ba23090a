#pragma once

#include <optional>
#include <string>
#include <vector>

#include "advsim/competitive.hpp"

namespace advsim::ski {

// Rent costs 1 per day, buying costs B; D days of skiing. OPT = min(D, B).
struct SkiInstance {
  int buy_cost = 1;  // B
  int days = 1;      // D
};

inline long opt_cost(int B, int D) { return std::min(B, D); }

// A deterministic 1-bit-advice policy: the day it buys under each advice
// value, or never (rent forever). The advice bit is the indicator of D < B.
using BuyDay = std::optional<int>;

struct OneBitPolicy {
  BuyDay buy_day_advice0;  // played when the bit claims D >= B
  BuyDay buy_day_advice1;  // played when the bit claims D < B

  std::string str() const;
};

// Cost of renting until `buy_day` and buying then, over D days.
long buy_day_cost(BuyDay buy_day, int B, int D);

// The one-parameter family: with bit 1 rent until day B-1 and buy on day B,
// with bit 0 buy on day k. Requires 1 <= k <= B.
OneBitPolicy ak_policy(int k, int B);
long ak_cost(int k, int B, int D, int advice_bit);

// Exact competitive pair (1 + (k-1)/B, 1 + (B-1)/k) of the family member.
RationalPair ak_pair(int k, int B);

struct MeasuredPair {
  RationalPair pair;
  int trusted_witness_days = 0;
  int untrusted_witness_days = 0;
  int untrusted_witness_bit = 0;
};

// Empirical (r, w) of a policy: exact sup of cost/OPT over D in [1, d_cap]
// with the truthful bit (r) and over both bits (w). d_cap must be >= 3B.
// For policies with finite buy days the sweep provably saturates at the cap;
// that saturation is asserted. Rent-forever branches grow without bound and
// are reported at the capped witness.
MeasuredPair measure_pair(const OneBitPolicy& policy, int B, int d_cap);

inline MeasuredPair measure_pair(const OneBitPolicy& policy, int B) {
  return measure_pair(policy, B, 3 * B);
}

// Enumerates every 1-bit policy with buy days in {1..2B, never}^2, measures
// each over D in [1, 3B], and returns the Pareto frontier. Asserts that every
// frontier point is dominated-or-equaled by some ak_pair(k, B). B <= 50.
std::vector<std::pair<OneBitPolicy, RationalPair>> enumerate_policies_frontier(int B);

// Competitive pair of the randomized rent-or-buy scheme with parameter
// lambda in (1/B, 1): (lambda/(1-e^-lambda), 1/(1-e^-(lambda-1/B))).
// Formula-level only; the underlying distribution is not simulated.
CompetitivePair randomized_pair(double lambda, int B);

// Large-B forms of the trusted ratio at a fixed untrusted ratio w:
// randomized w*ln(w/(w-1)) versus deterministic w/(w-1).
double randomized_trusted_ratio(double w);
double deterministic_trusted_ratio(double w);

}  // namespace advsim::ski
