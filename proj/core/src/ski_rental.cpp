#include "advsim/ski_rental.hpp"

#include <cmath>
#include <stdexcept>

#include "advsim/errors.hpp"

namespace advsim::ski {

std::string OneBitPolicy::str() const {
  auto one = [](BuyDay d) { return d ? std::to_string(*d) : std::string("never"); };
  return "buy0=" + one(buy_day_advice0) + ",buy1=" + one(buy_day_advice1);
}

long buy_day_cost(BuyDay buy_day, int B, int D) {
  if (!buy_day) return D;  // rent forever
  if (D < *buy_day) return D;
  return (*buy_day - 1) + B;
}

OneBitPolicy ak_policy(int k, int B) {
  if (k < 1 || k > B) throw std::invalid_argument("ak_policy: k must satisfy 1 <= k <= B");
  return {BuyDay(k), BuyDay(B)};
}

long ak_cost(int k, int B, int D, int advice_bit) {
  if (k < 1 || k > B) throw std::invalid_argument("ak_cost: k must satisfy 1 <= k <= B");
  if (B < 1 || D < 1) throw std::invalid_argument("ak_cost: B and D must be positive");
  if (advice_bit != 0 && advice_bit != 1) throw std::invalid_argument("ak_cost: advice bit must be 0 or 1");
  const OneBitPolicy p = ak_policy(k, B);
  return buy_day_cost(advice_bit == 0 ? p.buy_day_advice0 : p.buy_day_advice1, B, D);
}

RationalPair ak_pair(int k, int B) {
  if (k < 1 || k > B) throw std::invalid_argument("ak_pair: k must satisfy 1 <= k <= B");
  return {Rational(1) + Rational(k - 1, B), Rational(1) + Rational(B - 1, k)};
}

namespace {

// The advice bit is the indicator of D < B; ties at D = B report 0.
int truthful_bit(int B, int D) { return D < B ? 1 : 0; }

}  // namespace

MeasuredPair measure_pair(const OneBitPolicy& policy, int B, int d_cap) {
  if (B < 1) throw std::invalid_argument("measure_pair: B must be positive");
  if (d_cap < 3 * B) throw std::invalid_argument("measure_pair: D sweep must cover [1, 3B]");

  MeasuredPair out;
  out.pair.r = Rational(0);
  out.pair.w = Rational(0);
  for (int D = 1; D <= d_cap; ++D) {
    const Rational opt(opt_cost(B, D));
    for (int bit = 0; bit <= 1; ++bit) {
      const BuyDay day = bit == 0 ? policy.buy_day_advice0 : policy.buy_day_advice1;
      const Rational ratio = Rational(buy_day_cost(day, B, D)) / opt;
      if (bit == truthful_bit(B, D) && ratio > out.pair.r) {
        out.pair.r = ratio;
        out.trusted_witness_days = D;
      }
      if (ratio > out.pair.w) {
        out.pair.w = ratio;
        out.untrusted_witness_days = D;
        out.untrusted_witness_bit = bit;
      }
    }
  }

  // Finite buy days: cost and OPT are constant beyond max(buy day, B), so the
  // capped sweep equals the sup over all D.
  if (policy.buy_day_advice0 && policy.buy_day_advice1 &&
      *policy.buy_day_advice0 < d_cap && *policy.buy_day_advice1 < d_cap) {
    for (int bit = 0; bit <= 1; ++bit) {
      const BuyDay day = bit == 0 ? policy.buy_day_advice0 : policy.buy_day_advice1;
      require(buy_day_cost(day, B, d_cap) == buy_day_cost(day, B, d_cap - 1) &&
                  opt_cost(B, d_cap) == opt_cost(B, d_cap - 1),
              "ski D sweep saturation at cap");
    }
  }
  require(!(out.pair.w < out.pair.r), "competitive pair r <= w");
  return out;
}

std::vector<std::pair<OneBitPolicy, RationalPair>> enumerate_policies_frontier(int B) {
  if (B < 1 || B > 50) throw std::invalid_argument("enumerate_policies_frontier: B must be in [1, 50]");

  std::vector<BuyDay> days;
  for (int d = 1; d <= 2 * B; ++d) days.emplace_back(d);
  days.emplace_back(std::nullopt);

  std::vector<std::pair<OneBitPolicy, RationalPair>> measured;
  measured.reserve(days.size() * days.size());
  for (const BuyDay& d0 : days)
    for (const BuyDay& d1 : days) {
      OneBitPolicy policy{d0, d1};
      measured.emplace_back(policy, measure_pair(policy, B).pair);
    }

  auto frontier = pareto_frontier(measured, [](const auto& p) { return p.second; });

  for (const auto& [policy, pair] : frontier) {
    bool covered = false;
    for (int k = 1; k <= B && !covered; ++k) covered = dominates(ak_pair(k, B), pair);
    require(covered, "every frontier policy is dominated-or-equaled by a one-parameter family member");
  }
  return frontier;
}

CompetitivePair randomized_pair(double lambda, int B) {
  if (B < 2) throw std::invalid_argument("randomized_pair: B must be at least 2");
  if (!(lambda > 1.0 / B && lambda < 1.0))
    throw std::invalid_argument("randomized_pair: lambda must lie in (1/B, 1)");
  const double r = lambda / (1.0 - std::exp(-lambda));
  const double w = 1.0 / (1.0 - std::exp(-(lambda - 1.0 / B)));
  return {r, w};
}

double randomized_trusted_ratio(double w) {
  if (!(w > 1.0)) throw std::invalid_argument("randomized_trusted_ratio: w must exceed 1");
  return w * std::log(w / (w - 1.0));
}

double deterministic_trusted_ratio(double w) {
  if (!(w > 1.0)) throw std::invalid_argument("deterministic_trusted_ratio: w must exceed 1");
  return w / (w - 1.0);
}

}  // namespace advsim::ski
