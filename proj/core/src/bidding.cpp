#include "advsim/bidding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "advsim/errors.hpp"

namespace advsim::bidding {

namespace {

constexpr double kFeasibilitySlack = 1e-12;  // boundary a_{m-1} u = w is feasible
constexpr int kMaxBids = 4096;

bool approx_rel(double x, double y, double tol) {
  return std::fabs(x - y) <= tol * std::max({1.0, std::fabs(x), std::fabs(y)});
}

}  // namespace

RootPair roots(double w) {
  if (!(w >= 4.0))
    throw std::invalid_argument("roots: w must be at least 4 (characteristic roots are complex below)");
  const double q = std::sqrt(w * w - 4.0 * w);
  return {(w - q) / 2.0, (w + q) / 2.0, (w - 2.0 - q) / 2.0};
}

AbcdState abcd_step(const AbcdState& s, double w) {
  AbcdState n;
  n.a = s.a / (w - 1.0 - s.b);
  n.b = (1.0 + s.b) / (w - 1.0 - s.b);
  n.c = s.c + s.d * s.a;
  n.d = s.d * (1.0 + s.b);
  n.index = s.index + 1;
  return n;
}

AbcdState abcd_recurrence(double w, int i) {
  if (!(w >= 4.0)) throw std::invalid_argument("abcd: w must be at least 4");
  if (i < 0) throw std::invalid_argument("abcd: index must be nonnegative");
  AbcdState s;
  for (int j = 0; j < i; ++j) s = abcd_step(s, w);
  return s;
}

AbcdState abcd(double w, int i) {
  if (!(w >= 4.0)) throw std::invalid_argument("abcd: w must be at least 4");
  if (i < 0) throw std::invalid_argument("abcd: index must be nonnegative");
  AbcdState s;
  s.index = i;
  if (i == 0) return s;
  if (w == 4.0) {
    s.a = 2.0 / (i + 2) / std::ldexp(1.0, i);
    s.b = static_cast<double>(i) / (i + 2);
    s.c = 2.0 - 2.0 / (i + 1);
    s.d = std::ldexp(1.0, i) / (i + 1);
  } else {
    const double p = roots(w).p;
    const double pi = std::pow(p, i);
    s.a = (p * p - 1.0) / (pi * p * p - 1.0) * std::pow(p / w, i / 2.0);
    s.b = p * (pi - 1.0) / (pi * p * p - 1.0);
    s.c = 1.0 + p - pi * (p * p - 1.0) / (pi * p - 1.0);
    s.d = (p - 1.0) / (pi * p - 1.0) * std::pow(p * w, i / 2.0);
  }
  return s;
}

BidSequence BidSequence::from_list(std::vector<double> bids) {
  const int n = static_cast<int>(bids.size());
  auto stored = std::make_shared<std::vector<double>>(std::move(bids));
  return BidSequence([stored](int i) { return (*stored)[i - 1]; }, n);
}

BidSequence BidSequence::doubling() {
  return BidSequence([](int i) { return std::ldexp(1.0, i); });
}

BidSequence BidSequence::geometric(double base, double offset) {
  if (!(base > 1.0)) throw std::invalid_argument("geometric bids need base > 1");
  return BidSequence([base, offset](int i) { return std::pow(base, (i - 1) + offset); });
}

BidSequence BidSequence::tight_extension(std::vector<double> prefix, double w) {
  if (prefix.empty()) throw std::invalid_argument("tight_extension: prefix must be nonempty");
  struct State {
    std::vector<double> bids;
    double total;
    double w;
  };
  auto st = std::make_shared<State>();
  st->bids = std::move(prefix);
  st->total = 0;
  for (double b : st->bids) st->total += b;
  st->w = w;
  return BidSequence([st](int i) {
    while (static_cast<int>(st->bids.size()) < i) {
      // keep sum_{j<=n+1} x_j = w x_n tight past the prefix
      const double next = st->w * st->bids.back() - st->total;
      st->bids.push_back(next);
      st->total += next;
    }
    return st->bids[i - 1];
  });
}

BidSequence BidSequence::scaled(const BidSequence& base, double factor) {
  return BidSequence([base, factor](int i) { return factor * base.bid(i); }, base.length());
}

double BidSequence::bid(int i) const {
  if (i < 1) throw std::invalid_argument("bids are 1-indexed");
  if (length_ && i > *length_) throw std::out_of_range("bid index past end of finite sequence");
  return rule_(i);
}

double simulate(const BidSequence& x, double u) {
  if (!(u > 0)) throw std::invalid_argument("simulate: hidden value must be positive");
  double cost = 0;
  for (int i = 1; i <= kMaxBids; ++i) {
    if (x.length() && i > *x.length())
      throw std::domain_error("bid sequence exhausted below the hidden value");
    const double b = x.bid(i);
    cost += b;
    if (b >= u) return cost;
  }
  throw invariant_error("bid sequence reaches every hidden value within the bid cap");
}

std::optional<OptimalBid> optimal_bid_sequence(int m, double u, double w) {
  if (m < 1) throw std::invalid_argument("optimal_bid_sequence: m must be positive");
  if (!(u >= 1.0)) throw std::invalid_argument("optimal_bid_sequence: u must be at least 1");
  if (!(w >= 4.0)) throw std::invalid_argument("optimal_bid_sequence: w must be at least 4");

  const double a_m1 = abcd(w, m - 1).a;
  if (a_m1 * u > w * (1.0 + kFeasibilitySlack)) return std::nullopt;

  std::vector<double> bids(m);
  if (m == 1) {
    bids[0] = u;
  } else if (w == 4.0) {
    const double top = std::ldexp(1.0, m - 1) * a_m1;  // 2^{m-1} a_{m-1}
    const double denom = std::ldexp(1.0, m) * (m - 1);
    const double alpha = (top * m - 1.0) / denom * u;
    const double beta = (1.0 - top) / denom * u;
    for (int i = 1; i <= m; ++i) bids[i - 1] = (alpha + beta * i) * std::ldexp(1.0, i);
  } else {
    const RootPair rp = roots(w);
    const double r1m = std::pow(rp.rho1, m - 1);
    const double r2m = std::pow(rp.rho2, m - 1);
    const double alpha = (a_m1 * r2m - 1.0) / (r2m - r1m) * u;
    const double beta = (a_m1 * r1m - 1.0) / (r1m - r2m) * u;
    for (int i = 1; i <= m; ++i)
      bids[i - 1] = alpha * std::pow(rp.rho1, i - 1) + beta * std::pow(rp.rho2, i - 1);
  }

  require(approx_rel(bids[m - 1], u, 1e-9), "optimal bids: x_m = u");
  bids[m - 1] = u;
  require(approx_rel(bids[0], a_m1 * u, 1e-9), "optimal bids: x_1 = a_{m-1} u");
  double total = 0;
  for (int i = 1; i <= m; ++i) {
    if (i >= 2) {
      require(bids[i - 1] > bids[i - 2], "optimal bids strictly increasing");
      require(approx_rel(total + bids[i - 1], w * bids[i - 2], 1e-9),
              "optimal bids: budget constraint tight");
    }
    total += bids[i - 1];
  }
  const double c_m = abcd(w, m).c;
  require(approx_rel(total / u, c_m, 1e-9), "optimal bids: objective equals c_m");

  OptimalBid out;
  out.bids = std::move(bids);
  out.objective = total / u;
  out.w = w;
  return out;
}

BidSequence OptimalBid::sequence() const { return BidSequence::tight_extension(bids, w); }

ParetoStrategy pareto_strategy(double u, double w) {
  if (!(u >= 1.0)) throw std::invalid_argument("pareto_strategy: u must be at least 1");
  if (!(w >= 4.0)) throw std::invalid_argument("pareto_strategy: w must be at least 4");

  const int cap = static_cast<int>(std::ceil(std::log2(std::max(u, 1.0)))) + 2;
  double prev_a = std::numeric_limits<double>::infinity();
  int m = 1;
  for (;; ++m) {
    require(m <= cap, "feasible bid count within ceil(log2 u) + 2");
    const double a = abcd(w, m - 1).a;
    require(a <= prev_a * (1.0 + 1e-12), "a_i nonincreasing (feasibility monotone in m)");
    prev_a = a;
    if (a * u <= w * (1.0 + kFeasibilitySlack)) break;
  }

  auto bid = optimal_bid_sequence(m, u, w);
  require(bid.has_value(), "smallest feasible m yields a strategy");
  const double r_star = bid->objective;
  require(r_star < roots(w).rho1 + 1e-9, "trusted ratio below rho1");
  return {std::move(*bid), m, r_star};
}

double kbit_rho(int k, double w) {
  if (k < 0 || k > 20) throw std::invalid_argument("kbit: k must be in [0, 20]");
  if (!(w >= 4.0)) throw std::invalid_argument("kbit: w must be at least 4");
  const double K = std::ldexp(1.0, k);
  const double w0 = (1.0 + K) * (1.0 + K) / K;
  return w <= w0 ? roots(w).rho2 : 1.0 + K;
}

BidSequence kbit_sequence(int k, double w, int advice_symbol) {
  const int K = 1 << k;
  if (advice_symbol < 0 || advice_symbol >= K)
    throw std::invalid_argument("kbit: advice symbol out of range");
  return BidSequence::geometric(kbit_rho(k, w), static_cast<double>(advice_symbol) / K);
}

KbitStrategy kbit_strategy(int k, double w, double u_advice) {
  if (!(u_advice >= 1.0)) throw std::invalid_argument("kbit: hidden value must be at least 1");
  const int K = 1 << k;
  const double rho = kbit_rho(k, w);
  const double L = K * std::log(u_advice) / std::log(rho);
  const double eps = 1e-12 * (1.0 + std::fabs(L));
  const long long up = static_cast<long long>(std::ceil(L - eps));
  const int a = static_cast<int>(((up % K) + K) % K);
  return {a, rho, kbit_sequence(k, w, a)};
}

double kbit_trusted_bound(int k, double w) {
  const double K = std::ldexp(1.0, k);
  const double rho = kbit_rho(k, w);
  return std::pow(rho, 1.0 + 1.0 / K) / (rho - 1.0);
}

double kbit_untrusted_value(double rho) { return rho * rho / (rho - 1.0); }

AdvisedFamily xstar_family(double w) {
  AdvisedFamily f;
  f.make = [w](double payload) { return pareto_strategy(payload, w).bid.sequence(); };
  f.advice_for = [](double u) { return u; };
  f.advice_payloads = [](double grid_max) {
    std::vector<double> out;
    for (double u = 1.0; u <= grid_max * 1.0001; u *= std::pow(2.0, 1.0 / 3.0)) out.push_back(u);
    return out;
  };
  return f;
}

AdvisedFamily kbit_family(int k, double w) {
  AdvisedFamily f;
  f.make = [k, w](double payload) {
    return kbit_sequence(k, w, static_cast<int>(std::llround(payload)));
  };
  f.advice_for = [k, w](double u) {
    return static_cast<double>(kbit_strategy(k, w, u).advice_symbol);
  };
  f.advice_payloads = [k](double) {
    std::vector<double> out;
    for (int a = 0; a < (1 << k); ++a) out.push_back(a);
    return out;
  };
  return f;
}

AdvisedFamily doubling_family() {
  AdvisedFamily f;
  f.make = [](double) { return BidSequence::doubling(); };
  f.advice_for = [](double) { return 0.0; };
  f.advice_payloads = [](double) { return std::vector<double>{0.0}; };
  return f;
}

std::vector<double> UGrid::base_points() const {
  std::vector<double> out;
  const double step = std::pow(2.0, 1.0 / points_per_octave);
  for (double u = 1.0; u <= grid_max * (1.0 + 1e-9); u *= step) out.push_back(u);
  out.push_back(grid_max);
  return out;
}

namespace {

// Bids of x up to `cap`, at most kMaxBids of them.
std::vector<double> bids_up_to(const BidSequence& x, double cap) {
  std::vector<double> out;
  for (int i = 1; i <= kMaxBids; ++i) {
    if (x.length() && i > *x.length()) break;
    const double b = x.bid(i);
    if (b > cap) break;
    out.push_back(b);
  }
  return out;
}

}  // namespace

EmpiricalPair empirical_pair(const AdvisedFamily& family, double w, const UGrid& grid) {
  const std::vector<double> base = grid.base_points();
  EmpiricalPair out;

  // Trusted: the advice encodes the true hidden value. Hidden values sweep
  // the base grid plus points just above the bids of correctly-advised
  // strategies, so bid boundaries are probed under truthful advice too.
  std::vector<double> trusted_points = base;
  for (size_t s = 0; s < base.size(); s += 4) {
    const BidSequence x = family.make(family.advice_for(base[s]));
    for (double b : bids_up_to(x, grid.grid_max))
      trusted_points.push_back(b * (1.0 + kAdversarialOffset));
  }
  double r_hat = 0;
  for (double u : trusted_points) {
    if (u < 1.0) continue;
    const double ratio = simulate(family.make(family.advice_for(u)), u) / u;
    if (ratio > r_hat) {
      r_hat = ratio;
      out.trusted_witness_u = u;
    }
  }

  // Untrusted: the supremum additionally ranges over every advice payload.
  double w_hat = 0;
  for (double payload : family.advice_payloads(grid.grid_max)) {
    const BidSequence x = family.make(payload);
    std::vector<double> points = base;
    for (double b : bids_up_to(x, grid.grid_max))
      points.push_back(b * (1.0 + kAdversarialOffset));
    for (double u : points) {
      if (u < 1.0) continue;
      double cost;
      try {
        cost = simulate(x, u);
      } catch (const std::domain_error&) {
        continue;  // finite strategy exhausted: no ratio to record
      }
      const double ratio = cost / u;
      if (ratio > w_hat) {
        w_hat = ratio;
        out.untrusted_witness_u = u;
        out.untrusted_witness_payload = payload;
      }
    }
  }

  out.pair = {r_hat, std::max(r_hat, w_hat)};
  (void)w;
  return out;
}

MixtureMeasurement randomized_mixture_pair(double w, const UGrid& grid) {
  if (!(w > 4.0))
    throw std::invalid_argument("randomized mixture requires w > 4 (distinct roots)");
  const double rho1 = roots(w).rho1;

  MixtureMeasurement out;
  out.trusted_bound = rho1 * (1.0 + rho1) / 2.0;
  out.untrusted_bound = (1.0 + rho1) * w / (2.0 * rho1);

  double r_hat = 0;
  for (double u : grid.base_points()) {
    const BidSequence x = pareto_strategy(u, w).bid.sequence();
    const BidSequence y = BidSequence::scaled(x, rho1);
    const double expected = (simulate(x, u) + simulate(y, u)) / (2.0 * u);
    r_hat = std::max(r_hat, expected);
  }

  double w_hat = 0;
  for (double payload : xstar_family(w).advice_payloads(grid.grid_max)) {
    const BidSequence x = pareto_strategy(payload, w).bid.sequence();
    const BidSequence y = BidSequence::scaled(x, rho1);
    const std::vector<double> xb = bids_up_to(x, grid.grid_max);
    for (size_t i = 0; i + 1 < xb.size(); ++i)
      require(rho1 * xb[i] > xb[i] && rho1 * xb[i] < xb[i + 1],
              "mixture branch bids interleave: x_i < rho1 x_i < x_{i+1}");
    std::vector<double> points;
    for (double b : xb) points.push_back(b * (1.0 + kAdversarialOffset));
    for (double b : bids_up_to(y, grid.grid_max)) points.push_back(b * (1.0 + kAdversarialOffset));
    for (double u : points) {
      if (u < 1.0) continue;
      const double expected = (simulate(x, u) + simulate(y, u)) / (2.0 * u);
      w_hat = std::max(w_hat, expected);
    }
  }

  require(r_hat <= out.trusted_bound + 1e-3, "mixture expected trusted ratio within bound");
  require(w_hat <= out.untrusted_bound + 1e-3, "mixture expected untrusted ratio within bound");
  out.expected = {r_hat, w_hat};
  return out;
}

void check_four_competitive_growth(const BidSequence& x, int count) {
  double prev = 1.0;  // x_0 = 1 convention
  double total = 0;
  for (int i = 1; i <= count; ++i) {
    const double b = x.bid(i);
    require(b <= (2.0 + 2.0 / i) * prev * (1.0 + 1e-9),
            "4-competitive growth: x_i <= (2 + 2/i) x_{i-1}");
    total += b;
    require(total >= (2.0 - 2.0 / i) * b * (1.0 - 1e-9),
            "4-competitive prefix sums: T_i >= (2 - 2/i) x_i");
    prev = b;
  }
}

double untrusted_sup(const BidSequence& x, int count) {
  double sup = 0;
  double total = 0;
  double prev = 1.0;
  for (int i = 1; i <= count; ++i) {
    const double b = x.bid(i);
    total += b;
    sup = std::max(sup, total / prev);
    prev = b;
  }
  return sup;
}

double adversary_game(const std::vector<BidSequence>& strategies,
                      const std::function<int(double)>& advice_fn, int round_index) {
  const int K = static_cast<int>(strategies.size());
  if (K < 1) throw std::invalid_argument("adversary game needs at least one strategy");
  if (round_index < 200)
    throw std::invalid_argument("adversary game: index must be large enough that 2/i <= 0.01");
  for (const BidSequence& x : strategies)
    if (untrusted_sup(x, round_index + 8) > 4.0 + 1e-6)
      throw std::invalid_argument("adversary game: every strategy must be 4-competitive");

  const double anchor = strategies[K - 1].bid(round_index - 1);

  // First bid of each lower-indexed strategy strictly above the anchor.
  std::vector<double> bar(K > 1 ? K - 1 : 0);
  for (int j = 0; j + 1 < K; ++j) {
    int i = 1;
    while (strategies[j].bid(i) <= anchor) {
      ++i;
      require(i <= kMaxBids, "adversary game: strategies exceed the anchor bid");
    }
    bar[j] = strategies[j].bid(i);
  }

  double witness = 0;
  double u = anchor * (1.0 + kAdversarialOffset);
  int prev_choice = -1;
  for (int round = 0; round <= K; ++round) {
    const int j = advice_fn(u);
    require(j >= 0 && j < K, "adversary game: advice picks a strategy in range");
    witness = std::max(witness, simulate(strategies[j], u) / u);
    if (j == K - 1) break;       // the top strategy ends the game
    if (j <= prev_choice) break; // non-progressing advice already paid the recorded ratio
    prev_choice = j;
    u = bar[j] * (1.0 + kAdversarialOffset);
  }
  return witness;
}

}  // namespace advsim::bidding
