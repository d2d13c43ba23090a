#include "advsim/list_update.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "advsim/errors.hpp"
#include "advsim/rng.hpp"

namespace advsim::lu {

ListState ListState::initial(int m, int bit_init) {
  if (m < 1) throw std::invalid_argument("list length must be positive");
  if (bit_init != 0 && bit_init != 1) throw std::invalid_argument("bits start at 0 or 1");
  ListState s;
  s.order.resize(m);
  std::iota(s.order.begin(), s.order.end(), 1);
  s.bits.assign(m, static_cast<uint8_t>(bit_init));
  s.history.assign(m, {});
  return s;
}

int ListState::position(int item) const {
  for (size_t p = 0; p < order.size(); ++p)
    if (order[p] == item) return static_cast<int>(p) + 1;
  throw std::invalid_argument("unknown list item " + std::to_string(item));
}

void ListState::move_to(int item, int new_pos1) {
  const int from = position(item) - 1;
  const int to = new_pos1 - 1;
  if (to > from) throw std::invalid_argument("free exchanges only move items forward");
  for (int p = from; p > to; --p) order[p] = order[p - 1];
  order[to] = item;
}

int kendall_tau(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("kendall_tau: length mismatch");
  const int m = static_cast<int>(a.size());
  std::vector<int> pos_b(m + 1);
  for (int p = 0; p < m; ++p) pos_b[b[p]] = p;
  int inversions = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (pos_b[a[i]] > pos_b[a[j]]) ++inversions;
  return inversions;
}

namespace {

long access(ListState& s, int item) {
  const int pos = s.position(item);
  ++s.time;
  s.history[item - 1].push_back(s.time);
  return pos;
}

}  // namespace

long serve_mtf(ListState& s, int item) {
  const long cost = access(s, item);
  s.move_to(item, 1);
  return cost;
}

long serve_mtf2(ListState& s, int item) {
  const long cost = access(s, item);
  s.bits[item - 1] ^= 1;
  if (s.bits[item - 1] == 0) s.move_to(item, 1);
  return cost;
}

long serve_timestamp(ListState& s, int item) {
  const long cost = access(s, item);
  const auto& hist = s.history[item - 1];
  if (hist.size() < 2) return cost;  // first-ever access: no move
  const int prev_access = hist[hist.size() - 2];
  for (int p = 0; p < cost - 1; ++p) {
    const int other = s.order[p];
    const auto& oh = s.history[other - 1];
    int count = 0;
    for (auto it = oh.rbegin(); it != oh.rend() && *it > prev_access; ++it) ++count;
    if (count <= 1) {
      s.move_to(item, p + 1);
      break;
    }
  }
  return cost;
}

const char* advice_name(AdviceTag tag) {
  switch (tag) {
    case AdviceTag::Timestamp: return "ts";
    case AdviceTag::Mtfe: return "mtfe";
    case AdviceTag::Mtfo: return "mtfo";
  }
  return "?";
}

namespace {

void check_requests(const std::vector<int>& seq, int m) {
  for (int r : seq)
    if (r < 1 || r > m) throw std::invalid_argument("request outside item range 1..m");
}

}  // namespace

long run_mtf(const std::vector<int>& seq, int m) {
  check_requests(seq, m);
  ListState s = ListState::initial(m, 0);
  long cost = 0;
  for (int r : seq) cost += serve_mtf(s, r);
  return cost;
}

long run_mtf2(const std::vector<int>& seq, int m, int bit_init) {
  check_requests(seq, m);
  ListState s = ListState::initial(m, bit_init);
  long cost = 0;
  for (int r : seq) cost += serve_mtf2(s, r);
  return cost;
}

long run_timestamp(const std::vector<int>& seq, int m) {
  check_requests(seq, m);
  ListState s = ListState::initial(m, 0);
  long cost = 0;
  for (int r : seq) cost += serve_timestamp(s, r);
  return cost;
}

long run_advice_alg(AdviceTag tag, const std::vector<int>& seq, int m) {
  switch (tag) {
    case AdviceTag::Timestamp: return run_timestamp(seq, m);
    case AdviceTag::Mtfe: return run_mtf2(seq, m, 0);
    case AdviceTag::Mtfo: return run_mtf2(seq, m, 1);
  }
  throw std::invalid_argument("unknown advice tag");
}

const char* phase_kind_name(PhaseRow::Kind k) {
  switch (k) {
    case PhaseRow::Kind::Trusting: return "trusting";
    case PhaseRow::Kind::Ignoring: return "ignoring";
    case PhaseRow::Kind::Timestamp: return "timestamp";
  }
  return "?";
}

int CostLedger::trusting_phases() const {
  int n = 0;
  for (const PhaseRow& p : per_phase)
    if (p.kind == PhaseRow::Kind::Trusting) ++n;
  return n;
}

ToggleResult toggle_serve(const std::vector<int>& seq, const ToggleConfig& config) {
  if (config.m < 2) throw std::invalid_argument("toggle: m must be at least 2");
  if (config.beta < Rational(0) || config.beta > Rational(1, 2))
    throw std::invalid_argument("toggle: beta must lie in [0, 1/2]");
  check_requests(seq, config.m);

  ToggleResult out;

  if (config.advice == AdviceTag::Timestamp) {
    ListState s = ListState::initial(config.m, 0);
    PhaseRow row;
    row.kind = PhaseRow::Kind::Timestamp;
    row.first_request = seq.empty() ? 0 : 1;
    for (size_t i = 0; i < seq.size(); ++i) {
      row.access_cost += serve_timestamp(s, seq[i]);
      row.last_request = static_cast<int>(i) + 1;
    }
    row.completed = true;
    out.ledger.access_cost = row.access_cost;
    out.ledger.per_phase.push_back(row);
    out.final_state = std::move(s);
    return out;
  }

  const int bit_init = config.advice == AdviceTag::Mtfe ? 0 : 1;
  const long m3 = static_cast<long>(config.m) * config.m * config.m;
  const Rational ignoring_threshold = config.beta * Rational(m3);
  const bool skip_ignoring = config.beta.is_zero();

  // The shadow runs the advised rule over the full prefix; trusting phases
  // reconfigure to it and then stay in lockstep with it.
  ListState shadow = ListState::initial(config.m, bit_init);
  ListState toggle = ListState::initial(config.m, bit_init);

  bool trusting = true;
  PhaseRow row;
  row.kind = PhaseRow::Kind::Trusting;
  row.first_request = 1;
  // The first trusting phase reconfigures against the empty prefix: no cost.
  long paid = kendall_tau(toggle.order, shadow.order);
  row.paid_cost += paid;
  out.ledger.paid_cost += paid;

  auto close_phase = [&](int last, bool completed, int next_first) {
    row.last_request = last;
    row.completed = completed;
    out.ledger.per_phase.push_back(row);
    row = PhaseRow{};
    row.first_request = next_first;
  };

  for (size_t i = 0; i < seq.size(); ++i) {
    const int r = seq[i];
    const int req_no = static_cast<int>(i) + 1;
    long cost;
    if (trusting) {
      cost = serve_mtf2(toggle, r);
      serve_mtf2(shadow, r);
      if (!toggle.same_configuration(shadow)) out.trusting_matches_shadow = false;
    } else {
      cost = serve_mtf(toggle, r);
      serve_mtf2(shadow, r);
    }
    row.access_cost += cost;
    out.ledger.access_cost += cost;

    const bool last_request = i + 1 == seq.size();
    bool phase_over = false;
    if (trusting) {
      phase_over = row.access_cost >= m3;
    } else {
      phase_over = Rational(row.access_cost) > ignoring_threshold;
    }

    if (phase_over && !last_request) {
      close_phase(req_no, true, req_no + 1);
      if (trusting && !skip_ignoring) {
        trusting = false;
        row.kind = PhaseRow::Kind::Ignoring;
      } else {
        trusting = true;
        row.kind = PhaseRow::Kind::Trusting;
        const long reconf = kendall_tau(toggle.order, shadow.order);
        toggle.order = shadow.order;
        toggle.bits = shadow.bits;
        row.paid_cost += reconf;
        out.ledger.paid_cost += reconf;
      }
    } else if (last_request) {
      close_phase(req_no, phase_over, 0);
    }
  }

  out.final_state = std::move(toggle);
  return out;
}

namespace {

std::vector<std::vector<int>> all_permutations(int m) {
  std::vector<int> base(m);
  std::iota(base.begin(), base.end(), 1);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return perms;
}

}  // namespace

long opt_dp(const std::vector<int>& seq, const std::vector<int>& initial_order) {
  const int m = static_cast<int>(initial_order.size());
  if (m < 1 || m > 5) throw std::invalid_argument("opt_dp: exact search is limited to m <= 5");
  check_requests(seq, m);

  const auto perms = all_permutations(m);
  const int P = static_cast<int>(perms.size());
  std::map<std::vector<int>, int> index_of;
  for (int p = 0; p < P; ++p) index_of[perms[p]] = p;
  const auto it = index_of.find(initial_order);
  if (it == index_of.end()) throw std::invalid_argument("opt_dp: initial order is not a permutation of 1..m");

  std::vector<std::vector<int>> kt(P, std::vector<int>(P));
  for (int a = 0; a < P; ++a)
    for (int b = 0; b < P; ++b) kt[a][b] = kendall_tau(perms[a], perms[b]);

  // pos[p][r-1]: 1-based position of item r in permutation p.
  std::vector<std::vector<int>> pos(P, std::vector<int>(m));
  for (int p = 0; p < P; ++p)
    for (int q = 0; q < m; ++q) pos[p][perms[p][q] - 1] = q + 1;

  // free_move[p][r-1][target]: permutation index after moving r forward.
  std::vector<std::vector<std::vector<int>>> free_move(
      P, std::vector<std::vector<int>>(m));
  for (int p = 0; p < P; ++p)
    for (int r = 1; r <= m; ++r) {
      const int from = pos[p][r - 1];
      for (int to = 1; to <= from; ++to) {
        std::vector<int> next = perms[p];
        for (int q = from - 1; q > to - 1; --q) next[q] = next[q - 1];
        next[to - 1] = r;
        free_move[p][r - 1].push_back(index_of[next]);
      }
    }

  constexpr long kInf = std::numeric_limits<long>::max() / 4;
  std::vector<long> dp(P, kInf);
  dp[it->second] = 0;

  std::vector<long> reach(P), next_dp(P);
  for (int r : seq) {
    // Cheapest way to stand in each order before the access (paid exchanges).
    for (int b = 0; b < P; ++b) {
      long best = kInf;
      for (int a = 0; a < P; ++a) {
        const long v = dp[a] == kInf ? kInf : dp[a] + kt[a][b];
        if (v < best) best = v;
      }
      reach[b] = best;
    }
    std::fill(next_dp.begin(), next_dp.end(), kInf);
    for (int b = 0; b < P; ++b) {
      if (reach[b] >= kInf) continue;
      const long served = reach[b] + pos[b][r - 1];
      for (int succ : free_move[b][r - 1])
        if (served < next_dp[succ]) next_dp[succ] = served;
    }
    dp.swap(next_dp);
  }
  return *std::min_element(dp.begin(), dp.end());
}

long opt_dp(const std::vector<int>& seq, int m) {
  std::vector<int> init(m);
  std::iota(init.begin(), init.end(), 1);
  return opt_dp(seq, init);
}

RatioBounds toggle_ratio_bounds(double beta) {
  if (!(beta >= 0.0) || beta > 0.5)
    throw std::invalid_argument("toggle bounds: beta must lie in [0, 1/2]");
  return {5.0 / 3.0 + 5.0 * beta / (6.0 + 3.0 * beta), 2.0 + 2.0 / (4.0 + 5.0 * beta)};
}

double frontier_untrusted(double r) {
  if (!(r >= 5.0 / 3.0 - 1e-12) || r > 2.0 + 1e-12)
    throw std::invalid_argument("frontier: trusted ratio must lie in [5/3, 2]");
  return 2.0 + (10.0 - 3.0 * r) / (9.0 * r - 5.0);
}

const std::vector<std::string>& families() {
  static const std::vector<std::string> f = {"uniform", "zipf", "last-item"};
  return f;
}

std::vector<int> generate_requests(const std::string& family, int m, int n, uint64_t seed) {
  if (m < 1) throw std::invalid_argument("generate_requests: m must be positive");
  if (n < 0) throw std::invalid_argument("generate_requests: n must be nonnegative");
  std::vector<int> seq;
  seq.reserve(n);
  if (family == "uniform") {
    SplitMix64 rng(seed);
    for (int i = 0; i < n; ++i) seq.push_back(rng.uniform_int(1, m));
  } else if (family == "zipf") {
    SplitMix64 rng(seed);
    std::vector<double> cdf(m);
    double total = 0;
    for (int i = 1; i <= m; ++i) {
      total += 1.0 / i;
      cdf[i - 1] = total;
    }
    for (int i = 0; i < n; ++i) {
      const double x = rng.uniform01() * total;
      int item = 1;
      while (item < m && cdf[item - 1] < x) ++item;
      seq.push_back(item);
    }
  } else if (family == "last-item") {
    for (int i = 0; i < n; ++i) seq.push_back(m - (i % m));
  } else {
    throw std::invalid_argument("unknown list-update family: " + family);
  }
  return seq;
}

}  // namespace advsim::lu
