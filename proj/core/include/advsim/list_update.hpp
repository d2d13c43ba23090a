#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "advsim/rational.hpp"

namespace advsim::lu {

// A list of items 1..m with per-item bits (used by the every-other-access
// rules) and access history (used by Timestamp). Serving position i costs i.
struct ListState {
  std::vector<int> order;                  // order[p] = item at 0-based position p
  std::vector<uint8_t> bits;               // bits[item-1]
  std::vector<std::vector<int>> history;   // per item, times of past accesses
  int time = 0;                            // requests served so far

  static ListState initial(int m, int bit_init);
  int position(int item) const;  // 1-based
  void move_to(int item, int new_pos1);  // forward move, free exchange
  bool same_configuration(const ListState& o) const {
    return order == o.order && bits == o.bits;
  }
};

// Minimum number of adjacent transpositions between two orders.
int kendall_tau(const std::vector<int>& a, const std::vector<int>& b);

// The three base rules. Each serves one request and returns its access cost.
long serve_mtf(ListState& s, int item);
long serve_mtf2(ListState& s, int item);       // flip bit; move to front iff bit becomes 0
long serve_timestamp(ListState& s, int item);  // insert before first item accessed <= 1 times
                                               // since the previous access to `item`;
                                               // first-ever access: no move

enum class AdviceTag { Timestamp, Mtfe, Mtfo };

const char* advice_name(AdviceTag tag);

long run_mtf(const std::vector<int>& seq, int m);
long run_mtf2(const std::vector<int>& seq, int m, int bit_init);
long run_timestamp(const std::vector<int>& seq, int m);
long run_advice_alg(AdviceTag tag, const std::vector<int>& seq, int m);

struct ToggleConfig {
  Rational beta;  // in [0, 1/2]
  AdviceTag advice = AdviceTag::Mtfo;
  int m = 2;
};

struct PhaseRow {
  enum class Kind { Trusting, Ignoring, Timestamp };
  Kind kind = Kind::Trusting;
  long access_cost = 0;
  long paid_cost = 0;
  int first_request = 0;  // 1-based indices into the request sequence
  int last_request = 0;
  bool completed = false;  // false only for the final, cut-short phase
};

const char* phase_kind_name(PhaseRow::Kind k);

struct CostLedger {
  long access_cost = 0;
  long paid_cost = 0;
  std::vector<PhaseRow> per_phase;

  long total() const { return access_cost + paid_cost; }
  int trusting_phases() const;
};

struct ToggleResult {
  CostLedger ledger;
  ListState final_state;
  // During every trusting phase the list configuration (order and bits)
  // matched the hypothetical full-prefix run of the advised rule.
  bool trusting_matches_shadow = true;
};

// The phase-alternating algorithm. Timestamp advice runs Timestamp
// throughout. Otherwise trusting phases replay the advised every-other-
// access rule (reconfiguring with paid exchanges at each phase start) until
// phase access cost reaches m^3, and ignoring phases run move-to-front until
// phase access cost exceeds beta m^3. beta = 0 skips ignoring phases.
ToggleResult toggle_serve(const std::vector<int>& seq, const ToggleConfig& config);

// Exact offline optimum via dynamic programming over the m! list orders;
// paid exchanges before each access, an optional free forward move after.
// m <= 5.
long opt_dp(const std::vector<int>& seq, int m);
long opt_dp(const std::vector<int>& seq, const std::vector<int>& initial_order);

// Competitive-ratio bounds of the toggling scheme as functions of beta.
struct RatioBounds {
  double trusted = 0;    // 5/3 + 5beta/(6+3beta)
  double untrusted = 0;  // 2 + 2/(4+5beta)
};

RatioBounds toggle_ratio_bounds(double beta);

// The same frontier parameterized by the trusted ratio r in [5/3, 2].
double frontier_untrusted(double r);  // 2 + (10-3r)/(9r-5)

// Request families: "uniform", "zipf" (P(i) ~ 1/i), "last-item"
// (cycles m, m-1, ..., 1, forcing deep accesses).
std::vector<int> generate_requests(const std::string& family, int m, int n, uint64_t seed);
const std::vector<std::string>& families();

}  // namespace advsim::lu
