#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "advsim/rational.hpp"

namespace advsim::binpack {

// Size classes: tiny (0,1/3], small (1/3,1/2], critical (1/2,2/3],
// large (2/3,1]. Boundary sizes go to the lower class.
enum class ItemClass { Tiny, Small, Critical, Large };

ItemClass classify(double size);
const char* class_name(ItemClass c);

enum class BinLabel { Generic, TinyBin, SmallBin, CriticalBin, LargeBin };

const char* label_name(BinLabel l);

struct Bin {
  BinLabel label = BinLabel::Generic;
  std::vector<double> contents;
  double total = 0;
  double tiny_level = 0;    // sum of tiny item sizes in this bin
  bool has_critical = false;
  int small_count = 0;

  void place(double size);
};

struct Packing {
  std::vector<Bin> bins;  // opening order

  int count(BinLabel label) const;
  int size() const { return static_cast<int>(bins.size()); }
};

// Floating-point slack for capacity tests so that exact-fit contents
// (e.g. 0.5 + 0.5) are not rejected by rounding.
constexpr double kCapacityEps = 1e-9;

inline bool fits(double bin_total, double item, double capacity = 1.0) {
  return bin_total + item <= capacity + kCapacityEps;
}

// Plain First Fit over one unlabeled bin list.
Packing first_fit(const std::vector<double>& items);

// Reserve-Critical: c_advice critical bins opened up front, each reserving
// 2/3 for a critical item and accepting tiny items up to level 1/3.
// Surplus critical items (untrusted advice) each open a fresh critical bin.
Packing reserve_critical(const std::vector<double>& items, int c_advice);

// k-bit advice for the robust variant: gamma is the largest multiple of
// 1/2^k with gamma <= c/(c+t) <= gamma + 1/2^k, where c counts critical
// items and t the tiny bins of the trusted Reserve-Critical run; ties break
// strictly below the ratio.
Rational encode_gamma(const std::vector<double>& items, int k);

struct RrcConfig {
  Rational alpha;   // trust parameter in [0,1]
  Rational gamma;   // advice, multiple of 1/2^k
  int k = 3;

  Rational beta() const { return alpha < gamma ? alpha : gamma; }
};

// Robust-Reserve-Critical. Critical and tiny bins are interleaved so that
// the critical fraction among them stays close to beta = min(alpha, gamma):
// a bin newly opened by a tiny item is declared critical iff c'+t' > 0 and
// c'/(c'+t') < beta.
Packing rrc_pack(const std::vector<double>& items, const RrcConfig& config);

// Weights of the packing argument: 1 for large and critical items, 1/2 for
// small, size * (6-6beta)/(4-3beta) for tiny.
double tiny_weight(double size, double beta);
double item_weight(double size, double beta);
double bin_weight(const Bin& bin, double beta);
double total_weight(const std::vector<double>& items, double beta);

// Weight cap of any single valid bin: (14-11beta)/(8-6beta).
double opt_bin_weight_bound(double beta);

// Competitive-ratio bounds of the robust packer as functions of beta/alpha.
double rrc_case1_ratio(double beta);      // 1.5 + (1-beta)/(4-3beta)
double rrc_case2_ratio(double beta);      // 1.5 + 9beta/(8-6beta)
double rrc_trusted_bound(double alpha, int k);
double rrc_untrusted_bound(double alpha);

struct AuditCheck {
  std::string name;
  bool applicable = true;
  bool pass = true;
  double margin = 0;
  std::string witness;
};

struct AuditReport {
  bool pass = true;
  std::vector<AuditCheck> checks;

  const AuditCheck* find(const std::string& name) const;
};

// Verifies on a finished robust packing: the tiny-size lower bound
// S > (t-1)(4-3beta)/(6-6beta) - 1/6 (when beta < 1 and t > 0), the
// bins <= W+3 bound when every critical bin holds a critical item, and the
// structural bin rules. Report-only; never throws on a failed check.
AuditReport audit_packing(const Packing& packing, const Rational& beta,
                          const std::vector<double>& items);

// Exact minimum bin count, branch-and-bound with a first-fit-decreasing
// upper bound. n <= 14.
struct OptResult {
  int count = 0;
  Packing packing;
};

OptResult opt_bins(const std::vector<double>& items);

// Deterministic adversarial and random families:
//   tiny-sixth      all items 1/6 + 1e-4
//   dense-triples   repeated (1/2+e, 1/3+e, 1/6-2e) groups
//   uniform-random  sizes uniform in (0, 1]
//   critical-heavy  mix of critical items and tiny filler
std::vector<double> adversarial_sequence(const std::string& family, int n, uint64_t seed);
const std::vector<std::string>& families();

}  // namespace advsim::binpack
