#include "advsim/bin_packing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "advsim/errors.hpp"
#include "advsim/rng.hpp"

namespace advsim::binpack {

namespace {

constexpr double kThird = 1.0 / 3.0;

void check_size(double size) {
  if (!(size > 0.0) || size > 1.0)
    throw std::invalid_argument("item size must lie in (0, 1]");
}

}  // namespace

ItemClass classify(double size) {
  check_size(size);
  if (size <= kThird) return ItemClass::Tiny;
  if (size <= 0.5) return ItemClass::Small;
  if (size <= 2.0 / 3.0) return ItemClass::Critical;
  return ItemClass::Large;
}

const char* class_name(ItemClass c) {
  switch (c) {
    case ItemClass::Tiny: return "tiny";
    case ItemClass::Small: return "small";
    case ItemClass::Critical: return "critical";
    case ItemClass::Large: return "large";
  }
  return "?";
}

const char* label_name(BinLabel l) {
  switch (l) {
    case BinLabel::Generic: return "generic";
    case BinLabel::TinyBin: return "tiny";
    case BinLabel::SmallBin: return "small";
    case BinLabel::CriticalBin: return "critical";
    case BinLabel::LargeBin: return "large";
  }
  return "?";
}

void Bin::place(double size) {
  contents.push_back(size);
  total += size;
  switch (classify(size)) {
    case ItemClass::Tiny: tiny_level += size; break;
    case ItemClass::Small: ++small_count; break;
    case ItemClass::Critical: has_critical = true; break;
    case ItemClass::Large: break;
  }
}

int Packing::count(BinLabel label) const {
  int n = 0;
  for (const Bin& b : bins)
    if (b.label == label) ++n;
  return n;
}

Packing first_fit(const std::vector<double>& items) {
  Packing p;
  for (double x : items) {
    check_size(x);
    bool placed = false;
    for (Bin& b : p.bins) {
      if (fits(b.total, x)) {
        b.place(x);
        placed = true;
        break;
      }
    }
    if (!placed) {
      p.bins.emplace_back();
      p.bins.back().place(x);
    }
  }
  return p;
}

namespace {

Bin* first_critical_bin_with_tiny_room(Packing& p, double x) {
  for (Bin& b : p.bins)
    if (b.label == BinLabel::CriticalBin && b.tiny_level + x <= kThird + kCapacityEps &&
        fits(b.total, x))
      return &b;
  return nullptr;
}

Bin* first_tiny_bin_with_room(Packing& p, double x) {
  for (Bin& b : p.bins)
    if (b.label == BinLabel::TinyBin && fits(b.total, x)) return &b;
  return nullptr;
}

Bin* first_open_small_bin(Packing& p) {
  for (Bin& b : p.bins)
    if (b.label == BinLabel::SmallBin && b.small_count < 2) return &b;
  return nullptr;
}

Bin* first_reserved_slot(Packing& p) {
  for (Bin& b : p.bins)
    if (b.label == BinLabel::CriticalBin && !b.has_critical) return &b;
  return nullptr;
}

Bin& open_bin(Packing& p, BinLabel label) {
  p.bins.emplace_back();
  p.bins.back().label = label;
  return p.bins.back();
}

}  // namespace

Packing reserve_critical(const std::vector<double>& items, int c_advice) {
  if (c_advice < 0) throw std::invalid_argument("reserve_critical: advice must be nonnegative");
  Packing p;
  for (int i = 0; i < c_advice; ++i) open_bin(p, BinLabel::CriticalBin);

  for (double x : items) {
    switch (classify(x)) {
      case ItemClass::Large:
        open_bin(p, BinLabel::LargeBin).place(x);
        break;
      case ItemClass::Small: {
        Bin* b = first_open_small_bin(p);
        (b ? *b : open_bin(p, BinLabel::SmallBin)).place(x);
        break;
      }
      case ItemClass::Critical: {
        // Reserved slots fill in opening order; surplus critical items
        // (possible only under untrusted advice) open fresh critical bins.
        Bin* b = first_reserved_slot(p);
        (b ? *b : open_bin(p, BinLabel::CriticalBin)).place(x);
        break;
      }
      case ItemClass::Tiny: {
        if (Bin* b = first_critical_bin_with_tiny_room(p, x)) {
          b->place(x);
        } else if (Bin* t = first_tiny_bin_with_room(p, x)) {
          t->place(x);
        } else {
          open_bin(p, BinLabel::TinyBin).place(x);
        }
        break;
      }
    }
  }
  return p;
}

Rational encode_gamma(const std::vector<double>& items, int k) {
  if (k < 1 || k > 40) throw std::invalid_argument("encode_gamma: k must be in [1, 40]");
  long long c = 0;
  for (double x : items)
    if (classify(x) == ItemClass::Critical) ++c;
  const Packing trusted = reserve_critical(items, static_cast<int>(c));
  const long long t = trusted.count(BinLabel::TinyBin);
  if (c + t == 0) return Rational(0);

  const long long scale = 1LL << k;
  // floor(ratio * 2^k), stepping one grid cell down when the ratio is a
  // positive exact multiple of 1/2^k.
  long long cell = (c * scale) / (c + t);
  if ((c * scale) % (c + t) == 0 && c > 0) --cell;
  require(cell >= 0 && cell < scale, "advice fraction representable in k bits");
  return Rational(cell, scale);
}

Packing rrc_pack(const std::vector<double>& items, const RrcConfig& config) {
  if (config.alpha < Rational(0) || config.alpha > Rational(1))
    throw std::invalid_argument("rrc: alpha must lie in [0, 1]");
  if (config.gamma < Rational(0) || config.gamma > Rational(1))
    throw std::invalid_argument("rrc: gamma must lie in [0, 1]");
  const Rational beta = config.beta();

  Packing p;
  for (double x : items) {
    switch (classify(x)) {
      case ItemClass::Large:
        open_bin(p, BinLabel::LargeBin).place(x);
        break;
      case ItemClass::Small: {
        Bin* b = first_open_small_bin(p);
        (b ? *b : open_bin(p, BinLabel::SmallBin)).place(x);
        break;
      }
      case ItemClass::Critical: {
        Bin* b = first_reserved_slot(p);
        (b ? *b : open_bin(p, BinLabel::CriticalBin)).place(x);
        break;
      }
      case ItemClass::Tiny: {
        if (Bin* b = first_critical_bin_with_tiny_room(p, x)) {
          b->place(x);
          break;
        }
        if (Bin* t = first_tiny_bin_with_room(p, x)) {
          t->place(x);
          break;
        }
        // A new bin gets declared critical while the critical fraction
        // among critical and tiny bins lags beta.
        const long long cp = p.count(BinLabel::CriticalBin);
        const long long tp = p.count(BinLabel::TinyBin);
        const bool critical = cp + tp > 0 && Rational(cp, cp + tp) < beta;
        open_bin(p, critical ? BinLabel::CriticalBin : BinLabel::TinyBin).place(x);
        break;
      }
    }
  }
  return p;
}

double tiny_weight(double size, double beta) {
  if (!(beta >= 0.0) || beta > 1.0) throw std::invalid_argument("beta must lie in [0, 1]");
  return size * (6.0 - 6.0 * beta) / (4.0 - 3.0 * beta);
}

double item_weight(double size, double beta) {
  switch (classify(size)) {
    case ItemClass::Large:
    case ItemClass::Critical:
      return 1.0;
    case ItemClass::Small:
      return 0.5;
    case ItemClass::Tiny:
      return tiny_weight(size, beta);
  }
  return 0.0;
}

double bin_weight(const Bin& bin, double beta) {
  double w = 0;
  for (double x : bin.contents) w += item_weight(x, beta);
  return w;
}

double total_weight(const std::vector<double>& items, double beta) {
  double w = 0;
  for (double x : items) w += item_weight(x, beta);
  return w;
}

double opt_bin_weight_bound(double beta) { return (14.0 - 11.0 * beta) / (8.0 - 6.0 * beta); }

double rrc_case1_ratio(double beta) { return 1.5 + (1.0 - beta) / (4.0 - 3.0 * beta); }
double rrc_case2_ratio(double beta) { return 1.5 + 9.0 * beta / (8.0 - 6.0 * beta); }

double rrc_trusted_bound(double alpha, int k) {
  return 1.5 + std::max((1.0 - alpha) / (4.0 - 3.0 * alpha),
                        15.0 / std::pow(2.0, k / 2.0 + 1.0));
}

double rrc_untrusted_bound(double alpha) {
  return 1.5 + std::max(0.25, 9.0 * alpha / (8.0 - 6.0 * alpha));
}

const AuditCheck* AuditReport::find(const std::string& name) const {
  for (const AuditCheck& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

AuditReport audit_packing(const Packing& packing, const Rational& beta,
                          const std::vector<double>& items) {
  AuditReport report;
  auto add = [&report](AuditCheck c) {
    if (c.applicable && !c.pass) report.pass = false;
    report.checks.push_back(std::move(c));
  };

  // Structural bin rules.
  {
    AuditCheck c{"bin-structure", true, true, 0, ""};
    for (size_t i = 0; i < packing.bins.size() && c.pass; ++i) {
      const Bin& b = packing.bins[i];
      double total = 0, tiny = 0;
      int criticals = 0, smalls = 0, larges = 0;
      for (double x : b.contents) {
        total += x;
        switch (classify(x)) {
          case ItemClass::Tiny: tiny += x; break;
          case ItemClass::Small: ++smalls; break;
          case ItemClass::Critical: ++criticals; break;
          case ItemClass::Large: ++larges; break;
        }
      }
      bool ok = total <= 1.0 + kCapacityEps;
      switch (b.label) {
        case BinLabel::LargeBin: ok = ok && larges == 1 && smalls + criticals == 0 && tiny == 0; break;
        case BinLabel::SmallBin: ok = ok && smalls >= 1 && smalls <= 2 && criticals + larges == 0 && tiny == 0; break;
        case BinLabel::CriticalBin:
          ok = ok && criticals <= 1 && larges + smalls == 0 && tiny <= kThird + kCapacityEps;
          break;
        case BinLabel::TinyBin: ok = ok && criticals + smalls + larges == 0; break;
        case BinLabel::Generic: break;
      }
      if (!ok) {
        c.pass = false;
        c.witness = "bin " + std::to_string(i) + " (" + label_name(b.label) + ")";
      }
    }
    add(std::move(c));
  }

  // Every input item placed exactly once.
  {
    AuditCheck c{"item-conservation", true, true, 0, ""};
    std::vector<double> placed;
    for (const Bin& b : packing.bins)
      placed.insert(placed.end(), b.contents.begin(), b.contents.end());
    std::vector<double> given = items;
    std::sort(placed.begin(), placed.end());
    std::sort(given.begin(), given.end());
    c.pass = placed == given;
    add(std::move(c));
  }

  const double beta_d = beta.to_double();
  const int t = packing.count(BinLabel::TinyBin);

  // Total tiny size exceeds (t-1)(4-3beta)/(6-6beta) - 1/6. Vacuous without
  // tiny bins or at beta = 1 (where the bound degenerates).
  {
    AuditCheck c{"size-tiny", true, true, 0, ""};
    if (t < 1 || beta >= Rational(1)) {
      c.applicable = false;
    } else {
      double tiny_total = 0;
      for (double x : items)
        if (classify(x) == ItemClass::Tiny) tiny_total += x;
      const double bound = (t - 1) * (4.0 - 3.0 * beta_d) / (6.0 - 6.0 * beta_d) - 1.0 / 6.0;
      c.margin = tiny_total - bound;
      c.pass = tiny_total > bound;
      c.witness = "S=" + std::to_string(tiny_total) + " t=" + std::to_string(t);
    }
    add(std::move(c));
  }

  // Case I: every critical bin received a critical item -> bins <= W + 3.
  {
    AuditCheck c{"case1-weight", true, true, 0, ""};
    bool case1 = true;
    for (const Bin& b : packing.bins)
      if (b.label == BinLabel::CriticalBin && !b.has_critical) case1 = false;
    if (!case1) {
      c.applicable = false;
    } else {
      const double w_total = total_weight(items, beta_d);
      c.margin = w_total + 3.0 - packing.size();
      c.pass = packing.size() <= w_total + 3.0 + 1e-9;
      c.witness = "bins=" + std::to_string(packing.size()) + " W=" + std::to_string(w_total);
    }
    add(std::move(c));
  }

  return report;
}

namespace {

struct BranchState {
  const std::vector<double>* items;
  std::vector<double> residual;       // free space per open bin
  std::vector<std::vector<int>> groups;  // item indices per open bin
  int best;
  std::vector<std::vector<int>> best_groups;
  double remaining;

  void search(size_t idx) {
    const int used = static_cast<int>(residual.size());
    if (used >= best) return;
    if (idx == items->size()) {
      best = used;
      best_groups = groups;
      return;
    }
    // Free space can absorb at most its own total; anything beyond needs
    // new bins.
    double free_total = 0;
    for (double r : residual) free_total += r;
    const double deficit = remaining - free_total;
    if (deficit > kCapacityEps && used + static_cast<int>(std::ceil(deficit - kCapacityEps)) >= best)
      return;

    const double x = (*items)[idx];
    remaining -= x;
    // Bins with equal residual capacity are interchangeable; try one of each.
    for (size_t b = 0; b < residual.size(); ++b) {
      if (x > residual[b] + kCapacityEps) continue;
      bool seen = false;
      for (size_t p = 0; p < b && !seen; ++p) seen = std::fabs(residual[p] - residual[b]) < 1e-12;
      if (seen) continue;
      residual[b] -= x;
      groups[b].push_back(static_cast<int>(idx));
      search(idx + 1);
      groups[b].pop_back();
      residual[b] += x;
    }
    residual.push_back(1.0 - x);
    groups.push_back({static_cast<int>(idx)});
    search(idx + 1);
    groups.pop_back();
    residual.pop_back();
    remaining += x;
  }
};

int first_fit_decreasing_count(const std::vector<double>& items) {
  std::vector<double> sorted = items;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  return first_fit(sorted).size();
}

}  // namespace

OptResult opt_bins(const std::vector<double>& items) {
  if (items.size() > 14)
    throw std::invalid_argument("opt_bins: exact search is limited to n <= 14 items");
  for (double x : items) check_size(x);
  if (items.empty()) return {0, {}};

  // Largest-first ordering tightens the search; a first-fit-decreasing run
  // seeds the incumbent.
  std::vector<int> order(items.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return items[a] > items[b]; });
  std::vector<double> sorted(items.size());
  for (size_t i = 0; i < order.size(); ++i) sorted[i] = items[order[i]];

  BranchState st;
  st.items = &sorted;
  st.best = first_fit_decreasing_count(items) + 1;
  st.remaining = 0;
  for (double x : sorted) st.remaining += x;
  st.search(0);

  OptResult out;
  out.count = st.best;
  for (const auto& group : st.best_groups) {
    Bin bin;
    for (int idx : group) bin.place(sorted[idx]);
    out.packing.bins.push_back(std::move(bin));
  }
  require(out.count == out.packing.size(), "exact packer returns its own bin count");
  return out;
}

const std::vector<std::string>& families() {
  static const std::vector<std::string> f = {"tiny-sixth", "dense-triples", "uniform-random",
                                             "critical-heavy"};
  return f;
}

std::vector<double> adversarial_sequence(const std::string& family, int n, uint64_t seed) {
  if (n < 0) throw std::invalid_argument("adversarial_sequence: n must be nonnegative");
  constexpr double kEps = 1e-4;
  std::vector<double> items;
  items.reserve(n);
  if (family == "tiny-sixth") {
    for (int i = 0; i < n; ++i) items.push_back(1.0 / 6.0 + kEps);
  } else if (family == "dense-triples") {
    const double group[3] = {0.5 + kEps, 1.0 / 3.0 + kEps, 1.0 / 6.0 - 2.0 * kEps};
    for (int i = 0; i < n; ++i) items.push_back(group[i % 3]);
  } else if (family == "uniform-random") {
    SplitMix64 rng(seed);
    for (int i = 0; i < n; ++i) items.push_back(1.0 - rng.uniform01());  // (0, 1]
  } else if (family == "critical-heavy") {
    SplitMix64 rng(seed);
    for (int i = 0; i < n; ++i) {
      if (rng.next() & 1)
        items.push_back(0.5 + kEps + rng.uniform01() * (1.0 / 6.0 - 2.0 * kEps));
      else
        items.push_back(kEps + rng.uniform01() * (1.0 / 6.0));
    }
  } else {
    throw std::invalid_argument("unknown bin-packing family: " + family);
  }
  return items;
}

}  // namespace advsim::binpack
