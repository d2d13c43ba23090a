#include "advsim/oracles.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "advsim/bin_packing.hpp"
#include "advsim/errors.hpp"
#include "advsim/list_update.hpp"

namespace advsim::oracles {

std::vector<Rational> solve_tight(int m, const Rational& u, const Rational& w) {
  if (m < 1 || m > 8) throw std::invalid_argument("solve_tight: m must lie in [1, 8]");

  // Rows 0..m-2: sum_{j<=i} x_j - w x_{i-1} = 0 for i = 2..m.
  // Row m-1: x_m = u.
  std::vector<std::vector<Rational>> mat(m, std::vector<Rational>(m + 1, Rational(0)));
  for (int i = 2; i <= m; ++i) {
    auto& row = mat[i - 2];
    for (int j = 1; j <= i; ++j) row[j - 1] = Rational(1);
    row[i - 2] = row[i - 2] - w;
    row[m] = Rational(0);
  }
  mat[m - 1][m - 1] = Rational(1);
  mat[m - 1][m] = u;

  for (int col = 0; col < m; ++col) {
    int pivot = -1;
    for (int r = col; r < m; ++r)
      if (!mat[r][col].is_zero()) {
        pivot = r;
        break;
      }
    require(pivot >= 0, "tight bidding system is nonsingular for w >= 4");
    std::swap(mat[col], mat[pivot]);
    const Rational inv = Rational(1) / mat[col][col];
    for (int c = col; c <= m; ++c) mat[col][c] = mat[col][c] * inv;
    for (int r = 0; r < m; ++r) {
      if (r == col || mat[r][col].is_zero()) continue;
      const Rational factor = mat[r][col];
      for (int c = col; c <= m; ++c) mat[r][c] = mat[r][c] - factor * mat[col][c];
    }
  }

  std::vector<Rational> x(m);
  for (int i = 0; i < m; ++i) x[i] = mat[i][m];
  return x;
}

namespace {

struct PartitionSearch {
  const std::vector<double>* items;
  std::vector<double> load;
  int best;

  void recurse(size_t idx) {
    if (static_cast<int>(load.size()) >= best) return;
    if (idx == items->size()) {
      best = static_cast<int>(load.size());
      return;
    }
    const double x = (*items)[idx];
    for (size_t g = 0; g < load.size(); ++g) {
      if (!binpack::fits(load[g], x)) continue;
      load[g] += x;
      recurse(idx + 1);
      load[g] -= x;
    }
    load.push_back(x);
    recurse(idx + 1);
    load.pop_back();
  }
};

}  // namespace

int exhaustive_bin_opt(const std::vector<double>& items) {
  if (items.size() > 10)
    throw std::invalid_argument("exhaustive_bin_opt: plain enumeration is limited to n <= 10");
  if (items.empty()) return 0;
  PartitionSearch s;
  s.items = &items;
  s.best = static_cast<int>(items.size()) + 1;
  s.recurse(0);
  return s.best;
}

namespace {

struct ListSearch {
  const std::vector<int>* seq;
  const std::vector<std::vector<int>>* perms;
  long best;

  void recurse(size_t idx, const std::vector<int>& order, long cost) {
    if (cost >= best) return;
    if (idx == seq->size()) {
      best = cost;
      return;
    }
    const int r = (*seq)[idx];
    for (const auto& target : *perms) {
      const long paid = lu::kendall_tau(order, target);
      int pos = 0;
      while (target[pos] != r) ++pos;
      const long served = cost + paid + pos + 1;
      for (int to = 0; to <= pos; ++to) {
        std::vector<int> next = target;
        for (int q = pos; q > to; --q) next[q] = next[q - 1];
        next[to] = r;
        recurse(idx + 1, next, served);
      }
    }
  }
};

}  // namespace

long exhaustive_list_opt(const std::vector<int>& seq, int m) {
  if (m < 1 || m > 3) throw std::invalid_argument("exhaustive_list_opt: limited to m <= 3");
  if (seq.size() > 7) throw std::invalid_argument("exhaustive_list_opt: limited to n <= 7");
  std::vector<int> base(m);
  std::iota(base.begin(), base.end(), 1);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));

  ListSearch s;
  s.seq = &seq;
  s.perms = &perms;
  s.best = static_cast<long>(seq.size()) * (m + m * m) + 1;
  std::vector<int> init(m);
  std::iota(init.begin(), init.end(), 1);
  s.recurse(0, init, 0);
  return s.best;
}

long ski_cost_by_simulation(std::optional<int> buy_day, int B, int D) {
  if (B < 1 || D < 1) throw std::invalid_argument("ski simulation: B and D must be positive");
  long cost = 0;
  for (int day = 1; day <= D; ++day) {
    if (buy_day && day == *buy_day) {
      cost += B;
      return cost;  // bought: the remaining days are free
    }
    cost += 1;
  }
  return cost;
}

}  // namespace advsim::oracles
