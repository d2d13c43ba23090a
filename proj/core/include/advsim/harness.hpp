#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "advsim/competitive.hpp"
#include "advsim/record.hpp"

namespace advsim::harness {

// One cell of a parameter grid (e.g. {B:10, k:3} or {m:4, beta:0.25}).
using Params = std::map<std::string, double>;

std::string params_str(const Params& p);

struct SweepSpec {
  std::string problem;                 // ski | bidding | binpack | listupdate
  std::vector<Params> grid;            // nonempty
  std::vector<std::string> families;   // problem-specific input families
  int trials = 1;                      // seeds per (cell, family)
  uint64_t seed_base = 0;

  static SweepSpec from_json_text(const std::string& text);
  static SweepSpec from_file(const std::string& path);
  std::string to_json_text() const;
};

struct CellSummary {
  Params params;
  std::string family;
  double r_hat = 0;
  double w_hat = 0;
  std::string r_witness;
  std::string w_witness;
  double additive_constant = 0;  // subtracted from costs before the ratio
};

struct SweepResult {
  std::vector<ExperimentRecord> records;
  std::vector<CellSummary> cells;
  std::vector<size_t> frontier;  // indices into `cells`, Pareto under (r_hat, w_hat)

  std::string records_jsonl() const;
  std::string cells_csv() const;
};

// Runs trusted-advice and adversarial-advice trials for every grid cell.
// Cells execute concurrently; records and summaries are merged in
// deterministic (cell, family, trial) order, so identical specs and seeds
// produce byte-identical output. Unknown problems or families are rejected
// before any trial runs.
SweepResult run_sweep(const SweepSpec& spec);

// The advice payloads swept for the adversarial supremum of one problem:
// both bits for ski, all 2^k symbols for bidding and bin packing, the three
// algorithm tags for list update.
std::vector<std::string> adversarial_advice_grid(const std::string& problem, const Params& params);

// Additive constant subtracted on asymptotic problems (bin packing: 4,
// list update: 4 m^3, others: 0).
double additive_constant(const std::string& problem, const Params& params);

}  // namespace advsim::harness
