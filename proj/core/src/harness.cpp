#include "advsim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "advsim/bidding.hpp"
#include "advsim/bin_packing.hpp"
#include "advsim/errors.hpp"
#include "advsim/list_update.hpp"
#include "advsim/rng.hpp"
#include "advsim/ski_rental.hpp"

namespace advsim::harness {

namespace {

double param(const Params& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw std::invalid_argument("sweep cell is missing parameter '" + key + "'");
  return it->second;
}

double param_or(const Params& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

int int_param(const Params& p, const std::string& key) {
  const double v = param(p, key);
  const int i = static_cast<int>(std::llround(v));
  if (std::fabs(v - i) > 1e-9)
    throw std::invalid_argument("sweep parameter '" + key + "' must be an integer");
  return i;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string params_str(const Params& p) {
  std::string out;
  for (const auto& [k, v] : p) {
    if (!out.empty()) out += ";";
    out += k + "=" + format_double(v);
  }
  return out;
}

SweepSpec SweepSpec::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("sweep spec is not valid JSON: ") + e.what());
  }
  SweepSpec spec;
  spec.problem = j.at("problem").get<std::string>();
  for (const auto& cell : j.at("grid")) {
    Params p;
    for (auto it = cell.begin(); it != cell.end(); ++it) p[it.key()] = it.value().get<double>();
    spec.grid.push_back(std::move(p));
  }
  if (j.contains("families"))
    for (const auto& f : j["families"]) spec.families.push_back(f.get<std::string>());
  spec.trials = j.value("trials", 1);
  spec.seed_base = j.value("seed_base", 0ULL);
  return spec;
}

SweepSpec SweepSpec::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("sweep spec not found: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string SweepSpec::to_json_text() const {
  nlohmann::ordered_json j;
  j["problem"] = problem;
  j["grid"] = nlohmann::ordered_json::array();
  for (const auto& cell : grid) {
    nlohmann::ordered_json c = nlohmann::ordered_json::object();
    for (const auto& [k, v] : cell) c[k] = v;
    j["grid"].push_back(c);
  }
  j["families"] = families;
  j["trials"] = trials;
  j["seed_base"] = seed_base;
  return j.dump(2);
}

std::vector<std::string> adversarial_advice_grid(const std::string& problem, const Params& params) {
  std::vector<std::string> out;
  if (problem == "ski") {
    out = {"0", "1"};
  } else if (problem == "bidding") {
    const int k = int_param(params, "k");
    if (k > 12) throw std::invalid_argument("advice grid: exhaustive sweep requires k <= 12");
    for (int a = 0; a < (1 << k); ++a) out.push_back(std::to_string(a));
  } else if (problem == "binpack") {
    const int k = int_param(params, "k");
    if (k > 12) throw std::invalid_argument("advice grid: exhaustive sweep requires k <= 12");
    for (int j = 0; j < (1 << k); ++j) out.push_back(Rational(j, 1LL << k).str());
  } else if (problem == "listupdate") {
    out = {"ts", "mtfe", "mtfo"};
  } else {
    throw std::invalid_argument("unknown problem: " + problem);
  }
  return out;
}

double additive_constant(const std::string& problem, const Params& params) {
  if (problem == "binpack") return 4.0;
  if (problem == "listupdate") {
    const double m = param(params, "m");
    return 4.0 * m * m * m;
  }
  return 0.0;
}

namespace {

struct CellOutput {
  std::vector<ExperimentRecord> records;
  std::vector<CellSummary> cells;
};

double adjusted_ratio(double alg, double opt, double constant) {
  return std::max(0.0, (alg - constant) / opt);
}

CellOutput run_ski_cell(const SweepSpec& spec, size_t cell_idx) {
  const Params& p = spec.grid[cell_idx];
  const int B = int_param(p, "B");
  const int k = int_param(p, "k");

  CellOutput out;
  const auto measured = ski::measure_pair(ski::ak_policy(k, B), B);

  CellSummary cell;
  cell.params = p;
  cell.family = "exhaustive";
  cell.r_hat = measured.pair.r.to_double();
  cell.w_hat = measured.pair.w.to_double();
  cell.r_witness = "D=" + std::to_string(measured.trusted_witness_days);
  cell.w_witness = "D=" + std::to_string(measured.untrusted_witness_days) +
                   ";bit=" + std::to_string(measured.untrusted_witness_bit);

  ExperimentRecord trusted;
  trusted.problem = "ski";
  trusted.algorithm = "ak";
  trusted.params = p;
  trusted.input_family = "exhaustive";
  trusted.seed = spec.seed_base;
  const int dt = measured.trusted_witness_days;
  trusted.alg_cost = static_cast<double>(ski::ak_cost(k, B, dt, dt < B ? 1 : 0));
  trusted.opt_cost = static_cast<double>(ski::opt_cost(B, dt));
  trusted.ratio = trusted.alg_cost / trusted.opt_cost;
  trusted.advice_mode = AdviceMode::trusted();
  out.records.push_back(trusted);

  ExperimentRecord adv = trusted;
  const int du = measured.untrusted_witness_days;
  adv.alg_cost = static_cast<double>(ski::ak_cost(k, B, du, measured.untrusted_witness_bit));
  adv.opt_cost = static_cast<double>(ski::opt_cost(B, du));
  adv.ratio = adv.alg_cost / adv.opt_cost;
  adv.advice_mode = AdviceMode::adversarial();
  out.records.push_back(adv);

  out.cells.push_back(std::move(cell));
  return out;
}

CellOutput run_bidding_cell(const SweepSpec& spec, size_t cell_idx) {
  const Params& p = spec.grid[cell_idx];
  const double w = param(p, "w");
  const int k = int_param(p, "k");
  bidding::UGrid grid;
  grid.grid_max = param_or(p, "grid_max", 1 << 20);

  const auto measured = bidding::empirical_pair(bidding::kbit_family(k, w), w, grid);

  CellOutput out;
  CellSummary cell;
  cell.params = p;
  cell.family = "log-grid";
  cell.r_hat = measured.pair.r;
  cell.w_hat = measured.pair.w;
  cell.r_witness = "u=" + format_double(measured.trusted_witness_u);
  cell.w_witness = "u=" + format_double(measured.untrusted_witness_u) +
                   ";a=" + format_double(measured.untrusted_witness_payload);

  ExperimentRecord trusted;
  trusted.problem = "bidding";
  trusted.algorithm = "kbit";
  trusted.params = p;
  trusted.input_family = "log-grid";
  trusted.seed = spec.seed_base;
  trusted.alg_cost = measured.pair.r * measured.trusted_witness_u;
  trusted.opt_cost = measured.trusted_witness_u;
  trusted.ratio = measured.pair.r;
  trusted.advice_mode = AdviceMode::trusted();
  out.records.push_back(trusted);

  ExperimentRecord adv = trusted;
  adv.alg_cost = measured.pair.w * measured.untrusted_witness_u;
  adv.opt_cost = measured.untrusted_witness_u;
  adv.ratio = measured.pair.w;
  adv.advice_mode = AdviceMode::fixed(format_double(measured.untrusted_witness_payload));
  out.records.push_back(adv);

  out.cells.push_back(std::move(cell));
  return out;
}

CellOutput run_binpack_cell(const SweepSpec& spec, size_t cell_idx,
                            const std::vector<std::string>& families) {
  const Params& p = spec.grid[cell_idx];
  const int k = int_param(p, "k");
  const int n = int_param(p, "n");
  const double alpha_d = param(p, "alpha");
  if (n > 14)
    throw std::invalid_argument("binpack sweep compares against the exact packer; n <= 14");
  const Rational alpha = Rational::from_decimal(format_double(alpha_d));
  const auto advice_values = adversarial_advice_grid("binpack", p);
  const double constant = additive_constant("binpack", p);

  CellOutput out;
  for (size_t fi = 0; fi < families.size(); ++fi) {
    CellSummary cell;
    cell.params = p;
    cell.family = families[fi];
    cell.additive_constant = constant;
    RatioAccumulator r_acc, w_acc;

    for (int trial = 0; trial < spec.trials; ++trial) {
      const uint64_t seed = derive_seed(spec.seed_base, cell_idx * families.size() + fi, trial);
      const auto items = binpack::adversarial_sequence(families[fi], n, seed);
      const int opt = binpack::opt_bins(items).count;
      if (opt == 0) continue;  // empty instances carry no ratio

      const Rational gamma = binpack::encode_gamma(items, k);
      const binpack::RrcConfig trusted_cfg{alpha, gamma, k};
      const int trusted_bins = binpack::rrc_pack(items, trusted_cfg).size();
      const std::string witness = "seed=" + std::to_string(seed);
      r_acc.observe(adjusted_ratio(trusted_bins, opt, constant), witness);

      ExperimentRecord rec;
      rec.problem = "binpack";
      rec.algorithm = "rrc";
      rec.params = p;
      rec.input_family = families[fi];
      rec.seed = seed;
      rec.alg_cost = trusted_bins;
      rec.opt_cost = opt;
      rec.ratio = static_cast<double>(trusted_bins) / opt;
      rec.advice_mode = AdviceMode::trusted();
      out.records.push_back(rec);

      int worst_bins = 0;
      std::string worst_advice;
      for (const auto& text : advice_values) {
        const auto slash = text.find('/');
        const Rational g = slash == std::string::npos
                               ? Rational(std::stoll(text))
                               : Rational(std::stoll(text.substr(0, slash)),
                                          std::stoll(text.substr(slash + 1)));
        const binpack::RrcConfig cfg{alpha, g, k};
        const int bins = binpack::rrc_pack(items, cfg).size();
        if (bins > worst_bins) {
          worst_bins = bins;
          worst_advice = text;
        }
      }
      w_acc.observe(adjusted_ratio(worst_bins, opt, constant), witness + ";gamma=" + worst_advice);

      ExperimentRecord adv = rec;
      adv.alg_cost = worst_bins;
      adv.ratio = static_cast<double>(worst_bins) / opt;
      adv.advice_mode = AdviceMode::fixed(worst_advice);
      out.records.push_back(adv);
    }

    cell.r_hat = r_acc.max_ratio;
    cell.w_hat = std::max(w_acc.max_ratio, r_acc.max_ratio);
    cell.r_witness = r_acc.arg_max;
    cell.w_witness = w_acc.arg_max;
    out.cells.push_back(std::move(cell));
  }
  return out;
}

CellOutput run_listupdate_cell(const SweepSpec& spec, size_t cell_idx,
                               const std::vector<std::string>& families) {
  const Params& p = spec.grid[cell_idx];
  const int m = int_param(p, "m");
  const int n = static_cast<int>(param_or(p, "n", 2000));
  const double beta_d = param(p, "beta");
  if (m > 5) throw std::invalid_argument("listupdate sweep compares against the exact DP; m <= 5");
  const Rational beta = Rational::from_decimal(format_double(beta_d));
  const double constant = additive_constant("listupdate", p);

  const lu::AdviceTag tags[] = {lu::AdviceTag::Timestamp, lu::AdviceTag::Mtfe, lu::AdviceTag::Mtfo};

  CellOutput out;
  for (size_t fi = 0; fi < families.size(); ++fi) {
    CellSummary cell;
    cell.params = p;
    cell.family = families[fi];
    cell.additive_constant = constant;
    RatioAccumulator r_acc, w_acc;

    for (int trial = 0; trial < spec.trials; ++trial) {
      const uint64_t seed = derive_seed(spec.seed_base, cell_idx * families.size() + fi, trial);
      const auto seq = lu::generate_requests(families[fi], m, n, seed);
      const long opt = lu::opt_dp(seq, m);
      if (opt == 0) continue;

      // Trusted advice names the cheapest of the three base algorithms.
      lu::AdviceTag best_tag = tags[0];
      long best_cost = lu::run_advice_alg(tags[0], seq, m);
      for (int t = 1; t < 3; ++t) {
        const long c = lu::run_advice_alg(tags[t], seq, m);
        if (c < best_cost) {
          best_cost = c;
          best_tag = tags[t];
        }
      }

      const std::string witness = "seed=" + std::to_string(seed);
      long worst_cost = 0;
      std::string worst_advice;
      long trusted_cost = 0;
      for (const auto& tag : tags) {
        const lu::ToggleConfig cfg{beta, tag, m};
        const long cost = lu::toggle_serve(seq, cfg).ledger.total();
        if (tag == best_tag) trusted_cost = cost;
        if (cost > worst_cost) {
          worst_cost = cost;
          worst_advice = lu::advice_name(tag);
        }
      }
      r_acc.observe(adjusted_ratio(trusted_cost, opt, constant), witness);
      w_acc.observe(adjusted_ratio(worst_cost, opt, constant), witness + ";advice=" + worst_advice);

      ExperimentRecord rec;
      rec.problem = "listupdate";
      rec.algorithm = "toggle";
      rec.params = p;
      rec.input_family = families[fi];
      rec.seed = seed;
      rec.alg_cost = trusted_cost;
      rec.opt_cost = opt;
      rec.ratio = static_cast<double>(trusted_cost) / opt;
      rec.advice_mode = AdviceMode::trusted();
      out.records.push_back(rec);

      ExperimentRecord adv = rec;
      adv.alg_cost = worst_cost;
      adv.ratio = static_cast<double>(worst_cost) / opt;
      adv.advice_mode = AdviceMode::fixed(worst_advice);
      out.records.push_back(adv);
    }

    cell.r_hat = r_acc.max_ratio;
    cell.w_hat = std::max(w_acc.max_ratio, r_acc.max_ratio);
    cell.r_witness = r_acc.arg_max;
    cell.w_witness = w_acc.arg_max;
    out.cells.push_back(std::move(cell));
  }
  return out;
}

std::vector<std::string> resolve_families(const SweepSpec& spec) {
  if (spec.problem == "ski") return {"exhaustive"};
  if (spec.problem == "bidding") return {"log-grid"};
  if (spec.problem == "binpack") {
    if (spec.families.empty()) return binpack::families();
    for (const auto& f : spec.families)
      if (std::find(binpack::families().begin(), binpack::families().end(), f) ==
          binpack::families().end())
        throw std::invalid_argument("unknown bin-packing family: " + f);
    return spec.families;
  }
  if (spec.problem == "listupdate") {
    if (spec.families.empty()) return lu::families();
    for (const auto& f : spec.families)
      if (std::find(lu::families().begin(), lu::families().end(), f) == lu::families().end())
        throw std::invalid_argument("unknown list-update family: " + f);
    return spec.families;
  }
  throw std::invalid_argument("unknown problem: " + spec.problem);
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.grid.empty()) throw std::invalid_argument("sweep grid must be nonempty");
  if (spec.trials < 1) throw std::invalid_argument("sweep needs at least one trial");
  const auto families = resolve_families(spec);  // also validates the problem tag

  std::vector<std::future<CellOutput>> futures;
  futures.reserve(spec.grid.size());
  for (size_t i = 0; i < spec.grid.size(); ++i) {
    futures.push_back(std::async(std::launch::async, [&spec, &families, i] {
      if (spec.problem == "ski") return run_ski_cell(spec, i);
      if (spec.problem == "bidding") return run_bidding_cell(spec, i);
      if (spec.problem == "binpack") return run_binpack_cell(spec, i, families);
      return run_listupdate_cell(spec, i, families);
    }));
  }

  SweepResult result;
  for (auto& f : futures) {
    CellOutput cell = f.get();  // merged in cell order: deterministic output
    for (auto& r : cell.records) result.records.push_back(std::move(r));
    for (auto& c : cell.cells) result.cells.push_back(std::move(c));
  }

  // Trusted advice is one point of the advice grid, so r_hat <= w_hat.
  for (const auto& c : result.cells)
    require(c.r_hat <= c.w_hat + 1e-12, "sweep cell has r_hat <= w_hat");

  std::vector<size_t> order(result.cells.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto frontier = pareto_frontier(order, [&result](size_t i) {
    return CompetitivePair{result.cells[i].r_hat, result.cells[i].w_hat};
  });
  result.frontier = std::move(frontier);
  return result;
}

std::string SweepResult::records_jsonl() const { return to_jsonl(records); }

std::string SweepResult::cells_csv() const {
  std::string out = "params,family,r_hat,w_hat,r_witness,w_witness,additive_constant\n";
  for (const auto& c : cells) {
    out += params_str(c.params) + "," + c.family + "," + format_double(c.r_hat) + "," +
           format_double(c.w_hat) + "," + c.r_witness + "," + c.w_witness + "," +
           format_double(c.additive_constant) + "\n";
  }
  return out;
}

}  // namespace advsim::harness
