// advsim: simulator and auditor for online algorithms with untrusted advice.
//
// Subcommands: skirental, bidding, binpack, listupdate, sweep, audit.
// Exit codes: 0 success, 2 usage error, 1 invariant/assertion failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "advsim/bidding.hpp"
#include "advsim/bin_packing.hpp"
#include "advsim/errors.hpp"
#include "advsim/harness.hpp"
#include "advsim/list_update.hpp"
#include "advsim/oracles.hpp"
#include "advsim/record.hpp"
#include "advsim/ski_rental.hpp"

namespace {

using namespace advsim;

struct GlobalFlags {
  uint64_t seed = 0;
  std::string out;
  std::string format = "jsonl";
  bool quiet = false;

  // Prose goes to stdout unless --quiet; data always reaches --out.
  void say(const std::string& line) const {
    if (!quiet) std::cout << line << "\n";
  }
  void write_data(const std::string& payload) const {
    if (out.empty()) {
      std::cout << payload;
      return;
    }
    std::ofstream f(out);
    if (!f) throw std::invalid_argument("cannot open output file: " + out);
    f << payload;
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void add_skirental(CLI::App& app, GlobalFlags& g) {
  auto* cmd = app.add_subcommand("skirental", "rent-or-buy with a 1-bit advice channel");
  cmd->require_subcommand(1);

  auto* pair = cmd->add_subcommand("pair", "competitive pair of a family member");
  auto B = std::make_shared<int>(10);
  auto k = std::make_shared<int>(1);
  pair->add_option("--B", *B, "buy cost")->required();
  pair->add_option("--k", *k, "buy day under advice 0")->required();
  pair->callback([&g, B, k] {
    const RationalPair p = ski::ak_pair(*k, *B);
    g.say("A_" + std::to_string(*k) + " with B=" + std::to_string(*B) + ": (r, w) = (" +
          fmt(p.r.to_double()) + ", " + fmt(p.w.to_double()) + ") = (" + p.r.str() + ", " +
          p.w.str() + ")");
  });

  auto* frontier = cmd->add_subcommand("frontier", "Pareto frontier over all 1-bit policies");
  auto fB = std::make_shared<int>(10);
  frontier->add_option("--B", *fB, "buy cost")->required();
  frontier->callback([&g, fB] {
    const auto points = ski::enumerate_policies_frontier(*fB);
    std::string payload;
    for (const auto& [policy, pair] : points) {
      nlohmann::ordered_json row;
      nlohmann::ordered_json pol;
      pol["buy_day_advice0"] =
          policy.buy_day_advice0 ? nlohmann::json(*policy.buy_day_advice0) : nlohmann::json();
      pol["buy_day_advice1"] =
          policy.buy_day_advice1 ? nlohmann::json(*policy.buy_day_advice1) : nlohmann::json();
      row["policy"] = pol;
      row["r"] = pair.r.to_double();
      row["w"] = pair.w.to_double();
      payload += row.dump() + "\n";
    }
    g.write_data(payload);
    g.say("frontier holds " + std::to_string(points.size()) + " policies; every point matched by "
          "a family member");
  });
}

void add_bidding(CLI::App& app, GlobalFlags& g) {
  auto* cmd = app.add_subcommand("bidding", "guess a hidden value with increasing bids");
  cmd->require_subcommand(1);

  auto* pareto = cmd->add_subcommand("pareto", "optimal strategy for exact-value advice");
  auto w = std::make_shared<double>(4.0);
  auto u = std::make_shared<double>(1.0);
  pareto->add_option("--w", *w, "untrusted ratio target (>= 4)")->required();
  pareto->add_option("--u", *u, "hidden value advice (>= 1)")->required();
  pareto->callback([&g, w, u] {
    const auto strat = bidding::pareto_strategy(*u, *w);
    std::string bids = "[";
    for (size_t i = 0; i < strat.bid.bids.size(); ++i)
      bids += (i ? ", " : "") + fmt(strat.bid.bids[i]);
    bids += "]";
    g.say("m*=" + std::to_string(strat.m_star) + ", bids " + bids + ", r=" + fmt(strat.r_star));
  });

  auto* kbit = cmd->add_subcommand("kbit", "k-bit advice strategy, empirical ratios");
  auto kw = std::make_shared<double>(4.0);
  auto kk = std::make_shared<int>(1);
  auto kmax = std::make_shared<double>(1 << 20);
  kbit->add_option("--w", *kw, "untrusted ratio target (>= 4)")->required();
  kbit->add_option("--k", *kk, "advice bits")->required();
  kbit->add_option("--grid-max", *kmax, "largest hidden value on the sweep grid");
  kbit->callback([&g, kw, kk, kmax] {
    bidding::UGrid grid;
    grid.grid_max = *kmax;
    const auto measured = bidding::empirical_pair(bidding::kbit_family(*kk, *kw), *kw, grid);
    const double rho = bidding::kbit_rho(*kk, *kw);
    g.say("rho=" + fmt(rho) + ", trusted bound " + fmt(bidding::kbit_trusted_bound(*kk, *kw)) +
          ", untrusted bound " + fmt(bidding::kbit_untrusted_value(rho)));
    g.say("measured (r, w) = (" + fmt(measured.pair.r) + ", " + fmt(measured.pair.w) + ")");
    ExperimentRecord rec;
    rec.problem = "bidding";
    rec.algorithm = "kbit";
    rec.params = {{"w", *kw}, {"k", static_cast<double>(*kk)}, {"grid_max", *kmax}};
    rec.input_family = "log-grid";
    rec.seed = g.seed;
    rec.alg_cost = measured.pair.w * measured.untrusted_witness_u;
    rec.opt_cost = measured.untrusted_witness_u;
    rec.ratio = measured.pair.w;
    rec.advice_mode = AdviceMode::adversarial();
    if (!g.out.empty()) g.write_data(rec.to_jsonl() + "\n");
  });

  auto* rnd = cmd->add_subcommand("randomized", "1-random-bit mixture of the optimal strategy");
  auto rw = std::make_shared<double>(4.5);
  auto rmax = std::make_shared<double>(1 << 20);
  rnd->add_option("--w", *rw, "untrusted ratio target (> 4)")->required();
  rnd->add_option("--grid-max", *rmax, "largest hidden value on the sweep grid");
  rnd->callback([&g, rw, rmax] {
    bidding::UGrid grid;
    grid.grid_max = *rmax;
    const auto mix = bidding::randomized_mixture_pair(*rw, grid);
    g.say("expected (r, w) = (" + fmt(mix.expected.r) + ", " + fmt(mix.expected.w) + ")");
    g.say("bounds: trusted " + fmt(mix.trusted_bound) + ", untrusted " + fmt(mix.untrusted_bound));
  });
}

binpack::RrcConfig make_rrc_config(const std::vector<double>& items, const std::string& alpha,
                                   int k, const std::string& gamma) {
  binpack::RrcConfig cfg;
  cfg.alpha = Rational::from_decimal(alpha);
  cfg.k = k;
  cfg.gamma = gamma.empty() ? binpack::encode_gamma(items, k) : Rational::from_decimal(gamma);
  return cfg;
}

void add_binpack(CLI::App& app, GlobalFlags& g) {
  auto* cmd = app.add_subcommand("binpack", "online bin packing with k-bit advice");
  cmd->require_subcommand(1);

  auto* run = cmd->add_subcommand("run", "pack one generated sequence");
  struct RunOpts {
    std::string alg = "rrc";
    std::string alpha = "1";
    int k = 3;
    std::string family = "uniform-random";
    int n = 12;
    uint64_t seed = 1;
    std::string gamma;
    int c_advice = -1;
    std::string dump_items;
  };
  auto o = std::make_shared<RunOpts>();
  run->add_option("--alg", o->alg, "ff | rc | rrc")
      ->check(CLI::IsMember({"ff", "rc", "rrc"}));
  run->add_option("--alpha", o->alpha, "trust parameter in [0,1], decimal");
  run->add_option("--k", o->k, "advice bits");
  run->add_option("--family", o->family, "input family");
  run->add_option("--n", o->n, "item count");
  run->add_option("--seed", o->seed, "sequence seed");
  run->add_option("--gamma", o->gamma, "override advice fraction (untrusted run)");
  run->add_option("--c", o->c_advice, "critical-count advice for rc (default: true count)");
  run->add_option("--dump-items", o->dump_items, "write the item sizes as a JSON array");
  run->callback([&g, o] {
    const auto items = binpack::adversarial_sequence(o->family, o->n, o->seed);
    if (!o->dump_items.empty()) {
      nlohmann::json arr(items);
      std::ofstream f(o->dump_items);
      if (!f) throw std::invalid_argument("cannot open output file: " + o->dump_items);
      f << arr.dump() << "\n";
    }
    binpack::Packing packing;
    std::string advice_str;
    if (o->alg == "ff") {
      packing = binpack::first_fit(items);
    } else if (o->alg == "rc") {
      int c = o->c_advice;
      if (c < 0) {
        c = 0;
        for (double x : items)
          if (binpack::classify(x) == binpack::ItemClass::Critical) ++c;
      }
      advice_str = "c=" + std::to_string(c);
      packing = binpack::reserve_critical(items, c);
    } else {
      const auto cfg = make_rrc_config(items, o->alpha, o->k, o->gamma);
      advice_str = "gamma=" + cfg.gamma.str();
      packing = binpack::rrc_pack(items, cfg);
      const auto report = binpack::audit_packing(packing, cfg.beta(), items);
      g.say(std::string("audit: ") + (report.pass ? "pass" : "FAIL"));
    }
    g.say(o->alg + " packed " + std::to_string(items.size()) + " items into " +
          std::to_string(packing.size()) + " bins" +
          (advice_str.empty() ? "" : " (" + advice_str + ")"));

    ExperimentRecord rec;
    rec.problem = "binpack";
    rec.algorithm = o->alg;
    rec.params = {{"alpha", std::stod(o->alpha)},
                  {"k", static_cast<double>(o->k)},
                  {"n", static_cast<double>(o->n)}};
    rec.input_family = o->family;
    rec.seed = o->seed;
    rec.alg_cost = packing.size();
    if (items.size() <= 14) {
      rec.opt_cost = binpack::opt_bins(items).count;
      rec.ratio = rec.opt_cost > 0 ? rec.alg_cost / rec.opt_cost : 0;
      g.say("exact optimum: " + fmt(rec.opt_cost) + " bins (ratio " + fmt(rec.ratio) + ")");
    }
    rec.advice_mode =
        o->gamma.empty() ? AdviceMode::trusted() : AdviceMode::fixed("gamma=" + o->gamma);
    if (!g.out.empty()) g.write_data(rec.to_jsonl() + "\n");
  });
}

int run_binpack_audit(GlobalFlags& g, const std::string& in_path, const std::string& alpha,
                      int k) {
  std::ifstream in(in_path);
  if (!in) throw std::invalid_argument("cannot open audit input: " + in_path);
  std::string line;
  int line_no = 0;
  int failures = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    std::vector<double> items;
    if (j.is_array()) {
      items = j.get<std::vector<double>>();
    } else if (j.is_object() && j.contains("items")) {
      items = j["items"].get<std::vector<double>>();
    } else {
      throw std::invalid_argument("audit line " + std::to_string(line_no) +
                                  ": expected a JSON array of sizes");
    }
    const auto cfg = make_rrc_config(items, alpha, k, "");
    const auto packing = binpack::rrc_pack(items, cfg);
    const auto report = binpack::audit_packing(packing, cfg.beta(), items);
    if (!report.pass) ++failures;
    std::string detail;
    for (const auto& c : report.checks)
      if (c.applicable && !c.pass) detail += " " + c.name;
    g.say("line " + std::to_string(line_no) + ": " + std::to_string(items.size()) + " items, " +
          std::to_string(packing.size()) + " bins, " + (report.pass ? "pass" : "FAIL" + detail));
  }
  g.say(failures == 0 ? "all packings pass" : std::to_string(failures) + " packings failed");
  return failures == 0 ? 0 : 1;
}

void add_listupdate(CLI::App& app, GlobalFlags& g) {
  auto* cmd = app.add_subcommand("listupdate", "self-organizing list with 2-bit advice");
  cmd->require_subcommand(1);

  auto* run = cmd->add_subcommand("run", "serve one generated request sequence");
  struct RunOpts {
    std::string alg = "toggle";
    int m = 4;
    std::string beta = "0.25";
    std::string advice = "mtfo";
    std::string family = "uniform";
    int n = 2000;
    uint64_t seed = 1;
  };
  auto o = std::make_shared<RunOpts>();
  run->add_option("--alg", o->alg, "mtf | ts | mtfe | mtfo | toggle")
      ->check(CLI::IsMember({"mtf", "ts", "mtfe", "mtfo", "toggle"}));
  run->add_option("--m", o->m, "list length");
  run->add_option("--beta", o->beta, "ignoring-phase budget in [0, 0.5], decimal");
  run->add_option("--advice", o->advice, "ts | mtfe | mtfo")
      ->check(CLI::IsMember({"ts", "mtfe", "mtfo"}));
  run->add_option("--family", o->family, "uniform | zipf | last-item");
  run->add_option("--n", o->n, "request count");
  run->add_option("--seed", o->seed, "sequence seed");
  run->callback([&g, o] {
    const auto seq = lu::generate_requests(o->family, o->m, o->n, o->seed);
    long cost = 0;
    std::string payload;
    if (o->alg == "toggle") {
      lu::ToggleConfig cfg;
      cfg.m = o->m;
      cfg.beta = Rational::from_decimal(o->beta);
      cfg.advice = o->advice == "ts"     ? lu::AdviceTag::Timestamp
                   : o->advice == "mtfe" ? lu::AdviceTag::Mtfe
                                         : lu::AdviceTag::Mtfo;
      const auto result = lu::toggle_serve(seq, cfg);
      cost = result.ledger.total();
      int idx = 0;
      for (const auto& phase : result.ledger.per_phase) {
        nlohmann::ordered_json row;
        row["phase"] = idx++;
        row["kind"] = lu::phase_kind_name(phase.kind);
        row["access_cost"] = phase.access_cost;
        row["paid_cost"] = phase.paid_cost;
        row["first_request"] = phase.first_request;
        row["last_request"] = phase.last_request;
        row["completed"] = phase.completed;
        payload += row.dump() + "\n";
      }
      g.say("toggle(beta=" + o->beta + ", advice=" + o->advice + ") cost "awaiting+ std::to_string(cost) +
            " over " + std::to_string(result.ledger.per_phase.size()) + " phases");
    } else if (o->alg == "mtf") {
      cost = lu::run_mtf(seq, o->m);
    } else if (o->alg == "ts") {
      cost = lu::run_timestamp(seq, o->m);
    } else if (o->alg == "mtfe") {
      cost = lu::run_mtf2(seq, o->m, 0);
    } else {
      cost = lu::run_mtf2(seq, o->m, 1);
    }
    if (o->alg != "toggle")
      g.say(o->alg + " cost " + std::to_string(cost) + " on " + std::to_string(seq.size()) +
            " requests");
    if (o->m <= 5) {
      const long opt = lu::opt_dp(seq, o->m);
      g.say("exact optimum " + std::to_string(opt) + " (ratio " +
            fmt(opt > 0 ? static_cast<double>(cost) / opt : 0.0) + ")");
    }
    if (!payload.empty() && !g.out.empty()) g.write_data(payload);
  });
}

void add_sweep(CLI::App& app, GlobalFlags& g) {
  auto* cmd = app.add_subcommand("sweep", "run a parameter sweep from a JSON spec");
  auto spec_path = std::make_shared<std::string>();
  auto summary_path = std::make_shared<std::string>();
  cmd->add_option("--spec", *spec_path, "sweep spec JSON file")->required();
  cmd->add_option("--summary", *summary_path, "write per-cell CSV summary here");
  cmd->callback([&g, spec_path, summary_path] {
    harness::SweepSpec spec = harness::SweepSpec::from_file(*spec_path);
    if (g.seed != 0) spec.seed_base = g.seed;
    const auto result = harness::run_sweep(spec);
    if (g.format == "csv") {
      g.write_data(result.cells_csv());
    } else {
      g.write_data(result.records_jsonl());
    }
    if (!summary_path->empty()) {
      std::ofstream f(*summary_path);
      if (!f) throw std::invalid_argument("cannot open output file: " + *summary_path);
      f << result.cells_csv();
    }
    g.say("swept " + std::to_string(spec.grid.size()) + " cells, " +
          std::to_string(result.records.size()) + " records; frontier size " +
          std::to_string(result.frontier.size()));
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulator for online algorithms with untrusted advice"};
  app.set_version_flag("--version", "advsim 1.0.0 (git: unknown)");
  app.fallthrough();
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_option("--seed", g.seed, "global seed override");
  app.add_option("--out", g.out, "data output file (JSONL/CSV)");
  app.add_option("--format", g.format, "jsonl | csv")->check(CLI::IsMember({"jsonl", "csv"}));
  app.add_flag("--quiet", g.quiet, "suppress prose on stdout (data still written)");

  add_skirental(app, g);
  add_bidding(app, g);
  add_binpack(app, g);
  add_listupdate(app, g);
  add_sweep(app, g);

  // Top-level auditor plus the equivalent binpack subcommand.
  auto* audit = app.add_subcommand("audit", "audit packings of item sequences from a JSONL file");
  auto audit_in = std::make_shared<std::string>();
  auto audit_alpha = std::make_shared<std::string>("1");
  auto audit_k = std::make_shared<int>(3);
  audit->add_option("--in", *audit_in, "JSONL file; each line a JSON array of sizes")->required();
  audit->add_option("--alpha", *audit_alpha, "trust parameter");
  audit->add_option("--k", *audit_k, "advice bits");
  auto audit_rc = std::make_shared<int>(0);
  audit->callback([&g, audit_in, audit_alpha, audit_k, audit_rc] {
    *audit_rc = run_binpack_audit(g, *audit_in, *audit_alpha, *audit_k);
  });

  try {
    app.parse(argc, argv);
    return *audit_rc;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const advsim::invariant_error& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
