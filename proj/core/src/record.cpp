#include "advsim/record.hpp"

#include <json.hpp>

namespace advsim {

std::string AdviceMode::str() const {
  switch (kind) {
    case Kind::Trusted:
      return "trusted";
    case Kind::Adversarial:
      return "adversarial";
    case Kind::Fixed:
      return "fixed:" + payload;
  }
  return "trusted";
}

std::string ExperimentRecord::to_jsonl() const {
  nlohmann::ordered_json row;
  row["problem"] = problem;
  row["algorithm"] = algorithm;
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  for (const auto& [key, value] : params) p[key] = value;
  row["params"] = p;
  row["input_family"] = input_family;
  row["seed"] = seed;
  row["alg_cost"] = alg_cost;
  row["opt_cost"] = opt_cost;
  row["ratio"] = ratio;
  row["advice_mode"] = advice_mode.str();
  return row.dump();
}

std::string to_jsonl(const std::vector<ExperimentRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += r.to_jsonl();
    out += '\n';
  }
  return out;
}

}  // namespace advsim
