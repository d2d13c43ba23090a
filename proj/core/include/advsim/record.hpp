#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace advsim {

// How the advice channel was driven for one experiment.
struct AdviceMode {
  enum class Kind { Trusted, Adversarial, Fixed };

  Kind kind = Kind::Trusted;
  std::string payload;  // raw advice value, set for Fixed

  static AdviceMode trusted() { return {Kind::Trusted, {}}; }
  static AdviceMode adversarial() { return {Kind::Adversarial, {}}; }
  static AdviceMode fixed(std::string value) { return {Kind::Fixed, std::move(value)}; }

  std::string str() const;
};

// One measured (problem, algorithm, parameters, input, seed) -> ratio row.
// Serialized as a single JSON object per line; field names are part of the
// file format and must not change.
struct ExperimentRecord {
  std::string problem;
  std::string algorithm;
  std::map<std::string, double> params;
  std::string input_family;
  uint64_t seed = 0;
  double alg_cost = 0.0;
  double opt_cost = 0.0;
  double ratio = 0.0;
  AdviceMode advice_mode;

  std::string to_jsonl() const;
};

std::string to_jsonl(const std::vector<ExperimentRecord>& records);

}  // namespace advsim
