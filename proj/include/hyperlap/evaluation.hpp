#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperlap/hypergraph.hpp"

#include "json.hpp"

namespace hyperlap {

struct ClassCounts {
  Index tp = 0;
  Index fn = 0;
  Index fp = 0;
  Index tn = 0;
};

struct ConfusionCounts {
  std::vector<ClassCounts> per_class;
  Index total = 0;  // evaluated samples

  Index micro_tp() const;
  Index micro_fn() const;
};

// one-vs-rest counts per class over single-label predictions
ConfusionCounts confusion(const std::vector<Index>& predicted, const std::vector<Index>& truth,
                          Index c);

struct SensitivityReport {
  double micro = 0.0;  // total tp / total (tp + fn); equals plain accuracy here
  double macro = 0.0;  // mean of the defined per-class values
  std::vector<std::optional<double>> per_class;  // absent where tp + fn = 0
};

SensitivityReport sensitivity(const ConfusionCounts& counts);

struct MethodResult {
  std::string method;
  ConfusionCounts counts;
};

// aligned plain-text method-vs-sensitivity table
std::string comparison_table(const std::vector<MethodResult>& results);

// same content, machine-readable
nlohmann::ordered_json comparison_json(const std::vector<MethodResult>& results);

}  // namespace hyperlap
