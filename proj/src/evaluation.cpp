#include "hyperlap/evaluation.hpp"

#include <algorithm>
#include <cstdio>

namespace hyperlap {

Index ConfusionCounts::micro_tp() const {
  Index acc = 0;
  for (const auto& c : per_class) acc += c.tp;
  return acc;
}

Index ConfusionCounts::micro_fn() const {
  Index acc = 0;
  for (const auto& c : per_class) acc += c.fn;
  return acc;
}

ConfusionCounts confusion(const std::vector<Index>& predicted, const std::vector<Index>& truth,
                          Index c) {
  require(predicted.size() == truth.size(), ErrorKind::InvalidInput,
          "predicted and truth lengths differ");
  require(c >= 1, ErrorKind::InvalidInput, "class count must be positive");
  ConfusionCounts out;
  out.per_class.resize(static_cast<std::size_t>(c));
  out.total = static_cast<Index>(predicted.size());
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    require(predicted[i] >= 0 && predicted[i] < c, ErrorKind::InvalidInput,
            "predicted class out of range at position " + std::to_string(i));
    require(truth[i] >= 0 && truth[i] < c, ErrorKind::InvalidInput,
            "truth class out of range at position " + std::to_string(i));
    for (Index j = 0; j < c; ++j) {
      auto& cc = out.per_class[static_cast<std::size_t>(j)];
      const bool pred_j = predicted[i] == j;
      const bool true_j = truth[i] == j;
      if (pred_j && true_j) {
        cc.tp++;
      } else if (!pred_j && true_j) {
        cc.fn++;
      } else if (pred_j && !true_j) {
        cc.fp++;
      } else {
        cc.tn++;
      }
    }
  }
  return out;
}

SensitivityReport sensitivity(const ConfusionCounts& counts) {
  const Index tp = counts.micro_tp();
  const Index fn = counts.micro_fn();
  require(tp + fn > 0, ErrorKind::InvalidInput,
          "sensitivity undefined: no evaluated samples carry a true class");
  SensitivityReport out;
  out.micro = static_cast<double>(tp) / static_cast<double>(tp + fn);
  out.per_class.resize(counts.per_class.size());
  double macro_sum = 0.0;
  Index macro_n = 0;
  for (std::size_t j = 0; j < counts.per_class.size(); ++j) {
    const auto& cc = counts.per_class[j];
    if (cc.tp + cc.fn > 0) {
      const double q = static_cast<double>(cc.tp) / static_cast<double>(cc.tp + cc.fn);
      out.per_class[j] = q;
      macro_sum += q;
      macro_n++;
    }
  }
  out.macro = macro_sum / static_cast<double>(macro_n);
  return out;
}

std::string comparison_table(const std::vector<MethodResult>& results) {
  require(!results.empty(), ErrorKind::InvalidInput, "no results to tabulate");
  std::size_t name_width = std::string("method").size();
  for (const auto& r : results) name_width = std::max(name_width, r.method.size());

  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-*s  %12s  %12s\n", static_cast<int>(name_width), "method",
                "Q (micro %)", "Q (macro %)");
  out += line;
  out.append(name_width + 2 + 12 + 2 + 12, '-');
  out += '\n';
  for (const auto& r : results) {
    const SensitivityReport rep = sensitivity(r.counts);
    std::snprintf(line, sizeof line, "%-*s  %12.2f  %12.2f\n", static_cast<int>(name_width),
                  r.method.c_str(), 100.0 * rep.micro, 100.0 * rep.macro);
    out += line;
  }
  return out;
}

nlohmann::ordered_json comparison_json(const std::vector<MethodResult>& results) {
  require(!results.empty(), ErrorKind::InvalidInput, "no results to tabulate");
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    const SensitivityReport rep = sensitivity(r.counts);
    nlohmann::ordered_json row;
    row["method"] = r.method;
    row["sensitivity_micro"] = rep.micro;
    row["sensitivity_macro"] = rep.macro;
    nlohmann::ordered_json per_class = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < rep.per_class.size(); ++j) {
      const auto& cc = r.counts.per_class[j];
      nlohmann::ordered_json cls;
      cls["class"] = j;
      if (rep.per_class[j]) {
        cls["sensitivity"] = *rep.per_class[j];
      } else {
        cls["sensitivity"] = nullptr;
      }
      cls["tp"] = cc.tp;
      cls["fn"] = cc.fn;
      cls["fp"] = cc.fp;
      cls["tn"] = cc.tn;
      per_class.push_back(std::move(cls));
    }
    row["per_class"] = std::move(per_class);
    row["evaluated"] = r.counts.total;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hyperlap
