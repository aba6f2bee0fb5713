#include <doctest.h>

#include <algorithm>

#include "hyperlap/evaluation.hpp"

using namespace hyperlap;

TEST_CASE("confusion counts for a perfect two-class prediction") {
  const ConfusionCounts cc = confusion({0, 1}, {0, 1}, 2);
  REQUIRE(cc.per_class.size() == 2);
  CHECK(cc.total == 2);
  CHECK(cc.per_class[0].tp == 1);
  CHECK(cc.per_class[0].fn == 0);
  CHECK(cc.per_class[0].fp == 0);
  CHECK(cc.per_class[0].tn == 1);
}

TEST_CASE("confusion counts with one misprediction") {
  const ConfusionCounts cc = confusion({1, 1}, {0, 1}, 2);
  CHECK(cc.per_class[0].tp == 0);
  CHECK(cc.per_class[0].fn == 1);
  CHECK(cc.per_class[0].fp == 0);
  CHECK(cc.per_class[0].tn == 1);
  CHECK(cc.per_class[1].tp == 1);
  CHECK(cc.per_class[1].fn == 0);
  CHECK(cc.per_class[1].fp == 1);
  CHECK(cc.per_class[1].tn == 0);
}

TEST_CASE("empty inputs give all-zero counts") {
  const ConfusionCounts cc = confusion({}, {}, 3);
  CHECK(cc.total == 0);
  for (const auto& c : cc.per_class) {
    CHECK(c.tp == 0);
    CHECK(c.fn == 0);
    CHECK(c.fp == 0);
    CHECK(c.tn == 0);
  }
  // with zero evaluated samples the measure itself is undefined
  CHECK_THROWS_AS(sensitivity(cc), Error);
}

TEST_CASE("confusion validation") {
  CHECK_THROWS_AS(confusion({0, 1}, {0}, 2), Error);      // length mismatch
  CHECK_THROWS_AS(confusion({0, 2}, {0, 1}, 2), Error);   // prediction out of range
  CHECK_THROWS_AS(confusion({0, 1}, {0, -1}, 2), Error);  // truth out of range
  CHECK_THROWS_AS(confusion({0}, {0}, 0), Error);         // no classes
}

TEST_CASE("per-class counts always partition the evaluated set") {
  const std::vector<Index> pred{0, 1, 2, 1, 0, 2, 2, 1};
  const std::vector<Index> truth{0, 1, 1, 1, 2, 2, 0, 0};
  const ConfusionCounts cc = confusion(pred, truth, 3);
  Index tp_fn = 0;
  for (const auto& c : cc.per_class) {
    CHECK(c.tp + c.fn + c.fp + c.tn == cc.total);
    tp_fn += c.tp + c.fn;
  }
  // each sample has exactly one true class
  CHECK(tp_fn == cc.total);
}

TEST_CASE("swapping class indices permutes the per-class counts") {
  const std::vector<Index> pred{0, 1, 2, 1, 0};
  const std::vector<Index> truth{0, 1, 1, 2, 2};
  const ConfusionCounts base = confusion(pred, truth, 3);
  // swap classes 0 and 2 everywhere
  auto swap02 = [](std::vector<Index> v) {
    for (Index& x : v) x = (x == 0) ? 2 : (x == 2) ? 0 : x;
    return v;
  };
  const ConfusionCounts swapped = confusion(swap02(pred), swap02(truth), 3);
  CHECK(swapped.per_class[2].tp == base.per_class[0].tp);
  CHECK(swapped.per_class[2].fn == base.per_class[0].fn);
  CHECK(swapped.per_class[0].fp == base.per_class[2].fp);
  CHECK(swapped.per_class[1].tp == base.per_class[1].tp);
}

TEST_CASE("headline sensitivity values") {
  ConfusionCounts cc;
  cc.per_class = {{493, 7, 0, 0}};
  cc.total = 500;
  CHECK(sensitivity(cc).micro == doctest::Approx(0.986).epsilon(1e-12));

  cc.per_class = {{445, 55, 0, 0}};
  CHECK(sensitivity(cc).micro == doctest::Approx(0.89).epsilon(1e-12));

  cc.per_class = {{0, 5, 0, 0}};
  cc.total = 5;
  CHECK(sensitivity(cc).micro == 0.0);
}

TEST_CASE("per-class sensitivity is absent where no true samples exist") {
  // class 1 never appears in truth
  const ConfusionCounts cc = confusion({0, 1, 2}, {0, 0, 2}, 3);
  const SensitivityReport rep = sensitivity(cc);
  REQUIRE(rep.per_class.size() == 3);
  CHECK(rep.per_class[0].has_value());
  CHECK_FALSE(rep.per_class[1].has_value());
  CHECK(rep.per_class[2].has_value());
  CHECK(*rep.per_class[0] == doctest::Approx(0.5));
  CHECK(*rep.per_class[2] == doctest::Approx(1.0));
  // macro averages only the defined classes
  CHECK(rep.macro == doctest::Approx(0.75));
  CHECK(rep.micro == doctest::Approx(2.0 / 3.0));
  CHECK(rep.micro >= 0.0);
  CHECK(rep.micro <= 1.0);
}

TEST_CASE("micro sensitivity equals plain accuracy under single-label prediction") {
  const std::vector<Index> pred{0, 1, 2, 1, 0, 2, 1};
  const std::vector<Index> truth{0, 1, 1, 1, 2, 2, 0};
  const ConfusionCounts cc = confusion(pred, truth, 3);
  Index correct = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] == truth[i]) ++correct;
  }
  const SensitivityReport rep = sensitivity(cc);
  CHECK(rep.micro ==
        doctest::Approx(static_cast<double>(correct) / static_cast<double>(pred.size())));
}

TEST_CASE("comparison table lists one aligned row per method") {
  std::vector<MethodResult> results;
  results.push_back({"hyper-sym", confusion({0, 1, 1}, {0, 1, 0}, 2)});
  results.push_back({"graph-rw", confusion({0, 1, 0}, {0, 1, 0}, 2)});
  const std::string table = comparison_table(results);
  CHECK(table.find("hyper-sym") != std::string::npos);
  CHECK(table.find("graph-rw") != std::string::npos);
  CHECK(table.find("Q (micro %)") != std::string::npos);
  CHECK(table.find("Q (macro %)") != std::string::npos);
  CHECK(table.find("100.00") != std::string::npos);  // the perfect row
  CHECK(table.find("66.67") != std::string::npos);   // 2 of 3 correct
  // one header line, one rule, one line per method
  CHECK(std::count(table.begin(), table.end(), '\n') == 4);
  CHECK_THROWS_AS(comparison_table({}), Error);
}

TEST_CASE("comparison json carries the full count breakdown") {
  std::vector<MethodResult> results;
  results.push_back({"graph-sym", confusion({0, 1, 1}, {0, 1, 0}, 2)});
  const nlohmann::ordered_json j = comparison_json(results);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["method"] == "graph-sym");
  CHECK(j[0]["evaluated"] == 3);
  CHECK(j[0]["sensitivity_micro"] == doctest::Approx(2.0 / 3.0));
  REQUIRE(j[0]["per_class"].size() == 2);
  CHECK(j[0]["per_class"][0]["tp"] == 1);
  CHECK(j[0]["per_class"][0]["fn"] == 1);
  CHECK(j[0]["per_class"][1]["fp"] == 1);
}
