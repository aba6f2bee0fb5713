#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hyperlap/partition.hpp"
#include "hyperlap/solvers.hpp"

namespace hyperlap {

// one sample per line, comma-separated reals, every line the same width;
// parse problems are reported with the file name and 1-based line number
FeatureMatrix read_features(const std::string& path);

// lines of "sample_index,class_index"; duplicate samples rejected. n bounds
// the sample indices. An empty file is valid (nothing labeled).
std::vector<std::pair<Index, Index>> read_label_pairs(const std::string& path, Index n);

// one line per sample in original order: sample_index,argmax_class,f values.
// Floats are printed with round-trip precision so identical runs produce
// identical bytes.
void write_predictions(const std::string& path, const Prediction& pred,
                       const Eigen::MatrixXd& estimates);

std::string format_double(double v);  // shortest round-trip decimal form

}  // namespace hyperlap
