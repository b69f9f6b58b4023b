#pragma once

#include <string>
#include <vector>

#include "multinet/tensor.hpp"

namespace multinet {

struct PlotOptions {
  int paxis = 2;            ///< number of embedding columns to pair up, >= 2
  std::vector<int> labels;  ///< optional per-row cluster labels (-1 = noise)
};

/// Scatter-plot panels of an embedding as a standalone SVG string.
///
/// Columns 1 .. paxis (0-based; column 0 is skipped as the leading
/// eigenvector) are plotted pairwise, one panel per unordered pair, laid out
/// in a grid of up to three panels per row. Labels color the points from a
/// fixed palette, -1 is gray. Output is deterministic: fixed-precision
/// coordinates, no timestamps.
std::string renderEmbeddingSvg(const Eigen::MatrixXd& embedding, const PlotOptions& opts);

/// The plotted columns (1 .. paxis) as a matrix, for the CSV sidecar.
Eigen::MatrixXd plottedColumns(const Eigen::MatrixXd& embedding, int paxis);

}  // namespace multinet
