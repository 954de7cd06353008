#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace isomap {

/// N samples in R^D, one per row. Labels are carried along for reporting only.
struct DataSet {
  Eigen::MatrixXd points;
  std::optional<std::vector<int>> labels;

  std::size_t size() const { return static_cast<std::size_t>(points.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(points.cols()); }
};

}  // namespace isomap
