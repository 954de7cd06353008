#pragma once

#include <cstddef>
#include <random>

#include "isomap/dataset.hpp"
#include "test_support.hpp"

namespace isomap::testing {

/// Two parallel 20 x 10 grids (spacing 0.15) at z = 0 and z = 0.4, followed
/// by one bridge point midway between them.
struct TwoPlanes {
  static constexpr int nx = 20;
  static constexpr int ny = 10;
  static constexpr double spacing = 0.15;
  static constexpr double separation = 0.4;
  static constexpr std::size_t per_plane = nx * ny;
  static constexpr std::size_t bridge = 2 * per_plane;

  DataSet data;

  TwoPlanes() {
    data.points.resize(2 * per_plane + 1, 3);
    Eigen::Index r = 0;
    for (int plane = 0; plane < 2; ++plane)
      for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) data.points.row(r++) << i * spacing, j * spacing, plane * separation;
    data.points.row(r) << 9 * spacing, 4 * spacing, separation / 2;
  }

  /// 0 or 1 for the two planes, 2 for the bridge.
  static int plane_of(std::size_t i) { return i < per_plane ? 0 : i < 2 * per_plane ? 1 : 2; }
};

/// N points of a random planar cloud carried into R^10 by a random rotation
/// and translation.
inline DataSet lifted_plane_cloud(std::mt19937_64& rng, Eigen::Index n) {
  Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(n, 10);
  pts.leftCols(2) = random_mat(rng, n, 2);
  const Eigen::MatrixXd rot = random_rotation(rng, 10);
  const Eigen::RowVectorXd shift = random_mat(rng, 1, 10);
  return DataSet{(pts * rot.transpose()).rowwise() + shift, std::nullopt};
}

}  // namespace isomap::testing
