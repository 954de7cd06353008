#pragma once

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "isomap/dataset.hpp"
#include "isomap/numeric_kernel.hpp"

namespace isomap {

enum class Method { Standard, Stable };

std::string_view to_string(Method method) noexcept;
/// Throws `InvalidConfig` for anything other than "standard" or "stable".
Method parse_method(std::string_view text);

struct SelectorConfig {
  std::size_t k = 10;
  std::size_t dim_w = 2;
  double delta_theta_deg = 5.0;
  double tol_rank = kDefaultTolRank;
};

/// Checks `cfg` against `data` for the given method; throws `KTooLarge` or
/// `InvalidConfig`.
void validate(const SelectorConfig& cfg, const DataSet& data, Method method);

struct Edge {
  std::size_t i;
  std::size_t j;
  double weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/**
 * @brief Undirected weighted neighborhood graph.
 *
 * Every undirected edge is stored in both directions, and `edges` is sorted by
 * `(i, j)`. Weights are Euclidean distances; coincident points give weight 0.
 */
struct NeighborGraph {
  std::size_t n = 0;
  std::vector<Edge> edges;

  std::size_t undirected_edge_count() const { return edges.size() / 2; }
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency() const;
};

/// Squared Euclidean distances between all rows; exactly symmetric.
Eigen::MatrixXd pairwise_sq_distances(const DataSet& data);

/// Indices of the `k` nearest neighbors of every point, ascending by distance
/// (ties broken by index), the point itself excluded.
std::vector<std::vector<std::size_t>> knn_lists(const DataSet& data, std::size_t k);

/// Everything the angle-filtered selector derived for one base point.
struct StableSelection {
  std::vector<std::size_t> nns;          ///< selected neighbors, ascending distance
  std::vector<std::size_t> candidates;   ///< the k nearest neighbors, ascending distance
  std::vector<std::size_t> basis_indices;
  std::size_t complement_index = 0;      ///< the x_q that produced w_perp
  SubspaceFrame frame;
  /// (candidate index, angle to w_perp in degrees) for every angle-tested candidate.
  std::vector<std::pair<std::size_t, double>> tested;
};

/**
 * Angle-filtered neighbor selection at point `p`.
 *
 * The first `dim_w` usable neighbors span the local subspace and are always
 * kept. A complement vector is taken from the farthest point (walking inward
 * while the residual degenerates), and each remaining candidate is kept when
 * its angle to that vector lies within `90 +- delta_theta_deg`. Neighbors that
 * coincide with `p` are kept unconditionally and never enter the basis.
 */
StableSelection select_neighbors_stable_detail(const DataSet& data, std::size_t p,
                                               const SelectorConfig& cfg);

std::vector<std::size_t> select_neighbors_stable(const DataSet& data, std::size_t p,
                                                 const SelectorConfig& cfg);

/// Union-symmetrized neighborhood graph for either selection method.
NeighborGraph build_graph(const DataSet& data, const SelectorConfig& cfg, Method method);

}  // namespace isomap
