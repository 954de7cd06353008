#pragma once

#include <cstddef>
#include <vector>

#include "isomap/dataset.hpp"
#include "isomap/neighbor_graph.hpp"
#include "isomap/numeric_kernel.hpp"

namespace isomap {

/**
 * @brief All-pairs graph distances.
 *
 * Unreachable pairs hold +infinity. `component_ids` numbers the connected
 * components in order of their smallest member index.
 */
struct GeodesicMatrix {
  Mat d;
  std::vector<int> component_ids;

  std::size_t size() const { return static_cast<std::size_t>(d.rows()); }
};

/// Floyd-Warshall. Single-threaded reference implementation.
GeodesicMatrix floyd_all_pairs(const NeighborGraph& g);

/// Repeated binary-heap Dijkstra; same contract as `floyd_all_pairs`.
GeodesicMatrix dijkstra_all_pairs(const NeighborGraph& g);

struct ComponentRestriction {
  DataSet data;
  GeodesicMatrix geodesic;
  std::vector<std::size_t> kept_indices;  ///< original index of every kept row
};

/// Restricts to the largest connected component; ties go to the component
/// with the smallest member index.
ComponentRestriction largest_component(const GeodesicMatrix& gm, const DataSet& data);

/// -H S H / 2 with H the centering matrix. Throws `NonFinite` on infinities.
Mat double_center(const Mat& s);

struct Embedding {
  Mat coords;                       ///< N x m, one row per point
  std::vector<double> eigenvalues;  ///< the m leading eigenvalues, descending
  std::size_t m = 0;
  std::size_t clipped_dims = 0;     ///< leading eigenvalues <= 0, whose columns are zeroed
};

/// Classical scaling of the squared geodesic distances into `m` dimensions.
Embedding classical_mds(const GeodesicMatrix& gm, std::size_t m);

/// Euclidean distances between embedding rows.
Mat embedding_distances(const Embedding& emb);

/// 1 - r^2 between the strict upper triangles of the graph distances and the
/// embedding distances.
double residual_variance(const GeodesicMatrix& gm, const Embedding& emb);

/// Same quantity for two arbitrary distance matrices of equal size.
double residual_variance(const Mat& d_graph, const Mat& d_embed);

}  // namespace isomap
