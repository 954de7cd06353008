#include "isomap/geodesic_mds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>

#include "isomap/error.hpp"

namespace isomap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> label_components(const Mat& d) {
  const auto n = d.rows();
  std::vector<int> ids(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (ids[static_cast<std::size_t>(i)] >= 0) continue;
    for (Eigen::Index j = i; j < n; ++j) {
      if (std::isfinite(d(i, j))) ids[static_cast<std::size_t>(j)] = next;
    }
    ++next;
  }
  return ids;
}

void check_weights(const NeighborGraph& g) {
  for (const auto& e : g.edges) {
    if (e.i >= g.n || e.j >= g.n) {
      throw Error(ErrorCode::BadDim, "edge endpoint out of range");
    }
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::NonFinite, "edge weights must be finite and non-negative");
    }
  }
}

}  // namespace

GeodesicMatrix floyd_all_pairs(const NeighborGraph& g) {
  check_weights(g);
  const auto n = static_cast<Eigen::Index>(g.n);
  Mat d = Mat::Constant(n, n, kInf);
  for (Eigen::Index i = 0; i < n; ++i) d(i, i) = 0.0;
  for (const auto& e : g.edges) {
    auto& cell = d(static_cast<Eigen::Index>(e.i), static_cast<Eigen::Index>(e.j));
    cell = std::min(cell, e.weight);
  }
  // Column-major storage: iterate i innermost so d(., k) and d(., j) stream.
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double dkj = d(k, j);
      if (dkj == kInf) continue;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double via = d(i, k) + dkj;
        if (via < d(i, j)) d(i, j) = via;
      }
    }
  }
  GeodesicMatrix gm;
  gm.component_ids = label_components(d);
  gm.d = std::move(d);
  return gm;
}

GeodesicMatrix dijkstra_all_pairs(const NeighborGraph& g) {
  check_weights(g);
  const std::size_t n = g.n;
  const auto adj = g.adjacency();
  Mat d = Mat::Constant(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n), kInf);

  using Item = std::pair<double, std::size_t>;
  std::vector<double> dist(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kInf);
    dist[s] = 0.0;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.emplace(0.0, s);
    while (!heap.empty()) {
      const auto [du, u] = heap.top();
      heap.pop();
      if (du > dist[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        const double alt = du + w;
        if (alt < dist[v]) {
          dist[v] = alt;
          heap.emplace(alt, v);
        }
      }
    }
    for (std::size_t t = 0; t < n; ++t) {
      d(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) = dist[t];
    }
  }
  // Path sums can differ in the last bit between the two directions; the
  // lower triangle is mirrored so the result is exactly symmetric.
  for (Eigen::Index j = 0; j < d.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < d.rows(); ++i) {
      d(j, i) = d(i, j);
    }
  }
  GeodesicMatrix gm;
  gm.component_ids = label_components(d);
  gm.d = std::move(d);
  return gm;
}

ComponentRestriction largest_component(const GeodesicMatrix& gm, const DataSet& data) {
  if (gm.size() != data.size()) {
    throw Error(ErrorCode::DimensionMismatch, "geodesic matrix and data set differ in size");
  }
  ComponentRestriction out;
  if (gm.size() == 0) {
    out.data = data;
    out.geodesic = gm;
    return out;
  }
  const int n_comp = *std::max_element(gm.component_ids.begin(), gm.component_ids.end()) + 1;
  std::vector<std::size_t> counts(static_cast<std::size_t>(n_comp), 0);
  for (int id : gm.component_ids) ++counts[static_cast<std::size_t>(id)];
  // Ids follow smallest member index, so the first maximum wins ties.
  const auto best = static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());

  for (std::size_t i = 0; i < gm.size(); ++i) {
    if (gm.component_ids[i] == best) out.kept_indices.push_back(i);
  }
  const auto m = static_cast<Eigen::Index>(out.kept_indices.size());
  out.data.points.resize(m, data.points.cols());
  out.geodesic.d.resize(m, m);
  if (data.labels) out.data.labels.emplace();
  for (Eigen::Index r = 0; r < m; ++r) {
    const auto src = static_cast<Eigen::Index>(out.kept_indices[static_cast<std::size_t>(r)]);
    out.data.points.row(r) = data.points.row(src);
    if (data.labels) out.data.labels->push_back((*data.labels)[static_cast<std::size_t>(src)]);
    for (Eigen::Index c = 0; c < m; ++c) {
      out.geodesic.d(r, c) = gm.d(src, static_cast<Eigen::Index>(out.kept_indices[static_cast<std::size_t>(c)]));
    }
  }
  out.geodesic.component_ids.assign(static_cast<std::size_t>(m), 0);
  return out;
}

Mat double_center(const Mat& s) {
  if (s.rows() != s.cols()) {
    throw Error(ErrorCode::BadDim, "double_center: matrix must be square");
  }
  if (!s.allFinite()) {
    throw Error(ErrorCode::NonFinite, "double_center: restrict to one connected component first");
  }
  const auto n = static_cast<double>(s.rows());
  if (s.rows() == 0) return s;
  const Eigen::VectorXd row_mean = s.rowwise().sum() / n;
  const Eigen::RowVectorXd col_mean = s.colwise().sum() / n;
  const double grand = s.sum() / (n * n);
  Mat tau = s;
  tau.colwise() -= row_mean;
  tau.rowwise() -= col_mean;
  tau.array() += grand;
  tau *= -0.5;
  // Restore exact symmetry lost to the two separately rounded means.
  return 0.5 * (tau + tau.transpose());
}

Embedding classical_mds(const GeodesicMatrix& gm, std::size_t m) {
  const std::size_t n = gm.size();
  if (m < 1 || n < 2 || m > n - 1) {
    throw Error(ErrorCode::BadDim, "classical_mds: need 1 <= m <= N-1 (m=" + std::to_string(m) +
                                       ", N=" + std::to_string(n) + ")");
  }
  if (!gm.d.allFinite()) {
    throw Error(ErrorCode::NonFinite, "classical_mds: geodesic matrix has unreachable pairs");
  }
  const Mat tau = double_center(gm.d.cwiseProduct(gm.d));
  const EigenPairs eig = symmetric_eigen_top(tau, m);

  Embedding emb;
  emb.m = m;
  emb.eigenvalues = eig.values;
  emb.coords = Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  for (std::size_t c = 0; c < m; ++c) {
    const double lambda = eig.values[c];
    if (lambda <= 0.0) {
      ++emb.clipped_dims;
      continue;
    }
    emb.coords.col(static_cast<Eigen::Index>(c)) = std::sqrt(lambda) * eig.vectors[c];
  }
  return emb;
}

Mat embedding_distances(const Embedding& emb) {
  const auto n = emb.coords.rows();
  const Mat rows = emb.coords.transpose();
  Mat d = Mat::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double v = (rows.col(i) - rows.col(j)).norm();
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

double residual_variance(const Mat& d_graph, const Mat& d_embed) {
  if (d_graph.rows() != d_graph.cols() || d_graph.rows() != d_embed.rows() ||
      d_embed.rows() != d_embed.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "residual_variance: matrix sizes differ");
  }
  if (!d_graph.allFinite()) {
    throw Error(ErrorCode::NonFinite, "residual_variance: graph distances must be finite");
  }
  const auto n = d_graph.rows();
  std::vector<double> a, b;
  a.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  b.reserve(a.capacity());
  for (Eigen::Index j = 1; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      a.push_back(d_graph(i, j));
      b.push_back(d_embed(i, j));
    }
  }
  const double r = pearson_r(a, b);
  return std::clamp(1.0 - r * r, 0.0, 1.0);
}

double residual_variance(const GeodesicMatrix& gm, const Embedding& emb) {
  if (static_cast<std::size_t>(emb.coords.rows()) != gm.size()) {
    throw Error(ErrorCode::DimensionMismatch, "residual_variance: embedding covers a different point set");
  }
  return residual_variance(gm.d, embedding_distances(emb));
}

}  // namespace isomap
