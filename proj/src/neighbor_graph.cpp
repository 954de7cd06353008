#include "isomap/neighbor_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "isomap/error.hpp"

namespace isomap {

std::string_view to_string(Method method) noexcept {
  return method == Method::Standard ? "standard" : "stable";
}

Method parse_method(std::string_view text) {
  if (text == "standard") return Method::Standard;
  if (text == "stable") return Method::Stable;
  throw Error(ErrorCode::InvalidConfig, "unknown method '" + std::string(text) + "'");
}

void validate(const SelectorConfig& cfg, const DataSet& data, Method method) {
  const std::size_t n = data.size();
  if (cfg.k < 1) {
    throw Error(ErrorCode::InvalidConfig, "k must be positive");
  }
  if (cfg.k >= n) {
    throw Error(ErrorCode::KTooLarge,
                "k=" + std::to_string(cfg.k) + " requires more than " + std::to_string(n) + " points");
  }
  if (!data.points.allFinite()) {
    throw Error(ErrorCode::NonFinite, "data contains non-finite entries");
  }
  if (method == Method::Standard) {
    return;
  }
  if (cfg.dim_w < 1 || cfg.dim_w + 1 > cfg.k) {
    throw Error(ErrorCode::InvalidConfig, "need 1 <= dim_w and dim_w + 1 <= k");
  }
  if (cfg.dim_w >= data.dim()) {
    throw Error(ErrorCode::InvalidConfig, "dim_w must be smaller than the ambient dimension");
  }
  if (!(cfg.delta_theta_deg > 0.0 && cfg.delta_theta_deg < 90.0)) {
    throw Error(ErrorCode::InvalidConfig, "delta_theta_deg must lie in (0, 90)");
  }
  if (!(cfg.tol_rank > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "tol_rank must be positive");
  }
}

std::vector<std::vector<std::pair<std::size_t, double>>> NeighborGraph::adjacency() const {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& e : edges) {
    adj[e.i].emplace_back(e.j, e.weight);
  }
  return adj;
}

Eigen::MatrixXd pairwise_sq_distances(const DataSet& data) {
  const auto n = static_cast<Eigen::Index>(data.size());
  // Columns are contiguous, so work on the transpose.
  const Eigen::MatrixXd cols = data.points.transpose();
  Eigen::MatrixXd d2 = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double v = (cols.col(i) - cols.col(j)).squaredNorm();
      d2(i, j) = v;
      d2(j, i) = v;
    }
  }
  return d2;
}

namespace {

std::vector<std::size_t> nearest_from_row(const Eigen::Ref<const Eigen::VectorXd>& d2, std::size_t p,
                                          std::size_t k) {
  std::vector<std::size_t> idx;
  idx.reserve(static_cast<std::size_t>(d2.size()));
  for (std::size_t i = 0; i < static_cast<std::size_t>(d2.size()); ++i) {
    if (i != p) idx.push_back(i);
  }
  auto closer = [&](std::size_t a, std::size_t b) {
    const double da = d2[static_cast<Eigen::Index>(a)];
    const double db = d2[static_cast<Eigen::Index>(b)];
    return da < db || (da == db && a < b);
  };
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(), closer);
  idx.resize(k);
  return idx;
}

Vec row_vec(const DataSet& data, std::size_t i) {
  return data.points.row(static_cast<Eigen::Index>(i)).transpose();
}

StableSelection select_at(const DataSet& data, std::size_t p, const Eigen::Ref<const Eigen::VectorXd>& d2,
                          const SelectorConfig& cfg) {
  StableSelection sel;
  sel.candidates = nearest_from_row(d2, p, cfg.k);
  const Vec x_p = row_vec(data, p);
  auto dist2 = [&](std::size_t i) { return d2[static_cast<Eigen::Index>(i)]; };

  // Basis: walk neighbors nearest-first and keep every one that adds a new
  // direction, until dim_w directions are found.
  std::vector<char> in_basis(cfg.k, 0);
  std::vector<Vec> basis;
  for (std::size_t c = 0; c < cfg.k && basis.size() < cfg.dim_w; ++c) {
    const std::size_t j = sel.candidates[c];
    if (dist2(j) == 0.0) continue;
    try {
      basis.push_back(residual_vector(row_vec(data, j), x_p, basis, cfg.tol_rank));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateComplement) throw;
      continue;
    }
    in_basis[c] = 1;
    sel.basis_indices.push_back(j);
  }
  if (basis.size() < cfg.dim_w) {
    throw Error(ErrorCode::DegenerateBasis, "fewer than dim_w independent neighbors among the k nearest");
  }

  // Complement vector from the farthest non-neighbor that leaves a residual.
  std::vector<char> is_candidate(data.size(), 0);
  for (auto j : sel.candidates) is_candidate[j] = 1;
  std::vector<std::size_t> outside;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (i != p && !is_candidate[i] && dist2(i) > 0.0) outside.push_back(i);
  }
  std::sort(outside.begin(), outside.end(), [&](std::size_t a, std::size_t b) {
    return dist2(a) > dist2(b) || (dist2(a) == dist2(b) && a < b);
  });
  bool found = false;
  Vec w_perp;
  for (auto q : outside) {
    try {
      w_perp = residual_vector(row_vec(data, q), x_p, basis, cfg.tol_rank);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateComplement) throw;
      continue;
    }
    sel.complement_index = q;
    found = true;
    break;
  }
  if (!found) {
    throw Error(ErrorCode::DegenerateComplement, "no point outside the neighborhood leaves the local subspace");
  }

  for (std::size_t c = 0; c < cfg.k; ++c) {
    const std::size_t j = sel.candidates[c];
    if (in_basis[c] || dist2(j) == 0.0) {
      sel.nns.push_back(j);
      continue;
    }
    const double theta = angle_deg(w_perp, row_vec(data, j) - x_p);
    sel.tested.emplace_back(j, theta);
    if (std::abs(theta - 90.0) <= cfg.delta_theta_deg) {
      sel.nns.push_back(j);
    }
  }

  sel.frame.base_point = x_p;
  sel.frame.w_basis = std::move(basis);
  sel.frame.w_perp = std::move(w_perp);
  return sel;
}

NeighborGraph symmetrize(std::size_t n, const std::vector<std::vector<std::size_t>>& chosen,
                         const Eigen::MatrixXd& d2) {
  NeighborGraph g;
  g.n = n;
  for (std::size_t p = 0; p < n; ++p) {
    for (auto j : chosen[p]) {
      const double w = std::sqrt(d2(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(j)));
      g.edges.push_back({p, j, w});
      g.edges.push_back({j, p, w});
    }
  }
  std::sort(g.edges.begin(), g.edges.end(),
            [](const Edge& a, const Edge& b) { return a.i < b.i || (a.i == b.i && a.j < b.j); });
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end(),
                            [](const Edge& a, const Edge& b) { return a.i == b.i && a.j == b.j; }),
                g.edges.end());
  return g;
}

}  // namespace

std::vector<std::vector<std::size_t>> knn_lists(const DataSet& data, std::size_t k) {
  if (k >= data.size()) {
    throw Error(ErrorCode::KTooLarge, "k must be smaller than the number of points");
  }
  const Eigen::MatrixXd d2 = pairwise_sq_distances(data);
  std::vector<std::vector<std::size_t>> out(data.size());
  for (std::size_t p = 0; p < data.size(); ++p) {
    out[p] = nearest_from_row(d2.col(static_cast<Eigen::Index>(p)), p, k);
  }
  return out;
}

StableSelection select_neighbors_stable_detail(const DataSet& data, std::size_t p,
                                               const SelectorConfig& cfg) {
  validate(cfg, data, Method::Stable);
  if (p >= data.size()) {
    throw Error(ErrorCode::BadDim, "point index out of range");
  }
  const Vec x_p = row_vec(data, p);
  Eigen::VectorXd d2(static_cast<Eigen::Index>(data.size()));
  for (Eigen::Index i = 0; i < d2.size(); ++i) {
    d2[i] = (data.points.row(i).transpose() - x_p).squaredNorm();
  }
  return select_at(data, p, d2, cfg);
}

std::vector<std::size_t> select_neighbors_stable(const DataSet& data, std::size_t p,
                                                 const SelectorConfig& cfg) {
  return select_neighbors_stable_detail(data, p, cfg).nns;
}

NeighborGraph build_graph(const DataSet& data, const SelectorConfig& cfg, Method method) {
  validate(cfg, data, method);
  const std::size_t n = data.size();
  const Eigen::MatrixXd d2 = pairwise_sq_distances(data);
  std::vector<std::vector<std::size_t>> chosen(n);
  for (std::size_t p = 0; p < n; ++p) {
    const auto row = d2.col(static_cast<Eigen::Index>(p));
    if (method == Method::Standard) {
      chosen[p] = nearest_from_row(row, p, cfg.k);
      continue;
    }
    try {
      chosen[p] = select_at(data, p, row, cfg).nns;
    } catch (const Error& e) {
      throw Error(e.code(), "point " + std::to_string(p) + ": " + e.detail());
    }
  }
  return symmetrize(n, chosen, d2);
}

}  // namespace isomap
