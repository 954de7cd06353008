#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "isomap/dataset.hpp"
#include "isomap/geodesic_mds.hpp"
#include "isomap/neighbor_graph.hpp"

namespace isomap {

enum class ShortestPath { Floyd, Dijkstra };

std::string_view to_string(ShortestPath sp) noexcept;
ShortestPath parse_shortest_path(std::string_view text);

struct RunConfig {
  Method method = Method::Stable;
  std::size_t k = 10;
  std::size_t m = 2;
  std::size_t dim_w = 2;
  double delta_theta_deg = 5.0;
  ShortestPath shortest_path = ShortestPath::Floyd;
  double tol_rank = kDefaultTolRank;

  SelectorConfig selector() const { return {k, dim_w, delta_theta_deg, tol_rank}; }
};

struct IsomapResult {
  Embedding embedding;
  /// Geodesic distances restricted to the embedded component.
  GeodesicMatrix geodesic;
  std::vector<std::size_t> kept_indices;
  /// The full graph over all input points.
  NeighborGraph graph;
  std::size_t n_dropped = 0;
  double residual_variance = 0.0;
};

/// Graph, shortest paths, largest component, classical scaling.
IsomapResult isomap_embed(const DataSet& data, const RunConfig& cfg);

struct ReportRow {
  std::size_t k = 0;
  Method method = Method::Standard;
  double residual_variance = 0.0;
  std::size_t n_embedded = 0;
  std::size_t n_dropped = 0;
  std::size_t n_edges = 0;
  std::size_t clipped_dims = 0;
  std::optional<std::string> error;  ///< set when this cell failed
};

struct ComparisonReport {
  std::vector<ReportRow> rows;
};

inline constexpr Method kBothMethods[] = {Method::Standard, Method::Stable};

/// Runs every (k, method) cell in that order. A failing cell is recorded as
/// an error row and the sweep continues.
ComparisonReport compare_methods(const DataSet& data, std::span<const std::size_t> k_values,
                                 const RunConfig& base_cfg,
                                 std::span<const Method> methods = kBothMethods);

void write_report_csv(const ComparisonReport& report, std::ostream& out);
void write_report_csv(const ComparisonReport& report, const std::filesystem::path& path);

/// Header `index,label,y1..ym`; `labels`, when given, is aligned with the
/// embedding rows. Missing labels are written as -1.
void write_embedding_csv(const Embedding& emb, std::span<const std::size_t> kept_indices,
                         const std::optional<std::vector<int>>& labels, std::ostream& out);
void write_embedding_csv(const Embedding& emb, std::span<const std::size_t> kept_indices,
                         const std::optional<std::vector<int>>& labels, const std::filesystem::path& path);

/// SVG 1.1 scatter plot of the first two embedding coordinates.
void write_scatter_svg(const Embedding& emb, const std::optional<std::vector<int>>& labels,
                       std::ostream& out);
void write_scatter_svg(const Embedding& emb, const std::optional<std::vector<int>>& labels,
                       const std::filesystem::path& path);

}  // namespace isomap
