#include "isomap/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "isomap/error.hpp"

namespace isomap {

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

template <typename Fn>
auto staged(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), std::string(stage) + ": " + e.detail());
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write to " + path.string() + " failed");
}

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

std::string_view to_string(ShortestPath sp) noexcept {
  return sp == ShortestPath::Floyd ? "floyd" : "dijkstra";
}

ShortestPath parse_shortest_path(std::string_view text) {
  if (text == "floyd") return ShortestPath::Floyd;
  if (text == "dijkstra") return ShortestPath::Dijkstra;
  throw Error(ErrorCode::InvalidConfig, "unknown shortest-path algorithm '" + std::string(text) + "'");
}

IsomapResult isomap_embed(const DataSet& data, const RunConfig& cfg) {
  if (cfg.m < 1) {
    throw Error(ErrorCode::BadDim, "embedding dimension must be positive");
  }
  IsomapResult out;
  out.graph = staged("graph", [&] { return build_graph(data, cfg.selector(), cfg.method); });
  auto full = staged("shortest paths", [&] {
    return cfg.shortest_path == ShortestPath::Floyd ? floyd_all_pairs(out.graph)
                                                    : dijkstra_all_pairs(out.graph);
  });
  auto restricted = largest_component(full, data);
  out.kept_indices = std::move(restricted.kept_indices);
  out.geodesic = std::move(restricted.geodesic);
  out.n_dropped = data.size() - out.kept_indices.size();
  out.embedding = staged("embedding", [&] { return classical_mds(out.geodesic, cfg.m); });
  out.residual_variance =
      staged("residual variance", [&] { return residual_variance(out.geodesic, out.embedding); });
  return out;
}

ComparisonReport compare_methods(const DataSet& data, std::span<const std::size_t> k_values,
                                 const RunConfig& base_cfg, std::span<const Method> methods) {
  ComparisonReport report;
  for (auto k : k_values) {
    for (auto method : methods) {
      RunConfig cfg = base_cfg;
      cfg.k = k;
      cfg.method = method;
      ReportRow row;
      row.k = k;
      row.method = method;
      try {
        const auto res = isomap_embed(data, cfg);
        row.residual_variance = res.residual_variance;
        row.n_embedded = res.kept_indices.size();
        row.n_dropped = res.n_dropped;
        row.n_edges = res.graph.undirected_edge_count();
        row.clipped_dims = res.embedding.clipped_dims;
      } catch (const Error& e) {
        row.residual_variance = std::numeric_limits<double>::quiet_NaN();
        row.n_dropped = data.size();
        row.error = e.what();
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

void write_report_csv(const ComparisonReport& report, std::ostream& out) {
  out << "k,method,residual_variance,n_embedded,n_dropped,n_edges,clipped_dims\n";
  for (const auto& r : report.rows) {
    out << r.k << ',' << to_string(r.method) << ',' << (r.error ? std::string("error") : fmt17(r.residual_variance))
        << ',' << r.n_embedded << ',' << r.n_dropped << ',' << r.n_edges << ',' << r.clipped_dims << '\n';
  }
}

void write_report_csv(const ComparisonReport& report, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_report_csv(report, out);
  finish(out, path);
}

void write_embedding_csv(const Embedding& emb, std::span<const std::size_t> kept_indices,
                         const std::optional<std::vector<int>>& labels, std::ostream& out) {
  const auto n = static_cast<std::size_t>(emb.coords.rows());
  if (kept_indices.size() != n || (labels && labels->size() != n)) {
    throw Error(ErrorCode::DimensionMismatch, "index/label lists do not match the embedding rows");
  }
  out << "index,label";
  for (std::size_t c = 0; c < emb.m; ++c) out << ",y" << c + 1;
  out << '\n';
  for (std::size_t r = 0; r < n; ++r) {
    out << kept_indices[r] << ',' << (labels ? (*labels)[r] : -1);
    for (std::size_t c = 0; c < emb.m; ++c) {
      out << ',' << fmt17(emb.coords(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
    }
    out << '\n';
  }
}

void write_embedding_csv(const Embedding& emb, std::span<const std::size_t> kept_indices,
                         const std::optional<std::vector<int>>& labels, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_embedding_csv(emb, kept_indices, labels, out);
  finish(out, path);
}

void write_scatter_svg(const Embedding& emb, const std::optional<std::vector<int>>& labels,
                       std::ostream& out) {
  if (emb.m < 2 || emb.coords.cols() < 2) {
    throw Error(ErrorCode::BadDim, "scatter plot needs at least two embedding coordinates");
  }
  const auto n = emb.coords.rows();
  if (labels && static_cast<Eigen::Index>(labels->size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "label count does not match the embedding rows");
  }
  constexpr double kSize = 600.0;

  // Bounding box with a 5% margin; a zero extent falls back to a unit box
  // centred on the data.
  auto axis = [&](Eigen::Index c) {
    double lo = n > 0 ? emb.coords.col(c).minCoeff() : 0.0;
    double hi = n > 0 ? emb.coords.col(c).maxCoeff() : 0.0;
    if (!(hi - lo > 0.0)) {
      const double mid = 0.5 * (lo + hi);
      lo = mid - 0.5;
      hi = mid + 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    return std::pair{lo - pad, hi + pad};
  };
  const auto [x0, x1] = axis(0);
  const auto [y0, y1] = axis(1);

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSize << "\" height=\""
      << kSize << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" fill=\"white\" stroke=\"black\"/>\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    const double px = (emb.coords(i, 0) - x0) / (x1 - x0) * kSize;
    const double py = kSize - (emb.coords(i, 1) - y0) / (y1 - y0) * kSize;
    const char* color = "#444444";
    if (labels) {
      const int l = (*labels)[static_cast<std::size_t>(i)];
      color = kPalette[static_cast<std::size_t>(((l % 10) + 10) % 10)];
    }
    out << "<circle cx=\"" << fmt_fixed(px) << "\" cy=\"" << fmt_fixed(py) << "\" r=\"3\" fill=\"" << color
        << "\"/>\n";
  }
  out << "</svg>\n";
}

void write_scatter_svg(const Embedding& emb, const std::optional<std::vector<int>>& labels,
                       const std::filesystem::path& path) {
  auto out = open_out(path);
  write_scatter_svg(emb, labels, out);
  finish(out, path);
}

}  // namespace isomap
