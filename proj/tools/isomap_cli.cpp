// Command-line front end: synthetic data generation, single embeddings and
// standard-vs-stable sweeps.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isomap/datasets.hpp"
#include "isomap/error.hpp"
#include "isomap/pipeline.hpp"
#include "isomap/version.hpp"

namespace {

struct InputArgs {
  std::string csv;
  std::string idx;
  std::string labels;
  std::optional<std::size_t> take_first;
  std::optional<std::uint64_t> sample_seed;
  bool label_column = false;
  bool header = false;
};

struct RunArgs {
  std::string method = "stable";
  std::size_t m = 2;
  std::size_t dim_w = 2;
  double delta_theta = 5.0;
  std::string shortest_path = "floyd";
};

void add_input_options(CLI::App* cmd, InputArgs& in) {
  auto* csv = cmd->add_option("--in", in.csv, "Input CSV matrix, one sample per row");
  auto* idx = cmd->add_option("--idx", in.idx, "Input IDX image file (MNIST format)");
  csv->excludes(idx);
  cmd->add_option("--labels", in.labels, "IDX label file matching --idx")->needs(idx);
  cmd->add_option("--take-first", in.take_first, "Keep only this many IDX images")->needs(idx);
  cmd->add_option("--sample-seed", in.sample_seed, "Draw the --take-first images at random with this seed")
      ->needs(idx);
  cmd->add_flag("--label-column", in.label_column, "Last CSV column holds integer labels")->needs(csv);
  cmd->add_flag("--header", in.header, "Skip the first CSV row")->needs(csv);
}

void add_run_options(CLI::App* cmd, RunArgs& run) {
  cmd->add_option("--m", run.m, "Embedding dimension")->capture_default_str();
  cmd->add_option("--dim-w", run.dim_w, "Local subspace dimension for the stable selector")->capture_default_str();
  cmd->add_option("--delta-theta", run.delta_theta, "Angle half-window in degrees")->capture_default_str();
  cmd->add_option("--shortest-path", run.shortest_path, "floyd or dijkstra")
      ->check(CLI::IsMember({"floyd", "dijkstra"}))
      ->capture_default_str();
}

isomap::DataSet load_input(const InputArgs& in) {
  if (!in.idx.empty()) {
    isomap::IdxOptions opts;
    if (!in.labels.empty()) opts.labels = in.labels;
    opts.take = in.take_first;
    opts.sample_seed = in.sample_seed;
    return isomap::load_idx(in.idx, opts);
  }
  if (in.csv.empty()) {
    throw CLI::RequiredError("--in or --idx");
  }
  return isomap::load_csv(in.csv, {.has_header = in.header, .label_last = in.label_column});
}

isomap::RunConfig make_config(const RunArgs& run, std::size_t k) {
  isomap::RunConfig cfg;
  cfg.k = k;
  cfg.m = run.m;
  cfg.dim_w = run.dim_w;
  cfg.delta_theta_deg = run.delta_theta;
  cfg.shortest_path = isomap::parse_shortest_path(run.shortest_path);
  return cfg;
}

void write_sample_csv(const Eigen::MatrixXd& m, std::ostream& out) {
  char buf[32];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
      out << (c ? "," : "") << buf;
    }
    out << '\n';
  }
}

void write_matrix_to(const Eigen::MatrixXd& m, const std::string& path) {
  if (path.empty() || path == "-") {
    write_sample_csv(m, std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw isomap::Error(isomap::ErrorCode::IoError, "cannot write " + path);
  write_sample_csv(m, out);
  if (!out.flush()) throw isomap::Error(isomap::ErrorCode::IoError, "write to " + path + " failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isomap with angle-filtered neighbor selection"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a synthetic manifold sample as CSV");
  std::string manifold;
  std::size_t n = 800;
  std::uint64_t seed = 1;
  std::string gen_out;
  std::string params_out;
  gen->add_option("--manifold", manifold, "helix, swissroll or sphere")
      ->required()
      ->check(CLI::IsMember({"helix", "swissroll", "swiss-roll", "sphere", "punctured-sphere"}));
  gen->add_option("--n", n, "Number of points")->capture_default_str();
  gen->add_option("--seed", seed, "Random seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output CSV (default: stdout)");
  gen->add_option("--params-out", params_out, "Also write the generating parameters as CSV");

  // embed
  auto* embed = app.add_subcommand("embed", "Embed a data set and write the coordinates");
  InputArgs embed_in;
  RunArgs embed_run;
  std::size_t embed_k = 0;
  std::string embed_out;
  std::string svg_out;
  add_input_options(embed, embed_in);
  add_run_options(embed, embed_run);
  embed->add_option("--k", embed_k, "Neighbor count")->required();
  embed->add_option("--method", embed_run.method, "standard or stable")
      ->check(CLI::IsMember({"standard", "stable"}))
      ->capture_default_str();
  embed->add_option("--out", embed_out, "Embedding CSV (default: stdout)");
  embed->add_option("--svg", svg_out, "Also write a scatter plot of the first two coordinates");

  // compare
  auto* compare = app.add_subcommand("compare", "Sweep k for both selectors and report residual variance");
  InputArgs cmp_in;
  RunArgs cmp_run;
  cmp_run.method = "both";
  std::vector<std::size_t> k_values;
  std::string cmp_out;
  add_input_options(compare, cmp_in);
  add_run_options(compare, cmp_run);
  compare->add_option("--k", k_values, "Comma-separated neighbor counts")->required()->delimiter(',');
  compare->add_option("--method", cmp_run.method, "standard, stable or both")
      ->check(CLI::IsMember({"standard", "stable", "both"}))
      ->capture_default_str();
  compare->add_option("--out", cmp_out, "Report CSV (default: stdout)");

  auto* version = app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cerr << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (version->parsed()) {
      std::cout << "isomap " << isomap::kVersion << '\n';
      return 0;
    }
    if (gen->parsed()) {
      const auto sample = isomap::generate(isomap::parse_manifold(manifold), n, seed);
      write_matrix_to(sample.data.points, gen_out);
      if (!params_out.empty()) write_matrix_to(sample.params, params_out);
      std::cerr << "generated " << sample.data.size() << " points\n";
      return 0;
    }
    if (embed->parsed()) {
      const auto data = load_input(embed_in);
      auto cfg = make_config(embed_run, embed_k);
      cfg.method = isomap::parse_method(embed_run.method);
      const auto res = isomap::isomap_embed(data, cfg);
      std::optional<std::vector<int>> labels;
      if (data.labels) {
        labels.emplace();
        for (auto i : res.kept_indices) labels->push_back((*data.labels)[i]);
      }
      if (embed_out.empty() || embed_out == "-") {
        isomap::write_embedding_csv(res.embedding, res.kept_indices, labels, std::cout);
      } else {
        isomap::write_embedding_csv(res.embedding, res.kept_indices, labels, embed_out);
      }
      if (!svg_out.empty()) isomap::write_scatter_svg(res.embedding, labels, svg_out);
      std::cerr << "embedded " << res.kept_indices.size() << " of " << data.size() << " points ("
                << res.n_dropped << " dropped), " << res.graph.undirected_edge_count() << " edges, "
                << res.embedding.clipped_dims << " clipped dims, residual variance " << res.residual_variance
                << '\n';
      return 0;
    }
    if (compare->parsed()) {
      const auto data = load_input(cmp_in);
      const auto cfg = make_config(cmp_run, 0);
      std::vector<isomap::Method> methods;
      if (cmp_run.method == "both") {
        methods.assign(std::begin(isomap::kBothMethods), std::end(isomap::kBothMethods));
      } else {
        methods.push_back(isomap::parse_method(cmp_run.method));
      }
      const auto report = isomap::compare_methods(data, k_values, cfg, methods);
      for (const auto& row : report.rows) {
        if (row.error) std::cerr << "k=" << row.k << " " << isomap::to_string(row.method) << ": " << *row.error << '\n';
      }
      if (cmp_out.empty() || cmp_out == "-") {
        isomap::write_report_csv(report, std::cout);
      } else {
        isomap::write_report_csv(report, cmp_out);
      }
      return 0;
    }
  } catch (const CLI::RequiredError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const isomap::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
