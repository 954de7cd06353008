#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "isomap/datasets.hpp"
#include "isomap/error.hpp"
#include "isomap/pipeline.hpp"

using namespace isomap;
using isomap::testing::TwoPlanes;

namespace {

std::size_t count_of(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

// Minimal well-formedness check: every element opened is closed in order.
bool balanced_xml(const std::string& doc) {
  std::vector<std::string> stack;
  std::size_t pos = 0;
  while ((pos = doc.find('<', pos)) != std::string::npos) {
    const auto end = doc.find('>', pos);
    if (end == std::string::npos) return false;
    const std::string tag = doc.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (tag.back() == '/') continue;
    const auto name_end = tag.find_first_of(" \t\n");
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
    } else {
      stack.push_back(tag.substr(0, name_end));
    }
  }
  return stack.empty();
}

Embedding small_embedding(std::size_t n, std::size_t m) {
  Embedding e;
  e.m = m;
  e.coords = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  for (Eigen::Index i = 0; i < e.coords.rows(); ++i)
    for (Eigen::Index j = 0; j < e.coords.cols(); ++j) e.coords(i, j) = std::sin(1.0 + i * 3.0 + j) / 3.0;
  e.eigenvalues.assign(m, 1.0);
  return e;
}

}  // namespace

TEST_CASE("complete graph on a lifted planar cloud embeds exactly") {
  std::mt19937_64 rng(41);
  const auto data = isomap::testing::lifted_plane_cloud(rng, 60);
  RunConfig cfg;
  cfg.method = Method::Standard;
  cfg.k = 59;
  const auto res = isomap_embed(data, cfg);
  CHECK(res.residual_variance <= 1e-10);
  CHECK(res.n_dropped == 0);
  CHECK(res.graph.undirected_edge_count() == 60 * 59 / 2);
}

TEST_CASE("bridge fixture through the pipeline") {
  const TwoPlanes fx;
  RunConfig cfg;
  cfg.k = 8;
  for (auto method : {Method::Standard, Method::Stable}) {
    cfg.method = method;
    const auto res = isomap_embed(fx.data, cfg);
    std::size_t direct = 0;
    for (const auto& e : res.graph.edges) {
      direct += TwoPlanes::plane_of(e.i) + TwoPlanes::plane_of(e.j) == 1;
    }
    if (method == Method::Stable) {
      CHECK(direct == 0);
    } else {
      CHECK(direct > 0);
    }
    CHECK(res.kept_indices.size() + res.n_dropped == fx.data.size());
  }
}

TEST_CASE("compare_methods shape and filter neutrality") {
  const auto sample = gen_swiss_roll(300, 5);
  RunConfig base;
  const std::size_t ks[] = {5, 10};
  const auto report = compare_methods(sample.data, ks, base);
  REQUIRE(report.rows.size() == 4);
  CHECK(report.rows[0].k == 5);
  CHECK(report.rows[0].method == Method::Standard);
  CHECK(report.rows[1].method == Method::Stable);
  CHECK(report.rows[3].k == 10);
  for (const auto& r : report.rows) {
    CHECK(!r.error);
    CHECK(r.n_embedded + r.n_dropped == 300);
    CHECK(r.residual_variance >= 0.0);
    CHECK(r.residual_variance <= 1.0);
  }

  base.delta_theta_deg = 89.9;
  const auto wide = compare_methods(sample.data, ks, base);
  for (std::size_t i = 0; i < wide.rows.size(); i += 2) {
    CHECK(std::abs(wide.rows[i].residual_variance - wide.rows[i + 1].residual_variance) <= 1e-12);
    CHECK(wide.rows[i].n_edges == wide.rows[i + 1].n_edges);
  }
}

TEST_CASE("compare_methods records failing cells") {
  // A plane in R^3 has no complement direction, so stable selection fails.
  DataSet flat;
  flat.points = Eigen::MatrixXd::Zero(30, 3);
  for (Eigen::Index i = 0; i < 30; ++i) flat.points.row(i) << i % 6, std::floor(i / 6.0) * 1.3, 0.0;
  const std::size_t ks[] = {4, 40};
  const auto report = compare_methods(flat, ks, RunConfig{});
  REQUIRE(report.rows.size() == 4);
  CHECK(!report.rows[0].error);
  CHECK(report.rows[1].error);
  CHECK(report.rows[2].error);
  CHECK(report.rows[3].error);
  std::ostringstream out;
  write_report_csv(report, out);
  CHECK(count_of(out.str(), ",error,") == 3);
}

TEST_CASE("floyd and dijkstra give the same residual variance") {
  std::vector<DataSet> corpus = {gen_swiss_roll(300, 2).data, gen_helix(300, 2).data,
                                 gen_punctured_sphere(300, 2).data, TwoPlanes().data};
  for (const auto& data : corpus) {
    for (auto method : {Method::Standard, Method::Stable}) {
      RunConfig cfg;
      cfg.k = 8;
      cfg.method = method;
      const auto a = isomap_embed(data, cfg);
      cfg.shortest_path = ShortestPath::Dijkstra;
      const auto b = isomap_embed(data, cfg);
      CHECK(std::abs(a.residual_variance - b.residual_variance) <= 1e-12);
      CHECK(a.kept_indices == b.kept_indices);
    }
  }
}

TEST_CASE("errors carry their stage") {
  const auto sample = gen_helix(50, 1);
  RunConfig cfg;
  cfg.k = 50;
  try {
    isomap_embed(sample.data, cfg);
    FAIL("expected KTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::KTooLarge);
    CHECK(std::string(e.what()).find("graph") != std::string::npos);
  }
  cfg.k = 5;
  cfg.m = 0;
  CHECK_THROWS_AS(isomap_embed(sample.data, cfg), Error);
}

TEST_CASE("embedding CSV format") {
  const auto emb = small_embedding(2, 1);
  const std::vector<std::size_t> kept = {4, 9};
  std::ostringstream out;
  write_embedding_csv(emb, kept, std::vector<int>{3, 1}, out);
  const std::string text = out.str();
  CHECK(count_of(text, "\n") == 3);
  CHECK(text.rfind("index,label,y1\n4,3,", 0) == 0);

  std::ostringstream empty;
  write_embedding_csv(small_embedding(0, 2), {}, std::nullopt, empty);
  CHECK(empty.str() == "index,label,y1,y2\n");

  CHECK_THROWS_AS(write_embedding_csv(emb, std::vector<std::size_t>{1}, std::nullopt, out), Error);
}

TEST_CASE("embedding CSV round trips through load_csv") {
  const auto emb = small_embedding(25, 3);
  std::vector<std::size_t> kept(25);
  for (std::size_t i = 0; i < 25; ++i) kept[i] = 2 * i;
  const auto path = std::filesystem::temp_directory_path() / "isomap_emb_roundtrip.csv";
  write_embedding_csv(emb, kept, std::nullopt, path);
  const auto back = load_csv(path, {.has_header = true});
  std::filesystem::remove(path);
  REQUIRE(back.points.rows() == 25);
  REQUIRE(back.points.cols() == 5);
  CHECK((back.points.rightCols(3) - emb.coords).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(back.points(3, 0) == 6.0);
  CHECK(back.points(3, 1) == -1.0);
}

TEST_CASE("scatter SVG") {
  const auto emb = small_embedding(3, 2);
  std::ostringstream out;
  write_scatter_svg(emb, std::vector<int>{0, 1, 2}, out);
  const std::string doc = out.str();
  CHECK(count_of(doc, "<circle") == 3);
  CHECK(balanced_xml(doc));
  CHECK(doc.find("#1f77b4") != std::string::npos);
  CHECK(doc.find("nan") == std::string::npos);

  Embedding same = small_embedding(4, 2);
  same.coords.setConstant(1.5);
  std::ostringstream flat;
  write_scatter_svg(same, std::nullopt, flat);
  CHECK(count_of(flat.str(), "<circle") == 4);
  CHECK(flat.str().find("nan") == std::string::npos);
  CHECK(flat.str().find("cx=\"300.000\"") != std::string::npos);

  std::ostringstream bad;
  CHECK_THROWS_AS(write_scatter_svg(small_embedding(3, 1), std::nullopt, bad), Error);
}

TEST_CASE("pipeline output is byte-identical across runs") {
  const auto sample = gen_punctured_sphere(250, 9);
  RunConfig cfg;
  cfg.k = 10;
  auto render = [&] {
    const auto res = isomap_embed(sample.data, cfg);
    std::ostringstream out;
    write_embedding_csv(res.embedding, res.kept_indices, std::nullopt, out);
    return out.str();
  };
  CHECK(render() == render());
}
