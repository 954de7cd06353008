#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "isomap/error.hpp"
#include "isomap/geodesic_mds.hpp"
#include "test_support.hpp"

using namespace isomap;
using isomap::testing::random_mat;
using isomap::testing::random_rotation;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

NeighborGraph graph_of(std::size_t n, std::initializer_list<std::tuple<std::size_t, std::size_t, double>> es) {
  NeighborGraph g;
  g.n = n;
  for (auto [i, j, w] : es) {
    g.edges.push_back({i, j, w});
    g.edges.push_back({j, i, w});
  }
  std::sort(g.edges.begin(), g.edges.end(),
            [](const Edge& a, const Edge& b) { return a.i < b.i || (a.i == b.i && a.j < b.j); });
  return g;
}

NeighborGraph random_graph(std::mt19937_64& rng, std::size_t n, double density) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> w(0.01, 5.0);
  NeighborGraph g;
  g.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (u(rng) < density) {
        const double x = w(rng);
        g.edges.push_back({i, j, x});
        g.edges.push_back({j, i, x});
      }
    }
  }
  std::sort(g.edges.begin(), g.edges.end(),
            [](const Edge& a, const Edge& b) { return a.i < b.i || (a.i == b.i && a.j < b.j); });
  return g;
}

GeodesicMatrix euclidean_geodesic(const Mat& pts) {
  GeodesicMatrix gm;
  const auto n = pts.rows();
  gm.d = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) gm.d(i, j) = (pts.row(i) - pts.row(j)).norm();
  gm.component_ids.assign(static_cast<std::size_t>(n), 0);
  return gm;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an isomap::Error");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("shortest path examples") {
  for (auto solve : {floyd_all_pairs, dijkstra_all_pairs}) {
    const auto path = solve(graph_of(3, {{0, 1, 1.0}, {1, 2, 2.0}}));
    CHECK(path.d(0, 2) == 3.0);
    CHECK(path.d(2, 0) == 3.0);

    const auto split = solve(graph_of(4, {{0, 1, 1.0}, {2, 3, 1.0}}));
    CHECK(split.d(0, 2) == kInf);
    CHECK(split.d(1, 3) == kInf);
    CHECK(split.component_ids == std::vector<int>{0, 0, 1, 1});

    const auto tri = solve(graph_of(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 10.0}}));
    CHECK(tri.d(0, 2) == 2.0);

    const auto empty = solve(graph_of(3, {}));
    CHECK(empty.d(0, 1) == kInf);
    CHECK(empty.d(1, 1) == 0.0);
    CHECK(empty.component_ids == std::vector<int>{0, 1, 2});
  }
}

TEST_CASE("dijkstra agrees with floyd on random graphs") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 10 + 7 * static_cast<std::size_t>(trial);
    const auto g = random_graph(rng, n, 0.02 + 0.01 * trial);
    const auto f = floyd_all_pairs(g);
    const auto d = dijkstra_all_pairs(g);
    CHECK(f.component_ids == d.component_ids);
    for (Eigen::Index i = 0; i < f.d.rows(); ++i) {
      for (Eigen::Index j = 0; j < f.d.cols(); ++j) {
        if (std::isinf(f.d(i, j))) {
          CHECK(std::isinf(d.d(i, j)));
        } else {
          CHECK(std::abs(f.d(i, j) - d.d(i, j)) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("geodesic matrices are metric") {
  std::mt19937_64 rng(32);
  const auto gm = floyd_all_pairs(random_graph(rng, 60, 0.1));
  std::uniform_int_distribution<int> pick(0, 59);
  CHECK((gm.d - gm.d.transpose()).cwiseAbs().maxCoeff() == 0.0);
  for (int t = 0; t < 2000; ++t) {
    const int i = pick(rng), j = pick(rng), k = pick(rng);
    CHECK(gm.d(i, i) == 0.0);
    if (std::isfinite(gm.d(i, k)) && std::isfinite(gm.d(k, j))) {
      CHECK(gm.d(i, j) <= gm.d(i, k) + gm.d(k, j) + 1e-9);
    }
  }
}

TEST_CASE("largest_component restriction") {
  DataSet data{Mat::Zero(5, 2), std::vector<int>{10, 11, 12, 13, 14}};
  for (Eigen::Index i = 0; i < 5; ++i) data.points(i, 0) = static_cast<double>(i);

  const auto whole = largest_component(floyd_all_pairs(graph_of(5, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}})), data);
  CHECK(whole.kept_indices == std::vector<std::size_t>{0, 1, 2, 3, 4});
  CHECK(whole.data.points == data.points);

  const auto three = largest_component(floyd_all_pairs(graph_of(5, {{0, 4, 1}, {1, 2, 1}, {2, 3, 1}})), data);
  CHECK(three.kept_indices == std::vector<std::size_t>{1, 2, 3});
  CHECK(*three.data.labels == std::vector<int>{11, 12, 13});
  CHECK(three.geodesic.d(0, 2) == 2.0);
  CHECK(three.data.points(0, 0) == 1.0);

  const auto tie = largest_component(floyd_all_pairs(graph_of(5, {{1, 2, 1}, {0, 3, 1}})), data);
  CHECK(tie.kept_indices == std::vector<std::size_t>{0, 3});
}

TEST_CASE("double_center examples") {
  Mat s(2, 2);
  s << 0, 1, 1, 0;
  Mat expected(2, 2);
  expected << 0.25, -0.25, -0.25, 0.25;
  CHECK((double_center(s) - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(double_center(Mat::Zero(3, 3)) == Mat::Zero(3, 3));
  s(0, 1) = s(1, 0) = kInf;
  CHECK(code_of([&] { double_center(s); }) == ErrorCode::NonFinite);
}

TEST_CASE("double_center has zero row and column sums") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const auto gm = euclidean_geodesic(random_mat(rng, 40, 3));
    const Mat tau = double_center(gm.d.cwiseProduct(gm.d));
    const double scale = tau.norm();
    CHECK(tau.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-9 * scale);
    CHECK(tau.colwise().sum().cwiseAbs().maxCoeff() <= 1e-9 * scale);
    CHECK(tau == tau.transpose());
  }
}

TEST_CASE("classical_mds of two points") {
  GeodesicMatrix gm;
  gm.d = Mat(2, 2);
  gm.d << 0, 1, 1, 0;
  gm.component_ids = {0, 0};
  const auto emb = classical_mds(gm, 1);
  CHECK(emb.eigenvalues[0] == doctest::Approx(0.5));
  CHECK(std::abs(emb.coords(0, 0)) == doctest::Approx(0.5));
  CHECK(emb.coords(0, 0) == doctest::Approx(-emb.coords(1, 0)));
  CHECK(code_of([&] { classical_mds(gm, 2); }) == ErrorCode::BadDim);
  gm.d(0, 1) = gm.d(1, 0) = kInf;
  CHECK(code_of([&] { classical_mds(gm, 1); }) == ErrorCode::NonFinite);
}

TEST_CASE("classical_mds recovers planar distances") {
  std::mt19937_64 rng(34);
  const Mat pts = random_mat(rng, 50, 2);
  const auto gm = euclidean_geodesic(pts);
  const auto emb = classical_mds(gm, 2);
  CHECK((embedding_distances(emb) - gm.d).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK(emb.clipped_dims == 0);
}

TEST_CASE("classical_mds column structure on a square") {
  const Mat sq = (Mat(4, 2) << 0, 0, 1, 0, 1, 1, 0, 1).finished();
  const auto gm = euclidean_geodesic(sq);
  const auto emb = classical_mds(gm, 1);
  CHECK(emb.coords.col(0).squaredNorm() == doctest::Approx(emb.eigenvalues[0]));

  std::mt19937_64 rng(35);
  const auto gm3 = euclidean_geodesic(random_mat(rng, 30, 5));
  const auto emb3 = classical_mds(gm3, 4);
  for (std::size_t a = 0; a < 4; ++a) {
    CHECK(emb3.coords.col(a).squaredNorm() == doctest::Approx(emb3.eigenvalues[a]).epsilon(1e-10));
    if (a > 0) CHECK(emb3.eigenvalues[a - 1] >= emb3.eigenvalues[a]);
    for (std::size_t b = 0; b < a; ++b) {
      CHECK(std::abs(emb3.coords.col(a).dot(emb3.coords.col(b))) <=
            1e-8 * emb3.coords.col(a).norm() * emb3.coords.col(b).norm());
    }
  }
}

TEST_CASE("negative eigenvalues clip their columns") {
  // Graph distances around a 5-cycle are not Euclidean; the double-centered
  // matrix has spectrum (2.927, 2.927, 0, -0.427, -0.427).
  const auto gm = floyd_all_pairs(graph_of(5, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 0, 1}}));
  const auto emb = classical_mds(gm, 4);
  CHECK(emb.eigenvalues[0] == doctest::Approx(2.927051).epsilon(1e-6));
  CHECK(emb.eigenvalues[3] == doctest::Approx(-0.427051).epsilon(1e-6));
  CHECK(emb.clipped_dims >= 1);
  CHECK(emb.coords.col(3).norm() == 0.0);
  CHECK(emb.coords.col(0).norm() > 0.0);
}

TEST_CASE("residual_variance identities") {
  std::mt19937_64 rng(36);
  const auto gm = euclidean_geodesic(random_mat(rng, 25, 3));
  CHECK(residual_variance(gm.d, gm.d) <= 1e-12);
  CHECK(residual_variance(gm.d, 2.0 * gm.d) <= 1e-12);
  CHECK(residual_variance(0.3 * gm.d, gm.d) == doctest::Approx(residual_variance(gm.d, gm.d)).epsilon(1e-12));

  const Mat noisy = gm.d + 0.3 * random_mat(rng, 25, 25).cwiseAbs();
  const Mat sym_noisy = 0.5 * (noisy + noisy.transpose());
  const double rv = residual_variance(gm.d, sym_noisy);
  CHECK(rv > 0.0);
  CHECK(rv == doctest::Approx(residual_variance(4.0 * gm.d, sym_noisy)).epsilon(1e-12));
  CHECK(rv == doctest::Approx(residual_variance(gm.d, 0.25 * sym_noisy)).epsilon(1e-12));

  // Full-rank classical scaling of a Euclidean set reproduces it.
  const auto full = classical_mds(gm, 24);
  CHECK(residual_variance(gm, full) <= 1e-10);

  CHECK(code_of([] { residual_variance(Mat::Zero(3, 3), Mat::Zero(3, 3)); }) == ErrorCode::ZeroVariance);
}

TEST_CASE("classical scaling round trip through a random lift") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 5; ++trial) {
    Mat lifted = Mat::Zero(60, 10);
    lifted.leftCols(2) = random_mat(rng, 60, 2);
    const Mat rot = random_rotation(rng, 10);
    lifted = (lifted * rot.transpose()).rowwise() + Eigen::RowVectorXd(random_mat(rng, 1, 10));
    const auto gm = euclidean_geodesic(lifted);
    CHECK(residual_variance(gm, classical_mds(gm, 2)) <= 1e-10);
  }
}
