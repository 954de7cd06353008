#include "isomap/numeric_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "isomap/error.hpp"

namespace isomap {

namespace {

// One projection sweep followed by a second one; the second pass only
// removes rounding residue left by the first.
void remove_projections(Vec& r, std::span<const Vec> basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      r -= (r.dot(b) / b.squaredNorm()) * b;
    }
  }
}

}  // namespace

std::pair<Vec, Vec> gram_schmidt_pair(const Vec& x_p, const Vec& x_n1, const Vec& x_n2,
                                      double tol_rank) {
  if (x_p.size() != x_n1.size() || x_p.size() != x_n2.size()) {
    throw Error(ErrorCode::BadDim, "gram_schmidt_pair: dimension mismatch");
  }
  Vec v1 = x_n1 - x_p;
  Vec u = x_n2 - x_p;
  const double n1 = v1.norm();
  const double nu = u.norm();
  if (n1 == 0.0 || nu == 0.0) {
    throw Error(ErrorCode::DegenerateBasis, "gram_schmidt_pair: neighbor coincides with base point");
  }
  Vec v2 = u;
  remove_projections(v2, std::span<const Vec>(&v1, 1));
  if (!(v2.norm() > tol_rank * nu)) {
    throw Error(ErrorCode::DegenerateBasis, "gram_schmidt_pair: collinear neighbors");
  }
  return {std::move(v1), std::move(v2)};
}

Vec residual_vector(const Vec& x_q, const Vec& x_p, std::span<const Vec> basis, double tol_rank) {
  if (x_q.size() != x_p.size()) {
    throw Error(ErrorCode::BadDim, "residual_vector: dimension mismatch");
  }
  for (const auto& b : basis) {
    if (b.size() != x_p.size()) {
      throw Error(ErrorCode::BadDim, "residual_vector: basis dimension mismatch");
    }
    if (b.squaredNorm() == 0.0) {
      throw Error(ErrorCode::DegenerateBasis, "residual_vector: zero basis vector");
    }
  }
  Vec r = x_q - x_p;
  const double nu = r.norm();
  remove_projections(r, basis);
  if (!(r.norm() > tol_rank * nu)) {
    throw Error(ErrorCode::DegenerateComplement, "residual_vector: x_q lies in the subspace");
  }
  return r;
}

double angle_deg(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::BadDim, "angle_deg: dimension mismatch");
  }
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) {
    throw Error(ErrorCode::ZeroVector, "angle_deg: zero-length argument");
  }
  // 2*atan2(|a-b|, |a+b|) on unit vectors stays accurate near 0 and 180,
  // where acos of the cosine loses half the digits.
  const Vec a = u / nu;
  const Vec b = v / nv;
  const double rad = 2.0 * std::atan2((a - b).norm(), (a + b).norm());
  return rad * (180.0 / std::numbers::pi);
}

EigenPairs symmetric_eigen_top(const Mat& a, std::size_t m) {
  const auto n = static_cast<std::size_t>(a.rows());
  if (a.rows() != a.cols() || n == 0) {
    throw Error(ErrorCode::BadDim, "symmetric_eigen_top: matrix must be square and non-empty");
  }
  if (m < 1 || m > n) {
    throw Error(ErrorCode::BadDim, "symmetric_eigen_top: m out of range");
  }
  if (!a.allFinite()) {
    throw Error(ErrorCode::NonFinite, "symmetric_eigen_top: non-finite entry");
  }
  const double scale = a.cwiseAbs().maxCoeff();
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) {
    throw Error(ErrorCode::NotSymmetric, "symmetric_eigen_top: asymmetry exceeds tolerance");
  }

  const Mat sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NonFinite, "symmetric_eigen_top: eigensolver did not converge");
  }
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return values[static_cast<Eigen::Index>(i)] > values[static_cast<Eigen::Index>(j)];
  });

  EigenPairs out;
  out.values.reserve(m);
  out.vectors.reserve(m);
  for (std::size_t c = 0; c < m; ++c) {
    const auto col = static_cast<Eigen::Index>(order[c]);
    Vec v = vectors.col(col).normalized();
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v[i]) > best) {
        best = std::abs(v[i]);
        arg = i;
      }
    }
    if (v[arg] < 0.0) {
      v = -v;
    }
    out.values.push_back(values[col]);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

double pearson_r(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw Error(ErrorCode::BadDim, "pearson_r: inputs must have equal length >= 2");
  }
  const auto n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) {
    throw Error(ErrorCode::ZeroVariance, "pearson_r: constant input");
  }
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

}  // namespace isomap
