#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

/**
 * @file numeric_kernel.hpp
 *
 * @brief Small dense linear-algebra primitives used by the neighbor selector
 * and by classical scaling.
 *
 * Everything here is a pure function of its arguments.
 */

namespace isomap {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Relative threshold below which a Gram-Schmidt residual counts as zero.
inline constexpr double kDefaultTolRank = 1e-9;

/**
 * @brief Orthogonal frame at a base point: a basis of the local subspace W
 * and one vector of its orthogonal complement.
 */
struct SubspaceFrame {
  Vec base_point;
  std::vector<Vec> w_basis;
  Vec w_perp;

  std::size_t dim_w() const { return w_basis.size(); }
};

struct EigenPairs {
  std::vector<double> values;  ///< descending
  std::vector<Vec> vectors;    ///< unit norm, sign-canonicalized
};

/**
 * Two-vector Gram-Schmidt step anchored at `x_p`.
 *
 * Returns `v1 = x_n1 - x_p` and `v2`, the part of `x_n2 - x_p` orthogonal to
 * `v1`. Throws `DegenerateBasis` when `x_n2 - x_p` is (numerically) parallel
 * to `v1`, or when either neighbor coincides with `x_p`.
 */
std::pair<Vec, Vec> gram_schmidt_pair(const Vec& x_p, const Vec& x_n1, const Vec& x_n2,
                                      double tol_rank = kDefaultTolRank);

/**
 * Component of `x_q - x_p` orthogonal to every vector of `basis`.
 *
 * The basis must be pairwise orthogonal. Throws `DegenerateComplement` when
 * the residual norm is at most `tol_rank * ||x_q - x_p||`.
 */
Vec residual_vector(const Vec& x_q, const Vec& x_p, std::span<const Vec> basis,
                    double tol_rank = kDefaultTolRank);

/// Unsigned angle between two vectors, in degrees, in [0, 180].
double angle_deg(const Vec& u, const Vec& v);

/**
 * The `m` algebraically largest eigenpairs of a symmetric matrix.
 *
 * Eigenvalue ties keep the solver's order. Each eigenvector is flipped so its
 * largest-magnitude component (first one on ties) is positive.
 */
EigenPairs symmetric_eigen_top(const Mat& a, std::size_t m);

/// Sample Pearson correlation; throws `ZeroVariance` on a constant input.
double pearson_r(std::span<const double> a, std::span<const double> b);

}  // namespace isomap
