#ifndef HARDMONO_SVD_HPP
#define HARDMONO_SVD_HPP

#include "hardmono/graph.hpp"

namespace hardmono {

struct SvdResult {
  Mat u;  // m x r, orthonormal columns
  Mat v;  // n x r, orthonormal columns
  Eigen::VectorXd singular_values;  // r, non-negative, descending
};

// One-sided Jacobi SVD (thin) of an m x n matrix. Singular vectors are
// sign-fixed so the largest-magnitude entry of each column of u is
// positive.
SvdResult jacobi_svd(const Mat& a, double tol = 1e-12, int max_sweeps = 60);

// Rank-k projection coordinates: u.leftCols(k) scaled by the singular
// values.
Mat svd_project(const SvdResult& svd, int k);

}  // namespace hardmono

#endif
