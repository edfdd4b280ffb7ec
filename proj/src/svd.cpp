#include "hardmono/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hardmono {

SvdResult jacobi_svd(const Mat& a, double tol, int max_sweeps) {
  // Work on the transpose when m < n so the rotated side is the long one.
  const bool transposed = a.rows() < a.cols();
  Mat w = transposed ? Mat(a.transpose()) : a;  // m x n, m >= n
  const Eigen::Index n = w.cols();
  Mat v = Mat::Identity(n, n);

  // Orthogonalize column pairs until all are numerically orthogonal.
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double alpha = w.col(p).squaredNorm();
        const double beta = w.col(q).squaredNorm();
        const double gamma = w.col(p).dot(w.col(q));
        if (std::abs(gamma) <= tol * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (Mat* m : {&w, &v}) {
          const Eigen::VectorXd tmp = m->col(p);
          m->col(p) = c * tmp - s * m->col(q);
          m->col(q) = s * tmp + c * m->col(q);
        }
      }
    }
    if (!rotated) break;
  }

  SvdResult r;
  r.singular_values.resize(n);
  Mat u(w.rows(), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double norm = w.col(j).norm();
    r.singular_values(j) = norm;
    u.col(j) = norm > 0.0 ? Eigen::VectorXd(w.col(j) / norm) : Eigen::VectorXd::Zero(w.rows());
  }

  // Sort descending by singular value.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return r.singular_values(i) > r.singular_values(j);
  });
  Mat u_sorted(u.rows(), n), v_sorted(v.rows(), n);
  Eigen::VectorXd s_sorted(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    u_sorted.col(j) = u.col(order[static_cast<std::size_t>(j)]);
    v_sorted.col(j) = v.col(order[static_cast<std::size_t>(j)]);
    s_sorted(j) = r.singular_values(order[static_cast<std::size_t>(j)]);
  }
  r.u = transposed ? v_sorted : u_sorted;
  r.v = transposed ? u_sorted : v_sorted;
  r.singular_values = s_sorted;

  // Sign convention: largest-magnitude entry of each left vector positive.
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::Index imax = 0;
    r.u.col(j).cwiseAbs().maxCoeff(&imax);
    if (r.u(imax, j) < 0.0) {
      r.u.col(j) = -r.u.col(j);
      r.v.col(j) = -r.v.col(j);
    }
  }
  return r;
}

Mat svd_project(const SvdResult& svd, int k) {
  const Eigen::Index kk = std::min<Eigen::Index>(k, svd.u.cols());
  return svd.u.leftCols(kk) * svd.singular_values.head(kk).asDiagonal();
}

}  // namespace hardmono
