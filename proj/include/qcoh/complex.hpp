#pragma once

#include <stdexcept>
#include <vector>

#include "qcoh/linalg.hpp"

namespace qcoh {

/**
 * A finite window of a cochain complex of finite dimensional vector spaces.
 *
 * Space i (for lo <= i < lo + dims.size()) has dimension dims[i - lo];
 * diff[k] maps space lo+k into space lo+k+1 and therefore has shape
 * dims[k+1] x dims[k]. Differentials out of the window are zero.
 */
template <class Scalar>
struct Complex {
  int lo = 0;
  std::vector<Eigen::Index> dims;
  std::vector<Matrix<Scalar>> diff;

  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }

  // Shape check plus d o d == 0; throws std::invalid_argument otherwise.
  void validate() const {
    if (!dims.empty() && diff.size() + 1 != dims.size())
      throw std::invalid_argument("complex: need one differential per adjacent pair");
    for (size_t k = 0; k < diff.size(); ++k) {
      if (diff[k].cols() != dims[k] || diff[k].rows() != dims[k + 1])
        throw std::invalid_argument("complex: differential shape mismatch");
    }
    for (size_t k = 0; k + 1 < diff.size(); ++k) {
      if (dims[k] == 0 || dims[k + 2] == 0) continue;
      Matrix<Scalar> sq = diff[k + 1] * diff[k];
      for (Eigen::Index r = 0; r < sq.rows(); ++r)
        for (Eigen::Index c = 0; c < sq.cols(); ++c)
          if (sq(r, c) != Scalar(0)) throw std::invalid_argument("complex: d o d != 0");
    }
  }
};

/**
 * dim H^i = dim ker(d_i) - rank(d_{i-1}), computed by exact elimination.
 * Indices outside the window have zero cohomology. Validates the complex.
 */
template <class Scalar>
Eigen::Index cohomology_dim(const Complex<Scalar>& c, int i) {
  c.validate();
  if (c.dims.empty() || i < c.lo || i > c.hi()) return 0;
  const size_t k = static_cast<size_t>(i - c.lo);
  const Eigen::Index out_rank = (k < c.diff.size()) ? rank(c.diff[k]) : 0;
  const Eigen::Index in_rank = (k > 0) ? rank(c.diff[k - 1]) : 0;
  return c.dims[k] - out_rank - in_rank;
}

}  // namespace qcoh
