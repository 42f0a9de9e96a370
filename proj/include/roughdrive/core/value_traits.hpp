#pragma once

#include <cmath>

#include <Eigen/Dense>

namespace rd::value {

// Norm and zero helpers so the multi-index machinery works uniformly over
// scalars, vectors and matrices. Matrix norm is Frobenius; the operator
// 2-norm used in reports lives in the driver module.

inline double norm(double x) { return std::fabs(x); }

template <class D>
double norm(const Eigen::MatrixBase<D>& m) {
  return m.norm();
}

inline double zero_like(double) { return 0.0; }

template <class D>
typename D::PlainObject zero_like(const Eigen::MatrixBase<D>& m) {
  return D::PlainObject::Zero(m.rows(), m.cols());
}

}  // namespace rd::value
