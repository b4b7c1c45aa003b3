#pragma once

#include <Eigen/Dense>

#include "edg/types.hpp"

namespace edg {

/// Modal coefficients of (u^h, v^h). Column e holds the block of element e.
struct State {
  double t = 0.0;
  Eigen::MatrixXcd u;  // dim_q x num_elements
  Eigen::MatrixXcd v;  // dim_s x num_elements

  int num_elements() const { return static_cast<int>(u.cols()); }
  bool all_finite() const { return u.allFinite() && v.allFinite(); }
};

/// Time derivative of the modal coefficients.
struct StateDerivative {
  Eigen::MatrixXcd u_t;
  Eigen::MatrixXcd v_t;
};

}  // namespace edg
