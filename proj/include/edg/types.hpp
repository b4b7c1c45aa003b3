#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace edg {

using Complex = std::complex<double>;

/// Physical or reference coordinates. One-dimensional problems use only x().
using Point = Eigen::Vector2d;

/// A local linear solve or nonlinearity evaluation produced an unusable result.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what, int element = -1)
      : std::runtime_error(what), element_(element) {}
  int element() const { return element_; }

 private:
  int element_;
};

/// A pointwise evaluation overflowed or produced NaN.
class NonFiniteValue : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// The solution grew past the blow-up threshold or became non-finite.
class BlowUp : public std::runtime_error {
 public:
  BlowUp(double t, double max_abs_u)
      : std::runtime_error("solution blow-up at t=" + std::to_string(t)),
        t_(t),
        max_abs_u_(max_abs_u) {}
  double time() const { return t_; }
  double max_abs_u() const { return max_abs_u_; }

 private:
  double t_;
  double max_abs_u_;
};

}  // namespace edg
