#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "edg/types.hpp"

namespace edg {

template <typename Real>
using VectorX = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// Gauss-Legendre nodes and weights on the reference interval [-1, 1].
template <typename Real>
struct QuadratureRule {
  VectorX<Real> nodes;
  VectorX<Real> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

template <typename Real>
struct LegendreTable {
  VectorX<Real> values;       // P_0(x) .. P_q(x)
  VectorX<Real> derivatives;  // P_0'(x) .. P_q'(x)
  VectorX<Real> second;       // P_0''(x) .. P_q''(x)
};

/// Legendre polynomials and their first two derivatives up to `degree`,
/// by the three-term Bonnet recurrence.
template <typename Real>
LegendreTable<Real> legendre_eval(int degree, Real x) {
  if (degree < 0) throw std::invalid_argument("legendre_eval: negative degree");
  LegendreTable<Real> out{VectorX<Real>::Zero(degree + 1), VectorX<Real>::Zero(degree + 1),
                          VectorX<Real>::Zero(degree + 1)};
  out.values(0) = Real(1);
  if (degree >= 1) {
    out.values(1) = x;
    out.derivatives(1) = Real(1);
  }
  for (int n = 1; n < degree; ++n) {
    out.values(n + 1) =
        (Real(2 * n + 1) * x * out.values(n) - Real(n) * out.values(n - 1)) / Real(n + 1);
    out.derivatives(n + 1) = out.derivatives(n - 1) + Real(2 * n + 1) * out.values(n);
    out.second(n + 1) = out.second(n - 1) + Real(2 * n + 1) * out.derivatives(n);
  }
  return out;
}

namespace detail {

// (P_n(x), P_n'(x)) without building the whole table.
template <typename Real>
std::pair<Real, Real> legendre_pair(int n, Real x) {
  Real p_prev = Real(1), p = x;
  Real d_prev = Real(0), d = Real(1);
  if (n == 0) return {Real(1), Real(0)};
  for (int k = 1; k < n; ++k) {
    const Real p_next = (Real(2 * k + 1) * x * p - Real(k) * p_prev) / Real(k + 1);
    const Real d_next = d_prev + Real(2 * k + 1) * p;
    p_prev = p;
    p = p_next;
    d_prev = d;
    d = d_next;
  }
  return {p, d};
}

}  // namespace detail

/// n-point Gauss-Legendre rule; exact for polynomials of degree <= 2n-1.
/// Roots of P_n are found by Newton iteration from Chebyshev-like guesses.
template <typename Real>
QuadratureRule<Real> gauss_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_rule: need at least one point");
  QuadratureRule<Real> rule{VectorX<Real>(n), VectorX<Real>(n)};
  const Real tol = std::max(Real(1e-15), Real(8) * std::numeric_limits<Real>::epsilon());
  const Real pi = std::numbers::pi_v<Real>;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Real x = std::cos(pi * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = detail::legendre_pair(n, x);
      const Real dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= tol) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw std::runtime_error("gauss_rule: Newton iteration did not converge for n=" +
                               std::to_string(n));
    }
    if (2 * i + 1 == n) x = Real(0);
    const auto [p, dp] = detail::legendre_pair(n, x);
    (void)p;
    const Real w = Real(2) / ((Real(1) - x * x) * dp * dp);
    rule.nodes(n - 1 - i) = x;
    rule.nodes(i) = -x;
    rule.weights(n - 1 - i) = w;
    rule.weights(i) = w;
  }
  return rule;
}

/// Polynomial degrees of the displacement (q) and velocity (s) spaces.
struct BasisSpec {
  int q = 1;
  int s = 1;
  int dim = 1;

  /// Number of modes per element for a tensor space of the given 1D degree.
  int modes(int degree) const { return dim == 1 ? degree + 1 : (degree + 1) * (degree + 1); }
  int dim_q() const { return modes(q); }
  int dim_s() const { return modes(s); }

  void validate() const;
};

/// Reference-element matrices on [-1,1]^dim for the modal Legendre basis.
/// Tensor index of mode (mx, my) is mx + (p+1)*my.
struct ReferenceMatrices {
  Eigen::MatrixXd mass_q;
  Eigen::MatrixXd mass_s;
  Eigen::MatrixXd stiffness_q;                 // sum of the per-axis parts
  std::array<Eigen::MatrixXd, 2> stiffness_q_axis;
  Eigen::MatrixXd mixed_stiffness;             // dim_s x dim_q, int grad(psi_m) . grad(phi_n)
  std::array<Eigen::MatrixXd, 2> mixed_stiffness_axis;
  // 1D endpoint traces, index 0 at x = -1 and index 1 at x = +1.
  std::array<Eigen::VectorXd, 2> trace_q, trace_s, dtrace_q, dtrace_s;
};

ReferenceMatrices reference_matrices(const BasisSpec& spec);

/// Values and reference gradients of every tensor mode of `degree` at one point.
struct TensorBasisValues {
  Eigen::VectorXd values;
  std::array<Eigen::VectorXd, 2> gradient;
  std::array<Eigen::VectorXd, 2> second;  // d^2/dxi_a^2 of each mode
};

TensorBasisValues evaluate_tensor_basis(int degree, int dim, const Point& xi);

}  // namespace edg
