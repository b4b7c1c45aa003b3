#pragma once

#include <span>
#include <string>
#include <vector>

#include "edg/edg_operator.hpp"

namespace edg {

struct EnergyRecord {
  double t = 0.0;
  double kinetic = 0.0;    // int |v^h|^2
  double potential = 0.0;  // int |grad u^h|^2
  double nonlinear = 0.0;  // sum_k w_k beta(x_k) F(|u^h(x_k)|^2)

  double total() const { return kinetic + potential + nonlinear; }
};

enum class ErrorComponent { re_u, im_u, re_v, im_v, abs_u };

std::string to_string(ErrorComponent c);
const std::vector<ErrorComponent>& all_error_components();

struct ErrorRecord {
  double t = 0.0;
  ErrorComponent component = ErrorComponent::re_u;
  double l2 = 0.0;
};

EnergyRecord discrete_energy(const State& state, const Discretization& disc);

/// Both sides of the semi-discrete energy identity.
///   lhs: chain-rule dE^h/dt with (u_t, v_t) from semidiscrete_rhs
///   rhs: -sum_faces int 2(gamma |[[v]]|^2 + tau |[[grad u]]|^2) plus, on
///        Dirichlet faces, int 2 Re(n.grad conj(u) g_t)
///   constraint_defect: 2 Re sum_e conj(u_e,0) r_e, where r_e is the residual
///        of the constant-mode test row that the mean-value equation replaces.
/// lhs == rhs + constraint_defect always; the defect vanishes when
/// beta f(|u|^2) is constant on every element.
struct EnergyRate {
  double lhs = 0.0;
  double rhs = 0.0;
  double constraint_defect = 0.0;
};

EnergyRate semidiscrete_energy_rate(const State& state, const Discretization& disc,
                                    const FluxParams& params);

/// sqrt(sum_e int_e |c(u^h) - c(u_exact)|^2) with q+3 Gauss points per axis,
/// evaluated at state.t. Throws std::invalid_argument without an exact solution.
double l2_error(const State& state, const Discretization& disc, ErrorComponent component);
double l2_error(const State& state, const Discretization& disc, const ExactSolution& exact,
                ErrorComponent component);

/// Least-squares slope of log(error) against log(h).
double fit_convergence_rate(std::span<const double> h, std::span<const double> error);

}  // namespace edg
