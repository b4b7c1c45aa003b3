#pragma once

#include <optional>
#include <string>

#include "edg/discretization.hpp"
#include "edg/state.hpp"

namespace edg {

/// Interface flux family
///   v*       = mu v_1 + (1-mu) v_2 - tau [[grad u]]
///   (grad u)* = (1-mu) grad u_1 + mu grad u_2 - gamma [[v]]
/// where side 1 is the minus element of the face.
struct FluxParams {
  double mu = 0.5;
  double tau = 0.0;
  double gamma = 0.0;

  static FluxParams central() { return {0.5, 0.0, 0.0}; }
  /// mu = 0 gives v* = v_2, (grad u)* = grad u_1; mu = 1 the mirror image.
  static FluxParams alternating(int mu) { return {static_cast<double>(mu), 0.0, 0.0}; }
  static FluxParams sommerfeld(double xi = 1.0);

  void validate() const;
};

/// Named presets: central, alternating0, alternating1, sommerfeld.
FluxParams flux_from_name(const std::string& name, double xi = 1.0);

/// Traces at the face quadrature points. dnu_minus = n_1 . grad u_1 and
/// dnu_plus = n_2 . grad u_2 with n_1 = +e_axis = -n_2. A missing side of a
/// physical boundary face is left zero and flagged.
struct FaceTraces {
  Eigen::VectorXcd v_minus, v_plus;
  Eigen::VectorXcd dnu_minus, dnu_plus;
  bool has_minus = true;
  bool has_plus = true;
};

/// Single-valued interface data. gradu_star holds n_1 . (grad u)*.
struct PointFluxes {
  Eigen::VectorXcd v_star;
  Eigen::VectorXcd gradu_star;
};

/// Fluxes of every mesh face: points x faces.
struct FaceFluxes {
  Eigen::MatrixXcd v_star;
  Eigen::MatrixXcd gradu_star;
};

FaceTraces trace_values(const State& state, const Discretization& disc, int face);

/// Interior and periodic faces use the flux family above. Dirichlet faces use
/// v* = g_t and the interior normal derivative; `boundary_ut` must then hold g_t
/// at the face points.
PointFluxes numerical_flux(const FaceTraces& traces, const FluxParams& params, FaceTag tag,
                           const Eigen::VectorXcd* boundary_ut = nullptr);

FaceFluxes face_fluxes(const State& state, const Discretization& disc, const FluxParams& params);

/// Element-local solve for u_t. The constant-mode test row is replaced by
/// int (u_t - v) = 0. Throws NumericalFailure with the element id if a local
/// matrix is singular.
Eigen::MatrixXcd solve_ut(const State& state, const FaceFluxes& fluxes, const Discretization& disc);

/// v_t from the diagonal mass solve of the velocity equation.
Eigen::MatrixXcd compute_vt(const State& state, const FaceFluxes& fluxes,
                            const Discretization& disc);

StateDerivative semidiscrete_rhs(const State& state, const Discretization& disc,
                                 const FluxParams& params);

/// Bundles a discretization and a flux choice; callable as an RHS closure.
class EdgOperator {
 public:
  EdgOperator(const Discretization& disc, FluxParams params) : disc_(&disc), params_(params) {
    params_.validate();
  }
  StateDerivative operator()(const State& state) const {
    return semidiscrete_rhs(state, *disc_, params_);
  }
  const Discretization& discretization() const { return *disc_; }
  const FluxParams& params() const { return params_; }

 private:
  const Discretization* disc_;
  FluxParams params_;
};

}  // namespace edg
