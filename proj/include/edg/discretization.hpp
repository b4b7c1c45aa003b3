#pragma once

#include <array>
#include <vector>

#include "edg/basis.hpp"
#include "edg/mesh.hpp"
#include "edg/problem.hpp"

namespace edg {

/// Basis tables on one face of the element, already scaled to physical size.
/// Face index is 2*axis + side; side 1 has outward normal +e_axis.
struct FaceTable {
  int axis = 0;
  int side = 0;
  double outward = 1.0;             // sign of the outward normal along axis
  std::vector<Point> ref_points;    // on the reference square/interval
  Eigen::VectorXd weights;          // physical surface weights
  Eigen::MatrixXd phi_u;            // points x dim_q
  Eigen::MatrixXd phi_v;            // points x dim_s
  Eigen::MatrixXd dn_u;             // outward normal derivative of each u mode
  Eigen::MatrixXd dx_u;             // derivative along +e_axis of each u mode
  Eigen::MatrixXd test_dn_u;        // dn_u^T diag(weights), dim_q x points
  Eigen::MatrixXd test_v;           // phi_v^T diag(weights), dim_s x points
};

/// Mesh, basis and problem bundled with every table the semi-discrete operator
/// needs. All elements share one geometry, so volume and face tables are built
/// once. Volume integrals of nonlinear terms use q+1 Gauss points per axis.
class Discretization {
 public:
  Discretization(Mesh mesh, BasisSpec basis, ProblemSpec problem);

  const Mesh& mesh() const { return mesh_; }
  const BasisSpec& basis() const { return basis_; }
  const ProblemSpec& problem() const { return problem_; }
  const ReferenceMatrices& reference() const { return reference_; }

  int num_volume_points() const { return static_cast<int>(weights_.size()); }
  int num_face_points() const { return static_cast<int>(faces_[0].weights.size()); }

  /// Physical quadrature weights of the (q+1)^dim rule.
  const Eigen::VectorXd& weights() const { return weights_; }
  /// Volume quadrature points on the reference element, x fastest.
  const std::vector<Point>& reference_points() const { return ref_points_; }
  const Eigen::MatrixXd& phi_u() const { return phi_u_; }
  const Eigen::MatrixXd& phi_v() const { return phi_v_; }
  const Eigen::MatrixXd& grad_u(int axis) const { return grad_u_[axis]; }
  const Eigen::MatrixXd& grad_v(int axis) const { return grad_v_[axis]; }

  /// int grad(phi_m) . grad(phi_n) on one physical element.
  const Eigen::MatrixXd& stiffness() const { return stiffness_; }
  /// int grad(phi_m) . grad(psi_n), dim_q x dim_s.
  const Eigen::MatrixXd& stiffness_uv() const { return stiffness_uv_; }
  /// Diagonals of the physical mass matrices.
  const Eigen::VectorXd& mass_u() const { return mass_u_; }
  const Eigen::VectorXd& mass_v() const { return mass_v_; }

  const FaceTable& face_table(int index) const { return faces_[index]; }

  /// beta sampled at the volume quadrature points: points x elements.
  const Eigen::MatrixXd& beta_at_points() const { return beta_; }
  /// Physical coordinates of face points for mesh face `face`.
  std::vector<Point> face_points(int face) const;
  Point to_physical(int element, const Point& ref) const;

 private:
  Mesh mesh_;
  BasisSpec basis_;
  ProblemSpec problem_;
  ReferenceMatrices reference_;

  Eigen::VectorXd weights_;
  std::vector<Point> ref_points_;
  Eigen::MatrixXd phi_u_, phi_v_;
  std::array<Eigen::MatrixXd, 2> grad_u_, grad_v_;
  Eigen::MatrixXd stiffness_, stiffness_uv_;
  Eigen::VectorXd mass_u_, mass_v_;
  std::array<FaceTable, 4> faces_;
  Eigen::MatrixXd beta_;
};

}  // namespace edg
