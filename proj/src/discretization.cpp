#include "edg/discretization.hpp"

#include <stdexcept>

namespace edg {

Discretization::Discretization(Mesh mesh, BasisSpec basis, ProblemSpec problem)
    : mesh_(std::move(mesh)), basis_(basis), problem_(std::move(problem)) {
  basis_.validate();
  if (basis_.dim != mesh_.dim || problem_.dim != mesh_.dim)
    throw std::invalid_argument("Discretization: dimension mismatch");
  if (problem_.bc != mesh_.bc)
    throw std::invalid_argument("Discretization: boundary kind of mesh and problem differ");
  if (problem_.bc == BoundaryKind::dirichlet && (!problem_.g || !problem_.g_t))
    throw std::invalid_argument("Discretization: Dirichlet problem without boundary data");

  reference_ = reference_matrices(basis_);
  const int dim = mesh_.dim;
  const int q = basis_.q, s = basis_.s;
  const int nq = basis_.dim_q(), ns = basis_.dim_s();
  const auto rule = gauss_rule<double>(q + 1);
  const int n1 = rule.size();

  // Physical Jacobian factors.
  const double jac = dim == 1 ? 0.5 * mesh_.h.x() : 0.25 * mesh_.h.x() * mesh_.h.y();
  const Point dscale(2.0 / mesh_.h.x(), 2.0 / mesh_.h.y());

  const int nvol = dim == 1 ? n1 : n1 * n1;
  weights_.resize(nvol);
  ref_points_.resize(nvol);
  phi_u_.resize(nvol, nq);
  phi_v_.resize(nvol, ns);
  for (int a = 0; a < 2; ++a) {
    grad_u_[a] = Eigen::MatrixXd::Zero(nvol, nq);
    grad_v_[a] = Eigen::MatrixXd::Zero(nvol, ns);
  }
  for (int k = 0; k < nvol; ++k) {
    const int kx = k % n1, ky = k / n1;
    const Point xi(rule.nodes(kx), dim == 1 ? 0.0 : rule.nodes(ky));
    ref_points_[k] = xi;
    weights_(k) = jac * (dim == 1 ? rule.weights(kx) : rule.weights(kx) * rule.weights(ky));
    const auto bu = evaluate_tensor_basis(q, dim, xi);
    const auto bv = evaluate_tensor_basis(s, dim, xi);
    phi_u_.row(k) = bu.values.transpose();
    phi_v_.row(k) = bv.values.transpose();
    for (int a = 0; a < dim; ++a) {
      grad_u_[a].row(k) = dscale(a) * bu.gradient[a].transpose();
      grad_v_[a].row(k) = dscale(a) * bv.gradient[a].transpose();
    }
  }

  // Closed-form reference matrices scaled to the physical element.
  stiffness_ = Eigen::MatrixXd::Zero(nq, nq);
  stiffness_uv_ = Eigen::MatrixXd::Zero(nq, ns);
  for (int a = 0; a < dim; ++a) {
    stiffness_ += dscale(a) * dscale(a) * jac * reference_.stiffness_q_axis[a];
    stiffness_uv_ += dscale(a) * dscale(a) * jac * reference_.mixed_stiffness_axis[a].transpose();
  }
  mass_u_ = jac * reference_.mass_q.diagonal();
  mass_v_ = jac * reference_.mass_s.diagonal();

  // Faces.
  for (int axis = 0; axis < 2; ++axis) {
    for (int side = 0; side < 2; ++side) {
      FaceTable& f = faces_[2 * axis + side];
      f.axis = axis;
      f.side = side;
      f.outward = side == 1 ? 1.0 : -1.0;
      if (axis >= dim) continue;
      const int nf = dim == 1 ? 1 : n1;
      const int tangent = 1 - axis;
      f.ref_points.resize(nf);
      f.weights.resize(nf);
      f.phi_u.resize(nf, nq);
      f.phi_v.resize(nf, ns);
      f.dn_u.resize(nf, nq);
      f.dx_u.resize(nf, nq);
      for (int p = 0; p < nf; ++p) {
        Point xi = Point::Zero();
        xi(axis) = f.outward;
        if (dim == 2) xi(tangent) = rule.nodes(p);
        f.ref_points[p] = xi;
        f.weights(p) = dim == 1 ? 1.0 : 0.5 * mesh_.h(tangent) * rule.weights(p);
        const auto bu = evaluate_tensor_basis(q, dim, xi);
        const auto bv = evaluate_tensor_basis(s, dim, xi);
        f.phi_u.row(p) = bu.values.transpose();
        f.phi_v.row(p) = bv.values.transpose();
        f.dx_u.row(p) = dscale(axis) * bu.gradient[axis].transpose();
        f.dn_u.row(p) = f.outward * f.dx_u.row(p);
      }
      f.test_dn_u = f.dn_u.transpose() * f.weights.asDiagonal();
      f.test_v = f.phi_v.transpose() * f.weights.asDiagonal();
    }
  }

  beta_.resize(nvol, mesh_.num_elements());
  for (int e = 0; e < mesh_.num_elements(); ++e)
    for (int k = 0; k < nvol; ++k) beta_(k, e) = problem_.beta(to_physical(e, ref_points_[k]));
}

Point Discretization::to_physical(int element, const Point& ref) const {
  Point x = mesh_.elements[element].center() + 0.5 * mesh_.h.cwiseProduct(ref);
  if (mesh_.dim == 1) x.y() = 0.0;
  return x;
}

std::vector<Point> Discretization::face_points(int face) const {
  const Face& f = mesh_.faces[face];
  // Use whichever neighbour exists; both see the same physical points.
  if (f.element_minus != kBoundary) {
    const FaceTable& t = faces_[2 * f.axis + 1];
    std::vector<Point> pts;
    for (const Point& xi : t.ref_points) pts.push_back(to_physical(f.element_minus, xi));
    return pts;
  }
  const FaceTable& t = faces_[2 * f.axis];
  std::vector<Point> pts;
  for (const Point& xi : t.ref_points) pts.push_back(to_physical(f.element_plus, xi));
  return pts;
}

}  // namespace edg
