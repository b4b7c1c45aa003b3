#include "edg/edg_operator.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace edg {

FluxParams FluxParams::sommerfeld(double xi) {
  if (!(xi > 0.0)) throw std::invalid_argument("sommerfeld flux needs xi > 0");
  return {0.5, 1.0 / (2.0 * xi), 0.5 * xi};
}

void FluxParams::validate() const {
  if (!(tau >= 0.0) || !(gamma >= 0.0))
    throw std::invalid_argument("FluxParams: tau and gamma must be non-negative");
  if (!std::isfinite(mu)) throw std::invalid_argument("FluxParams: mu must be finite");
}

FluxParams flux_from_name(const std::string& name, double xi) {
  if (name == "central") return FluxParams::central();
  if (name == "alternating0" || name == "alternating") return FluxParams::alternating(0);
  if (name == "alternating1") return FluxParams::alternating(1);
  if (name == "sommerfeld") return FluxParams::sommerfeld(xi);
  throw std::invalid_argument("unknown flux '" + name + "'");
}

FaceTraces trace_values(const State& state, const Discretization& disc, int face) {
  const Face& f = disc.mesh().faces[face];
  const int nf = disc.num_face_points();
  FaceTraces tr;
  tr.has_minus = f.element_minus != kBoundary;
  tr.has_plus = f.element_plus != kBoundary;
  tr.v_minus = tr.v_plus = tr.dnu_minus = tr.dnu_plus = Eigen::VectorXcd::Zero(nf);
  if (tr.has_minus) {
    const FaceTable& t = disc.face_table(2 * f.axis + 1);
    tr.v_minus.noalias() = t.phi_v * state.v.col(f.element_minus);
    tr.dnu_minus.noalias() = t.dn_u * state.u.col(f.element_minus);
  }
  if (tr.has_plus) {
    const FaceTable& t = disc.face_table(2 * f.axis);
    tr.v_plus.noalias() = t.phi_v * state.v.col(f.element_plus);
    tr.dnu_plus.noalias() = t.dn_u * state.u.col(f.element_plus);
  }
  return tr;
}

PointFluxes numerical_flux(const FaceTraces& tr, const FluxParams& params, FaceTag tag,
                           const Eigen::VectorXcd* boundary_ut) {
  PointFluxes out;
  if (tag == FaceTag::dirichlet) {
    if (boundary_ut == nullptr)
      throw std::invalid_argument("numerical_flux: Dirichlet face without boundary data");
    out.v_star = *boundary_ut;
    out.gradu_star = tr.has_minus ? tr.dnu_minus : Eigen::VectorXcd(-tr.dnu_plus);
    return out;
  }
  const double mu = params.mu;
  const Eigen::VectorXcd jump_gradu = tr.dnu_minus + tr.dnu_plus;
  const Eigen::VectorXcd jump_v = tr.v_minus - tr.v_plus;
  out.v_star = mu * tr.v_minus + (1.0 - mu) * tr.v_plus - params.tau * jump_gradu;
  out.gradu_star = (1.0 - mu) * tr.dnu_minus - mu * tr.dnu_plus - params.gamma * jump_v;
  return out;
}

FaceFluxes face_fluxes(const State& state, const Discretization& disc, const FluxParams& params) {
  const Mesh& mesh = disc.mesh();
  const int nf = disc.num_face_points();
  FaceFluxes out{Eigen::MatrixXcd(nf, mesh.num_faces()), Eigen::MatrixXcd(nf, mesh.num_faces())};
  Eigen::VectorXcd g_t(nf);
  for (int face = 0; face < mesh.num_faces(); ++face) {
    const FaceTraces tr = trace_values(state, disc, face);
    const FaceTag tag = mesh.faces[face].tag;
    const Eigen::VectorXcd* bdata = nullptr;
    if (tag == FaceTag::dirichlet) {
      const auto pts = disc.face_points(face);
      for (int p = 0; p < nf; ++p) g_t(p) = disc.problem().g_t(pts[p], state.t);
      bdata = &g_t;
    }
    PointFluxes pf = numerical_flux(tr, params, tag, bdata);
    out.v_star.col(face) = pf.v_star;
    out.gradu_star.col(face) = pf.gradu_star;
  }
  return out;
}

namespace {

// beta * f(|u|^2) * weight at every volume point of one element.
void nonlinear_weights(const Discretization& disc, int element, const Eigen::VectorXcd& u_pts,
                       Eigen::VectorXd& g) {
  const auto& f = disc.problem().nonlinearity.f;
  const auto& w = disc.weights();
  const auto beta = disc.beta_at_points().col(element);
  for (Eigen::Index k = 0; k < u_pts.size(); ++k) g(k) = w(k) * beta(k) * f(std::norm(u_pts(k)));
}

}  // namespace

Eigen::MatrixXcd solve_ut(const State& state, const FaceFluxes& fluxes, const Discretization& disc) {
  const Mesh& mesh = disc.mesh();
  const int nq = disc.basis().dim_q();
  const int nvol = disc.num_volume_points();
  const Eigen::MatrixXd& phi_u = disc.phi_u();
  const Eigen::MatrixXd& phi_v = disc.phi_v();
  const Eigen::MatrixXd phi_u_t = phi_u.transpose();
  const Eigen::MatrixXd& kuv = disc.stiffness_uv();

  // Constant-mode row: int phi_n and int v over the element.
  const Eigen::RowVectorXd mean_row_u = disc.weights().transpose() * phi_u;
  const Eigen::RowVectorXd mean_row_v = disc.weights().transpose() * phi_v;

  Eigen::MatrixXcd ut(nq, mesh.num_elements());
  Eigen::VectorXcd u_pts(nvol), v_pts(nvol), b(nq), jump;
  Eigen::VectorXd g(nvol);
  Eigen::MatrixXd A(nq, nq), rhs(nq, 2), sol(nq, 2);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(nq);

  for (int e = 0; e < mesh.num_elements(); ++e) {
    u_pts.noalias() = phi_u * state.u.col(e);
    v_pts.noalias() = phi_v * state.v.col(e);
    nonlinear_weights(disc, e, u_pts, g);

    A = disc.stiffness();
    A.noalias() += phi_u_t * g.asDiagonal() * phi_u;
    b.noalias() = kuv * state.v.col(e);
    b.noalias() += phi_u_t * (g.asDiagonal() * v_pts);

    for (int fi = 0; fi < mesh.faces_per_element(); ++fi) {
      const int face = mesh.element_faces[e][fi];
      const FaceTable& t = disc.face_table(fi);
      jump = fluxes.v_star.col(face);
      jump.noalias() -= t.phi_v * state.v.col(e);
      b.noalias() += t.test_dn_u * jump;
    }

    A.row(0) = mean_row_u;
    b(0) = mean_row_v * state.v.col(e);

    // Row equilibration keeps the pivot test independent of the size of |u|.
    for (int i = 0; i < nq; ++i) {
      const double scale = 1.0 / A.row(i).cwiseAbs().maxCoeff();
      A.row(i) *= scale;
      b(i) *= scale;
    }
    lu.compute(A);
    const Eigen::VectorXd diag = lu.matrixLU().diagonal().cwiseAbs();
    if (!(diag.minCoeff() > 1e-13 * diag.maxCoeff()))
      throw NumericalFailure("solve_ut: singular local matrix on element " + std::to_string(e), e);
    rhs.col(0) = b.real();
    rhs.col(1) = b.imag();
    sol.noalias() = lu.solve(rhs);
    if (!sol.allFinite())
      throw NumericalFailure("solve_ut: non-finite solution on element " + std::to_string(e), e);
    ut.col(e).real() = sol.col(0);
    ut.col(e).imag() = sol.col(1);
  }
  return ut;
}

Eigen::MatrixXcd compute_vt(const State& state, const FaceFluxes& fluxes,
                            const Discretization& disc) {
  const Mesh& mesh = disc.mesh();
  const int ns = disc.basis().dim_s();
  const int nvol = disc.num_volume_points();
  const Eigen::MatrixXd& phi_u = disc.phi_u();
  const Eigen::MatrixXd phi_vt = disc.phi_v().transpose();
  const Eigen::MatrixXd kvu = disc.stiffness_uv().transpose();
  const Eigen::VectorXd inv_mass_v = disc.mass_v().cwiseInverse();
  std::array<Eigen::MatrixXd, 4> face_test;
  for (int fi = 0; fi < mesh.faces_per_element(); ++fi)
    face_test[fi] = disc.face_table(fi).outward * disc.face_table(fi).test_v;
  const Complex i_alpha(0.0, disc.problem().alpha);

  Eigen::MatrixXcd vt(ns, mesh.num_elements());
  Eigen::VectorXcd u_pts(nvol), r(ns);
  Eigen::VectorXd g(nvol);

  for (int e = 0; e < mesh.num_elements(); ++e) {
    u_pts.noalias() = phi_u * state.u.col(e);
    nonlinear_weights(disc, e, u_pts, g);

    r.noalias() = -(kvu * state.u.col(e));
    r.noalias() -= phi_vt * (g.asDiagonal() * u_pts);
    for (int fi = 0; fi < mesh.faces_per_element(); ++fi)
      r.noalias() += face_test[fi] * fluxes.gradu_star.col(mesh.element_faces[e][fi]);
    vt.col(e) = inv_mass_v.asDiagonal() * r - i_alpha * state.v.col(e);
  }
  return vt;
}

StateDerivative semidiscrete_rhs(const State& state, const Discretization& disc,
                                 const FluxParams& params) {
  const FaceFluxes fluxes = face_fluxes(state, disc, params);
  return {solve_ut(state, fluxes, disc), compute_vt(state, fluxes, disc)};
}

}  // namespace edg
