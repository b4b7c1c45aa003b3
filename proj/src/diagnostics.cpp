#include "edg/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace edg {

std::string to_string(ErrorComponent c) {
  switch (c) {
    case ErrorComponent::re_u: return "re_u";
    case ErrorComponent::im_u: return "im_u";
    case ErrorComponent::re_v: return "re_v";
    case ErrorComponent::im_v: return "im_v";
    case ErrorComponent::abs_u: return "abs_u";
  }
  return "re_u";
}

const std::vector<ErrorComponent>& all_error_components() {
  static const std::vector<ErrorComponent> all{ErrorComponent::re_u, ErrorComponent::im_u,
                                               ErrorComponent::re_v, ErrorComponent::im_v,
                                               ErrorComponent::abs_u};
  return all;
}

EnergyRecord discrete_energy(const State& state, const Discretization& disc) {
  EnergyRecord rec;
  rec.t = state.t;
  const auto& F = disc.problem().nonlinearity.F;
  const Eigen::MatrixXcd phi_u = disc.phi_u().cast<Complex>();
  const Eigen::VectorXd& w = disc.weights();
  const Eigen::MatrixXd& beta = disc.beta_at_points();
  for (int e = 0; e < state.num_elements(); ++e) {
    rec.kinetic += disc.mass_v().dot(state.v.col(e).cwiseAbs2());
    const Eigen::VectorXcd ku = disc.stiffness().cast<Complex>() * state.u.col(e);
    rec.potential += state.u.col(e).dot(ku).real();
    const Eigen::VectorXcd u_pts = phi_u * state.u.col(e);
    for (Eigen::Index k = 0; k < u_pts.size(); ++k)
      rec.nonlinear += w(k) * beta(k, e) * F(std::norm(u_pts(k)));
  }
  return rec;
}

EnergyRate semidiscrete_energy_rate(const State& state, const Discretization& disc,
                                    const FluxParams& params) {
  const StateDerivative d = semidiscrete_rhs(state, disc, params);
  const auto& f = disc.problem().nonlinearity.f;
  const Eigen::MatrixXcd phi_u = disc.phi_u().cast<Complex>();
  const Eigen::MatrixXcd phi_v = disc.phi_v().cast<Complex>();
  const Eigen::VectorXd& w = disc.weights();
  const Eigen::MatrixXd& beta = disc.beta_at_points();

  EnergyRate rate;
  for (int e = 0; e < state.num_elements(); ++e) {
    const Eigen::VectorXcd v = state.v.col(e);
    const Eigen::VectorXcd u = state.u.col(e);
    rate.lhs += 2.0 * v.dot(disc.mass_v().cast<Complex>().cwiseProduct(d.v_t.col(e))).real();
    rate.lhs += 2.0 * u.dot(disc.stiffness().cast<Complex>() * d.u_t.col(e)).real();
    const Eigen::VectorXcd u_pts = phi_u * u;
    const Eigen::VectorXcd ut_pts = phi_u * d.u_t.col(e);
    const Eigen::VectorXcd v_pts = phi_v * v;
    Complex r0(0.0);
    for (Eigen::Index k = 0; k < u_pts.size(); ++k) {
      const double g = w(k) * beta(k, e) * f(std::norm(u_pts(k)));
      rate.lhs += g * 2.0 * (std::conj(u_pts(k)) * ut_pts(k)).real();
      r0 += g * (ut_pts(k) - v_pts(k));
    }
    rate.constraint_defect += 2.0 * (std::conj(u(0)) * r0).real();
  }

  const Mesh& mesh = disc.mesh();
  for (int face = 0; face < mesh.num_faces(); ++face) {
    const FaceTraces tr = trace_values(state, disc, face);
    const Eigen::VectorXd& fw = disc.face_table(2 * mesh.faces[face].axis).weights;
    if (mesh.faces[face].tag == FaceTag::dirichlet) {
      const auto pts = disc.face_points(face);
      const Eigen::VectorXcd& dn = tr.has_minus ? tr.dnu_minus : tr.dnu_plus;
      for (Eigen::Index p = 0; p < fw.size(); ++p)
        rate.rhs += fw(p) * 2.0 * (std::conj(dn(p)) * disc.problem().g_t(pts[p], state.t)).real();
      continue;
    }
    for (Eigen::Index p = 0; p < fw.size(); ++p) {
      const double jv = std::norm(tr.v_minus(p) - tr.v_plus(p));
      const double jg = std::norm(tr.dnu_minus(p) + tr.dnu_plus(p));
      rate.rhs -= fw(p) * 2.0 * (params.gamma * jv + params.tau * jg);
    }
  }
  return rate;
}

double l2_error(const State& state, const Discretization& disc, ErrorComponent component) {
  if (!disc.problem().exact)
    throw std::invalid_argument("l2_error: problem has no exact solution");
  return l2_error(state, disc, *disc.problem().exact, component);
}

double l2_error(const State& state, const Discretization& disc, const ExactSolution& exact,
                ErrorComponent component) {
  const Mesh& mesh = disc.mesh();
  const int dim = mesh.dim;
  const BasisSpec& basis = disc.basis();
  const auto rule = gauss_rule<double>(basis.q + 3);
  const int n1 = rule.size();
  const int npts = dim == 1 ? n1 : n1 * n1;
  const double jac = mesh.element_measure() / (dim == 1 ? 2.0 : 4.0);

  std::vector<Point> ref(npts);
  Eigen::VectorXd w(npts);
  Eigen::MatrixXcd phi_u(npts, basis.dim_q()), phi_v(npts, basis.dim_s());
  for (int k = 0; k < npts; ++k) {
    const int kx = k % n1, ky = k / n1;
    ref[k] = Point(rule.nodes(kx), dim == 1 ? 0.0 : rule.nodes(ky));
    w(k) = jac * (dim == 1 ? rule.weights(kx) : rule.weights(kx) * rule.weights(ky));
    phi_u.row(k) = evaluate_tensor_basis(basis.q, dim, ref[k]).values.transpose().cast<Complex>();
    phi_v.row(k) = evaluate_tensor_basis(basis.s, dim, ref[k]).values.transpose().cast<Complex>();
  }

  const bool uses_v = component == ErrorComponent::re_v || component == ErrorComponent::im_v;
  double sum = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const Eigen::VectorXcd approx = uses_v ? Eigen::VectorXcd(phi_v * state.v.col(e))
                                           : Eigen::VectorXcd(phi_u * state.u.col(e));
    for (int k = 0; k < npts; ++k) {
      const Point x = disc.to_physical(e, ref[k]);
      const Complex ex = uses_v ? exact.v(x, state.t) : exact.u(x, state.t);
      double diff = 0.0;
      switch (component) {
        case ErrorComponent::re_u:
        case ErrorComponent::re_v: diff = approx(k).real() - ex.real(); break;
        case ErrorComponent::im_u:
        case ErrorComponent::im_v: diff = approx(k).imag() - ex.imag(); break;
        case ErrorComponent::abs_u: diff = std::abs(approx(k)) - std::abs(ex); break;
      }
      sum += w(k) * diff * diff;
    }
  }
  return std::sqrt(sum);
}

double fit_convergence_rate(std::span<const double> h, std::span<const double> error) {
  if (h.size() != error.size()) throw std::invalid_argument("fit_convergence_rate: size mismatch");
  if (h.size() < 2) throw std::invalid_argument("fit_convergence_rate: need at least two pairs");
  const std::size_t n = h.size();
  double mx = 0.0, my = 0.0;
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(h[i] > 0.0) || !(error[i] > 0.0))
      throw std::invalid_argument("fit_convergence_rate: h and error must be positive");
    lx[i] = std::log(h[i]);
    ly[i] = std::log(error[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_convergence_rate: all h are equal");
  return sxy / sxx;
}

}  // namespace edg
