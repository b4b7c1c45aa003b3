#include "edg/problem.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace edg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex kI(0.0, 1.0);

ComplexField at_time_zero(SpaceTimeField f) {
  return [f = std::move(f)](const Point& x) { return f(x, 0.0); };
}

ScenarioPreset plane_wave_1d(std::string name, RealField beta, double final_time) {
  ScenarioPreset p;
  p.name = std::move(name);
  p.lower = Point(0.0, 0.0);
  p.upper = Point(kTwoPi, 0.0);
  p.final_time = final_time;
  ProblemSpec& pr = p.problem;
  pr.dim = 1;
  pr.alpha = 1.0;
  pr.beta = std::move(beta);
  pr.nonlinearity = make_nonlinearity(NonlinearityKind::constant);
  pr.bc = BoundaryKind::periodic;
  pr.u0 = [](const Point& x) { return std::exp(kI * x.x()); };
  pr.u1 = [](const Point& x) { return kI * std::exp(kI * x.x()); };
  return p;
}

}  // namespace

Nonlinearity make_nonlinearity(NonlinearityKind kind) {
  Nonlinearity nl;
  nl.kind = kind;
  switch (kind) {
    case NonlinearityKind::constant:
      nl.f = [](double) { return 1.0; };
      nl.dfdw = [](double) { return 0.0; };
      nl.F = [](double w) { return w; };
      break;
    case NonlinearityKind::cubic:
      nl.f = [](double w) { return w; };
      nl.dfdw = [](double) { return 1.0; };
      nl.F = [](double w) { return 0.5 * w * w; };
      break;
    case NonlinearityKind::exponential:
      nl.f = [](double w) { return std::exp(w); };
      nl.dfdw = [](double w) { return std::exp(w); };
      nl.F = [](double w) { return std::expm1(w); };
      break;
  }
  return nl;
}

NonlinearityKind parse_nonlinearity(std::string_view name) {
  if (name == "constant") return NonlinearityKind::constant;
  if (name == "cubic") return NonlinearityKind::cubic;
  if (name == "exponential") return NonlinearityKind::exponential;
  throw std::invalid_argument("unknown nonlinearity '" + std::string(name) + "'");
}

std::string to_string(NonlinearityKind kind) {
  switch (kind) {
    case NonlinearityKind::constant: return "constant";
    case NonlinearityKind::cubic: return "cubic";
    case NonlinearityKind::exponential: return "exponential";
  }
  return "constant";
}

NonlinearityValues eval_nonlinearity(const Nonlinearity& nl, double w) {
  if (!(w >= 0.0)) throw std::invalid_argument("eval_nonlinearity: w must be >= 0");
  const NonlinearityValues r{nl.f(w), nl.dfdw(w), nl.F(w)};
  if (!std::isfinite(r.f) || !std::isfinite(r.dfdw) || !std::isfinite(r.F))
    throw NonFiniteValue("eval_nonlinearity: non-finite value at w=" + std::to_string(w));
  return r;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"example1", "example2", "example3", "example4",
                                              "example5"};
  return names;
}

ScenarioPreset make_scenario(std::string_view name) {
  if (name == "example1") {
    ScenarioPreset p = plane_wave_1d("example1", [](const Point&) { return 1.0; }, 1.0);
    ExactSolution ex;
    ex.u = [](const Point& x, double t) { return std::exp(kI * (x.x() + t)); };
    ex.v = [](const Point& x, double t) { return kI * std::exp(kI * (x.x() + t)); };
    p.problem.exact = ex;
    return p;
  }
  if (name == "example2") {
    return plane_wave_1d(
        "example2", [](const Point& x) { return std::exp(-x.x() * x.x()); }, 100.0);
  }
  if (name == "example3") {
    ScenarioPreset p;
    p.name = "example3";
    p.lower = Point(-40.0, 0.0);
    p.upper = Point(40.0, 0.0);
    p.final_time = 20.0;
    ProblemSpec& pr = p.problem;
    pr.dim = 1;
    pr.alpha = 1.0;
    pr.beta = [](const Point&) { return 1.0; };
    pr.nonlinearity = make_nonlinearity(NonlinearityKind::cubic);
    pr.bc = BoundaryKind::dirichlet;
    pr.u0 = [](const Point& p) {
      const double x = p.x();
      return Complex(1.0, 1.0) * x * std::exp(-10.0 * (1.0 - x) * (1.0 - x));
    };
    pr.u1 = [](const Point&) { return Complex(0.0); };
    pr.g = [](const Point&, double) { return Complex(0.0); };
    pr.g_t = [](const Point&, double) { return Complex(0.0); };
    return p;
  }
  if (name == "example4") {
    ScenarioPreset p;
    p.name = "example4";
    p.lower = Point(-50.0, 0.0);
    p.upper = Point(50.0, 0.0);
    p.final_time = 2.0;
    const double J = 0.25;
    const double A = std::abs(J);
    const double theta = -0.5 - std::sqrt(3.0) / 4.0;
    ProblemSpec& pr = p.problem;
    pr.dim = 1;
    pr.alpha = 1.0;
    pr.beta = [](const Point&) { return -2.0; };
    pr.nonlinearity = make_nonlinearity(NonlinearityKind::cubic);
    pr.bc = BoundaryKind::dirichlet;
    ExactSolution ex;
    ex.u = [=](const Point& x, double t) {
      return A / std::cosh(J * x.x()) * std::exp(kI * theta * t);
    };
    ex.v = [=](const Point& x, double t) {
      return kI * theta * A / std::cosh(J * x.x()) * std::exp(kI * theta * t);
    };
    pr.u0 = at_time_zero(ex.u);
    pr.u1 = at_time_zero(ex.v);
    pr.g = ex.u;
    pr.g_t = ex.v;
    pr.exact = ex;
    return p;
  }
  if (name == "example5") {
    ScenarioPreset p;
    p.name = "example5";
    p.lower = Point(0.0, 0.0);
    p.upper = Point(kTwoPi, kTwoPi);
    p.final_time = 1.0;
    ProblemSpec& pr = p.problem;
    pr.dim = 2;
    pr.alpha = 1.0 + std::numbers::e;
    pr.beta = [](const Point&) { return 1.0; };
    pr.nonlinearity = make_nonlinearity(NonlinearityKind::exponential);
    pr.bc = BoundaryKind::periodic;
    ExactSolution ex;
    ex.u = [](const Point& x, double t) { return std::exp(kI * (x.x() + x.y() + t)); };
    ex.v = [](const Point& x, double t) { return kI * std::exp(kI * (x.x() + x.y() + t)); };
    pr.u0 = at_time_zero(ex.u);
    pr.u1 = at_time_zero(ex.v);
    pr.exact = ex;
    return p;
  }
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

Mesh make_mesh(const ScenarioPreset& preset, int n) {
  if (preset.problem.dim == 1)
    return uniform_mesh_1d(preset.lower.x(), preset.upper.x(), n, preset.problem.bc);
  return cartesian_mesh_2d(preset.lower, preset.upper, n, n, preset.problem.bc);
}

Eigen::MatrixXcd project_field(const ComplexField& field, const Mesh& mesh, int degree) {
  const auto rule = gauss_rule<double>(degree + 3);
  const int n1 = rule.size();
  const int npts = mesh.dim == 1 ? n1 : n1 * n1;
  const int modes = mesh.dim == 1 ? degree + 1 : (degree + 1) * (degree + 1);

  // Reference weights times basis values, divided by the exact mode norms.
  Eigen::MatrixXd projector(modes, npts);
  std::vector<Point> ref(npts);
  for (int k = 0; k < npts; ++k) {
    const int kx = k % n1, ky = k / n1;
    ref[k] = Point(rule.nodes(kx), mesh.dim == 1 ? 0.0 : rule.nodes(ky));
    const double w = mesh.dim == 1 ? rule.weights(kx) : rule.weights(kx) * rule.weights(ky);
    projector.col(k) = w * evaluate_tensor_basis(degree, mesh.dim, ref[k]).values;
  }
  for (int m = 0; m < modes; ++m) {
    const int mx = m % (degree + 1), my = m / (degree + 1);
    double norm = 2.0 / (2 * mx + 1);
    if (mesh.dim == 2) norm *= 2.0 / (2 * my + 1);
    projector.row(m) /= norm;
  }

  Eigen::MatrixXcd coeffs(modes, mesh.num_elements());
  Eigen::VectorXcd values(npts);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const Element& el = mesh.elements[e];
    const Point c = el.center();
    for (int k = 0; k < npts; ++k) {
      Point x = c + 0.5 * mesh.h.cwiseProduct(ref[k]);
      if (mesh.dim == 1) x.y() = 0.0;
      values(k) = field(x);
    }
    coeffs.col(e) = projector.cast<Complex>() * values;
  }
  return coeffs;
}

Eigen::MatrixXcd project_field_h1(const ComplexField& field, const Mesh& mesh, int degree) {
  const int dim = mesh.dim;
  const auto rule = gauss_rule<double>(degree + 3);
  const int n1 = rule.size();
  const int npts = dim == 1 ? n1 : n1 * n1;
  const int modes = dim == 1 ? degree + 1 : (degree + 1) * (degree + 1);
  const ReferenceMatrices ref_mats = reference_matrices(BasisSpec{degree, degree, dim});
  const Point scale2(4.0 / (mesh.h.x() * mesh.h.x()), 4.0 / (mesh.h.y() * mesh.h.y()));

  // int grad(phi_m) . grad(w) = sum_a scale2_a (boundary term - int d_aa(phi_m) w),
  // all on the reference element. Rows of `volume` act on volume samples of w,
  // rows of `boundary[2a+side]` on samples along that face.
  Eigen::MatrixXd stiffness = Eigen::MatrixXd::Zero(modes, modes);
  Eigen::MatrixXd volume = Eigen::MatrixXd::Zero(modes, npts);
  Eigen::RowVectorXd mean_row(npts);
  std::vector<Point> vol_ref(npts);
  for (int k = 0; k < npts; ++k) {
    const int kx = k % n1, ky = k / n1;
    vol_ref[k] = Point(rule.nodes(kx), dim == 1 ? 0.0 : rule.nodes(ky));
    const double w = dim == 1 ? rule.weights(kx) : rule.weights(kx) * rule.weights(ky);
    mean_row(k) = w / (dim == 1 ? 2.0 : 4.0);
    const auto b = evaluate_tensor_basis(degree, dim, vol_ref[k]);
    for (int a = 0; a < dim; ++a) volume.col(k) -= scale2(a) * w * b.second[a];
  }
  const int nface = dim == 1 ? 1 : n1;
  std::array<Eigen::MatrixXd, 4> boundary;
  std::array<std::vector<Point>, 4> face_ref;
  for (int a = 0; a < dim; ++a) {
    stiffness += scale2(a) * ref_mats.stiffness_q_axis[a];
    for (int side = 0; side < 2; ++side) {
      const int fi = 2 * a + side;
      const double normal = side == 1 ? 1.0 : -1.0;
      boundary[fi] = Eigen::MatrixXd(modes, nface);
      for (int p = 0; p < nface; ++p) {
        Point xi = Point::Zero();
        xi(a) = normal;
        if (dim == 2) xi(1 - a) = rule.nodes(p);
        face_ref[fi].push_back(xi);
        const double w = dim == 1 ? 1.0 : rule.weights(p);
        boundary[fi].col(p) =
            scale2(a) * w * normal * evaluate_tensor_basis(degree, dim, xi).gradient[a];
      }
    }
  }
  // Mode 0 is fixed by the mean; the remaining block of the stiffness is SPD.
  const Eigen::LDLT<Eigen::MatrixXd> solver(stiffness.bottomRightCorner(modes - 1, modes - 1));

  Eigen::MatrixXcd coeffs = Eigen::MatrixXcd::Zero(modes, mesh.num_elements());
  auto sample = [&](const Point& c, const Point& xi) {
    Point x = c + 0.5 * mesh.h.cwiseProduct(xi);
    if (dim == 1) x.y() = 0.0;
    return field(x);
  };
  Eigen::VectorXcd values(npts), face_values(nface), rhs(modes);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const Point c = mesh.elements[e].center();
    for (int k = 0; k < npts; ++k) values(k) = sample(c, vol_ref[k]);
    rhs = volume.cast<Complex>() * values;
    for (int fi = 0; fi < 2 * dim; ++fi) {
      for (int p = 0; p < nface; ++p) face_values(p) = sample(c, face_ref[fi][p]);
      rhs += boundary[fi].cast<Complex>() * face_values;
    }
    coeffs(0, e) = mean_row.cast<Complex>() * values;
    if (modes > 1) {
      const Eigen::VectorXcd tail = rhs.tail(modes - 1);
      coeffs.col(e).tail(modes - 1).real() = solver.solve(tail.real());
      coeffs.col(e).tail(modes - 1).imag() = solver.solve(tail.imag());
    }
  }
  return coeffs;
}

std::string to_string(InitialProjection kind) {
  return kind == InitialProjection::h1 ? "h1" : "l2";
}

InitialProjection parse_initial_projection(std::string_view name) {
  if (name == "h1") return InitialProjection::h1;
  if (name == "l2") return InitialProjection::l2;
  throw std::invalid_argument("unknown initial projection '" + std::string(name) + "'");
}

State project_initial(const ProblemSpec& spec, const Mesh& mesh, const BasisSpec& basis,
                      InitialProjection u_projection) {
  if (spec.dim != mesh.dim || basis.dim != mesh.dim)
    throw std::invalid_argument("project_initial: dimension mismatch");
  State s;
  s.t = 0.0;
  s.u = u_projection == InitialProjection::h1 ? project_field_h1(spec.u0, mesh, basis.q)
                                              : project_field(spec.u0, mesh, basis.q);
  s.v = project_field(spec.u1, mesh, basis.s);
  return s;
}

State project_exact(const ExactSolution& exact, const Mesh& mesh, const BasisSpec& basis,
                    double t) {
  State s;
  s.t = t;
  s.u = project_field([&](const Point& x) { return exact.u(x, t); }, mesh, basis.q);
  s.v = project_field([&](const Point& x) { return exact.v(x, t); }, mesh, basis.s);
  return s;
}

}  // namespace edg
