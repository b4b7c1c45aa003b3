#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "edg/problem.hpp"

using namespace edg;

namespace {

const Complex kI(0.0, 1.0);

// Pointwise residual of u_tt - Laplace(u) + i alpha u_t + beta f(|u|^2) u by
// central differences in t and x.
double pde_residual(const ScenarioPreset& p, const Point& x, double t, double h) {
  const auto& ex = *p.problem.exact;
  const Complex u = ex.u(x, t);
  const Complex u_tt = (ex.u(x, t + h) - 2.0 * u + ex.u(x, t - h)) / (h * h);
  const Complex u_t = (ex.u(x, t + h) - ex.u(x, t - h)) / (2 * h);
  Complex lap = 0.0;
  for (int a = 0; a < p.problem.dim; ++a) {
    Point dx = Point::Zero();
    dx(a) = h;
    lap += (ex.u(x + dx, t) - 2.0 * u + ex.u(x - dx, t)) / (h * h);
  }
  const double f = p.problem.nonlinearity.f(std::norm(u));
  return std::abs(u_tt - lap + kI * p.problem.alpha * u_t + p.problem.beta(x) * f * u);
}

// Evaluates the modal expansion `c` of element e at physical point x.
Complex eval_modal(const Eigen::VectorXcd& c, const Mesh& mesh, int e, int degree, const Point& x) {
  const Point xi = 2.0 * (x - mesh.elements[e].center()).cwiseQuotient(mesh.h);
  const auto b = evaluate_tensor_basis(degree, mesh.dim, mesh.dim == 1 ? Point(xi.x(), 0) : xi);
  return b.values.cast<Complex>().dot(c);
}

double l2_projection_error(const ComplexField& w, const Mesh& mesh, int degree,
                           const Eigen::MatrixXcd& coeffs) {
  const auto rule = gauss_rule<double>(degree + 8);
  double sum = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    for (int k = 0; k < rule.size(); ++k) {
      const Point x(mesh.elements[e].center().x() + 0.5 * mesh.h.x() * rule.nodes(k), 0.0);
      sum += 0.5 * mesh.h.x() * rule.weights(k) *
             std::norm(eval_modal(coeffs.col(e), mesh, e, degree, x) - w(x));
    }
  }
  return std::sqrt(sum);
}

}  // namespace

TEST(Nonlinearity, Values) {
  auto check = [](NonlinearityKind k, double w, double f, double dfdw, double F) {
    const auto r = eval_nonlinearity(make_nonlinearity(k), w);
    EXPECT_DOUBLE_EQ(r.f, f);
    EXPECT_DOUBLE_EQ(r.dfdw, dfdw);
    EXPECT_DOUBLE_EQ(r.F, F);
  };
  check(NonlinearityKind::cubic, 4.0, 4.0, 1.0, 8.0);
  check(NonlinearityKind::exponential, 0.0, 1.0, 1.0, 0.0);
  check(NonlinearityKind::constant, 7.3, 1.0, 0.0, 7.3);
}

TEST(Nonlinearity, PrimitiveMatchesQuadratureOfF) {
  for (auto k : {NonlinearityKind::constant, NonlinearityKind::cubic, NonlinearityKind::exponential}) {
    const auto nl = make_nonlinearity(k);
    const double w = 1.7;
    const auto rule = gauss_rule<double>(20);
    double integral = 0.0;
    for (int i = 0; i < rule.size(); ++i) integral += 0.5 * w * rule.weights(i) * nl.f(0.5 * w * (rule.nodes(i) + 1));
    EXPECT_NEAR(nl.F(w), integral, 1e-13);
  }
}

TEST(Nonlinearity, Errors) {
  const auto exp_nl = make_nonlinearity(NonlinearityKind::exponential);
  EXPECT_THROW(eval_nonlinearity(exp_nl, -1e-3), std::invalid_argument);
  EXPECT_THROW(eval_nonlinearity(exp_nl, 1e4), NonFiniteValue);
  EXPECT_THROW(parse_nonlinearity("quartic"), std::invalid_argument);
  EXPECT_EQ(parse_nonlinearity(to_string(NonlinearityKind::cubic)), NonlinearityKind::cubic);
}

TEST(Scenario, NamesAndParameters) {
  for (const auto& name : scenario_names()) EXPECT_EQ(make_scenario(name).name, name);
  EXPECT_THROW(make_scenario("example6"), std::invalid_argument);

  const auto ex1 = make_scenario("example1");
  EXPECT_EQ(ex1.problem.u0(Point(0, 0)), Complex(1.0, 0.0));
  EXPECT_EQ(ex1.problem.u1(Point(0, 0)), kI);
  EXPECT_NEAR(ex1.upper.x(), 2 * std::numbers::pi, 1e-15);

  const auto ex2 = make_scenario("example2");
  EXPECT_FALSE(ex2.problem.exact.has_value());
  EXPECT_NEAR(ex2.problem.beta(Point(1.5, 0)), std::exp(-2.25), 1e-15);
  EXPECT_DOUBLE_EQ(ex2.final_time, 100.0);

  const auto ex3 = make_scenario("example3");
  EXPECT_EQ(ex3.problem.bc, BoundaryKind::dirichlet);
  EXPECT_EQ(ex3.problem.nonlinearity.kind, NonlinearityKind::cubic);
  EXPECT_NEAR(std::abs(ex3.problem.u0(Point(1, 0)) - Complex(1, 1)), 0.0, 1e-15);

  const auto ex4 = make_scenario("example4");
  const double theta = -0.5 - std::sqrt(3.0) / 4.0;
  EXPECT_NEAR(theta, -0.9330127, 1e-7);
  // The phase of u(0, t) advances at rate theta.
  const Complex u1 = ex4.problem.exact->u(Point(0, 0), 1.0);
  EXPECT_NEAR(std::arg(u1), theta, 1e-14);
  EXPECT_NEAR(std::abs(u1), 0.25, 1e-15);

  const auto ex5 = make_scenario("example5");
  EXPECT_EQ(ex5.problem.dim, 2);
  EXPECT_NEAR(std::abs(ex5.problem.exact->u(Point(0, 0), std::numbers::pi) + 1.0), 0.0, 1e-15);
  EXPECT_NEAR(ex5.problem.alpha, 1.0 + std::numbers::e, 1e-15);
}

TEST(Scenario, ExactSolutionsSatisfyThePde) {
  std::mt19937 gen(11);
  for (const char* name : {"example1", "example4", "example5"}) {
    const auto p = make_scenario(name);
    std::uniform_real_distribution<double> ux(p.lower.x(), p.upper.x()), uy(p.lower.y(), p.upper.y()),
        ut(0.0, p.final_time);
    for (int k = 0; k < 100; ++k) {
      const Point x(ux(gen), p.problem.dim == 2 ? uy(gen) : 0.0);
      EXPECT_LE(pde_residual(p, x, ut(gen), 1e-4), 1e-5) << name;
    }
  }
}

TEST(Scenario, ExactSolutionsMatchInitialAndBoundaryData) {
  for (const char* name : {"example1", "example4", "example5"}) {
    const auto p = make_scenario(name);
    const Point x(0.37, p.problem.dim == 2 ? 1.3 : 0.0);
    EXPECT_EQ(p.problem.u0(x), p.problem.exact->u(x, 0.0));
    EXPECT_EQ(p.problem.u1(x), p.problem.exact->v(x, 0.0));
  }
  const auto p = make_scenario("example4");
  EXPECT_EQ(p.problem.g(Point(50, 0), 0.3), p.problem.exact->u(Point(50, 0), 0.3));
  EXPECT_EQ(p.problem.g_t(Point(50, 0), 0.3), p.problem.exact->v(Point(50, 0), 0.3));
}

TEST(Projection, ExactRepresentations) {
  const Mesh one = uniform_mesh_1d(-1.0, 1.0, 1, BoundaryKind::periodic);
  for (int q = 0; q <= 4; ++q) {
    const auto c = project_field([](const Point&) { return Complex(1, 2); }, one, q);
    EXPECT_NEAR(std::abs(c(0, 0) - Complex(1, 2)), 0.0, 1e-15);
    for (int m = 1; m <= q; ++m) EXPECT_NEAR(std::abs(c(m, 0)), 0.0, 1e-14);
  }
  for (int q = 1; q <= 4; ++q) {
    const auto c = project_field([](const Point& x) { return Complex(x.x()); }, one, q);
    for (int m = 0; m <= q; ++m) EXPECT_NEAR(std::abs(c(m, 0) - (m == 1 ? 1.0 : 0.0)), 0.0, 1e-14);
  }
}

TEST(Projection, L2ErrorDropsBySixteenForCubics) {
  const ComplexField w = [](const Point& x) { return std::exp(kI * x.x()); };
  const double two_pi = 2 * std::numbers::pi;
  const Mesh coarse = uniform_mesh_1d(0.0, two_pi, 20, BoundaryKind::periodic);
  const Mesh fine = uniform_mesh_1d(0.0, two_pi, 40, BoundaryKind::periodic);
  const double e1 = l2_projection_error(w, coarse, 3, project_field(w, coarse, 3));
  const double e2 = l2_projection_error(w, fine, 3, project_field(w, fine, 3));
  EXPECT_NEAR(e1 / e2, 16.0, 0.5);
}

TEST(Projection, L2ProjectionIsIdempotent) {
  const ComplexField w = [](const Point& x) { return std::exp(kI * x.x()) + x.x() * x.x(); };
  const Mesh mesh = uniform_mesh_1d(0.0, 3.0, 5, BoundaryKind::periodic);
  const int q = 3;
  const auto c = project_field(w, mesh, q);
  const auto again = project_field(
      [&](const Point& x) {
        const int e = std::min(4, static_cast<int>(x.x() / 0.6));
        return eval_modal(c.col(e), mesh, e, q, x);
      },
      mesh, q);
  EXPECT_LE((again - c).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ProjectionH1, ReproducesPolynomials1D) {
  const Mesh mesh = uniform_mesh_1d(-1.0, 1.0, 1, BoundaryKind::periodic);
  for (int q = 1; q <= 5; ++q) {
    std::mt19937 gen(q);
    std::normal_distribution<double> n;
    Eigen::VectorXcd c(q + 1);
    for (int m = 0; m <= q; ++m) c(m) = Complex(n(gen), n(gen));
    const auto p = project_field_h1([&](const Point& x) { return eval_modal(c, mesh, 0, q, x); },
                                    mesh, q);
    EXPECT_LE((p.col(0) - c).cwiseAbs().maxCoeff(), 1e-12) << q;
  }
}

TEST(ProjectionH1, ReproducesPolynomials2D) {
  const Mesh mesh = cartesian_mesh_2d(Point(0, 0), Point(2, 1), 1, 1, BoundaryKind::periodic);
  const int q = 3;
  std::mt19937 gen(5);
  std::normal_distribution<double> n;
  Eigen::VectorXcd c(16);
  for (int i = 0; i < c.size(); ++i) c(i) = Complex(n(gen), n(gen));
  const auto p =
      project_field_h1([&](const Point& x) { return eval_modal(c, mesh, 0, q, x); }, mesh, q);
  EXPECT_LE((p.col(0) - c).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ProjectionH1, GalerkinOrthogonalityAndMean) {
  // w = exp(i x) on a few elements of (0, 2); orthogonality against the exact gradient.
  const Mesh mesh = uniform_mesh_1d(0.0, 2.0, 4, BoundaryKind::periodic);
  const int q = 3;
  const auto c = project_field_h1([](const Point& x) { return std::exp(kI * x.x()); }, mesh, q);
  const auto rule = gauss_rule<double>(16);
  const double jac = 0.5 * mesh.h.x();
  for (int e = 0; e < mesh.num_elements(); ++e) {
    Complex mean_defect = 0.0;
    Eigen::VectorXcd orth = Eigen::VectorXcd::Zero(q + 1);
    for (int k = 0; k < rule.size(); ++k) {
      const double x = mesh.elements[e].center().x() + jac * rule.nodes(k);
      const auto t = legendre_eval(q, rule.nodes(k));
      const Complex ph = t.values.cast<Complex>().dot(c.col(e));
      const Complex dph = t.derivatives.cast<Complex>().dot(c.col(e)) / jac;
      mean_defect += jac * rule.weights(k) * (ph - std::exp(kI * x));
      const Complex dw = kI * std::exp(kI * x);
      orth += jac * rule.weights(k) * (t.derivatives / jac).cast<Complex>() * (dph - dw);
    }
    // Only the (q+3)-point quadrature of w separates these from zero.
    EXPECT_LE(std::abs(mean_defect), 1e-12);
    EXPECT_LE(orth.cwiseAbs().maxCoeff(), 1e-11);
  }
}

TEST(ProjectionH1, ConvergesAtOrderQPlusOne) {
  const ComplexField w = [](const Point& x) { return std::exp(kI * x.x()); };
  const double two_pi = 2 * std::numbers::pi;
  for (int q = 1; q <= 4; ++q) {
    const Mesh coarse = uniform_mesh_1d(0.0, two_pi, 10, BoundaryKind::periodic);
    const Mesh fine = uniform_mesh_1d(0.0, two_pi, 20, BoundaryKind::periodic);
    const double e1 = l2_projection_error(w, coarse, q, project_field_h1(w, coarse, q));
    const double e2 = l2_projection_error(w, fine, q, project_field_h1(w, fine, q));
    EXPECT_NEAR(std::log2(e1 / e2), q + 1, 0.2) << q;
  }
}

TEST(ProjectInitial, ChoosesProjectionAndChecksDimensions) {
  const auto p = make_scenario("example1");
  const Mesh mesh = make_mesh(p, 8);
  const BasisSpec basis{3, 2, 1};
  const State h1 = project_initial(p.problem, mesh, basis);
  const State l2 = project_initial(p.problem, mesh, basis, InitialProjection::l2);
  EXPECT_EQ(h1.u.rows(), 4);
  EXPECT_EQ(h1.v.rows(), 3);
  EXPECT_EQ(h1.u.cols(), 8);
  EXPECT_LE((h1.v - l2.v).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_LE((h1.u.row(0) - l2.u.row(0)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_GT((h1.u - l2.u).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_THROW(project_initial(p.problem, mesh, BasisSpec{3, 2, 2}), std::invalid_argument);
  EXPECT_EQ(parse_initial_projection("l2"), InitialProjection::l2);
  EXPECT_THROW(parse_initial_projection("h2"), std::invalid_argument);
}
