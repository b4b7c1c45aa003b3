#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edg/basis.hpp"
#include "edg/mesh.hpp"
#include "edg/state.hpp"
#include "edg/types.hpp"

namespace edg {

using RealField = std::function<double(const Point&)>;
using ComplexField = std::function<Complex(const Point&)>;
using SpaceTimeField = std::function<Complex(const Point&, double)>;

enum class NonlinearityKind { constant, cubic, exponential };

/// f(w), f'(w) and F(w) = int_0^w f, with w = |u|^2.
struct Nonlinearity {
  NonlinearityKind kind = NonlinearityKind::constant;
  std::function<double(double)> f;
  std::function<double(double)> dfdw;
  std::function<double(double)> F;
};

Nonlinearity make_nonlinearity(NonlinearityKind kind);
NonlinearityKind parse_nonlinearity(std::string_view name);
std::string to_string(NonlinearityKind kind);

struct NonlinearityValues {
  double f;
  double dfdw;
  double F;
};

/// Throws std::invalid_argument for w < 0 and NonFiniteValue on overflow.
NonlinearityValues eval_nonlinearity(const Nonlinearity& nl, double w);

struct ExactSolution {
  SpaceTimeField u;
  SpaceTimeField v;  // u_t
};

/// u_tt - Laplace(u) + i alpha u_t + beta(x) f(|u|^2) u = 0 with initial data (u0, u1).
struct ProblemSpec {
  int dim = 1;
  double alpha = 1.0;
  RealField beta;
  Nonlinearity nonlinearity;
  ComplexField u0;
  ComplexField u1;
  BoundaryKind bc = BoundaryKind::periodic;
  SpaceTimeField g;    // Dirichlet data, unused when periodic
  SpaceTimeField g_t;  // its time derivative
  std::optional<ExactSolution> exact;
};

struct ScenarioPreset {
  std::string name;
  ProblemSpec problem;
  Point lower = Point::Zero();
  Point upper = Point::Zero();
  double final_time = 1.0;
};

/// example1 .. example5; throws std::invalid_argument for other names.
ScenarioPreset make_scenario(std::string_view name);

const std::vector<std::string>& scenario_names();

/// Mesh over the preset domain with n elements per axis.
Mesh make_mesh(const ScenarioPreset& preset, int n);

/// Element-wise L2 projection of `field` onto tensor Legendre modes of `degree`,
/// using degree+3 Gauss points per axis. Returns a (modes x elements) block.
Eigen::MatrixXcd project_field(const ComplexField& field, const Mesh& mesh, int degree);

/// Element-wise elliptic projection: int grad(phi) . grad(P w - w) = 0 for every
/// mode and int (P w - w) = 0. Only samples of `field` are needed; the gradient
/// term is integrated by parts onto the element boundary.
Eigen::MatrixXcd project_field_h1(const ComplexField& field, const Mesh& mesh, int degree);

/// How u0 is brought into the degree-q space. v0 always uses the L2 projection.
enum class InitialProjection { h1, l2 };

std::string to_string(InitialProjection kind);
InitialProjection parse_initial_projection(std::string_view name);

/// Projection of (u0, u1) onto the (q, s) spaces at t = 0.
State project_initial(const ProblemSpec& spec, const Mesh& mesh, const BasisSpec& basis,
                      InitialProjection u_projection = InitialProjection::h1);

/// L2 projection of an exact solution at time t.
State project_exact(const ExactSolution& exact, const Mesh& mesh, const BasisSpec& basis, double t);

}  // namespace edg
