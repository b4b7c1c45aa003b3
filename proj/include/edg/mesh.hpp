#pragma once

#include <algorithm>
#include <array>
#include <vector>

#include "edg/types.hpp"

namespace edg {

enum class BoundaryKind { periodic, dirichlet };

enum class FaceTag { interior, periodic_wrap, dirichlet };

/// Sentinel element id for the missing side of a physical boundary face.
inline constexpr int kBoundary = -1;

/// Axis-aligned face. The minus element lies on the low side of the face along
/// `axis` and its outward normal is +e_axis; the plus element sees -e_axis.
struct Face {
  int element_minus = kBoundary;
  int element_plus = kBoundary;
  int axis = 0;
  FaceTag tag = FaceTag::interior;
  Point lower = Point::Zero();  // physical extent; lower(axis) == upper(axis)
  Point upper = Point::Zero();

  Point normal() const { return axis == 0 ? Point(1.0, 0.0) : Point(0.0, 1.0); }
  bool is_boundary() const { return tag == FaceTag::dirichlet; }
};

struct Element {
  Point lower = Point::Zero();
  Point upper = Point::Zero();

  Point center() const { return 0.5 * (lower + upper); }
};

/// Uniform structured mesh of intervals (dim 1) or rectangles (dim 2).
struct Mesh {
  int dim = 1;
  Point lower = Point::Zero();
  Point upper = Point::Zero();
  std::array<int, 2> count{1, 1};
  Point h = Point::Ones();
  BoundaryKind bc = BoundaryKind::periodic;
  std::vector<Element> elements;
  std::vector<Face> faces;
  /// element_faces[e][2*axis + side]: side 0 is the low face, side 1 the high face.
  std::vector<std::array<int, 4>> element_faces;

  int num_elements() const { return static_cast<int>(elements.size()); }
  int num_faces() const { return static_cast<int>(faces.size()); }
  int faces_per_element() const { return 2 * dim; }
  double element_measure() const { return dim == 1 ? h.x() : h.x() * h.y(); }
  double domain_measure() const;
  /// Smallest element width over the axes in use.
  double min_h() const { return dim == 1 ? h.x() : std::min(h.x(), h.y()); }
};

Mesh uniform_mesh_1d(double a, double b, int n, BoundaryKind bc);

Mesh cartesian_mesh_2d(const Point& lower, const Point& upper, int nx, int ny, BoundaryKind bc);

}  // namespace edg
