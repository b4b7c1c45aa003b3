#include "edg/mesh.hpp"

#include <stdexcept>
#include <string>

namespace edg {

double Mesh::domain_measure() const {
  const Point extent = upper - lower;
  return dim == 1 ? extent.x() : extent.x() * extent.y();
}

Mesh uniform_mesh_1d(double a, double b, int n, BoundaryKind bc) {
  if (n < 1) throw std::invalid_argument("uniform_mesh_1d: need N >= 1");
  if (!(a < b)) throw std::invalid_argument("uniform_mesh_1d: need a < b");

  Mesh mesh;
  mesh.dim = 1;
  mesh.lower = Point(a, 0.0);
  mesh.upper = Point(b, 0.0);
  mesh.count = {n, 1};
  mesh.h = Point((b - a) / n, 1.0);
  mesh.bc = bc;

  auto vertex = [&](int j) { return j == n ? b : a + j * mesh.h.x(); };
  for (int j = 0; j < n; ++j) mesh.elements.push_back({Point(vertex(j), 0.0), Point(vertex(j + 1), 0.0)});

  const int nfaces = bc == BoundaryKind::periodic ? n : n + 1;
  for (int j = 0; j < nfaces; ++j) {
    Face f;
    f.axis = 0;
    f.lower = f.upper = Point(vertex(j), 0.0);
    if (bc == BoundaryKind::periodic) {
      f.element_minus = (j - 1 + n) % n;
      f.element_plus = j;
      f.tag = j == 0 ? FaceTag::periodic_wrap : FaceTag::interior;
    } else {
      f.element_minus = j == 0 ? kBoundary : j - 1;
      f.element_plus = j == n ? kBoundary : j;
      f.tag = (j == 0 || j == n) ? FaceTag::dirichlet : FaceTag::interior;
    }
    mesh.faces.push_back(f);
  }

  mesh.element_faces.resize(n);
  for (int e = 0; e < n; ++e) {
    const int high = bc == BoundaryKind::periodic ? (e + 1) % n : e + 1;
    mesh.element_faces[e] = {e, high, -1, -1};
  }
  return mesh;
}

Mesh cartesian_mesh_2d(const Point& lower, const Point& upper, int nx, int ny, BoundaryKind bc) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("cartesian_mesh_2d: need Nx, Ny >= 1");
  if (!(lower.x() < upper.x()) || !(lower.y() < upper.y()))
    throw std::invalid_argument("cartesian_mesh_2d: empty domain");

  Mesh mesh;
  mesh.dim = 2;
  mesh.lower = lower;
  mesh.upper = upper;
  mesh.count = {nx, ny};
  mesh.h = Point((upper.x() - lower.x()) / nx, (upper.y() - lower.y()) / ny);
  mesh.bc = bc;

  auto xv = [&](int i) { return i == nx ? upper.x() : lower.x() + i * mesh.h.x(); };
  auto yv = [&](int j) { return j == ny ? upper.y() : lower.y() + j * mesh.h.y(); };
  auto id = [&](int i, int j) { return i + nx * j; };

  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) mesh.elements.push_back({Point(xv(i), yv(j)), Point(xv(i + 1), yv(j + 1))});

  mesh.element_faces.assign(nx * ny, {-1, -1, -1, -1});
  const bool periodic = bc == BoundaryKind::periodic;

  // x-normal faces
  const int xfaces = periodic ? nx : nx + 1;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < xfaces; ++i) {
      Face f;
      f.axis = 0;
      f.lower = Point(xv(i), yv(j));
      f.upper = Point(xv(i), yv(j + 1));
      if (periodic) {
        f.element_minus = id((i - 1 + nx) % nx, j);
        f.element_plus = id(i, j);
        f.tag = i == 0 ? FaceTag::periodic_wrap : FaceTag::interior;
      } else {
        f.element_minus = i == 0 ? kBoundary : id(i - 1, j);
        f.element_plus = i == nx ? kBoundary : id(i, j);
        f.tag = (i == 0 || i == nx) ? FaceTag::dirichlet : FaceTag::interior;
      }
      const int fid = mesh.num_faces();
      if (f.element_minus != kBoundary) mesh.element_faces[f.element_minus][1] = fid;
      if (f.element_plus != kBoundary) mesh.element_faces[f.element_plus][0] = fid;
      mesh.faces.push_back(f);
    }
  }

  // y-normal faces
  const int yfaces = periodic ? ny : ny + 1;
  for (int j = 0; j < yfaces; ++j) {
    for (int i = 0; i < nx; ++i) {
      Face f;
      f.axis = 1;
      f.lower = Point(xv(i), yv(j));
      f.upper = Point(xv(i + 1), yv(j));
      if (periodic) {
        f.element_minus = id(i, (j - 1 + ny) % ny);
        f.element_plus = id(i, j);
        f.tag = j == 0 ? FaceTag::periodic_wrap : FaceTag::interior;
      } else {
        f.element_minus = j == 0 ? kBoundary : id(i, j - 1);
        f.element_plus = j == ny ? kBoundary : id(i, j);
        f.tag = (j == 0 || j == ny) ? FaceTag::dirichlet : FaceTag::interior;
      }
      const int fid = mesh.num_faces();
      if (f.element_minus != kBoundary) mesh.element_faces[f.element_minus][3] = fid;
      if (f.element_plus != kBoundary) mesh.element_faces[f.element_plus][2] = fid;
      mesh.faces.push_back(f);
    }
  }
  return mesh;
}

}  // namespace edg
