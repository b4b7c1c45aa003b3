#include "edg/basis.hpp"

namespace edg {

namespace {

Eigen::MatrixXd legendre_mass_1d(int degree) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(degree + 1, degree + 1);
  for (int n = 0; n <= degree; ++n) m(n, n) = 2.0 / (2 * n + 1);
  return m;
}

// Mixed mass int P_m P_n for m <= rows-1, n <= cols-1.
Eigen::MatrixXd legendre_mixed_mass_1d(int row_degree, int col_degree) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(row_degree + 1, col_degree + 1);
  for (int n = 0; n <= std::min(row_degree, col_degree); ++n) m(n, n) = 2.0 / (2 * n + 1);
  return m;
}

// int P_m' P_n' over [-1,1] = min(m,n)(min(m,n)+1) when m+n is even.
Eigen::MatrixXd legendre_stiffness_1d(int row_degree, int col_degree) {
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(row_degree + 1, col_degree + 1);
  for (int m = 1; m <= row_degree; ++m) {
    for (int n = 1; n <= col_degree; ++n) {
      if ((m + n) % 2 == 0) {
        const int l = std::min(m, n);
        k(m, n) = l * (l + 1);
      }
    }
  }
  return k;
}

// Kronecker product with the y factor as the slow index.
Eigen::MatrixXd kron(const Eigen::MatrixXd& slow, const Eigen::MatrixXd& fast) {
  Eigen::MatrixXd out(slow.rows() * fast.rows(), slow.cols() * fast.cols());
  for (Eigen::Index i = 0; i < slow.rows(); ++i)
    for (Eigen::Index j = 0; j < slow.cols(); ++j)
      out.block(i * fast.rows(), j * fast.cols(), fast.rows(), fast.cols()) = slow(i, j) * fast;
  return out;
}

}  // namespace

void BasisSpec::validate() const {
  if (dim != 1 && dim != 2) throw std::invalid_argument("BasisSpec: dim must be 1 or 2");
  if (q < 1) throw std::invalid_argument("BasisSpec: q must be >= 1");
  if (s < 0) throw std::invalid_argument("BasisSpec: s must be >= 0");
  if (s > q || s < q - 2) throw std::invalid_argument("BasisSpec: need q-2 <= s <= q");
}

ReferenceMatrices reference_matrices(const BasisSpec& spec) {
  spec.validate();
  const int q = spec.q, s = spec.s;
  const Eigen::MatrixXd mq = legendre_mass_1d(q);
  const Eigen::MatrixXd ms = legendre_mass_1d(s);
  const Eigen::MatrixXd msq = legendre_mixed_mass_1d(s, q);
  const Eigen::MatrixXd kq = legendre_stiffness_1d(q, q);
  const Eigen::MatrixXd ksq = legendre_stiffness_1d(s, q);

  ReferenceMatrices r;
  if (spec.dim == 1) {
    r.mass_q = mq;
    r.mass_s = ms;
    r.stiffness_q_axis[0] = kq;
    r.mixed_stiffness_axis[0] = ksq;
    r.stiffness_q = kq;
    r.mixed_stiffness = ksq;
  } else {
    r.mass_q = kron(mq, mq);
    r.mass_s = kron(ms, ms);
    r.stiffness_q_axis[0] = kron(mq, kq);
    r.stiffness_q_axis[1] = kron(kq, mq);
    r.mixed_stiffness_axis[0] = kron(msq, ksq);
    r.mixed_stiffness_axis[1] = kron(ksq, msq);
    r.stiffness_q = r.stiffness_q_axis[0] + r.stiffness_q_axis[1];
    r.mixed_stiffness = r.mixed_stiffness_axis[0] + r.mixed_stiffness_axis[1];
  }

  auto traces = [](int degree, std::array<Eigen::VectorXd, 2>& val,
                   std::array<Eigen::VectorXd, 2>& der) {
    for (int side = 0; side < 2; ++side) {
      const auto t = legendre_eval<double>(degree, side == 0 ? -1.0 : 1.0);
      val[side] = t.values;
      der[side] = t.derivatives;
    }
  };
  traces(q, r.trace_q, r.dtrace_q);
  traces(s, r.trace_s, r.dtrace_s);
  return r;
}

TensorBasisValues evaluate_tensor_basis(int degree, int dim, const Point& xi) {
  const auto lx = legendre_eval<double>(degree, xi.x());
  TensorBasisValues out;
  if (dim == 1) {
    out.values = lx.values;
    out.gradient[0] = lx.derivatives;
    out.gradient[1] = Eigen::VectorXd::Zero(degree + 1);
    out.second[0] = lx.second;
    out.second[1] = Eigen::VectorXd::Zero(degree + 1);
    return out;
  }
  const auto ly = legendre_eval<double>(degree, xi.y());
  const int n = degree + 1;
  out.values.resize(n * n);
  out.gradient[0].resize(n * n);
  out.gradient[1].resize(n * n);
  out.second[0].resize(n * n);
  out.second[1].resize(n * n);
  for (int my = 0; my < n; ++my) {
    for (int mx = 0; mx < n; ++mx) {
      const int m = mx + n * my;
      out.values(m) = lx.values(mx) * ly.values(my);
      out.gradient[0](m) = lx.derivatives(mx) * ly.values(my);
      out.gradient[1](m) = lx.values(mx) * ly.derivatives(my);
      out.second[0](m) = lx.second(mx) * ly.values(my);
      out.second[1](m) = lx.values(mx) * ly.second(my);
    }
  }
  return out;
}

}  // namespace edg
