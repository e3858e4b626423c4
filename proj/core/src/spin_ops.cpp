#include "qmeter/spin_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace qmeter {

namespace {
constexpr Complex kI{0.0, 1.0};
}

SpinOperators spin_operators(int multiplicity) {
  SpinOperators ops;
  if (multiplicity == 2) {
    ops.sx = OperatorMatrix::Zero(2, 2);
    ops.sx << 0.0, 0.5, 0.5, 0.0;
    ops.sy = OperatorMatrix::Zero(2, 2);
    ops.sy << 0.0, -0.5 * kI, 0.5 * kI, 0.0;
    ops.sz = OperatorMatrix::Zero(2, 2);
    ops.sz << 0.5, 0.0, 0.0, -0.5;
  } else if (multiplicity == 3) {
    const double r = 1.0 / std::sqrt(2.0);
    ops.sx = OperatorMatrix::Zero(3, 3);
    ops.sx << 0, r, 0, r, 0, r, 0, r, 0;
    ops.sy = OperatorMatrix::Zero(3, 3);
    ops.sy << 0, -r * kI, 0, r * kI, 0, -r * kI, 0, r * kI, 0;
    ops.sz = OperatorMatrix::Zero(3, 3);
    ops.sz << 1, 0, 0, 0, 0, 0, 0, 0, -1;
  } else {
    throw std::invalid_argument("spin_operators: unsupported multiplicity " +
                                std::to_string(multiplicity) + " (supported: 2, 3)");
  }
  return ops;
}

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

OperatorMatrix embed(const OperatorMatrix& op, int site_index, const SpinSystem& system) {
  const Site& target = system.site(site_index);
  if (op.rows() != op.cols() || op.rows() != target.multiplicity) {
    throw std::invalid_argument("embed: operator dimension " + std::to_string(op.rows()) +
                                " does not match multiplicity " +
                                std::to_string(target.multiplicity) + " of site '" +
                                target.label + "'");
  }
  OperatorMatrix out = OperatorMatrix::Identity(1, 1);
  for (int i = 0; i < system.site_count(); ++i) {
    const int m = system.site(i).multiplicity;
    if (i == site_index) {
      out = kron(out, op);
    } else {
      out = kron(out, OperatorMatrix::Identity(m, m));
    }
  }
  return out;
}

namespace {

void require_spin_half_electron(const SpinSystem& system, int index) {
  const Site& s = system.site(index);
  if (s.role != SpinRole::Electron) {
    throw std::invalid_argument("projector: site '" + s.label + "' is not an electron");
  }
  if (s.multiplicity != 2) {
    throw std::invalid_argument("projector: electron site '" + s.label +
                                "' must be spin-1/2 (multiplicity 2), got " +
                                std::to_string(s.multiplicity));
  }
}

}  // namespace

OperatorMatrix singlet_projector(const SpinSystem& system, int e1, int e2) {
  require_spin_half_electron(system, e1);
  require_spin_half_electron(system, e2);
  if (e1 == e2) {
    throw std::invalid_argument("singlet_projector: electron indices must differ");
  }
  // Q_S = 1/4 - S1.S2 projects onto the pair singlet and acts as the
  // identity on every other site.
  const SpinOperators half = spin_operators(2);
  const OperatorMatrix s1x = embed(half.sx, e1, system), s2x = embed(half.sx, e2, system);
  const OperatorMatrix s1y = embed(half.sy, e1, system), s2y = embed(half.sy, e2, system);
  const OperatorMatrix s1z = embed(half.sz, e1, system), s2z = embed(half.sz, e2, system);
  const int d = system.dim();
  return 0.25 * OperatorMatrix::Identity(d, d) - (s1x * s2x + s1y * s2y + s1z * s2z);
}

OperatorMatrix triplet_projector(const SpinSystem& system, int e1, int e2) {
  const int d = system.dim();
  return OperatorMatrix::Identity(d, d) - singlet_projector(system, e1, e2);
}

bool is_hermitian(const OperatorMatrix& op, double tol) {
  if (op.rows() != op.cols()) return false;
  const double scale = std::max(1.0, op.cwiseAbs().maxCoeff());
  return (op - op.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

double spectral_norm(const OperatorMatrix& op) {
  if (!is_hermitian(op)) {
    throw std::invalid_argument("spectral_norm: operator is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(op, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double operator_norm(const OperatorMatrix& op) {
  if (op.rows() == 0 || op.cols() == 0) return 0.0;
  Eigen::JacobiSVD<OperatorMatrix> svd(op);
  return svd.singularValues()(0);
}

}  // namespace qmeter
