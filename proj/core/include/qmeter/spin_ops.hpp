#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qmeter/spin_system.hpp"

namespace qmeter {

using Complex = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;

struct SpinOperators {
  OperatorMatrix sx, sy, sz;
};

/// Dimensionless spin matrices for a site of the given multiplicity
/// (2 or 3). Sz is diagonal with descending eigenvalues and the set
/// satisfies the cyclic commutation relations [Sx,Sy] = i Sz.
SpinOperators spin_operators(int multiplicity);

/// Kronecker product, A on the left.
OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b);

/// Lifts a single-site operator into the full product space:
/// identity on every other site.
OperatorMatrix embed(const OperatorMatrix& op, int site_index, const SpinSystem& system);

/// Projector onto the two-electron singlet (|ud> - |du>)/sqrt(2),
/// identity on all remaining sites. Both sites must be spin-1/2 electrons.
OperatorMatrix singlet_projector(const SpinSystem& system, int e1, int e2);

/// Identity minus the singlet projector.
OperatorMatrix triplet_projector(const SpinSystem& system, int e1, int e2);

/// Largest absolute eigenvalue of a Hermitian operator; throws on
/// non-Hermitian input.
double spectral_norm(const OperatorMatrix& op);

/// Operator 2-norm (largest singular value) of a general matrix.
double operator_norm(const OperatorMatrix& op);

bool is_hermitian(const OperatorMatrix& op, double tol = 1e-10);

}  // namespace qmeter
