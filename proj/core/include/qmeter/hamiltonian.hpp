#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "qmeter/spin_ops.hpp"
#include "qmeter/spin_system.hpp"

namespace qmeter {

using Vec3 = Eigen::Vector3d;

/// Isotropic electron exchange J S1.S2 between two electron sites.
struct ExchangeTerm {
  double j_uT = 0.0;
  int e1 = 0, e2 = 1;
};

/// Electron-nuclear hyperfine coupling sum_jk A[j][k] S_j I_k.
/// A is a real 3x3 tensor in uT; a purely diagonal tensor reproduces
/// the axial sum_k A_k S_k I_k form.
struct HyperfineTerm {
  Eigen::Matrix3d a_uT = Eigen::Matrix3d::Zero();
  int electron = 0, nucleus = 0;

  static HyperfineTerm axial(const Vec3& diag_uT, int electron, int nucleus);
};

/// Electron Zeeman coupling B.(sum of listed electron spins).
struct ZeemanTerm {
  Vec3 b_uT = Vec3::Zero();
  std::vector<int> electrons;  // empty = all electron sites
};

/// Point-dipole coupling V (S1.S2 - 3 (S1.n)(S2.n)) along unit axis n.
struct DipolarTerm {
  double v_uT = 0.0;
  Vec3 axis = Vec3(0, 0, 1);
  int e1 = 0, e2 = 1;
};

using HamiltonianTerm = std::variant<ExchangeTerm, HyperfineTerm, ZeemanTerm, DipolarTerm>;

struct HamiltonianSpec {
  std::vector<HamiltonianTerm> terms;
};

struct PhysicalConstants {
  /// Electron gyromagnetic ratio g_e mu_B / hbar, rad s^-1 T^-1.
  double gamma_e = 1.760859630e11;
};

/// Assembles the Hermitian Hamiltonian matrix in angular-frequency units
/// (rad/s): gamma_e * (coupling in field units) * (dimensionless spin ops).
OperatorMatrix build(const HamiltonianSpec& spec, const SpinSystem& system,
                     const PhysicalConstants& constants = {});

/// Spectral norm of the commutator Ha Hb - Hb Ha.
double commutator_norm(const OperatorMatrix& ha, const OperatorMatrix& hb);

struct CoherenceCheck {
  bool satisfied = false;
  double margin = 0.0;  // tau_c * ||H_ex||
};

/// Tests tau_c * ||H_ex|| > 1, the condition for an interferometric
/// readout of H_int to complete within the coherence time.
CoherenceCheck coherence_condition(const OperatorMatrix& h_ex, double tau_c_s);

/// Rotates every spatial axis in the spec (Zeeman vectors, hyperfine
/// tensors, dipolar axes) by the given rotation matrix.
HamiltonianSpec rotated(const HamiltonianSpec& spec, const Eigen::Matrix3d& rotation);

}  // namespace qmeter
