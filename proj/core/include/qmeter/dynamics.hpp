#pragma once

#include <limits>
#include <vector>

#include "qmeter/hamiltonian.hpp"
#include "qmeter/spin_ops.hpp"
#include "qmeter/spin_system.hpp"

namespace qmeter {

/// Raised when the integrator or a state invariant fails (as opposed to
/// invalid input, which raises std::invalid_argument).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Hermitian, positive-semidefinite state with trace <= 1. The trace is
/// allowed to decay below 1 under recombination.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(OperatorMatrix m);

  const OperatorMatrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  double trace_real() const { return m_.trace().real(); }

  /// Verifies Hermiticity (1e-10), eigenvalue floor, and trace <= 1 + 1e-10.
  /// Throws NumericalError on violation.
  void check_valid(double eig_floor = -1e-10) const;

 private:
  OperatorMatrix m_;
};

/// 1/2 of the trace norm of (a - b).
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

enum class NuclearInit { MaximallyMixed, PolarizedUp };

struct InitialState {
  NuclearInit nuclear = NuclearInit::MaximallyMixed;
};

/// Electron pair in the singlet state, nuclei maximally mixed or all
/// polarized along +z. Trace 1.
DensityMatrix radical_pair_initial_state(const SpinSystem& system,
                                         const InitialState& init = {});

/// How the finite electron-spin coherence time tau_c enters the dynamics:
///  - LocalDephasing: independent Lindblad Sz channels of rate 1/(2 tau_c)
///    on each electron (coherences damp, populations keep flowing at
///    overdamped rates past tau_c).
///  - Collapse: the pair evolves coherently for exactly tau_c, after which
///    the environment's accumulated monitoring resolves both electron Sz
///    components and the singlet/triplet character becomes classical; only
///    the recombination channels act from then on. Spin interconversion is
///    confined to the coherence window, which is what makes the yield
///    difference collapse like tau_c^4 at short coherence times.
enum class Decoherence { LocalDephasing, Collapse };

struct OpenSystemModel {
  double tau_c_s = std::numeric_limits<double>::infinity();
  double k_back_per_s = 0.0;  // singlet-only back transfer, Haberkorn form
  double k_prot_per_s = 0.0;  // spin-independent protonation
  Decoherence decoherence = Decoherence::LocalDephasing;

  bool dephasing_active() const { return std::isfinite(tau_c_s); }
};

/// Closed-system propagation U rho U+ with U = exp(-i H t), via
/// eigendecomposition. Trace preserved exactly.
DensityMatrix evolve_exact(const DensityMatrix& rho0, const OperatorMatrix& h, double t_s);

struct TrajectoryPoint {
  double t_s = 0.0;
  DensityMatrix rho;
};

struct PropagationOptions {
  double dt_s = 0.0;     // 0 -> auto: 0.02 / max(||H||, 1/tau_c, k_back, k_prot)
  double t_max_s = 0.0;  // 0 -> auto: 20 / (k_back + k_prot)
  double trace_floor = 1e-6;
  int sample_stride = 100;  // store every Nth step (propagate only)
};

/// Actual step size and horizon a propagation will use, including the
/// auto defaults (recorded in CLI provenance footers).
double effective_dt(const OperatorMatrix& h, const OpenSystemModel& model,
                    const PropagationOptions& opts = {});
double effective_t_max(const OpenSystemModel& model, const PropagationOptions& opts = {});

/// Fixed-step RK4 integration of
///   drho/dt = -i[H,rho] + D_dephase(rho) - (k_back/2){Q_S,rho} - k_prot rho
/// with the local-dephasing dissipator when tau_c is finite. Stored samples
/// are validated (Hermiticity, positivity floor -1e-8). Collapse decoherence
/// has no single-trajectory representation past tau_c and is rejected here;
/// use compute_yields for it.
std::vector<TrajectoryPoint> propagate(const DensityMatrix& rho0, const OperatorMatrix& h,
                                       const SpinSystem& system, const OpenSystemModel& model,
                                       const PropagationOptions& opts = {});

struct YieldRecord {
  double yield_ground = 0.0;   // singlet back-transfer channel
  double yield_prot_S = 0.0;   // protonated via singlet character
  double yield_prot_T = 0.0;   // protonated via triplet character
  double residual_trace = 0.0;
  double t_final_s = 0.0;

  double yield_prot() const { return yield_prot_S + yield_prot_T; }
  double singlet_fraction() const { return yield_prot_S / yield_prot(); }
};

/// Integrates the channel fluxes alongside the propagation:
///   yield_ground = k_back Int Tr(Q_S rho) dt, etc.
/// Quadrature is carried inside the RK4 state, so the bookkeeping
/// yield_ground + yield_prot + residual_trace = initial trace holds to
/// round-off. Integration halts at trace < trace_floor or t_max.
YieldRecord compute_yields(const DensityMatrix& rho0, const OperatorMatrix& h,
                           const SpinSystem& system, const OpenSystemModel& model,
                           const PropagationOptions& opts = {});

enum class FieldGeometry { Parallel, Perpendicular };

/// Appends a Zeeman term of the given magnitude along z (parallel) or
/// x (perpendicular) to the base spec.
HamiltonianSpec with_field(const HamiltonianSpec& base, double b_uT, FieldGeometry geometry);

struct GeometryYields {
  YieldRecord parallel;
  YieldRecord perpendicular;
  double difference() const {
    return std::abs(perpendicular.yield_prot_T - parallel.yield_prot_T);
  }
};

/// Runs compute_yields for B parallel and perpendicular to z and reports
/// both records; difference() is |Phi_T(perp) - Phi_T(par)|.
GeometryYields orientation_yields(const HamiltonianSpec& base, const SpinSystem& system,
                                  double b_uT, const OpenSystemModel& model,
                                  const PropagationOptions& opts = {},
                                  const InitialState& init = {},
                                  const PhysicalConstants& constants = {});

double triplet_yield_difference(const HamiltonianSpec& base, const SpinSystem& system,
                                double b_uT, const OpenSystemModel& model,
                                const PropagationOptions& opts = {},
                                const InitialState& init = {},
                                const PhysicalConstants& constants = {});

struct SweepPoint {
  double tau_c_s = 0.0;
  GeometryYields yields;
};

/// One triplet_yield_difference evaluation per tau_c, other parameters
/// fixed. Points may be computed on `jobs` worker threads; results are
/// ordered by input order.
std::vector<SweepPoint> coherence_sweep(const HamiltonianSpec& base, const SpinSystem& system,
                                        double b_uT, const OpenSystemModel& model_base,
                                        const std::vector<double>& tau_c_list,
                                        const PropagationOptions& opts = {},
                                        const InitialState& init = {},
                                        const PhysicalConstants& constants = {}, int jobs = 1);

}  // namespace qmeter
