#include "qmeter/dynamics.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <thread>

namespace qmeter {

namespace {
constexpr Complex kI{0.0, 1.0};
}

DensityMatrix::DensityMatrix(OperatorMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw std::invalid_argument("DensityMatrix: matrix must be square");
  }
}

void DensityMatrix::check_valid(double eig_floor) const {
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw NumericalError("DensityMatrix: Hermiticity violated");
  }
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(m_, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < eig_floor) {
    throw NumericalError("DensityMatrix: positivity violated (min eigenvalue " +
                         std::to_string(min_eig) + ")");
  }
  const double tr = trace_real();
  if (tr > 1.0 + 1e-10 || tr < -1e-10) {
    throw NumericalError("DensityMatrix: trace " + std::to_string(tr) + " out of [0, 1]");
  }
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(a.matrix() - b.matrix(),
                                                       Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

DensityMatrix radical_pair_initial_state(const SpinSystem& system, const InitialState& init) {
  const auto [e1, e2] = system.radical_pair();
  const int d = system.dim();
  OperatorMatrix rho;

  if (init.nuclear == NuclearInit::MaximallyMixed) {
    // Q_S / rank(Q_S) = (singlet projector on the pair) x (I/d_nuc).
    rho = singlet_projector(system, e1, e2) * (4.0 / d);
  } else {
    // |singlet> x |up...up>: local index 0 is the largest Sz eigenvalue.
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
    std::vector<int> states(static_cast<size_t>(system.site_count()), 0);
    const double amp = 1.0 / std::sqrt(2.0);
    states[static_cast<size_t>(e1)] = 0;  // up
    states[static_cast<size_t>(e2)] = 1;  // down
    psi(system.basis_index(states)) = amp;
    states[static_cast<size_t>(e1)] = 1;
    states[static_cast<size_t>(e2)] = 0;
    psi(system.basis_index(states)) = -amp;
    rho = psi * psi.adjoint();
  }
  return DensityMatrix(rho);
}

DensityMatrix evolve_exact(const DensityMatrix& rho0, const OperatorMatrix& h, double t_s) {
  if (!is_hermitian(h)) {
    throw std::invalid_argument("evolve_exact: Hamiltonian is not Hermitian");
  }
  if (h.rows() != rho0.dim()) {
    throw std::invalid_argument("evolve_exact: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(h);
  const OperatorMatrix& v = solver.eigenvectors();
  Eigen::VectorXcd phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) {
    phases(k) = std::exp(-kI * solver.eigenvalues()(k) * t_s);
  }
  const OperatorMatrix u = v * phases.asDiagonal() * v.adjoint();
  return DensityMatrix(u * rho0.matrix() * u.adjoint());
}

namespace {

// Shared machinery for propagate / compute_yields.
struct Engine {
  OperatorMatrix h;
  OperatorMatrix q_singlet;
  Eigen::VectorXd singlet_weights;  // diagonal of Q_S in the product basis
  Eigen::MatrixXd dephasing_mask;   // elementwise Lindblad damping rates (<= 0)
  double k_back = 0.0;
  double k_prot = 0.0;
  bool local_dephasing = false;
  double collapse_time = std::numeric_limits<double>::infinity();
  double dt = 0.0;
  double t_max = 0.0;
  double trace_floor = 1e-6;

  // Scratch for RK4.
  OperatorMatrix k1, k2, k3, k4, tmp;
  double y1[3], y2[3], y3[3], y4[3];

  // Accumulated yields: [ground, prot_S, prot_T].
  double yields[3] = {0.0, 0.0, 0.0};

  void derivative(const OperatorMatrix& rho, OperatorMatrix& drho, double dy[3]) {
    drho.noalias() = -kI * (h * rho);
    drho.noalias() += kI * (rho * h);
    const double ps = (q_singlet.transpose().cwiseProduct(rho)).sum().real();
    const double tr = rho.trace().real();
    if (k_back > 0.0) {
      drho.noalias() -= (0.5 * k_back) * (q_singlet * rho);
      drho.noalias() -= (0.5 * k_back) * (rho * q_singlet);
    }
    if (k_prot > 0.0) drho -= k_prot * rho;
    if (local_dephasing) drho += dephasing_mask.cwiseProduct(rho);
    dy[0] = k_back * ps;
    dy[1] = k_prot * ps;
    dy[2] = k_prot * (tr - ps);
  }

  void step(OperatorMatrix& rho, double dt_step) {
    derivative(rho, k1, y1);
    tmp = rho + (0.5 * dt_step) * k1;
    derivative(tmp, k2, y2);
    tmp = rho + (0.5 * dt_step) * k2;
    derivative(tmp, k3, y3);
    tmp = rho + dt_step * k3;
    derivative(tmp, k4, y4);
    rho += (dt_step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    for (int i = 0; i < 3; ++i) {
      yields[i] += (dt_step / 6.0) * (y1[i] + 2.0 * y2[i] + 2.0 * y3[i] + y4[i]);
    }
  }

  // Environment measurement at t = tau_c: both electron Sz components are
  // read out and the singlet/triplet character resolves classically. The
  // singlet portion still branches over both recombination channels; the
  // triplet portion can only protonate.
  void collapse(OperatorMatrix& rho) {
    const double m_s = singlet_weights.dot(rho.diagonal().real());
    const double m_t = rho.trace().real() - m_s;
    const double k_tot = k_back + k_prot;
    yields[0] += m_s * (k_back / k_tot);
    yields[1] += m_s * (k_prot / k_tot);
    yields[2] += m_t;
    rho.setZero();
  }
};

void validate_model(const OpenSystemModel& model) {
  if (model.k_back_per_s < 0.0 || model.k_prot_per_s < 0.0) {
    throw std::invalid_argument("propagate: recombination rates must be >= 0");
  }
  if (!(model.tau_c_s > 0.0)) {
    throw std::invalid_argument("propagate: tau_c must be positive (or infinity)");
  }
}

Engine make_engine(const OperatorMatrix& h, const SpinSystem& system,
                   const OpenSystemModel& model, const PropagationOptions& opts) {
  if (!is_hermitian(h)) {
    throw std::invalid_argument("propagate: Hamiltonian is not Hermitian");
  }
  validate_model(model);
  if (model.decoherence == Decoherence::Collapse && model.dephasing_active() &&
      model.k_back_per_s + model.k_prot_per_s <= 0.0) {
    throw std::invalid_argument(
        "propagate: Collapse decoherence requires at least one recombination channel");
  }

  Engine e;
  e.h = h;
  const auto [e1, e2] = system.radical_pair();
  e.q_singlet = singlet_projector(system, e1, e2);
  e.singlet_weights = e.q_singlet.diagonal().real();
  e.k_back = model.k_back_per_s;
  e.k_prot = model.k_prot_per_s;

  if (model.dephasing_active()) {
    if (model.decoherence == Decoherence::LocalDephasing) {
      e.local_dephasing = true;
      // Independent Sz channels of rate 1/(2 tau_c) per electron. With
      // diagonal Lindblad operators the dissipator reduces to elementwise
      // damping of coherences: -(rate/2) (d_a - d_b)^2 rho_ab.
      const double rate = 1.0 / (2.0 * model.tau_c_s);
      const int d = system.dim();
      e.dephasing_mask = Eigen::MatrixXd::Zero(d, d);
      for (int site : {e1, e2}) {
        const Eigen::VectorXd sz =
            embed(spin_operators(2).sz, site, system).diagonal().real();
        for (int a = 0; a < d; ++a) {
          for (int b = 0; b < d; ++b) {
            const double diff = sz(a) - sz(b);
            e.dephasing_mask(a, b) -= 0.5 * rate * diff * diff;
          }
        }
      }
    } else {
      e.collapse_time = model.tau_c_s;
    }
  }

  e.dt = effective_dt(h, model, opts);
  e.t_max = effective_t_max(model, opts);
  if (!(opts.trace_floor > 0.0) || opts.trace_floor >= 1.0) {
    throw std::invalid_argument("propagate: trace_floor must lie in (0, 1)");
  }
  e.trace_floor = opts.trace_floor;

  const int d = system.dim();
  e.k1.resize(d, d);
  e.k2.resize(d, d);
  e.k3.resize(d, d);
  e.k4.resize(d, d);
  e.tmp.resize(d, d);
  return e;
}

}  // namespace

double effective_dt(const OperatorMatrix& h, const OpenSystemModel& model,
                    const PropagationOptions& opts) {
  validate_model(model);
  const double rate_scale = model.dephasing_active() ? 1.0 / model.tau_c_s : 0.0;
  const double fastest = std::max(
      {spectral_norm(h), rate_scale, model.k_back_per_s, model.k_prot_per_s});
  if (opts.dt_s < 0.0) throw std::invalid_argument("propagate: dt must be >= 0");
  if (opts.dt_s > 0.0) {
    if (fastest > 0.0 && opts.dt_s > (0.05 / fastest) * (1.0 + 1e-12)) {
      throw std::invalid_argument(
          "propagate: dt exceeds the step bound 0.05/max(||H||, 1/tau_c, k_back, k_prot)");
    }
    return opts.dt_s;
  }
  if (fastest <= 0.0) {
    throw std::invalid_argument("propagate: dt required when H = 0 and all rates are 0");
  }
  return 0.02 / fastest;
}

double effective_t_max(const OpenSystemModel& model, const PropagationOptions& opts) {
  validate_model(model);
  if (opts.t_max_s > 0.0) return opts.t_max_s;
  const double k_tot = model.k_back_per_s + model.k_prot_per_s;
  if (k_tot <= 0.0) {
    throw std::invalid_argument("propagate: t_max required when both recombination rates are 0");
  }
  return 20.0 / k_tot;
}

std::vector<TrajectoryPoint> propagate(const DensityMatrix& rho0, const OperatorMatrix& h,
                                       const SpinSystem& system, const OpenSystemModel& model,
                                       const PropagationOptions& opts) {
  if (rho0.dim() != system.dim()) {
    throw std::invalid_argument("propagate: state dimension does not match system");
  }
  if (model.decoherence == Decoherence::Collapse && model.dephasing_active()) {
    throw std::invalid_argument(
        "propagate: Collapse decoherence has no trajectory representation; "
        "use compute_yields or LocalDephasing");
  }
  Engine engine = make_engine(h, system, model, opts);
  const int stride = std::max(1, opts.sample_stride);

  OperatorMatrix rho = rho0.matrix();
  std::vector<TrajectoryPoint> trajectory;
  trajectory.push_back({0.0, rho0});
  trajectory.front().rho.check_valid(-1e-8);

  double t = 0.0;
  long steps = 0;
  while (t < engine.t_max && rho.trace().real() >= engine.trace_floor) {
    const double dt_step = std::min(engine.dt, engine.t_max - t);
    engine.step(rho, dt_step);
    t += dt_step;
    ++steps;
    if (steps % stride == 0 || t >= engine.t_max) {
      DensityMatrix sample(rho);
      sample.check_valid(-1e-8);
      trajectory.push_back({t, std::move(sample)});
    }
  }
  if (trajectory.back().t_s < t) {
    DensityMatrix sample(rho);
    sample.check_valid(-1e-8);
    trajectory.push_back({t, std::move(sample)});
  }
  return trajectory;
}

YieldRecord compute_yields(const DensityMatrix& rho0, const OperatorMatrix& h,
                           const SpinSystem& system, const OpenSystemModel& model,
                           const PropagationOptions& opts) {
  if (rho0.dim() != system.dim()) {
    throw std::invalid_argument("compute_yields: state dimension does not match system");
  }
  Engine engine = make_engine(h, system, model, opts);

  OperatorMatrix rho = rho0.matrix();
  double t = 0.0;
  const bool collapse_scheduled =
      std::isfinite(engine.collapse_time) && engine.collapse_time <= engine.t_max;
  const double horizon = collapse_scheduled ? engine.collapse_time : engine.t_max;
  bool floor_reached = false;
  while (t < horizon) {
    if (rho.trace().real() < engine.trace_floor) {
      floor_reached = true;
      break;
    }
    const double dt_step = std::min(engine.dt, horizon - t);
    engine.step(rho, dt_step);
    t += dt_step;
  }
  if (collapse_scheduled && !floor_reached) {
    engine.collapse(rho);
  }

  YieldRecord record;
  record.yield_ground = engine.yields[0];
  record.yield_prot_S = engine.yields[1];
  record.yield_prot_T = engine.yields[2];
  record.residual_trace = rho.trace().real();
  record.t_final_s = t;
  if (record.residual_trace > 1e-3) {
    std::clog << "compute_yields: residual trace " << record.residual_trace
              << " at t_final = " << t << " s; horizon may be too short\n";
  }
  return record;
}

HamiltonianSpec with_field(const HamiltonianSpec& base, double b_uT, FieldGeometry geometry) {
  HamiltonianSpec spec = base;
  ZeemanTerm zeeman;
  zeeman.b_uT = geometry == FieldGeometry::Parallel ? Vec3(0, 0, b_uT) : Vec3(b_uT, 0, 0);
  spec.terms.emplace_back(zeeman);
  return spec;
}

GeometryYields orientation_yields(const HamiltonianSpec& base, const SpinSystem& system,
                                  double b_uT, const OpenSystemModel& model,
                                  const PropagationOptions& opts, const InitialState& init,
                                  const PhysicalConstants& constants) {
  const DensityMatrix rho0 = radical_pair_initial_state(system, init);
  GeometryYields out;
  out.parallel = compute_yields(
      rho0, build(with_field(base, b_uT, FieldGeometry::Parallel), system, constants), system,
      model, opts);
  out.perpendicular = compute_yields(
      rho0, build(with_field(base, b_uT, FieldGeometry::Perpendicular), system, constants),
      system, model, opts);
  return out;
}

double triplet_yield_difference(const HamiltonianSpec& base, const SpinSystem& system,
                                double b_uT, const OpenSystemModel& model,
                                const PropagationOptions& opts, const InitialState& init,
                                const PhysicalConstants& constants) {
  return orientation_yields(base, system, b_uT, model, opts, init, constants).difference();
}

std::vector<SweepPoint> coherence_sweep(const HamiltonianSpec& base, const SpinSystem& system,
                                        double b_uT, const OpenSystemModel& model_base,
                                        const std::vector<double>& tau_c_list,
                                        const PropagationOptions& opts, const InitialState& init,
                                        const PhysicalConstants& constants, int jobs) {
  if (tau_c_list.empty()) {
    throw std::invalid_argument("coherence_sweep: tau_c list must be non-empty");
  }
  for (double tau : tau_c_list) {
    if (!(tau > 0.0)) throw std::invalid_argument("coherence_sweep: tau_c values must be positive");
  }

  std::vector<SweepPoint> results(tau_c_list.size());
  const auto worker_body = [&](size_t index) {
    OpenSystemModel model = model_base;
    model.tau_c_s = tau_c_list[index];
    results[index].tau_c_s = tau_c_list[index];
    results[index].yields =
        orientation_yields(base, system, b_uT, model, opts, init, constants);
  };

  const int n_jobs = std::max(1, std::min<int>(jobs, static_cast<int>(tau_c_list.size())));
  if (n_jobs == 1) {
    for (size_t i = 0; i < tau_c_list.size(); ++i) worker_body(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n_jobs));
    for (int w = 0; w < n_jobs; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < tau_c_list.size(); i = next.fetch_add(1)) {
          worker_body(i);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }
  return results;
}

}  // namespace qmeter
