#include "qmeter/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qmeter {

namespace {

constexpr double kTesla = 1e-6;  // couplings are entered in uT

void require_role(const SpinSystem& system, int index, SpinRole role, const char* term) {
  const Site& s = system.site(index);
  if (s.role != role) {
    throw std::invalid_argument(std::string(term) + ": site '" + s.label + "' has the wrong role");
  }
}

struct SiteOps {
  OperatorMatrix x, y, z;
};

SiteOps embedded_ops(const SpinSystem& system, int site) {
  const SpinOperators local = spin_operators(system.site(site).multiplicity);
  return {embed(local.sx, site, system), embed(local.sy, site, system),
          embed(local.sz, site, system)};
}

OperatorMatrix dot(const SiteOps& a, const SiteOps& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

OperatorMatrix along(const SiteOps& ops, const Vec3& n) {
  return n.x() * ops.x + n.y() * ops.y + n.z() * ops.z;
}

}  // namespace

HyperfineTerm HyperfineTerm::axial(const Vec3& diag_uT, int electron, int nucleus) {
  HyperfineTerm t;
  t.a_uT = diag_uT.asDiagonal();
  t.electron = electron;
  t.nucleus = nucleus;
  return t;
}

OperatorMatrix build(const HamiltonianSpec& spec, const SpinSystem& system,
                     const PhysicalConstants& constants) {
  if (constants.gamma_e <= 0.0) {
    throw std::invalid_argument("build: gamma_e must be positive");
  }
  const int d = system.dim();
  OperatorMatrix h = OperatorMatrix::Zero(d, d);
  const double gamma = constants.gamma_e * kTesla;  // rad/s per uT

  for (const HamiltonianTerm& term : spec.terms) {
    if (const auto* ex = std::get_if<ExchangeTerm>(&term)) {
      require_role(system, ex->e1, SpinRole::Electron, "Exchange");
      require_role(system, ex->e2, SpinRole::Electron, "Exchange");
      h += gamma * ex->j_uT * dot(embedded_ops(system, ex->e1), embedded_ops(system, ex->e2));
    } else if (const auto* hf = std::get_if<HyperfineTerm>(&term)) {
      require_role(system, hf->electron, SpinRole::Electron, "Hyperfine");
      require_role(system, hf->nucleus, SpinRole::Nucleus, "Hyperfine");
      const SiteOps s = embedded_ops(system, hf->electron);
      const SiteOps n = embedded_ops(system, hf->nucleus);
      const OperatorMatrix* sv[3] = {&s.x, &s.y, &s.z};
      const OperatorMatrix* nv[3] = {&n.x, &n.y, &n.z};
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          const double a = hf->a_uT(j, k);
          if (a != 0.0) h += gamma * a * (*sv[j]) * (*nv[k]);
        }
      }
    } else if (const auto* ze = std::get_if<ZeemanTerm>(&term)) {
      std::vector<int> electrons = ze->electrons;
      if (electrons.empty()) electrons = system.electron_indices();
      for (int e : electrons) {
        require_role(system, e, SpinRole::Electron, "Zeeman");
        h += gamma * along(embedded_ops(system, e), ze->b_uT);
      }
    } else if (const auto* dp = std::get_if<DipolarTerm>(&term)) {
      require_role(system, dp->e1, SpinRole::Electron, "Dipolar");
      require_role(system, dp->e2, SpinRole::Electron, "Dipolar");
      if (std::abs(dp->axis.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("Dipolar: axis must have unit norm");
      }
      const SiteOps s1 = embedded_ops(system, dp->e1);
      const SiteOps s2 = embedded_ops(system, dp->e2);
      h += gamma * dp->v_uT *
           (dot(s1, s2) - 3.0 * along(s1, dp->axis) * along(s2, dp->axis));
    }
  }

  if (!is_hermitian(h, 1e-12)) {
    throw std::runtime_error("build: assembled Hamiltonian is not Hermitian");
  }
  return h;
}

double commutator_norm(const OperatorMatrix& ha, const OperatorMatrix& hb) {
  if (ha.rows() != hb.rows() || ha.cols() != hb.cols()) {
    throw std::invalid_argument("commutator_norm: dimension mismatch (" +
                                std::to_string(ha.rows()) + " vs " +
                                std::to_string(hb.rows()) + ")");
  }
  return operator_norm(ha * hb - hb * ha);
}

CoherenceCheck coherence_condition(const OperatorMatrix& h_ex, double tau_c_s) {
  if (!(tau_c_s > 0.0)) {
    throw std::invalid_argument("coherence_condition: tau_c must be positive");
  }
  CoherenceCheck out;
  const double norm = spectral_norm(h_ex);
  if (std::isinf(tau_c_s)) {
    out.margin = norm > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  } else {
    out.margin = tau_c_s * norm;
  }
  out.satisfied = out.margin > 1.0;
  return out;
}

HamiltonianSpec rotated(const HamiltonianSpec& spec, const Eigen::Matrix3d& rotation) {
  HamiltonianSpec out = spec;
  for (HamiltonianTerm& term : out.terms) {
    if (auto* hf = std::get_if<HyperfineTerm>(&term)) {
      hf->a_uT = rotation * hf->a_uT * rotation.transpose();
    } else if (auto* ze = std::get_if<ZeemanTerm>(&term)) {
      ze->b_uT = rotation * ze->b_uT;
    } else if (auto* dp = std::get_if<DipolarTerm>(&term)) {
      dp->axis = rotation * dp->axis;
    }
  }
  return out;
}

}  // namespace qmeter
