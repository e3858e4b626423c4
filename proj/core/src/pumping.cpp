#include "qmeter/pumping.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qmeter {

int KineticScheme::index_of(const std::string& label) const {
  for (size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] == label) return static_cast<int>(i);
  }
  throw std::invalid_argument("KineticScheme: unknown level label '" + label + "'");
}

bool KineticScheme::is_recycled(const std::string& label) const {
  return std::any_of(recycle.begin(), recycle.end(),
                     [&](const RecycleRule& r) { return r.absorbing_level == label; });
}

double Populations::sum() const {
  return std::accumulate(occupation.begin(), occupation.end(), 0.0);
}

namespace {

void validate(const KineticScheme& scheme) {
  if (scheme.levels.empty()) {
    throw std::invalid_argument("KineticScheme: no levels");
  }
  for (size_t i = 0; i < scheme.levels.size(); ++i) {
    for (size_t j = i + 1; j < scheme.levels.size(); ++j) {
      if (scheme.levels[i] == scheme.levels[j]) {
        throw std::invalid_argument("KineticScheme: duplicate level '" + scheme.levels[i] + "'");
      }
    }
  }
  for (const RateEdge& e : scheme.edges) {
    scheme.index_of(e.from);
    scheme.index_of(e.to);
    if (e.rate_per_s < 0.0) {
      throw std::invalid_argument("KineticScheme: negative rate on edge " + e.from + " -> " + e.to);
    }
  }
  if (scheme.pump) {
    scheme.index_of(scheme.pump->from);
    scheme.index_of(scheme.pump->to);
    if (scheme.pump->base_rate_per_s < 0.0 || scheme.pump->n_bar < 0.0) {
      throw std::invalid_argument("KineticScheme: pump rate and n_bar must be >= 0");
    }
  }
  for (const RecycleRule& r : scheme.recycle) {
    scheme.index_of(r.absorbing_level);
    scheme.index_of(r.to);
  }
}

// Destination after recycling redirects.
int resolved_target(const KineticScheme& scheme, const std::string& to) {
  for (const RecycleRule& r : scheme.recycle) {
    if (r.absorbing_level == to) return scheme.index_of(r.to);
  }
  return scheme.index_of(to);
}

void add_rate(Eigen::MatrixXd& m, int from, int to, double rate) {
  if (rate == 0.0) return;
  m(to, from) += rate;
  m(from, from) -= rate;
}

}  // namespace

Eigen::MatrixXd rate_matrix(const KineticScheme& scheme) {
  validate(scheme);
  const int n = static_cast<int>(scheme.levels.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const RateEdge& e : scheme.edges) {
    add_rate(m, scheme.index_of(e.from), resolved_target(scheme, e.to), e.rate_per_s);
  }
  if (scheme.pump) {
    add_rate(m, scheme.index_of(scheme.pump->from),
             resolved_target(scheme, scheme.pump->to),
             scheme.pump->n_bar * scheme.pump->base_rate_per_s);
  }
  return m;
}

Populations transient(const KineticScheme& scheme, const Populations& p0, double t_s) {
  const int n = static_cast<int>(scheme.levels.size());
  if (static_cast<int>(p0.occupation.size()) != n) {
    throw std::invalid_argument("transient: population vector size mismatch");
  }
  if (std::abs(p0.sum() - 1.0) > 1e-9) {
    throw std::invalid_argument("transient: initial populations must sum to 1");
  }
  if (t_s < 0.0) {
    throw std::invalid_argument("transient: time must be >= 0");
  }
  const Eigen::MatrixXd m = rate_matrix(scheme);
  const Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(p0.occupation.data(), n);
  const Eigen::VectorXd pt = (m * t_s).exp() * p;

  Populations out;
  out.occupation.assign(pt.data(), pt.data() + n);
  out.time_s = p0.time_s + t_s;
  return out;
}

Populations steady_state(const KineticScheme& scheme) {
  validate(scheme);
  const int n = static_cast<int>(scheme.levels.size());

  // Recycled levels carry no population; solve on the remaining states.
  std::vector<int> active;
  for (int i = 0; i < n; ++i) {
    if (!scheme.is_recycled(scheme.levels[static_cast<size_t>(i)])) active.push_back(i);
  }
  const int na = static_cast<int>(active.size());
  std::vector<int> slot(static_cast<size_t>(n), -1);
  for (int i = 0; i < na; ++i) slot[static_cast<size_t>(active[static_cast<size_t>(i)])] = i;

  // Row-oriented rate table r(i, j) = rate i -> j on the active states.
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(na, na);
  const auto add = [&](const std::string& from, const std::string& to, double rate) {
    const int i = slot[static_cast<size_t>(scheme.index_of(from))];
    int jt = scheme.index_of(to);
    for (const RecycleRule& rule : scheme.recycle) {
      if (rule.absorbing_level == to) jt = scheme.index_of(rule.to);
    }
    const int j = slot[static_cast<size_t>(jt)];
    if (i >= 0 && j >= 0 && i != j) r(i, j) += rate;
  };
  for (const RateEdge& e : scheme.edges) add(e.from, e.to, e.rate_per_s);
  if (scheme.pump) {
    add(scheme.pump->from, scheme.pump->to, scheme.pump->n_bar * scheme.pump->base_rate_per_s);
  }
  const Eigen::VectorXd original_outflow = r.rowwise().sum();

  // GTH elimination: subtraction-free, so every component of the
  // stationary vector comes out with full relative accuracy even when
  // populations span many orders of magnitude.
  for (int k = na - 1; k >= 1; --k) {
    const double s = r.row(k).head(k).sum();
    if (s <= 0.0) {
      const std::string& label = scheme.levels[static_cast<size_t>(active[static_cast<size_t>(k)])];
      if (original_outflow(k) <= 0.0) {
        throw std::runtime_error("steady_state: level '" + label +
                                 "' absorbs population and is not recycled; "
                                 "use transient or add a recycle rule");
      }
      throw std::runtime_error(
          "steady_state: chain is reducible (multiple stationary distributions)");
    }
    for (int i = 0; i < k; ++i) r(i, k) /= s;
    for (int i = 0; i < k; ++i) {
      if (r(i, k) == 0.0) continue;
      for (int j = 0; j < k; ++j) {
        if (j != i) r(i, j) += r(i, k) * r(k, j);
      }
    }
  }

  Eigen::VectorXd x = Eigen::VectorXd::Zero(na);
  x(0) = 1.0;
  for (int k = 1; k < na; ++k) {
    double acc = 0.0;
    for (int j = 0; j < k; ++j) acc += x(j) * r(j, k);
    x(k) = acc;
  }
  const double total = x.sum();
  x /= total;

  // A unique point mass on a non-source absorbing level means every
  // excitation ends in a product state; a steady state is not informative.
  for (int k = 0; k < na; ++k) {
    if (x(k) > 1.0 - 1e-12 && original_outflow(k) <= 0.0) {
      const std::string& label = scheme.levels[static_cast<size_t>(active[static_cast<size_t>(k)])];
      const bool is_source = !scheme.pump || scheme.pump->from == label;
      if (!is_source) {
        throw std::runtime_error("steady_state: level '" + label +
                                 "' absorbs population and is not recycled; "
                                 "use transient or add a recycle rule");
      }
    }
  }

  Populations out;
  out.occupation.assign(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < na; ++i) {
    out.occupation[static_cast<size_t>(active[static_cast<size_t>(i)])] = x(i);
  }
  return out;
}

std::map<std::string, double> branching_ratios(const KineticScheme& scheme,
                                               const std::string& level) {
  validate(scheme);
  scheme.index_of(level);
  std::map<std::string, double> rates;
  double total = 0.0;
  for (const RateEdge& e : scheme.edges) {
    if (e.from == level && e.rate_per_s > 0.0) {
      rates[e.to] += e.rate_per_s;
      total += e.rate_per_s;
    }
  }
  if (scheme.pump && scheme.pump->from == level) {
    const double r = scheme.pump->n_bar * scheme.pump->base_rate_per_s;
    if (r > 0.0) {
      rates[scheme.pump->to] += r;
      total += r;
    }
  }
  if (total <= 0.0) {
    throw std::invalid_argument("branching_ratios: level '" + level + "' has no outgoing edges");
  }
  for (auto& [to, r] : rates) r /= total;
  return rates;
}

double hitting_probability(const KineticScheme& scheme, const std::string& from,
                           const std::string& target) {
  validate(scheme);
  const int n = static_cast<int>(scheme.levels.size());
  const int start = scheme.index_of(from);
  const int goal = scheme.index_of(target);
  if (start == goal) return 1.0;

  // First-step analysis on the embedded jump chain (spontaneous edges
  // only): h_i = sum_j P(i -> j) h_j, h_target = 1, absorbing h = 0.
  Eigen::MatrixXd jump = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd out_rate = Eigen::VectorXd::Zero(n);
  for (const RateEdge& e : scheme.edges) {
    const int i = scheme.index_of(e.from);
    jump(scheme.index_of(e.to), i) += e.rate_per_s;
    out_rate(i) += e.rate_per_s;
  }

  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (i == goal) {
      b(i) = 1.0;
      continue;
    }
    if (out_rate(i) <= 0.0) continue;  // absorbing, never reaches target
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      a(i, j) = -jump(j, i) / out_rate(i);
    }
  }
  const Eigen::VectorXd h = a.fullPivLu().solve(b);
  return std::clamp(h(start), 0.0, 1.0);
}

double detection_probability(double absorb_prob, const KineticScheme& scheme) {
  if (absorb_prob < 0.0 || absorb_prob > 1.0) {
    throw std::invalid_argument("detection_probability: absorb_prob must lie in [0, 1]");
  }
  if (!scheme.pump) {
    throw std::invalid_argument("detection_probability: scheme has no pump transition");
  }
  if (!scheme.signal_level) {
    throw std::invalid_argument("detection_probability: scheme has no signal level");
  }
  return absorb_prob * hitting_probability(scheme, scheme.pump->to, *scheme.signal_level);
}

KineticScheme preset_scheme(const std::string& name) {
  // Quoted ranges default to the geometric midpoint of the rate.
  if (name == "fig1a-light-harvesting") {
    KineticScheme s;
    s.levels = {"1", "3", "2", "X"};
    const double g31 = 1e9;                           // (1 ns)^-1
    const double g21 = 1e9;                           // (1 ns)^-1
    const double g32 = 1.0 / std::sqrt(100e-12 * 800e-12);  // (100-800 ps)^-1
    const double g2x = 1.0 / std::sqrt(1e-12 * 4e-12);      // (1-4 ps)^-1
    s.edges = {{"3", "1", g31}, {"3", "2", g32}, {"2", "1", g21}, {"2", "X", g2x}};
    s.pump = PumpEdge{"1", "3", g31, 0.0};
    s.recycle = {{"X", "1"}};
    return s;
  }
  if (name == "fig1b-rhodopsin" || name == "fig1b-rhodopsin-prose") {
    KineticScheme s;
    s.levels = {"c", "3", "2", "t", "X"};
    const double g32 = 1.0 / 80e-15;   // (80 fs)^-1
    const double g31 = 1.0 / 20e-12;   // (20 ps)^-1
    double g2t = 1.0 / 140e-15;        // (140 fs)^-1
    double g2c = 1.0 / 280e-12;        // (280 ps)^-1
    if (name == "fig1b-rhodopsin-prose") {
      // Doorway bifurcation forced to the quoted 65/35 split, keeping the
      // total decay rate of |2>.
      const double total = g2t + g2c;
      g2t = 0.65 * total;
      g2c = 0.35 * total;
    }
    const double gtx = 1.0 / 1e-12;  // (1 ps)^-1
    s.edges = {{"3", "2", g32}, {"3", "c", g31}, {"2", "t", g2t}, {"2", "c", g2c}, {"t", "X", gtx}};
    s.pump = PumpEdge{"c", "3", g31, 0.0};
    s.signal_level = "t";
    return s;
  }
  throw std::invalid_argument("preset_scheme: unknown preset '" + name + "'");
}

std::vector<std::string> preset_scheme_names() {
  return {"fig1a-light-harvesting", "fig1b-rhodopsin", "fig1b-rhodopsin-prose"};
}

}  // namespace qmeter
