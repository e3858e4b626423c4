#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qmeter {

struct RateEdge {
  std::string from, to;
  double rate_per_s = 0.0;
};

/// Incoherent pump: contributes rate n_bar * base_rate on from -> to.
struct PumpEdge {
  std::string from, to;
  double base_rate_per_s = 0.0;
  double n_bar = 0.0;
};

/// Instant recycling of an absorbing product level: inflow headed for
/// `absorbing_level` is redirected to `to`, closing the scheme for
/// steady-state studies. The recycled level itself holds no population.
struct RecycleRule {
  std::string absorbing_level, to;
};

struct KineticScheme {
  std::vector<std::string> levels;
  std::vector<RateEdge> edges;
  std::optional<PumpEdge> pump;
  std::vector<RecycleRule> recycle;
  std::optional<std::string> signal_level;  // target of detection_probability

  int index_of(const std::string& label) const;
  bool is_recycled(const std::string& label) const;
};

struct Populations {
  std::vector<double> occupation;  // per level, same order as scheme.levels
  double time_s = 0.0;

  double sum() const;
};

/// Column-generator convention: M(j, i) = rate(i -> j) for i != j and
/// M(i, i) = -sum of outgoing rates, so dp/dt = M p. Columns sum to zero
/// whenever every outflow lands inside the scheme (recycling applied).
Eigen::MatrixXd rate_matrix(const KineticScheme& scheme);

/// exp(M t) p0 via scaling-and-squaring.
Populations transient(const KineticScheme& scheme, const Populations& p0, double t_s);

/// Stationary distribution (null space of M, normalized to sum 1).
/// Recycled levels are pinned to zero occupation. Errors if the chain has
/// multiple stationary distributions, or if a non-source absorbing level
/// would soak up all population (use transient, or add a recycle rule).
Populations steady_state(const KineticScheme& scheme);

/// Fraction of each outgoing destination: rate / (sum of outgoing rates).
std::map<std::string, double> branching_ratios(const KineticScheme& scheme,
                                               const std::string& level);

/// Probability of ever reaching `target` when starting from `from`,
/// treating the scheme as an absorbing Markov chain (pump excluded).
double hitting_probability(const KineticScheme& scheme, const std::string& from,
                           const std::string& target);

/// absorb_prob x (probability that a pump excitation reaches the scheme's
/// signal level). Requires both a pump and a signal_level.
double detection_probability(double absorb_prob, const KineticScheme& scheme);

/// Built-in schemes carrying the published rate constants:
///   "fig1a-light-harvesting"  four-level pumping scheme, product level
///                             recycled to ground
///   "fig1b-rhodopsin"         five-level photo-isomerization chain
///   "fig1b-rhodopsin-prose"   same chain with the doorway branching set
///                             to 65/35 instead of the per-rate values
KineticScheme preset_scheme(const std::string& name);

std::vector<std::string> preset_scheme_names();

}  // namespace qmeter
