#include "qmeter/spin_system.hpp"

#include <set>
#include <stdexcept>

namespace qmeter {

SpinSystem::SpinSystem(std::vector<Site> sites) : sites_(std::move(sites)) {
  if (sites_.empty()) {
    throw std::invalid_argument("SpinSystem: at least one site required");
  }
  std::set<std::string> seen;
  for (const Site& s : sites_) {
    if (s.multiplicity < 2) {
      throw std::invalid_argument("SpinSystem: multiplicity must be >= 2 (site '" +
                                  s.label + "')");
    }
    if (!seen.insert(s.label).second) {
      throw std::invalid_argument("SpinSystem: duplicate site label '" + s.label + "'");
    }
    dim_ *= s.multiplicity;
  }
}

const Site& SpinSystem::site(int index) const {
  if (index < 0 || index >= site_count()) {
    throw std::out_of_range("SpinSystem: site index " + std::to_string(index) +
                            " out of range [0, " + std::to_string(site_count()) + ")");
  }
  return sites_[static_cast<size_t>(index)];
}

int SpinSystem::index_of(const std::string& label) const {
  for (int i = 0; i < site_count(); ++i) {
    if (sites_[static_cast<size_t>(i)].label == label) return i;
  }
  throw std::invalid_argument("SpinSystem: unknown site label '" + label + "'");
}

std::vector<int> SpinSystem::electron_indices() const {
  std::vector<int> out;
  for (int i = 0; i < site_count(); ++i) {
    if (sites_[static_cast<size_t>(i)].role == SpinRole::Electron) out.push_back(i);
  }
  return out;
}

std::pair<int, int> SpinSystem::radical_pair() const {
  auto electrons = electron_indices();
  if (electrons.size() != 2) {
    throw std::invalid_argument("SpinSystem: radical pair requires exactly 2 electron sites, found " +
                                std::to_string(electrons.size()));
  }
  return {electrons[0], electrons[1]};
}

std::vector<int> SpinSystem::basis_site_states(int basis_index) const {
  if (basis_index < 0 || basis_index >= dim_) {
    throw std::out_of_range("SpinSystem: basis index out of range");
  }
  std::vector<int> states(static_cast<size_t>(site_count()));
  int rem = basis_index;
  for (int i = site_count() - 1; i >= 0; --i) {
    const int m = sites_[static_cast<size_t>(i)].multiplicity;
    states[static_cast<size_t>(i)] = rem % m;
    rem /= m;
  }
  return states;
}

int SpinSystem::basis_index(const std::vector<int>& site_states) const {
  if (static_cast<int>(site_states.size()) != site_count()) {
    throw std::invalid_argument("SpinSystem: wrong number of site states");
  }
  int idx = 0;
  for (int i = 0; i < site_count(); ++i) {
    const int m = sites_[static_cast<size_t>(i)].multiplicity;
    const int s = site_states[static_cast<size_t>(i)];
    if (s < 0 || s >= m) {
      throw std::out_of_range("SpinSystem: site state out of range");
    }
    idx = idx * m + s;
  }
  return idx;
}

}  // namespace qmeter
