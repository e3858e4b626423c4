#pragma once

#include <string>
#include <vector>

namespace qmeter {

enum class SpinRole { Electron, Nucleus };

struct Site {
  std::string label;
  SpinRole role = SpinRole::Electron;
  int multiplicity = 2;  // 2S+1; supported values: 2 (spin-1/2), 3 (spin-1)
};

/// Ordered collection of spins defining a tensor-product Hilbert space.
/// Site 0 is the leftmost tensor factor; each site's local basis is ordered
/// by descending Sz eigenvalue.
class SpinSystem {
 public:
  explicit SpinSystem(std::vector<Site> sites);

  int dim() const { return dim_; }
  int site_count() const { return static_cast<int>(sites_.size()); }
  const Site& site(int index) const;
  const std::vector<Site>& sites() const { return sites_; }

  /// Index of the site with the given label; throws if unknown.
  int index_of(const std::string& label) const;

  /// Indices of all electron-role sites, in declaration order.
  std::vector<int> electron_indices() const;

  /// The unique electron pair of a radical-pair system.
  /// Throws unless exactly two electron sites exist.
  std::pair<int, int> radical_pair() const;

  /// Decomposes a product-basis index into per-site local indices
  /// (local index 0 = largest Sz eigenvalue).
  std::vector<int> basis_site_states(int basis_index) const;

  /// Inverse of basis_site_states.
  int basis_index(const std::vector<int>& site_states) const;

 private:
  std::vector<Site> sites_;
  int dim_ = 1;
};

}  // namespace qmeter
