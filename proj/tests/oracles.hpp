// Test-only reference implementations, kept independent of the library's
// computational paths so they can serve as oracles.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

namespace oracles {

/// Brute-force matrix exponential: scaling and squaring with a plain
/// Taylor series. Deliberately avoids eigendecomposition, which the
/// library uses.
inline Eigen::MatrixXcd expm_taylor(const Eigen::MatrixXcd& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }
  const Eigen::MatrixXcd t = m * scale;
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k < 64; ++k) {
    term = (term * t) / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-20) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// Least-squares slope of y = a x (line through the origin).
inline double fit_through_origin(const std::vector<double>& x, const std::vector<double>& y) {
  double sxy = 0.0, sxx = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
  }
  return sxy / sxx;
}

/// Coefficient of determination of y against the fitted through-origin line.
inline double r_squared_through_origin(const std::vector<double>& x,
                                       const std::vector<double>& y) {
  const double a = fit_through_origin(x, y);
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    ss_res += (y[i] - a * x[i]) * (y[i] - a * x[i]);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  return 1.0 - ss_res / ss_tot;
}

}  // namespace oracles
