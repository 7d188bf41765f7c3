#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "ostrovsky/waves/waves.hpp"

namespace ostrovsky::testing {

/// Roots of lambda^4 - q lambda^2 + p from the eigenvalues of its companion matrix.
inline std::vector<std::complex<double>> companion_roots(double p, double q) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(1, 0) = m(2, 1) = m(3, 2) = 1.0;
  // Monic coefficients c0..c3 = p, 0, -q, 0 in the last column as -c_i.
  m(0, 3) = -p;
  m(2, 3) = q;
  Eigen::EigenSolver<Eigen::Matrix4d> solver(m, false);
  std::vector<std::complex<double>> roots;
  for (int i = 0; i < 4; ++i) roots.push_back(solver.eigenvalues()[i]);
  return roots;
}

/// Groups roots closer than `cluster` (multiple roots split under rounding)
/// and replaces each group by its mean, then counts axis membership with `tol`.
inline waves::RootPattern observed_pattern(std::vector<std::complex<double>> roots, double scale,
                                           double cluster = 1e-6, double tol = 1e-9) {
  std::vector<std::vector<std::complex<double>>> groups;
  for (auto r : roots) {
    bool placed = false;
    for (auto& g : groups) {
      if (std::abs(g.front() - r) <= cluster * scale) {
        g.push_back(r);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({r});
  }
  waves::RootPattern pattern;
  pattern.distinct = static_cast<int>(groups.size());
  for (const auto& g : groups) {
    std::complex<double> mean = 0.0;
    for (auto r : g) mean += r;
    mean /= static_cast<double>(g.size());
    int count = static_cast<int>(g.size());
    bool re_zero = std::abs(mean.real()) <= tol * scale;
    bool im_zero = std::abs(mean.imag()) <= tol * scale;
    if (re_zero && im_zero) pattern.zero += count;
    else if (im_zero) pattern.real += count;
    else if (re_zero) pattern.imaginary += count;
    else pattern.complex += count;
  }
  return pattern;
}

/// Natural root magnitude for (p, q), used to make tolerances relative.
inline double root_scale(double p, double q) { return std::max({1.0, std::sqrt(std::abs(q)), std::sqrt(std::sqrt(std::abs(p)))}); }

}  // namespace ostrovsky::testing
