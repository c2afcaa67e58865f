/// \file geometry.hpp
/// \brief Dimension-generic simplex kernels: measures, staircase triangulations
///        and the planar cut of a simplex by a linear level set.

#pragma once

#include "stis/common.hpp"

#include <array>
#include <utility>
#include <vector>

namespace stis {

/// Lattice vertex (i, j) of the product of simplices Δ^p × Δ^q.
using ProductVertex = std::pair<int, int>;

/// Staircase triangulation of Δ^p × Δ^q. Each entry is one (p+q)-simplex given
/// as a monotone lattice path from (0,0) to (p,q); there are C(p+q, p) of them.
std::vector<std::vector<ProductVertex>> staircase_triangulation(int p, int q);

template <int D>
using Simplex = std::array<Point<D>, D + 1>;

/// Signed volume of a D-simplex in R^D.
template <int D>
double signed_volume(const Simplex<D>& s) {
  Matrix<D> m;
  for (int k = 0; k < D; ++k) m.col(k) = s[k + 1] - s[0];
  double fact = 1.0;
  for (int k = 2; k <= D; ++k) fact *= k;
  return m.determinant() / fact;
}

template <int D>
double simplex_measure(const Simplex<D>& s) {
  return std::abs(signed_volume<D>(s));
}

/// (D-1)-dimensional measure of a (D-1)-simplex embedded in R^D.
template <int D>
double facet_measure(const std::array<Point<D>, D>& f) {
  Eigen::Matrix<double, D, D - 1> g;
  for (int k = 0; k < D - 1; ++k) g.col(k) = f[k + 1] - f[0];
  const double gram = (g.transpose() * g).determinant();
  double fact = 1.0;
  for (int k = 2; k <= D - 1; ++k) fact *= k;
  return std::sqrt(std::max(gram, 0.0)) / fact;
}

/// Result of cutting one D-simplex with the linear interpolant of nodal values.
template <int D>
struct SimplexCut {
  std::vector<Simplex<D>> neg;
  std::vector<Simplex<D>> pos;
  std::vector<std::array<Point<D>, D>> facets;
  /// Unit gradient of the linear interpolant; points from neg to pos.
  Point<D> normal = Point<D>::Zero();
};

/// Relative snap tolerance applied to nodal values before cutting.
inline constexpr double kSnapTolerance = 1e-12;

/// Cut `s` by {phi_lin = 0}. Values within kSnapTolerance * max|phi| of zero are
/// snapped to zero and treated as nonnegative. Sub-simplices of relative measure
/// below 1e-14 are dropped.
template <int D>
SimplexCut<D> cut_simplex(const Simplex<D>& s, std::array<double, D + 1> phi);

/// Gradient of the linear interpolant of nodal values over a D-simplex.
template <int D>
Point<D> linear_gradient(const Simplex<D>& s, const std::array<double, D + 1>& phi) {
  Matrix<D> m;
  Point<D> rhs;
  for (int k = 0; k < D; ++k) {
    m.row(k) = (s[k + 1] - s[0]).transpose();
    rhs[k] = phi[k + 1] - phi[0];
  }
  return m.partialPivLu().solve(rhs);
}

/// Barycentric coordinates of x with respect to s.
template <int D>
Eigen::Matrix<double, D + 1, 1> barycentric(const Simplex<D>& s, const Point<D>& x) {
  Matrix<D> m;
  for (int k = 0; k < D; ++k) m.col(k) = s[k + 1] - s[0];
  const Point<D> l = m.partialPivLu().solve(x - s[0]);
  Eigen::Matrix<double, D + 1, 1> b;
  b[0] = 1.0 - l.sum();
  b.template tail<D>() = l;
  return b;
}

}  // namespace stis
