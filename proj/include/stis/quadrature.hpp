/// \file quadrature.hpp
/// \brief Gauss rules on [0,1] and collapsed-coordinate rules on reference simplices.

#pragma once

#include "stis/common.hpp"
#include "stis/geometry.hpp"

#include <vector>

namespace stis {

/// Points and weights on [0,1].
struct Rule1D {
  std::vector<double> points;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [0,1]; exact for degree 2n-1.
Rule1D gauss_legendre(int n);

/// n-point Gauss-Jacobi rule on [0,1] for the weight (1-x)^alpha.
Rule1D gauss_jacobi(int n, int alpha);

/// Rule on the reference simplex {x_i >= 0, sum x_i <= 1}.
template <int D>
struct SimplexRule {
  std::vector<Point<D>> points;
  std::vector<double> weights;  // sum to 1/D!
};

/// Highest polynomial degree the simplex and Gauss rules accept.
inline constexpr int kMaxQuadratureDegree = 40;

/// Conical product rule exact for total degree `degree`. Cached; thread-safe.
/// Throws stis::Error for degree outside [0, kMaxQuadratureDegree].
template <int D>
const SimplexRule<D>& simplex_rule(int degree);

/// Cached Gauss-Legendre rule exact for `degree` (1D).
const Rule1D& gauss_rule_for_degree(int degree);

/// Weighted points of a generic rule in R^D.
template <int D>
struct QuadRule {
  std::vector<Point<D>> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
  double total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
  void append(const QuadRule& o) {
    points.insert(points.end(), o.points.begin(), o.points.end());
    weights.insert(weights.end(), o.weights.begin(), o.weights.end());
  }
};

/// Map the reference rule of `degree` onto the simplex s (affine).
template <int D>
void append_simplex_rule(const Simplex<D>& s, int degree, QuadRule<D>& out) {
  const auto& ref = simplex_rule<D>(degree);
  Matrix<D> jac;
  for (int k = 0; k < D; ++k) jac.col(k) = s[k + 1] - s[0];
  const double det = std::abs(jac.determinant());
  for (std::size_t q = 0; q < ref.points.size(); ++q) {
    out.points.push_back(s[0] + jac * ref.points[q]);
    out.weights.push_back(ref.weights[q] * det);
  }
}

}  // namespace stis
