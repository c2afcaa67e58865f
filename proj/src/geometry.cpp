/// \file geometry.cpp
/// \brief Staircase triangulations and simplex cutting.

#include "stis/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace stis {

std::vector<std::vector<ProductVertex>> staircase_triangulation(int p, int q) {
  std::vector<std::vector<ProductVertex>> out;
  std::vector<ProductVertex> path;
  path.reserve(p + q + 1);
  path.emplace_back(0, 0);
  // Depth-first enumeration of monotone lattice paths.
  auto rec = [&](auto&& self, int i, int j) -> void {
    if (i == p && j == q) {
      out.push_back(path);
      return;
    }
    if (i < p) {
      path.emplace_back(i + 1, j);
      self(self, i + 1, j);
      path.pop_back();
    }
    if (j < q) {
      path.emplace_back(i, j + 1);
      self(self, i, j + 1);
      path.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

template <int D>
SimplexCut<D> cut_simplex(const Simplex<D>& s, std::array<double, D + 1> phi) {
  SimplexCut<D> cut;
  double scale = 0.0;
  for (double v : phi) scale = std::max(scale, std::abs(v));
  for (double& v : phi)
    if (std::abs(v) <= kSnapTolerance * scale) v = 0.0;

  std::vector<int> neg, pos;
  for (int k = 0; k <= D; ++k) (phi[k] < 0.0 ? neg : pos).push_back(k);

  const double vol = simplex_measure<D>(s);
  if (neg.empty()) {
    cut.pos.push_back(s);
    return cut;
  }
  if (pos.empty()) {
    cut.neg.push_back(s);
    return cut;
  }

  const int k = static_cast<int>(neg.size());
  const int m = static_cast<int>(pos.size());
  auto cut_point = [&](int i, int j) -> Point<D> {
    const int a = neg[i], b = pos[j];
    const double lambda = phi[a] / (phi[a] - phi[b]);
    return s[a] + lambda * (s[b] - s[a]);
  };

  const double vol_tol = 1e-14 * vol;
  for (const auto& path : staircase_triangulation(k - 1, m)) {
    Simplex<D> sub;
    for (int r = 0; r <= D; ++r) {
      const auto [i, j] = path[r];
      sub[r] = (j == 0) ? s[neg[i]] : cut_point(i, j - 1);
    }
    if (simplex_measure<D>(sub) > vol_tol) cut.neg.push_back(sub);
  }
  for (const auto& path : staircase_triangulation(m - 1, k)) {
    Simplex<D> sub;
    for (int r = 0; r <= D; ++r) {
      const auto [j, i] = path[r];
      sub[r] = (i == 0) ? s[pos[j]] : cut_point(i - 1, j);
    }
    if (simplex_measure<D>(sub) > vol_tol) cut.pos.push_back(sub);
  }

  const double facet_tol = 1e-14 * std::pow(vol, double(D - 1) / D);
  for (const auto& path : staircase_triangulation(k - 1, m - 1)) {
    std::array<Point<D>, D> f;
    for (int r = 0; r < D; ++r) f[r] = cut_point(path[r].first, path[r].second);
    if (facet_measure<D>(f) > facet_tol) cut.facets.push_back(f);
  }

  const Point<D> g = linear_gradient<D>(s, phi);
  const double gn = g.norm();
  if (gn > 0.0) cut.normal = g / gn;
  return cut;
}

template SimplexCut<2> cut_simplex<2>(const Simplex<2>&, std::array<double, 3>);
template SimplexCut<3> cut_simplex<3>(const Simplex<3>&, std::array<double, 4>);
template SimplexCut<4> cut_simplex<4>(const Simplex<4>&, std::array<double, 5>);

}  // namespace stis
