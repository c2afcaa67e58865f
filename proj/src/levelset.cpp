/// \file levelset.cpp
/// \brief Discrete level sets on slabs and cut-prism decomposition.

#include "stis/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace stis {

const char* to_string(PrismClass c) {
  switch (c) {
    case PrismClass::Neg: return "neg";
    case PrismClass::Pos: return "pos";
    default: return "cut";
  }
}

template <int d>
Point<d> LevelSetField<d>::gradient(const Point<d>& x, double t) const {
  if (grad) return grad(x, t);
  Point<d> g;
  const double eps = 1e-6;
  for (int k = 0; k < d; ++k) {
    Point<d> xp = x, xm = x;
    xp[k] += eps;
    xm[k] -= eps;
    g[k] = (phi(xp, t) - phi(xm, t)) / (2.0 * eps);
  }
  return g;
}

template <int d>
double LevelSetField<d>::curvature(const Point<d>& x, double t) const {
  if (!grad || !hessian) throw Error("curvature needs the analytic gradient and Hessian of phi");
  const Point<d> g = grad(x, t);
  const Matrix<d> H = hessian(x, t);
  const double n = g.norm();
  if (n <= 0.0) throw Error("curvature undefined where grad phi = 0");
  return H.trace() / n - g.dot(H * g) / (n * n * n);
}

template <int d>
Point<d> LevelSetField<d>::normal(const Point<d>& x, double t) const {
  const Point<d> g = gradient(x, t);
  const double n = g.norm();
  if (n <= 0.0) throw Error("normal undefined where grad phi = 0");
  return g / n;
}

template <int d>
void LevelSetField<d>::check_nondegenerate(const Box<d>& box, double final_time,
                                           int samples_per_axis, double min_grad) const {
  const int n = samples_per_axis;
  const Point<d> ext = box.upper - box.lower;
  const double spacing = ext.maxCoeff() / n;
  std::array<int, d + 1> idx{};
  while (true) {
    Point<d> x;
    for (int k = 0; k < d; ++k) x[k] = box.lower[k] + ext[k] * idx[k] / n;
    const double t = final_time * idx[d] / n;
    const Point<d> g = gradient(x, t);
    if (std::abs(phi(x, t)) <= 2.0 * spacing * std::max(g.norm(), 1.0) && g.norm() < min_grad)
      throw Error("level set gradient vanishes near the interface");
    int k = d;
    while (k >= 0 && ++idx[k] > n) idx[k--] = 0;
    if (k < 0) break;
  }
}

template <int d>
DiscreteLevelSet<d>::DiscreteLevelSet(SpaceTimeSlab<d> slab, std::vector<double> bottom,
                                      std::vector<double> top)
    : slab_(std::move(slab)), bottom_(std::move(bottom)), top_(std::move(top)) {
  const auto nv = static_cast<std::size_t>(slab_.mesh->num_vertices());
  if (bottom_.size() != nv || top_.size() != nv)
    throw Error("discrete level set: nodal vector size does not match the mesh");
}

template <int d>
std::array<double, 2 * (d + 1)> DiscreteLevelSet<d>::prism_values(int e) const {
  std::array<double, 2 * (d + 1)> out;
  const auto& s = slab_.mesh->simplex(e);
  for (int i = 0; i <= d; ++i) {
    out[i] = bottom_[s[i]];
    out[d + 1 + i] = top_[s[i]];
  }
  return out;
}

template <int d>
PrismClass DiscreteLevelSet<d>::classify(int e) const {
  bool all_pos = true, all_neg = true;
  for (double v : prism_values(e)) {
    all_pos = all_pos && v > 0.0;
    all_neg = all_neg && v < 0.0;
  }
  if (all_pos) return PrismClass::Pos;
  if (all_neg) return PrismClass::Neg;
  return PrismClass::Cut;
}

namespace {

template <int d>
std::array<int, d + 1> sorted_local_order(const SpatialMesh<d>& mesh, int e) {
  std::array<int, d + 1> order;
  std::iota(order.begin(), order.end(), 0);
  const auto& s = mesh.simplex(e);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return s[a] < s[b]; });
  return order;
}

}  // namespace

template <int d>
double DiscreteLevelSet<d>::evaluate(int e, const Point<d>& x, double t) const {
  const auto& mesh = *slab_.mesh;
  const auto order = sorted_local_order<d>(mesh, e);
  const auto& s = mesh.simplex(e);
  const auto lambda = barycentric<d>(mesh.simplex_points(e), x);
  const double tau = (t - slab_.t0) / slab_.duration();
  const double target = 1.0 - tau;

  double cum = 0.0;
  int j = d;
  for (int i = 0; i <= d; ++i) {
    if (cum + lambda[order[i]] >= target) {
      j = i;
      break;
    }
    cum += lambda[order[i]];
  }
  double value = 0.0, acc = 0.0;
  for (int i = 0; i <= d; ++i) {
    const int li = order[i];
    const int v = s[li];
    if (i < j) {
      value += lambda[li] * bottom_[v];
    } else if (i == j) {
      value += (target - acc) * bottom_[v] + (acc + lambda[li] - target) * top_[v];
    } else {
      value += lambda[li] * top_[v];
    }
    acc += lambda[li];
  }
  return value;
}

template <int d>
double DiscreteLevelSet<d>::evaluate_bilinear(int e, const Point<d>& x, double t) const {
  const auto& mesh = *slab_.mesh;
  const auto lambda = barycentric<d>(mesh.simplex_points(e), x);
  const double tau = (t - slab_.t0) / slab_.duration();
  double value = 0.0;
  for (int i = 0; i <= d; ++i) {
    const int v = mesh.simplex(e)[i];
    value += lambda[i] * ((1.0 - tau) * bottom_[v] + tau * top_[v]);
  }
  return value;
}

template <int d>
SimplexCut<d> DiscreteLevelSet<d>::bottom_cut(int e) const {
  std::array<double, d + 1> vals;
  for (int i = 0; i <= d; ++i) vals[i] = bottom_[slab_.mesh->simplex(e)[i]];
  return cut_simplex<d>(slab_.mesh->simplex_points(e), vals);
}

template <int d>
DiscreteLevelSet<d> interpolate_levelset(const LevelSetField<d>& phi, const SpaceTimeSlab<d>& slab) {
  const auto& mesh = *slab.mesh;
  std::vector<double> bottom(mesh.num_vertices()), top(mesh.num_vertices());
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    bottom[v] = phi(mesh.vertex(v), slab.t0);
    top[v] = phi(mesh.vertex(v), slab.t1);
  }
  return DiscreteLevelSet<d>(slab, std::move(bottom), std::move(top));
}

template <int d>
std::vector<std::array<ProductVertex, d + 2>> prism_split(const SpatialMesh<d>& mesh, int e) {
  const auto order = sorted_local_order<d>(mesh, e);
  std::vector<std::array<ProductVertex, d + 2>> out;
  for (const auto& path : staircase_triangulation(d, 1)) {
    std::array<ProductVertex, d + 2> simplex;
    for (int r = 0; r < d + 2; ++r) simplex[r] = {order[path[r].first], path[r].second};
    out.push_back(simplex);
  }
  return out;
}

template <int d>
double CutDecomposition<d>::measure(Phase p) const {
  double m = 0.0;
  for (const auto& s : (p == Phase::Neg ? neg : pos)) m += simplex_measure<d + 1>(s);
  return m;
}

template <int d>
double CutDecomposition<d>::interface_measure() const {
  double m = 0.0;
  for (const auto& f : facets) m += f.measure * f.normal.template head<d>().norm();
  return m;
}

template <int d>
nlohmann::json CutDecomposition<d>::to_json() const {
  auto simplices = [](const std::vector<Simplex<d + 1>>& list) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& s : list) {
      nlohmann::json verts = nlohmann::json::array();
      for (const auto& p : s) verts.push_back(std::vector<double>(p.data(), p.data() + d + 1));
      a.push_back(verts);
    }
    return a;
  };
  nlohmann::json j;
  j["prism"] = prism;
  j["class"] = to_string(cls);
  j["neg"] = simplices(neg);
  j["pos"] = simplices(pos);
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& f : facets) {
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& p : f.vertices) verts.push_back(std::vector<double>(p.data(), p.data() + d + 1));
    fs.push_back({{"vertices", verts},
                  {"normal", std::vector<double>(f.normal.data(), f.normal.data() + d + 1)},
                  {"measure", f.measure}});
  }
  j["facets"] = fs;
  return j;
}

template <int d>
CutDecomposition<d> decompose_cut_prism(const DiscreteLevelSet<d>& dls, int e) {
  constexpr int D = d + 1;
  const auto& slab = dls.slab();
  const auto& mesh = *slab.mesh;
  CutDecomposition<d> dec;
  dec.prism = e;
  dec.cls = dls.classify(e);
  const auto vals = dls.prism_values(e);

  for (const auto& st : prism_split<d>(mesh, e)) {
    Simplex<D> s;
    std::array<double, D + 1> phi;
    for (int r = 0; r <= D; ++r) {
      const auto [i, level] = st[r];
      s[r] = slab.prism_vertex(e, i, level);
      phi[r] = vals[level * (d + 1) + i];
    }
    if (dec.cls != PrismClass::Cut) {
      (dec.cls == PrismClass::Neg ? dec.neg : dec.pos).push_back(s);
      continue;
    }
    auto cut = cut_simplex<D>(s, phi);
    dec.neg.insert(dec.neg.end(), cut.neg.begin(), cut.neg.end());
    dec.pos.insert(dec.pos.end(), cut.pos.begin(), cut.pos.end());
    for (const auto& f : cut.facets) dec.facets.push_back({f, cut.normal, facet_measure<D>(f)});
  }

  const double total = slab.prism_measure(e);
  const double sum = dec.measure(Phase::Neg) + dec.measure(Phase::Pos);
  if (std::abs(sum - total) > 1e-10 * total)
    throw Error("cut decomposition of prism " + std::to_string(e) +
                " violates measure conservation (relative defect " +
                std::to_string(std::abs(sum - total) / total) + ")");
  return dec;
}

template <int d>
double SurfaceQuadRule<d>::integrate(const std::function<double(const STPoint<d>&)>& f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) s += weights[i] * nx_factor[i] * f(points[i]);
  return s;
}

template <int d>
STQuadRule<d> prism_tensor_rule(const SpaceTimeSlab<d>& slab, int e, int space_degree,
                                int time_degree) {
  QuadRule<d> space;
  append_simplex_rule<d>(slab.mesh->simplex_points(e), space_degree, space);
  const Rule1D& time = gauss_rule_for_degree(time_degree);
  STQuadRule<d> out;
  out.points.reserve(space.size() * time.points.size());
  out.weights.reserve(space.size() * time.points.size());
  const double k = slab.duration();
  for (std::size_t it = 0; it < time.points.size(); ++it) {
    const double t = slab.t0 + k * time.points[it];
    for (std::size_t i = 0; i < space.size(); ++i) {
      out.points.push_back(make_st<d>(space.points[i], t));
      out.weights.push_back(space.weights[i] * time.weights[it] * k);
    }
  }
  return out;
}

template <int d>
STQuadRule<d> quadrature_subdomain(const SpaceTimeSlab<d>& slab, const CutDecomposition<d>& dec,
                                   Phase phase, int space_degree, int time_degree) {
  if (space_degree < 1 || time_degree < 1)
    throw Error("quadrature order must be >= 1 (supported range 1.." +
                std::to_string(kMaxQuadratureDegree) + ")");
  if (dec.cls != PrismClass::Cut) {
    const Phase own = dec.cls == PrismClass::Neg ? Phase::Neg : Phase::Pos;
    if (own != phase) return {};
    return prism_tensor_rule<d>(slab, dec.prism, space_degree, time_degree);
  }
  STQuadRule<d> out;
  for (const auto& s : (phase == Phase::Neg ? dec.neg : dec.pos))
    append_simplex_rule<d + 1>(s, space_degree + time_degree, out);
  return out;
}

template <int d>
SurfaceQuadRule<d> quadrature_interface(const CutDecomposition<d>& dec, int degree) {
  constexpr int D = d + 1;
  const auto& ref = simplex_rule<d>(degree);
  double fact = 1.0;
  for (int k = 2; k <= d; ++k) fact *= k;
  SurfaceQuadRule<d> out;
  for (const auto& f : dec.facets) {
    const Point<d> nx = f.normal.template head<d>();
    const double nxn = nx.norm();
    const Point<d> unit = nxn > 0.0 ? Point<d>(nx / nxn) : Point<d>::Zero();
    for (std::size_t q = 0; q < ref.points.size(); ++q) {
      Point<D> p = f.vertices[0];
      for (int k = 0; k < d; ++k) p += ref.points[q][k] * (f.vertices[k + 1] - f.vertices[0]);
      out.points.push_back(p);
      out.weights.push_back(ref.weights[q] * fact * f.measure);
      out.nx_factor.push_back(nxn);
      out.normal_x.push_back(unit);
    }
  }
  return out;
}

#define STIS_INSTANTIATE(d)                                                                    \
  template struct LevelSetField<d>;                                                            \
  template class DiscreteLevelSet<d>;                                                          \
  template struct CutDecomposition<d>;                                                         \
  template struct SurfaceQuadRule<d>;                                                          \
  template DiscreteLevelSet<d> interpolate_levelset<d>(const LevelSetField<d>&,                \
                                                       const SpaceTimeSlab<d>&);               \
  template std::vector<std::array<ProductVertex, d + 2>> prism_split<d>(const SpatialMesh<d>&, \
                                                                        int);                  \
  template CutDecomposition<d> decompose_cut_prism<d>(const DiscreteLevelSet<d>&, int);        \
  template STQuadRule<d> prism_tensor_rule<d>(const SpaceTimeSlab<d>&, int, int, int);         \
  template STQuadRule<d> quadrature_subdomain<d>(const SpaceTimeSlab<d>&,                      \
                                                 const CutDecomposition<d>&, Phase, int, int); \
  template SurfaceQuadRule<d> quadrature_interface<d>(const CutDecomposition<d>&, int);

STIS_INSTANTIATE(2)
STIS_INSTANTIATE(3)

#undef STIS_INSTANTIATE

}  // namespace stis
