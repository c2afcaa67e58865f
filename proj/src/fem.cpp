/// \file fem.cpp
/// \brief Temporal and spatial Lagrange bases and slab dof maps.

#include "stis/fem.hpp"

#include "stis/quadrature.hpp"

#include <cmath>

namespace stis {

TemporalBasis::TemporalBasis(int q) : q_(q) {
  if (q < 0) throw Error("temporal degree must be >= 0");
  if (q > 0) nodes_ = gauss_jacobi(q, 1).points;
  nodes_.push_back(1.0);
}

double TemporalBasis::value(int m, double s) const {
  double v = 1.0;
  for (int j = 0; j <= q_; ++j)
    if (j != m) v *= (s - nodes_[j]) / (nodes_[m] - nodes_[j]);
  return v;
}

double TemporalBasis::derivative(int m, double s) const {
  double sum = 0.0;
  for (int k = 0; k <= q_; ++k) {
    if (k == m) continue;
    double prod = 1.0 / (nodes_[m] - nodes_[k]);
    for (int j = 0; j <= q_; ++j)
      if (j != m && j != k) prod *= (s - nodes_[j]) / (nodes_[m] - nodes_[j]);
    sum += prod;
  }
  return sum;
}

template <int d>
SimplexGeometry<d>::SimplexGeometry(const Simplex<d>& s) : points(s) {
  Matrix<d> jac;
  for (int k = 0; k < d; ++k) jac.col(k) = s[k + 1] - s[0];
  const double det = jac.determinant();
  if (std::abs(det) <= 0.0) throw Error("degenerate simplex");
  inverse_jacobian = jac.inverse();
  grad_lambda.template bottomRows<d>() = inverse_jacobian;
  grad_lambda.row(0) = -inverse_jacobian.colwise().sum();
  double fact = 1.0;
  for (int k = 2; k <= d; ++k) fact *= k;
  volume = std::abs(det) / fact;
}

template <int d>
Eigen::Matrix<double, d + 1, 1> SimplexGeometry<d>::lambda(const Point<d>& x) const {
  Eigen::Matrix<double, d + 1, 1> l;
  l.template tail<d>() = inverse_jacobian * (x - points[0]);
  l[0] = 1.0 - l.template tail<d>().sum();
  return l;
}

template <int d>
bool SimplexGeometry<d>::contains(const Point<d>& x, double tol) const {
  return lambda(x).minCoeff() >= -tol;
}

template <int d>
void p2_basis(const Eigen::Matrix<double, d + 1, 1>& l, const Eigen::Matrix<double, d + 1, d>& gl,
              std::array<double, kP2Size<d>>& values, std::array<Point<d>, kP2Size<d>>& grads) {
  for (int i = 0; i <= d; ++i) {
    values[i] = l[i] * (2.0 * l[i] - 1.0);
    grads[i] = (4.0 * l[i] - 1.0) * gl.row(i).transpose();
  }
  int k = d + 1;
  for (int i = 0; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j, ++k) {
      values[k] = 4.0 * l[i] * l[j];
      grads[k] = 4.0 * (l[i] * gl.row(j).transpose() + l[j] * gl.row(i).transpose());
    }
}

template <int d>
VelocitySpace<d>::VelocitySpace(const SpaceTimeSlab<d>& slab, int r, int q, long offset)
    : slab_(slab), temporal_(q), offset_(offset) {
  if (r < 2) throw Error("velocity degree r must be >= 2 for the Hood-Taylor pair");
  if (r != 2) throw Error("only r = 2 (P2-P1) is implemented");
  const auto& mesh = *slab_.mesh;
  num_nodes_ = mesh.num_vertices() + mesh.num_edges();
  boundary_node_.assign(num_nodes_, false);
  for (int v = 0; v < mesh.num_vertices(); ++v) boundary_node_[v] = mesh.is_boundary_vertex(v);
  for (int i = 0; i < mesh.num_edges(); ++i)
    boundary_node_[mesh.num_vertices() + i] = mesh.is_boundary_edge(i);
}

template <int d>
std::array<int, kP2Size<d>> VelocitySpace<d>::element_nodes(int e) const {
  const auto& mesh = *slab_.mesh;
  std::array<int, kP2Size<d>> n;
  for (int i = 0; i <= d; ++i) n[i] = mesh.simplex(e)[i];
  for (int k = 0; k < SpatialMesh<d>::num_local_edges(); ++k)
    n[d + 1 + k] = mesh.num_vertices() + mesh.simplex_edge(e, k);
  return n;
}

template <int d>
Point<d> VelocitySpace<d>::node_point(int node) const {
  const auto& mesh = *slab_.mesh;
  if (node < mesh.num_vertices()) return mesh.vertex(node);
  const auto& ed = mesh.edge(node - mesh.num_vertices());
  return 0.5 * (mesh.vertex(ed[0]) + mesh.vertex(ed[1]));
}

template <int d>
int VelocitySpace<d>::num_dirichlet_nodes() const {
  int c = 0;
  for (bool b : boundary_node_) c += b;
  return c;
}

template <int d>
PressureSpace<d>::PressureSpace(const SpaceTimeSlab<d>& slab, int r_minus_1, int q, long offset)
    : slab_(slab), temporal_(q), offset_(offset) {
  if (r_minus_1 != 1) throw Error("only P1 pressure (r-1 = 1) is implemented");
  slot_.assign(slab_.mesh->num_vertices(), {0, 0});
  renumber();
}

template <int d>
void PressureSpace<d>::renumber() {
  int next = 0;
  for (auto& s : slot_) {
    const bool enriched = s[0] != s[1];
    s[0] = next++;
    s[1] = enriched ? next++ : s[0];
  }
  num_slots_ = next;
}

template <int d>
int PressureSpace<d>::num_enriched() const {
  int c = 0;
  for (int v = 0; v < num_vertices(); ++v) c += is_enriched(v);
  return c;
}

template <int d>
nlohmann::json PressureSpace<d>::summary() const {
  return {{"base_dofs", num_vertices() * temporal_.size()},
          {"enriched_vertices", num_enriched()},
          {"filtered_vertices", num_filtered_},
          {"dofs", num_dofs()}};
}

template <int d>
VelocitySpace<d> build_velocity_space(const SpaceTimeSlab<d>& slab, int r, int q, long offset) {
  return VelocitySpace<d>(slab, r, q, offset);
}

template <int d>
PressureSpace<d> build_pressure_space(const SpaceTimeSlab<d>& slab, int r_minus_1, int q, long offset) {
  return PressureSpace<d>(slab, r_minus_1, q, offset);
}

template <int d>
PressureSpace<d> enrich_pressure_xfem(const PressureSpace<d>& p, const DiscreteLevelSet<d>& dls) {
  PressureSpace<d> out = p;
  const auto& slab = p.slab();
  const auto& mesh = *slab.mesh;
  out.side_measures_.assign(mesh.num_vertices(), {0.0, 0.0});
  for (int e = 0; e < mesh.num_simplices(); ++e) {
    const PrismClass cls = dls.classify(e);
    std::array<double, 2> m{0.0, 0.0};
    if (cls == PrismClass::Cut) {
      const auto dec = decompose_cut_prism<d>(dls, e);
      m = {dec.measure(Phase::Neg), dec.measure(Phase::Pos)};
    } else {
      m[cls == PrismClass::Neg ? 0 : 1] = slab.prism_measure(e);
    }
    for (int v : mesh.simplex(e)) {
      out.side_measures_[v][0] += m[0];
      out.side_measures_[v][1] += m[1];
    }
  }
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    const auto& m = out.side_measures_[v];
    // Mark for duplication; renumber() assigns the slots.
    out.slot_[v] = (m[0] > 0.0 && m[1] > 0.0) ? std::array<int, 2>{0, 1} : std::array<int, 2>{0, 0};
  }
  out.num_filtered_ = 0;
  out.renumber();
  return out;
}

template <int d>
PressureSpace<d> small_cut_filter(const PressureSpace<d>& p, double theta) {
  if (theta < 0.0 || theta >= 1.0) throw Error("small-cut threshold must lie in [0, 1)");
  PressureSpace<d> out = p;
  if (theta == 0.0 || p.side_measures_.empty()) return out;
  int filtered = 0;
  for (int v = 0; v < out.num_vertices(); ++v) {
    if (!out.is_enriched(v)) {
      out.slot_[v] = {0, 0};
      continue;
    }
    const auto& m = out.side_measures_[v];
    const double total = m[0] + m[1];
    if (std::min(m[0], m[1]) < theta * total) {
      out.slot_[v] = {0, 0};
      ++filtered;
    } else {
      out.slot_[v] = {0, 1};
    }
  }
  out.num_filtered_ = p.num_filtered_ + filtered;
  out.renumber();
  return out;
}

namespace {

template <int d>
void check_time(const SpaceTimeSlab<d>& slab, double t) {
  const double tol = 1e-12 * std::max(1.0, std::abs(slab.t1));
  if (t < slab.t0 - tol || t > slab.t1 + tol) throw Error("evaluation time outside the slab");
}

}  // namespace

template <int d>
VelocityBasisValues<d> evaluate_velocity_basis(const VelocitySpace<d>& v, int e, const Point<d>& x,
                                               double t) {
  const auto& slab = v.slab();
  check_time(slab, t);
  SimplexGeometry<d> geo(slab.mesh->simplex_points(e));
  if (!geo.contains(x)) throw Error("evaluation point outside the prism");
  VelocityBasisValues<d> out;
  out.nodes = v.element_nodes(e);
  p2_basis<d>(geo.lambda(x), geo.grad_lambda, out.phi, out.grad);
  const auto& tb = v.temporal();
  const double s = (t - slab.t0) / slab.duration();
  for (int m = 0; m < tb.size(); ++m) {
    out.time_value.push_back(tb.value(m, s));
    out.time_derivative.push_back(tb.derivative(m, s) / slab.duration());
  }
  return out;
}

template <int d>
PressureBasisValues<d> evaluate_pressure_basis(const PressureSpace<d>& p, int e, const Point<d>& x,
                                               double t, Phase phase) {
  const auto& slab = p.slab();
  check_time(slab, t);
  SimplexGeometry<d> geo(slab.mesh->simplex_points(e));
  if (!geo.contains(x)) throw Error("evaluation point outside the prism");
  PressureBasisValues<d> out;
  const auto l = geo.lambda(x);
  for (int i = 0; i <= d; ++i) {
    out.slots[i] = p.slot(slab.mesh->simplex(e)[i], phase);
    out.phi[i] = l[i];
  }
  const auto& tb = p.temporal();
  const double s = (t - slab.t0) / slab.duration();
  for (int m = 0; m < tb.size(); ++m) out.time_value.push_back(tb.value(m, s));
  return out;
}

#define STIS_INSTANTIATE(d)                                                                       \
  template struct SimplexGeometry<d>;                                                             \
  template void p2_basis<d>(const Eigen::Matrix<double, d + 1, 1>&,                               \
                            const Eigen::Matrix<double, d + 1, d>&,                               \
                            std::array<double, kP2Size<d>>&, std::array<Point<d>, kP2Size<d>>&);  \
  template class VelocitySpace<d>;                                                                \
  template class PressureSpace<d>;                                                                \
  template VelocitySpace<d> build_velocity_space<d>(const SpaceTimeSlab<d>&, int, int, long);     \
  template PressureSpace<d> build_pressure_space<d>(const SpaceTimeSlab<d>&, int, int, long);     \
  template PressureSpace<d> enrich_pressure_xfem<d>(const PressureSpace<d>&,                      \
                                                    const DiscreteLevelSet<d>&);                  \
  template PressureSpace<d> small_cut_filter<d>(const PressureSpace<d>&, double);                 \
  template VelocityBasisValues<d> evaluate_velocity_basis<d>(const VelocitySpace<d>&, int,        \
                                                             const Point<d>&, double);            \
  template PressureBasisValues<d> evaluate_pressure_basis<d>(const PressureSpace<d>&, int,        \
                                                             const Point<d>&, double, Phase);

STIS_INSTANTIATE(2)
STIS_INSTANTIATE(3)

#undef STIS_INSTANTIATE

}  // namespace stis
