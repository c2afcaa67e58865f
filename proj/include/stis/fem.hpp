/// \file fem.hpp
/// \brief Space-time finite element spaces on a slab: P2 velocity and P1 pressure
///        in space, P_q in time, with XFEM duplication of pressure dofs.

#pragma once

#include "stis/common.hpp"
#include "stis/levelset.hpp"
#include "stis/mesh.hpp"

#include <json.hpp>

#include <array>
#include <vector>

namespace stis {

/// Lagrange basis of P_q on the reference interval [0,1] with Radau-right nodes
/// (the last node is 1, so the trace at t_n is a nodal value).
class TemporalBasis {
 public:
  explicit TemporalBasis(int q);
  int degree() const { return q_; }
  int size() const { return q_ + 1; }
  const std::vector<double>& nodes() const { return nodes_; }
  double value(int m, double s) const;
  double derivative(int m, double s) const;  // d/ds on [0,1]

 private:
  int q_;
  std::vector<double> nodes_;
};

/// Affine geometry of a simplex: barycentric coordinates and their gradients.
template <int d>
struct SimplexGeometry {
  explicit SimplexGeometry(const Simplex<d>& s);
  Eigen::Matrix<double, d + 1, 1> lambda(const Point<d>& x) const;
  bool contains(const Point<d>& x, double tol = 1e-10) const;

  Simplex<d> points;
  Matrix<d> inverse_jacobian;                  // maps x - x0 to (lambda_1..lambda_d)
  Eigen::Matrix<double, d + 1, d> grad_lambda;  // row i = grad lambda_i
  double volume;
};

/// Number of local P1 / P2 basis functions on a d-simplex.
template <int d>
inline constexpr int kP1Size = d + 1;
template <int d>
inline constexpr int kP2Size = (d + 1) * (d + 2) / 2;

/// P2 values and gradients at barycentric point lambda. Ordering: vertices, then
/// edges in SpatialMesh::local_edge order.
template <int d>
void p2_basis(const Eigen::Matrix<double, d + 1, 1>& lambda,
              const Eigen::Matrix<double, d + 1, d>& grad_lambda,
              std::array<double, kP2Size<d>>& values, std::array<Point<d>, kP2Size<d>>& grads);

/// Velocity space P_q(I_n; P2(T)^d), continuous on the slab. Local dof index:
/// (node * (q+1) + mode) * d + component; global index = offset + local.
template <int d>
class VelocitySpace {
 public:
  VelocitySpace(const SpaceTimeSlab<d>& slab, int r, int q, long offset = 0);

  const SpaceTimeSlab<d>& slab() const { return slab_; }
  const TemporalBasis& temporal() const { return temporal_; }
  int spatial_degree() const { return 2; }
  int num_nodes() const { return num_nodes_; }
  int num_dofs() const { return num_nodes_ * temporal_.size() * d; }
  long offset() const { return offset_; }

  /// Spatial P2 nodes of element e (vertices then edges).
  std::array<int, kP2Size<d>> element_nodes(int e) const;
  Point<d> node_point(int node) const;
  int dof(int node, int mode, int comp) const { return (node * temporal_.size() + mode) * d + comp; }
  bool is_dirichlet_node(int node) const { return boundary_node_[node]; }
  bool is_dirichlet(int dof) const { return boundary_node_[dof / (temporal_.size() * d)]; }
  int num_dirichlet_nodes() const;

 private:
  SpaceTimeSlab<d> slab_;
  TemporalBasis temporal_;
  int num_nodes_;
  long offset_;
  std::vector<bool> boundary_node_;
};

/// Pressure space P_q(I_n; P1(T)) with optional XFEM duplication. Each vertex
/// owns one slot per phase; plain vertices map both phases to the same slot,
/// enriched vertices to two slots whose basis is multiplied by the phase
/// indicator. Local dof index: slot * (q+1) + mode.
template <int d>
class PressureSpace {
 public:
  /// Unenriched space Q_h.
  PressureSpace(const SpaceTimeSlab<d>& slab, int r_minus_1, int q, long offset = 0);

  const SpaceTimeSlab<d>& slab() const { return slab_; }
  const TemporalBasis& temporal() const { return temporal_; }
  int num_vertices() const { return static_cast<int>(slot_.size()); }
  int num_slots() const { return num_slots_; }
  int num_dofs() const { return num_slots_ * temporal_.size(); }
  long offset() const { return offset_; }

  int slot(int vertex, Phase p) const { return slot_[vertex][static_cast<int>(p)]; }
  bool is_enriched(int vertex) const { return slot_[vertex][0] != slot_[vertex][1]; }
  int dof(int slot, int mode) const { return slot * temporal_.size() + mode; }

  int num_enriched() const;
  int num_filtered() const { return num_filtered_; }

  /// Measures of (support of vertex) intersected with each phase, set by
  /// enrichment. Empty for unenriched spaces.
  const std::vector<std::array<double, 2>>& side_measures() const { return side_measures_; }

  nlohmann::json summary() const;

  template <int dd>
  friend PressureSpace<dd> enrich_pressure_xfem(const PressureSpace<dd>&, const DiscreteLevelSet<dd>&);
  template <int dd>
  friend PressureSpace<dd> small_cut_filter(const PressureSpace<dd>&, double);

 private:
  void renumber();

  SpaceTimeSlab<d> slab_;
  TemporalBasis temporal_;
  long offset_;
  std::vector<std::array<int, 2>> slot_;
  int num_slots_ = 0;
  int num_filtered_ = 0;
  std::vector<std::array<double, 2>> side_measures_;
};

template <int d>
VelocitySpace<d> build_velocity_space(const SpaceTimeSlab<d>& slab, int r, int q, long offset = 0);

template <int d>
PressureSpace<d> build_pressure_space(const SpaceTimeSlab<d>& slab, int r_minus_1, int q,
                                      long offset = 0);

/// Duplicate every vertex whose prism patch meets both discrete phases with
/// positive measure.
template <int d>
PressureSpace<d> enrich_pressure_xfem(const PressureSpace<d>& p, const DiscreteLevelSet<d>& dls);

/// Merge an enriched vertex back to a single dof when one side covers less than
/// theta times its support.
template <int d>
PressureSpace<d> small_cut_filter(const PressureSpace<d>& p, double theta);

/// Basis evaluation at one space-time point of prism e.
template <int d>
struct VelocityBasisValues {
  std::array<int, kP2Size<d>> nodes;
  std::array<double, kP2Size<d>> phi;         // spatial values
  std::array<Point<d>, kP2Size<d>> grad;      // spatial gradients
  std::vector<double> time_value;             // per temporal mode
  std::vector<double> time_derivative;        // per temporal mode, d/dt
};

template <int d>
struct PressureBasisValues {
  std::array<int, d + 1> slots;  // slot of each vertex for the queried phase
  std::array<double, d + 1> phi;
  std::vector<double> time_value;
};

/// Tensor-product velocity basis at (x,t) in prism e. Throws if the point is
/// outside the prism.
template <int d>
VelocityBasisValues<d> evaluate_velocity_basis(const VelocitySpace<d>& v, int e, const Point<d>& x,
                                               double t);

/// Pressure basis at (x,t) in prism e for the given phase. The XFEM indicator is
/// realised by selecting the slot of that phase.
template <int d>
PressureBasisValues<d> evaluate_pressure_basis(const PressureSpace<d>& p, int e, const Point<d>& x,
                                               double t, Phase phase);

}  // namespace stis
