/// \file assembly.hpp
/// \brief Per-slab saddle-point system of the DG-in-time unfitted Stokes scheme.

#pragma once

#include "stis/fem.hpp"
#include "stis/levelset.hpp"
#include "stis/problem.hpp"

#include <Eigen/Sparse>

#include <iosfwd>
#include <optional>
#include <vector>

namespace stis {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
using Triplet = Eigen::Triplet<double, int>;

/// Quadrature exactness used by the assembly. Zero entries select the defaults
/// 2r (space) and 2q+1 (time); cut sub-simplices use their sum as total degree.
struct QuadratureOrders {
  int space = 0;
  int time = 0;
  int interface = 0;  // facet rule degree; default space + time
};

/// Slab-local unknown layout: velocity, pressure, one multiplier per temporal
/// pressure mode.
struct SlabLayout {
  int num_velocity = 0;
  int num_pressure = 0;
  int num_multipliers = 0;
  int size() const { return num_velocity + num_pressure + num_multipliers; }
  int pressure_begin() const { return num_velocity; }
  int multiplier_begin() const { return num_velocity + num_pressure; }
};

/// Assembled blocks and the constrained saddle-point system
///   [ A   -B^T  0  ] [u]   [f]
///   [ -B   0    C^T] [p] = [0]
///   [ 0    C    0  ] [l]   [0]
/// with A = time derivative + viscous + convection + upwind mass. Dirichlet
/// velocity dofs are eliminated (identity rows, RHS shifted).
struct SlabSystem {
  SlabLayout layout;
  SparseMatrix time_derivative;  // (rho dt u, v)
  SparseMatrix viscous;          // (mu D(u), D(v))
  SparseMatrix convection;       // (rho w.grad u, v); empty when w is absent
  SparseMatrix upwind;           // (rho(t_{n-1}) u(t_{n-1}+), v(t_{n-1}+))
  SparseMatrix divergence;       // B: (q, div v), pressure x velocity
  SparseMatrix mean;             // C: temporal modes x pressure
  Eigen::VectorXd rhs_body;
  Eigen::VectorXd rhs_surface;   // surface tension and interface force
  Eigen::VectorXd rhs_upwind;    // (rho(t_{n-1}) u_{n-1}(t_{n-1}-), v(t_{n-1}+))
  Eigen::VectorXd dirichlet_values;  // velocity-sized; meaningful on Dirichlet dofs
  std::vector<bool> dirichlet;       // velocity-sized mask

  SparseMatrix matrix;
  Eigen::VectorXd rhs;

  /// A block without constraints.
  SparseMatrix velocity_block() const;
  /// Write `matrix` in coordinate text form: header "rows cols nnz", then
  /// one "row col value" line per entry (0-based).
  void export_coo(std::ostream& os) const;
};

/// Geometry of a slab: discrete level set and the decompositions of cut prisms.
template <int d>
struct SlabGeometry {
  DiscreteLevelSet<d> dls;
  std::vector<PrismClass> classes;
  std::vector<std::optional<CutDecomposition<d>>> cuts;  // set for Cut prisms

  int num_cut() const;
};

template <int d>
SlabGeometry<d> build_slab_geometry(const LevelSetField<d>& phi, const SpaceTimeSlab<d>& slab);

enum class ExecutionPolicy { Serial, Parallel };

/// Assemble the slab system. prev_trace holds u_{h,n-1}(t_{n-1}-) at the P2
/// nodes as node * d + comp (empty for the first slab, meaning zero).
template <int d>
SlabSystem assemble_slab_system(const VelocitySpace<d>& vspace, const PressureSpace<d>& pspace,
                                const SlabGeometry<d>& geo, const ProblemCoefficients<d>& coeff,
                                const Eigen::VectorXd& prev_trace, QuadratureOrders orders = {},
                                ExecutionPolicy policy = ExecutionPolicy::Parallel);

/// Surface tension and interface force load of a single cut prism, as a
/// velocity-sized vector; exposed for testing.
template <int d>
Eigen::VectorXd surface_tension_rhs(const VelocitySpace<d>& vspace, const SlabGeometry<d>& geo,
                                    const ProblemCoefficients<d>& coeff, QuadratureOrders orders = {});

/// Body force load g.v; exposed for testing.
template <int d>
Eigen::VectorXd body_force_rhs(const VelocitySpace<d>& vspace, const SlabGeometry<d>& geo,
                               const ProblemCoefficients<d>& coeff, QuadratureOrders orders = {});

/// Mean-value constraint rows C (temporal modes x pressure dofs).
template <int d>
SparseMatrix mean_constraint(const PressureSpace<d>& pspace, const SlabGeometry<d>& geo,
                             QuadratureOrders orders = {});

/// Nodal interpolation of the Dirichlet data at the temporal nodes.
template <int d>
Eigen::VectorXd interpolate_velocity(const VelocitySpace<d>& vspace,
                                     const std::function<Point<d>(const Point<d>&, double)>& u);

}  // namespace stis
