/// \file solver.hpp
/// \brief Direct slab solves and the DG time march.

#pragma once

#include "stis/assembly.hpp"

#include <json.hpp>

#include <functional>
#include <memory>
#include <vector>

namespace stis {

struct SolveReport {
  double relative_residual = 0.0;  // ||Ax-b||_inf / ||b||_inf
  double seconds = 0.0;
  std::string backend;
};

/// Sparse LU solve; throws stis::Error with a pivot diagnostic when the
/// factorization fails or the residual exceeds `tolerance`.
Eigen::VectorXd solve_slab(const SparseMatrix& matrix, const Eigen::VectorXd& rhs,
                           SolveReport* report = nullptr, double tolerance = 1e-9);

inline Eigen::VectorXd solve_slab(const SlabSystem& sys, SolveReport* report = nullptr,
                                  double tolerance = 1e-9) {
  return solve_slab(sys.matrix, sys.rhs, report, tolerance);
}

enum class PressureSpaceKind { Standard, Xfem };

const char* to_string(PressureSpaceKind k);
PressureSpaceKind pressure_space_from_string(const std::string& s);

struct DiscretizationParams {
  int ns = 8;          // cells per unit length
  int n_slabs = 8;     // N
  int r = 2;
  int q = 1;
  PressureSpaceKind pressure = PressureSpaceKind::Xfem;
  double theta = 0.0;  // small-cut threshold
  QuadratureOrders orders;
  double solver_tolerance = 1e-9;
  ExecutionPolicy policy = ExecutionPolicy::Parallel;
};

template <int d>
struct SlabSolution {
  SpaceTimeSlab<d> slab;
  std::shared_ptr<const VelocitySpace<d>> vspace;
  std::shared_ptr<const PressureSpace<d>> pspace;
  std::shared_ptr<const SlabGeometry<d>> geometry;
  Eigen::VectorXd u;
  Eigen::VectorXd p;
  Eigen::VectorXd multipliers;

  // Diagnostics.
  double residual = 0.0;
  double divergence_residual = 0.0;  // ||B u||_inf
  double velocity_norm = 0.0;        // ||u||_inf
  double assemble_seconds = 0.0;
  double solve_seconds = 0.0;
  int cut_prisms = 0;

  /// u_h(t_n-) at the P2 nodes (node * d + comp).
  Eigen::VectorXd trace() const;
  nlohmann::json stats() const;
};

/// Discrete solution over all slabs.
template <int d>
class SpaceTimeSolution {
 public:
  std::shared_ptr<const SpatialMesh<d>> mesh;
  TimePartition time;
  std::vector<SlabSolution<d>> slabs;

  int num_slabs() const { return static_cast<int>(slabs.size()); }

  /// Velocity value and spatial gradient at (x,t) in prism e of slab n (1-based).
  void velocity(int n, int e, const Point<d>& x, double t, Point<d>& value, Matrix<d>& grad) const;
  /// Pressure in prism e of slab n for the given side.
  double pressure(int n, int e, const Point<d>& x, double t, Phase side) const;
  /// Pressure with the side taken from the discrete level set.
  double pressure(int n, int e, const Point<d>& x, double t) const;

  /// max over slabs of ||B u||_inf / ||u||_inf (0 for zero velocity).
  double max_divergence_ratio() const;
  double max_residual() const;
};

/// Level set geometry and discrete spaces of slab n as built by march, without
/// assembly or solve. Coefficient vectors are zero.
template <int d>
SlabSolution<d> setup_slab(const ProblemCoefficients<d>& coeff, const DiscretizationParams& params,
                           const std::shared_ptr<const SpatialMesh<d>>& mesh, const TimePartition& time,
                           int n, long velocity_offset = 0, long pressure_offset = 0);

using SlabCallback = std::function<void(int n, const nlohmann::json& stats)>;

/// Solve slab after slab with u_{h,0} = 0.
template <int d>
SpaceTimeSolution<d> march(const ProblemCoefficients<d>& coeff, const DiscretizationParams& params,
                           const SlabCallback& on_slab = {});

/// Unknown count of one slab for the given parameters (before enrichment).
template <int d>
long estimate_slab_unknowns(const Box<d>& domain, const DiscretizationParams& params);

}  // namespace stis
