/// \file error_analysis.hpp
/// \brief Space-time error norms against exact solutions, convergence orders and
///        error tables.

#pragma once

#include "stis/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stis {

/// Quadrature controls of the error integrals. Simplices of the prism split
/// that may meet the analytic interface are bisected (longest edge) up to
/// `refine_depth` times; the leaves are cut by the linear interpolant of the
/// analytic level set.
struct ErrorOptions {
  int space_order = 0;   // tensor rule on uncut prisms; 0 selects 2r + 2
  int time_order = 0;    // 0 selects 2q + 2
  int cut_degree = 0;    // total degree on unrefined cut-prism simplices; 0: space + time
  int leaf_degree = 4;   // total degree on refined sub-simplices
  int refine_depth = 6;
  /// Measure the pressure error modulo functions that are constant in space
  /// and in P_q in time on each slab (the discrete pressure is normalised by a
  /// mean-value constraint, the exact one need not be).
  bool pressure_modulo_constants = true;
  /// Evaluate the discrete pressure on the side of the discrete interface
  /// instead of the analytic one.
  bool discrete_pressure_side = false;
  ExecutionPolicy policy = ExecutionPolicy::Parallel;
};

struct ErrorNorms {
  double velocity_l2h1 = 0.0;  // ||grad(u - u_h)||_{L2(Q)}
  double velocity_l2l2 = 0.0;
  double pressure_l2l2 = 0.0;
};

/// Both norms in one pass. Exact and discrete pressure sides are taken from the
/// sign of the analytic level set at each quadrature point.
template <int d>
ErrorNorms compute_errors(const SpaceTimeSolution<d>& sol, const ExactSolution<d>& exact,
                          const LevelSetField<d>& phi, const ErrorOptions& opt = {});

template <int d>
double error_L2H1(const SpaceTimeSolution<d>& sol, const ExactSolution<d>& exact,
                  const LevelSetField<d>& phi, const ErrorOptions& opt = {});

template <int d>
double error_L2L2_pressure(const SpaceTimeSolution<d>& sol, const ExactSolution<d>& exact,
                           const LevelSetField<d>& phi, const ErrorOptions& opt = {});

/// Discrete spaces of every slab, as built by march, holding the nodal
/// interpolant of `exact` (velocity at the P2 nodes, pressure at the vertices
/// per slot phase, both at the temporal nodes).
template <int d>
SpaceTimeSolution<d> interpolate_exact(const ProblemCoefficients<d>& coeff,
                                       const ExactSolution<d>& exact,
                                       const DiscretizationParams& params);

/// log2(e_coarse / e_fine); NaN when either error is not positive and finite.
double eoc(double e_coarse, double e_fine);

/// Errors over (N_S, N) with the spatial order column (from the last column)
/// and the temporal order row (from the last row).
class ErrorTable {
 public:
  ErrorTable() = default;
  ErrorTable(std::vector<int> ns, std::vector<int> nt, std::string title = {});

  const std::string& title() const { return title_; }
  const std::vector<int>& ns() const { return ns_; }
  const std::vector<int>& nt() const { return nt_; }

  void set(int ns, int nt, double value);
  std::optional<double> get(int ns, int nt) const;

  /// EOC_S per row; the first entry is NaN.
  std::vector<double> eoc_space() const;
  /// EOC_T per column; the first entry is NaN.
  std::vector<double> eoc_time() const;
  /// Orders along simultaneous refinement (ns[i], nt[i]); needs equal lengths.
  std::vector<double> eoc_diagonal() const;

  /// CSV: header "NS,<N...>,EOC_S", one row per N_S, last row "EOC_T,...".
  std::string to_csv() const;
  std::string to_markdown() const;
  std::string to_text() const;
  static ErrorTable from_csv(const std::string& csv, std::string title = {});

 private:
  int row(int ns) const;
  int col(int nt) const;

  std::string title_;
  std::vector<int> ns_, nt_;
  std::vector<std::optional<double>> values_;
};

/// Value formatting shared by the renderings: 5 decimals, scientific below 1e-3.
std::string format_value(double v);

}  // namespace stis
