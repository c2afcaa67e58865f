/// \file problem.hpp
/// \brief Two-phase coefficients, data and exact solutions of the built-in cases.

#pragma once

#include "stis/common.hpp"
#include "stis/field_values.hpp"
#include "stis/levelset.hpp"
#include "stis/mesh.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace stis {

/// Exact velocity/pressure pair given per phase.
template <int d>
struct ExactSolution {
  std::string name;
  std::function<void(const Point<d>&, double, Phase, FieldValues<d>&)> eval;
  /// True when the velocity has a kink across the interface.
  bool phasewise_velocity = false;

  FieldValues<d> operator()(const Point<d>& x, double t, Phase p) const {
    FieldValues<d> f;
    eval(x, t, p, f);
    return f;
  }
};

/// Coefficients and data of the two-phase problem. Arrays indexed by Phase
/// (Neg = {phi < 0}, Pos = {phi > 0}).
template <int d>
struct ProblemCoefficients {
  Box<d> domain;
  double final_time = 1.0;
  std::array<double, 2> rho{1.0, 1.0};
  std::array<double, 2> mu{1.0, 1.0};
  double tau = 0.0;
  LevelSetField<d> phi;
  /// Body force g per phase; null means g = 0.
  std::function<Point<d>(const Point<d>&, double, Phase)> body_force;
  /// Additional interface force density (per unit ds dt); null means none.
  std::function<Point<d>(const Point<d>&, double)> interface_force;
  /// Transport field w for the rho w.grad u term; null means the term is dropped.
  std::function<Point<d>(const Point<d>&, double)> convection;
  /// Velocity on the boundary; null means homogeneous Dirichlet.
  std::function<Point<d>(const Point<d>&, double)> dirichlet;

  double rho_of(Phase p) const { return rho[static_cast<int>(p)]; }
  double mu_of(Phase p) const { return mu[static_cast<int>(p)]; }

  /// Throws on nonpositive rho/mu or negative tau.
  void validate() const;
};

template <int d>
struct ProblemCase {
  std::string id;
  ProblemCoefficients<d> coeff;
  std::optional<ExactSolution<d>> exact;
};

/// Body force rho dt u - 2 mu lap u + grad p of a divergence-free exact pair
/// (strong form of the viscous term mu D(u):D(v) with D(u) = grad u + grad u^T).
template <int d>
Point<d> manufactured_body_force(const FieldValues<d>& f, double rho, double mu);

/// Interface force so that the exact pair satisfies the jump condition:
/// -[sigma n] + tau kappa n, [x] = x_pos - x_neg, n the unit normal from Neg to
/// Pos. sigma = -p I + 2 mu D(u) is the stress whose weak form is the assembled
/// viscous term mu D(u):D(v).
template <int d>
Point<d> manufactured_interface_force(const FieldValues<d>& neg, const FieldValues<d>& pos,
                                      const std::array<double, 2>& mu, double tau, double kappa,
                                      const Point<d>& n);

/// Attach body force, interface force and boundary data derived from the exact
/// solution to the coefficients.
template <int d>
void attach_manufactured_data(ProblemCase<d>& c);

/// Built-in 2D cases: disk2d_smooth, disk2d_kink, poly2d (single phase, exact
/// solution inside the discrete space), zero (no data).
ProblemCase<2> make_case_2d(const std::string& id);

/// Built-in 3D cases: paper3d_case1, paper3d_case2.
ProblemCase<3> make_case_3d(const std::string& id);

/// All case identifiers with their dimension.
std::vector<std::pair<std::string, int>> builtin_cases();

}  // namespace stis
