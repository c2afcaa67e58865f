/// \file analysis_lab.hpp
/// \brief Small dense checks of the well-posedness machinery: the Galerkin ODE,
///        the slab inf-sup bound, the partial integration identity, Piola maps,
///        trace ratios and a Garding-type bound.

#pragma once

#include "stis/common.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace stis {

// ---------------------------------------------------------------------------
// Galerkin ODE  M(t) g' + B(t) g = F(t),  g(0) = 0

struct GalerkinSystem {
  int m = 0;
  std::function<Eigen::MatrixXd(double)> M;  // SPD
  std::function<Eigen::MatrixXd(double)> B;
  std::function<Eigen::VectorXd(double)> F;
};

struct GalerkinTrajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> values;
  /// Sum of the accepted local step-doubling error estimates.
  double error_estimate = 0.0;
};

/// Classical RK4 reporting at `steps` uniform output times on [0, T]; each
/// output interval is covered by step-doubling substeps (local tolerance 1e-12
/// relative to 1 + |g|). Throws stis::Error when M(t) fails a Cholesky
/// factorisation at a stage time.
GalerkinTrajectory galerkin_ode_solve(const GalerkinSystem& sys, double T, int steps);

/// 1D model used by the energy check: P1 elements on (0,1) with `cells` cells,
/// M = rho-weighted mass, B = mu-scaled stiffness, F(t) = load of f(x,t).
struct HeatModel1D {
  int cells = 16;
  double rho = 1.0;
  double mu = 1.0;
  std::function<double(double, double)> f;  // f(x, t)

  GalerkinSystem system() const;
  Eigen::MatrixXd stiffness() const;  // |.|_1 Gram on interior nodes
  Eigen::VectorXd load(double t) const;
};

struct EnergyCheck {
  double solution_norm = 0.0;  // ||u_m||_X
  double bound = 0.0;          // gamma^{-1} ||f||_{X'}
  bool holds() const { return solution_norm <= bound * (1.0 + 1e-10); }
};

/// ||u_m||_X <= gamma^{-1} ||f||_{X'} along the RK4 trajectory (trapezoidal in time).
EnergyCheck galerkin_energy_check(const HeatModel1D& model, double T, int steps);

// ---------------------------------------------------------------------------
// Inf-sup bound of the slab form  b(u, v) = int (rho u', v) + a(u, v) dt

/// Lower inf-sup bound for ellipticity gamma and continuity Gamma.
double infsup_bound(double gamma, double Gamma);

/// Tensor spaces on (0,1) x (0,T): P1 in space with `cells` cells, polynomials
/// of degree 1..nt vanishing at t = 0 for the trial space and degree 0..nt for
/// the test space (which then holds the discrete Riesz representer of rho u').
/// a(u, v) = mu (u_x, v_x) + w (u_x, v); rho is rho_left on x < 1/2 and
/// rho_right on x > 1/2.
struct InfSupConfig {
  int cells = 8;
  int nt = 3;
  double T = 1.0;
  double mu = 1.0;
  double w = 0.0;
  double rho_left = 1.0, rho_right = 1.0;
  /// Constants of a with respect to |.|_1. Negative values select the
  /// analytic ones: gamma = mu, Gamma = mu + |w| / pi.
  double gamma = -1.0, Gamma = -1.0;

  std::string label() const;
};

struct InfSupReport {
  double gamma = 0.0, Gamma = 0.0;
  double bound = 0.0;      // c_s
  double computed = 0.0;   // smallest generalised singular value
  int trial_dim = 0, test_dim = 0;
  bool satisfied() const { return computed >= bound - 1e-10; }
};

/// Dense generalised eigen-decomposition. Throws stis::Error for a space above
/// 2000 unknowns or gamma > Gamma.
InfSupReport infsup_estimate(const InfSupConfig& cfg);

// ---------------------------------------------------------------------------
// Partial integration  ||rho^{1/2} u(T)||^2 - ||rho^{1/2} u(0)||^2 = 2 int (rho u_dot, u)
// with the material derivative u_dot = u_t + (w . grad) u, on (-1,1)^2.

struct VectorField2 {
  Point<2> value;
  Matrix<2> grad;  // grad(i, j) = d u_i / d x_j
  Point<2> dt;
};

struct PartialIntegrationSetup {
  std::function<VectorField2(const Point<2>&, double)> u;  // vanishing on the boundary
  std::function<double(const Point<2>&, double)> rho;
  std::function<Point<2>(const Point<2>&, double)> w;
  double T = 1.0;
};

/// |lhs - rhs| / max(1, |lhs|) with tensor Gauss on `cells`^3 cells of degree `degree`.
double partial_integration_check(const PartialIntegrationSetup& s, int cells, int degree = 9);

// ---------------------------------------------------------------------------
// Piola transformation

/// Map x -> Psi(x) with Jacobian.
struct Map2 {
  std::function<Point<2>(const Point<2>&)> map;
  std::function<Matrix<2>(const Point<2>&)> jacobian;
};

/// (P_Psi z)(y) = J(x) z(x) / det J(x) at y = Psi(x), returned as a function of x.
/// Throws stis::Error when |det J| < 1e-12 at the evaluation point.
Point<2> piola_transform(const Map2& psi, const std::function<Point<2>(const Point<2>&)>& z,
                         const Point<2>& x);

/// Divergence of the Piola image at y = Psi(x) by central differences in y;
/// Psi must be affine (the inverse is formed from the Jacobian at x).
double piola_divergence_fd(const Map2& psi, const std::function<Point<2>(const Point<2>&)>& z,
                           const Point<2>& x, double h = 1e-4);

/// Flow map of a velocity field: d/dt Phi(y,t) = w(Phi(y,t), t), Phi(y,0) = y,
/// integrated with its Jacobian by RK4 (step 1e-3 by default).
struct FlowState {
  Point<2> x;    // Phi(y, t)
  Matrix<2> J;   // d Phi / d y
  Matrix<2> Jdot;
};

struct VelocityField2 {
  std::function<Point<2>(const Point<2>&, double)> w;
  std::function<Matrix<2>(const Point<2>&, double)> grad;  // d w_i / d x_j
};

FlowState integrate_flow(const VelocityField2& w, const Point<2>& y, double t, double dt = 1e-3);

/// A = det(J) J^{-1} (the Piola matrix of Phi_t^{-1}), its time derivative and
/// R = A^{-1} A_dot along the trajectory.
struct PiolaMatrices {
  Matrix<2> A, Adot, R;
};
PiolaMatrices piola_matrices(const VelocityField2& w, const FlowState& s, double t);

/// u' = R u + u_dot.
inline Point<2> piola_material_derivative(const PiolaMatrices& pm, const Point<2>& u,
                                          const Point<2>& u_dot) {
  return pm.R * u + u_dot;
}

/// Sampled bound ||u' - u_dot||_{L2} <= C ||u||_{L2} with C = max ||R||_2 over
/// the samples, for `fields` random fields on `samples` trajectories.
struct PiolaBoundReport {
  double C = 0.0;
  double max_ratio = 0.0;  // max over fields of ||R u|| / (C ||u||)
  int fields = 0;
  bool holds() const { return max_ratio <= 1.0 + 1e-6; }
};
PiolaBoundReport piola_bound_study(const VelocityField2& w, double t, int fields, int samples,
                                   unsigned seed);

// ---------------------------------------------------------------------------
// Trace ratio  sup_t ||u(t)|| / (||u||_X^2 + ||rho u_t||_{X'}^2)^{1/2}  on (0,1)

/// u(x,t) = sum_{k,j} c_kj sin(k pi x) t^j (j >= 1), coefficients from the seed.
struct TraceField {
  std::vector<std::vector<double>> c;  // c[k-1][j-1]
  double value(double x, double t) const;
  double dx(double x, double t) const;
  double dt(double x, double t) const;
};

std::vector<TraceField> random_trace_family(int count, int modes, int degree, unsigned seed);

/// The dual norm uses P1 test functions with `test_cells` cells.
double trace_ratio(const TraceField& u, double rho, double T, int test_cells);

struct TraceStudy {
  double max_ratio = 0.0;
  double max_ratio_refined = 0.0;  // test grid doubled
  double relative_change() const;
};
TraceStudy trace_ratio_study(const std::vector<TraceField>& family, double rho, double T,
                             int test_cells);

// ---------------------------------------------------------------------------
// Garding-type bound  int_0^T a(t; u, u_t) dt >= -M ||u||_X^2  for
// a(t; u, v) = int mu D(u):D(v), D(u) = grad u + grad u^T, on (-1,1)^2.

struct GardingStudy {
  double M = 0.0;  // max over the family of -int a(u, u_t) / ||u||_X^2, clipped at 0
  double M_refined = 0.0;
};

/// Time-dependent viscosity of a smoothed moving disk and a family of fields
/// t^j (1-x^2)(1-y^2) (polynomial) vanishing at t = 0; cells^3 tensor Gauss.
GardingStudy garding_study(int fields, int cells, unsigned seed);

// ---------------------------------------------------------------------------
// Suite

struct AnalysisCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AnalysisReport {
  std::vector<AnalysisCheck> checks;
  std::vector<InfSupReport> infsup;
  std::vector<std::string> infsup_labels;
  bool passed() const;
  std::string to_text() const;
};

struct AnalysisSuiteConfig {
  std::vector<InfSupConfig> infsup = default_infsup_configs();
  unsigned seed = 1234;
  int piola_fields = 100;

  static std::vector<InfSupConfig> default_infsup_configs();
};

/// Runs every check. Throws stis::Error when a configuration is inconsistent
/// (gamma > Gamma).
AnalysisReport run_analysis_suite(const AnalysisSuiteConfig& cfg = {});

}  // namespace stis
