/// \file problem.cpp
/// \brief Built-in two-phase cases and manufactured data.

#include "stis/problem.hpp"

#include "stis/manufactured_data.hpp"

#include <cmath>

namespace stis {

template <int d>
void ProblemCoefficients<d>::validate() const {
  for (int i = 0; i < 2; ++i) {
    if (!(rho[i] > 0.0)) throw Error("density must be positive in both phases");
    if (!(mu[i] > 0.0)) throw Error("viscosity must be positive in both phases");
  }
  if (!(tau >= 0.0)) throw Error("surface tension coefficient must be nonnegative");
  if (!phi.phi) throw Error("level set function missing");
  if (!(final_time > 0.0)) throw Error("final time must be positive");
}

template <int d>
Point<d> manufactured_body_force(const FieldValues<d>& f, double rho, double mu) {
  return rho * f.dt_u - 2.0 * mu * f.lap_u + f.grad_p;
}

template <int d>
Point<d> manufactured_interface_force(const FieldValues<d>& neg, const FieldValues<d>& pos,
                                      const std::array<double, 2>& mu, double tau, double kappa,
                                      const Point<d>& n) {
  auto traction = [&](const FieldValues<d>& f, double m) -> Point<d> {
    const Matrix<d> D = f.grad_u + f.grad_u.transpose();
    return -f.p * n + 2.0 * m * (D * n);
  };
  const Point<d> jump = traction(pos, mu[1]) - traction(neg, mu[0]);
  return -jump + tau * kappa * n;
}

template <int d>
void attach_manufactured_data(ProblemCase<d>& c) {
  if (!c.exact) throw Error("case " + c.id + " has no exact solution");
  const ExactSolution<d> ex = *c.exact;
  auto& k = c.coeff;
  const auto rho = k.rho;
  const auto mu = k.mu;
  const double tau = k.tau;
  const LevelSetField<d> phi = k.phi;
  k.body_force = [=](const Point<d>& x, double t, Phase p) {
    const int i = static_cast<int>(p);
    return manufactured_body_force<d>(ex(x, t, p), rho[i], mu[i]);
  };
  if (phi.grad && phi.hessian) {
    k.interface_force = [=](const Point<d>& x, double t) {
      const Point<d> n = phi.normal(x, t);
      return manufactured_interface_force<d>(ex(x, t, Phase::Neg), ex(x, t, Phase::Pos), mu, tau,
                                             phi.curvature(x, t), n);
    };
  }
  k.dirichlet = [=](const Point<d>& x, double t) {
    return ex(x, t, phi(x, t) < 0.0 ? Phase::Neg : Phase::Pos).u;
  };
}

namespace {

using Fn2 = void (*)(double, double, double, FieldValues<2>&);
using Fn3 = void (*)(double, double, double, double, FieldValues<3>&);

ExactSolution<2> exact2(const std::string& name, Fn2 neg, Fn2 pos, bool phasewise) {
  ExactSolution<2> e;
  e.name = name;
  e.phasewise_velocity = phasewise;
  e.eval = [neg, pos](const Point<2>& x, double t, Phase p, FieldValues<2>& f) {
    (p == Phase::Neg ? neg : pos)(x[0], x[1], t, f);
  };
  return e;
}

ExactSolution<3> exact3(const std::string& name, Fn3 neg, Fn3 pos, bool phasewise) {
  ExactSolution<3> e;
  e.name = name;
  e.phasewise_velocity = phasewise;
  e.eval = [neg, pos](const Point<3>& x, double t, Phase p, FieldValues<3>& f) {
    (p == Phase::Neg ? neg : pos)(x[0], x[1], x[2], t, f);
  };
  return e;
}

// Circle of radius 1/2 whose centre moves from (0,-1/4) to (0,1/4).
LevelSetField<2> moving_disk() {
  LevelSetField<2> f;
  auto c = [](double t) { return 0.5 * (t - 0.5); };
  f.phi = [c](const Point<2>& x, double t) {
    const double yc = x[1] - c(t);
    return x[0] * x[0] + yc * yc - 0.25;
  };
  f.grad = [c](const Point<2>& x, double t) { return Point<2>(2.0 * x[0], 2.0 * (x[1] - c(t))); };
  f.hessian = [](const Point<2>&, double) { return Matrix<2>(2.0 * Matrix<2>::Identity()); };
  f.dt = [c](const Point<2>& x, double t) { return -(x[1] - c(t)); };
  return f;
}

// Sphere of radius 1/sqrt(2) moving along z with unit speed.
LevelSetField<3> moving_sphere() {
  LevelSetField<3> f;
  f.phi = [](const Point<3>& x, double t) {
    return x[0] * x[0] + x[1] * x[1] + (x[2] - t) * (x[2] - t) - 0.5;
  };
  f.grad = [](const Point<3>& x, double t) {
    return Point<3>(2.0 * x[0], 2.0 * x[1], 2.0 * (x[2] - t));
  };
  f.hessian = [](const Point<3>&, double) { return Matrix<3>(2.0 * Matrix<3>::Identity()); };
  f.dt = [](const Point<3>& x, double t) { return -2.0 * (x[2] - t); };
  return f;
}

}  // namespace

ProblemCase<2> make_case_2d(const std::string& id) {
  ProblemCase<2> c;
  c.id = id;
  c.coeff.domain = {Point<2>(-1, -1), Point<2>(1, 1)};
  c.coeff.final_time = 1.0;
  c.coeff.phi = moving_disk();
  if (id == "disk2d_smooth") {
    c.coeff.rho = {10.0, 1.0};
    c.coeff.mu = {25.0, 1.0};
    c.coeff.tau = 2.0;
    c.exact = exact2(id, manufactured::disk2d_smooth_neg, manufactured::disk2d_smooth_pos, false);
  } else if (id == "disk2d_kink") {
    c.coeff.rho = {5.0, 1.0};
    c.coeff.mu = {2.0, 1.0};
    c.coeff.tau = 2.0;
    c.exact = exact2(id, manufactured::disk2d_kink_neg, manufactured::disk2d_kink_pos, true);
  } else if (id == "poly2d") {
    LevelSetField<2> one;
    one.phi = [](const Point<2>&, double) { return 1.0; };
    one.grad = [](const Point<2>&, double) { return Point<2>::Zero().eval(); };
    c.coeff.phi = one;
    c.coeff.rho = {1.5, 1.5};
    c.coeff.mu = {0.7, 0.7};
    c.coeff.tau = 0.0;
    c.exact = exact2(id, manufactured::poly2d_neg, manufactured::poly2d_pos, false);
  } else if (id == "zero") {
    c.coeff.rho = {10.0, 1.0};
    c.coeff.mu = {25.0, 1.0};
    c.coeff.tau = 0.0;
    return c;
  } else {
    throw Error("unknown 2D case '" + id + "'");
  }
  attach_manufactured_data<2>(c);
  return c;
}

ProblemCase<3> make_case_3d(const std::string& id) {
  ProblemCase<3> c;
  c.id = id;
  c.coeff.domain = {Point<3>(-1, -1, -0.75), Point<3>(1, 1, 1.75)};
  c.coeff.final_time = 1.0;
  c.coeff.phi = moving_sphere();
  c.coeff.tau = 2.0;
  if (id == "paper3d_case1") {
    c.coeff.rho = {10.0, 1.0};
    c.coeff.mu = {25.0, 1.0};
    c.exact = exact3(id, manufactured::paper3d_case1_neg, manufactured::paper3d_case1_pos, false);
  } else if (id == "paper3d_case2") {
    c.coeff.rho = {5.0, 1.0};
    c.coeff.mu = {2.0, 1.0};
    c.exact = exact3(id, manufactured::paper3d_case2_neg, manufactured::paper3d_case2_pos, true);
  } else {
    throw Error("unknown 3D case '" + id + "'");
  }
  attach_manufactured_data<3>(c);
  return c;
}

std::vector<std::pair<std::string, int>> builtin_cases() {
  return {{"disk2d_smooth", 2}, {"disk2d_kink", 2}, {"poly2d", 2},
          {"zero", 2},          {"paper3d_case1", 3}, {"paper3d_case2", 3}};
}

template struct ProblemCoefficients<2>;
template struct ProblemCoefficients<3>;
template Point<2> manufactured_body_force<2>(const FieldValues<2>&, double, double);
template Point<3> manufactured_body_force<3>(const FieldValues<3>&, double, double);
template Point<2> manufactured_interface_force<2>(const FieldValues<2>&, const FieldValues<2>&,
                                                  const std::array<double, 2>&, double, double,
                                                  const Point<2>&);
template Point<3> manufactured_interface_force<3>(const FieldValues<3>&, const FieldValues<3>&,
                                                  const std::array<double, 2>&, double, double,
                                                  const Point<3>&);
template void attach_manufactured_data<2>(ProblemCase<2>&);
template void attach_manufactured_data<3>(ProblemCase<3>&);

}  // namespace stis
