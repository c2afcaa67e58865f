#include "stis/problem.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace stis;

namespace {

// Central-difference checks of the generated derivatives against the values.
template <int d>
void check_derivatives(const ExactSolution<d>& ex, const Point<d>& x, double t, Phase p) {
  const double h = 1e-5;
  const FieldValues<d> f = ex(x, t, p);
  auto at = [&](const Point<d>& y, double s) { return ex(y, s, p); };

  const Point<d> dt = (at(x, t + h).u - at(x, t - h).u) / (2 * h);
  CHECK((dt - f.dt_u).norm() <= 1e-6 * (1.0 + f.dt_u.norm()));

  Point<d> lap = Point<d>::Zero();
  for (int j = 0; j < d; ++j) {
    Point<d> e = Point<d>::Zero();
    e[j] = h;
    const auto fp = at(x + e, t), fm = at(x - e, t);
    const Point<d> du = (fp.u - fm.u) / (2 * h);
    CHECK((du - f.grad_u.col(j)).norm() <= 1e-6 * (1.0 + f.grad_u.norm()));
    CHECK((fp.p - fm.p) / (2 * h) == doctest::Approx(f.grad_p[j]).epsilon(1e-6).scale(1.0));
    lap += (fp.grad_u.col(j) - fm.grad_u.col(j)) / (2 * h);
  }
  CHECK((lap - f.lap_u).norm() <= 1e-5 * (1.0 + f.lap_u.norm()));
  CHECK(std::abs(f.grad_u.trace()) <= 1e-11 * (1.0 + f.grad_u.norm()));
}

}  // namespace

TEST_CASE("2D exact solutions: derivatives and incompressibility") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0), T(0.0, 1.0);
  for (const char* id : {"disk2d_smooth", "disk2d_kink", "poly2d"}) {
    CAPTURE(id);
    const auto c = make_case_2d(id);
    REQUIRE(c.exact);
    for (int k = 0; k < 20; ++k) {
      const Point<2> x(U(gen), U(gen));
      const double t = T(gen);
      for (Phase p : {Phase::Neg, Phase::Pos}) check_derivatives<2>(*c.exact, x, t, p);
    }
  }
}

TEST_CASE("3D exact solutions: derivatives and incompressibility") {
  std::mt19937 gen(8);
  std::uniform_real_distribution<double> U(-1.0, 1.0), T(0.0, 1.0);
  for (const char* id : {"paper3d_case1", "paper3d_case2"}) {
    CAPTURE(id);
    const auto c = make_case_3d(id);
    for (int k = 0; k < 10; ++k) {
      const Point<3> x(U(gen), U(gen), U(gen));
      const double t = T(gen);
      for (Phase p : {Phase::Neg, Phase::Pos}) check_derivatives<3>(*c.exact, x, t, p);
    }
  }
}

TEST_CASE("velocity is continuous across the interface") {
  for (const char* id : {"disk2d_smooth", "disk2d_kink"}) {
    CAPTURE(id);
    const auto c = make_case_2d(id);
    for (double t : {0.0, 0.37, 1.0}) {
      const double yc = 0.5 * (t - 0.5);
      for (int k = 0; k < 16; ++k) {
        const double a = 2.0 * M_PI * k / 16.0;
        const Point<2> x(0.5 * std::cos(a), yc + 0.5 * std::sin(a));
        const auto fn = (*c.exact)(x, t, Phase::Neg), fp = (*c.exact)(x, t, Phase::Pos);
        CHECK((fn.u - fp.u).norm() <= 1e-12);
      }
    }
  }
  for (const char* id : {"paper3d_case1", "paper3d_case2"}) {
    CAPTURE(id);
    const auto c = make_case_3d(id);
    const double R = std::sqrt(0.5), t = 0.4;
    for (int k = 0; k < 8; ++k) {
      const double a = 2.0 * M_PI * k / 8.0, b = 0.3 + 0.3 * k;
      const Point<3> x(R * std::sin(b) * std::cos(a), R * std::sin(b) * std::sin(a), t + R * std::cos(b));
      const auto fn = (*c.exact)(x, t, Phase::Neg), fp = (*c.exact)(x, t, Phase::Pos);
      CHECK((fn.u - fp.u).norm() <= 1e-12);
    }
  }
}

TEST_CASE("kink case has a gradient jump, smooth case does not") {
  const Point<2> x(0.5, 0.0);  // on the circle at t = 1/2
  const auto s = make_case_2d("disk2d_smooth"), k = make_case_2d("disk2d_kink");
  const double js = ((*s.exact)(x, 0.5, Phase::Neg).grad_u - (*s.exact)(x, 0.5, Phase::Pos).grad_u).norm();
  const double jk = ((*k.exact)(x, 0.5, Phase::Neg).grad_u - (*k.exact)(x, 0.5, Phase::Pos).grad_u).norm();
  CHECK(js <= 1e-12);
  CHECK(jk > 1e-3);
}

TEST_CASE("level set curvature and normal") {
  const auto c2 = make_case_2d("disk2d_smooth");
  for (double t : {0.0, 0.5, 0.9}) {
    const Point<2> x(0.3, 0.5 * (t - 0.5) + 0.4);
    CHECK(c2.coeff.phi(x, t) == doctest::Approx(0.0).scale(1.0));
    CHECK(c2.coeff.phi.curvature(x, t) == doctest::Approx(2.0));  // 1/R, R = 1/2
    CHECK(c2.coeff.phi.normal(x, t)[0] == doctest::Approx(0.6));
  }
  const auto c3 = make_case_3d("paper3d_case1");
  const Point<3> y(std::sqrt(0.5), 0.0, 0.25);
  CHECK(c3.coeff.phi(y, 0.25) == doctest::Approx(0.0).scale(1.0));
  CHECK(c3.coeff.phi.curvature(y, 0.25) == doctest::Approx(2.0 * std::sqrt(2.0)));  // 2/R
}

TEST_CASE("manufactured interface force reproduces the jump condition") {
  const auto c = make_case_2d("disk2d_kink");
  const double t = 0.3, a = 1.1;
  const Point<2> x(0.5 * std::cos(a), 0.5 * (t - 0.5) + 0.5 * std::sin(a));
  const Point<2> n = c.coeff.phi.normal(x, t);
  const auto fn = (*c.exact)(x, t, Phase::Neg), fp = (*c.exact)(x, t, Phase::Pos);
  auto sigma_n = [&](const FieldValues<2>& f, double mu) -> Point<2> {
    const Matrix<2> D = f.grad_u + f.grad_u.transpose();
    return -f.p * n + 2.0 * mu * D * n;
  };
  const Point<2> h = c.coeff.interface_force(x, t);
  // -[sigma n] = h - tau kappa n
  const Point<2> lhs = -(sigma_n(fp, 1.0) - sigma_n(fn, 2.0));
  const Point<2> rhs = h - 2.0 * 2.0 * n;
  CHECK((lhs - rhs).norm() <= 1e-12);
}

TEST_CASE("body force is the strong residual") {
  const auto c = make_case_2d("poly2d");
  const Point<2> x(0.2, -0.4);
  const double t = 0.6;
  // u = t(x^2+y, -2xy+x), p = (1+t)x, rho = 1.5, mu = 0.7
  const Point<2> dt(x[0] * x[0] + x[1], -2 * x[0] * x[1] + x[0]);
  const Point<2> lap(2 * t, 0.0);
  const Point<2> gp(1 + t, 0.0);
  const Point<2> g = 1.5 * dt - 2.0 * 0.7 * lap + gp;
  CHECK((c.coeff.body_force(x, t, Phase::Pos) - g).norm() <= 1e-14);
  CHECK((c.coeff.dirichlet(x, t) - t * dt).norm() <= 1e-14);
}

TEST_CASE("case validation") {
  CHECK_THROWS_WITH_AS(make_case_2d("nope"), doctest::Contains("unknown 2D case"), Error);
  CHECK_THROWS_AS(make_case_3d("disk2d_smooth"), Error);
  auto c = make_case_2d("zero");
  CHECK_FALSE(c.exact);
  c.coeff.mu[0] = 0.0;
  CHECK_THROWS_WITH_AS(c.coeff.validate(), doctest::Contains("viscosity"), Error);
  c.coeff.mu[0] = 1.0;
  c.coeff.tau = -1.0;
  CHECK_THROWS_AS(c.coeff.validate(), Error);
  CHECK(builtin_cases().size() == 6);
}
