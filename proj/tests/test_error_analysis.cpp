#include "stis/error_analysis.hpp"

#include <doctest.h>

#include <cmath>

using namespace stis;

namespace {

// Independent oracle for the moving-disk cases: the positive-phase formula over
// the whole box (tensor Gauss) plus the difference neg - pos over the disk in
// polar coordinates about its moving centre. Both integrands are smooth.
struct Oracle {
  double h1 = 0.0, l2 = 0.0;
};

Oracle disk_oracle(const ProblemCase<2>& c, int cells, int npts) {
  const Rule1D& g = gauss_rule_for_degree(2 * npts - 1);
  const auto& box = c.coeff.domain;
  const double hx = (box.upper[0] - box.lower[0]) / cells, hy = (box.upper[1] - box.lower[1]) / cells;
  const double ht = c.coeff.final_time / cells;
  Oracle o;
  auto add = [&](const Point<2>& x, double t, double w, double sign, Phase p) {
    const auto f = (*c.exact)(x, t, p);
    o.h1 += sign * w * f.grad_u.squaredNorm();
    o.l2 += sign * w * f.u.squaredNorm();
  };
  for (int i = 0; i < cells; ++i)
    for (int j = 0; j < cells; ++j)
      for (int k = 0; k < cells; ++k)
        for (std::size_t a = 0; a < g.points.size(); ++a)
          for (std::size_t b = 0; b < g.points.size(); ++b)
            for (std::size_t s = 0; s < g.points.size(); ++s) {
              const Point<2> x(box.lower[0] + (i + g.points[a]) * hx, box.lower[1] + (j + g.points[b]) * hy);
              const double t = (k + g.points[s]) * ht;
              add(x, t, g.weights[a] * g.weights[b] * g.weights[s] * hx * hy * ht, 1.0, Phase::Pos);
            }
  const double R = 0.5;
  const int nth = 128;
  for (int k = 0; k < cells; ++k)
    for (std::size_t s = 0; s < g.points.size(); ++s) {
      const double t = (k + g.points[s]) * ht;
      const double yc = 0.5 * (t - 0.5);
      for (int ir = 0; ir < cells; ++ir)
        for (std::size_t a = 0; a < g.points.size(); ++a) {
          const double r = (ir + g.points[a]) * R / cells;
          for (int m = 0; m < nth; ++m) {
            const double th = 2.0 * M_PI * m / nth;
            const Point<2> x(r * std::cos(th), yc + r * std::sin(th));
            const double w = g.weights[s] * ht * g.weights[a] * (R / cells) * r * (2.0 * M_PI / nth);
            add(x, t, w, 1.0, Phase::Neg);
            add(x, t, w, -1.0, Phase::Pos);
          }
        }
    }
  return o;
}

SpaceTimeSolution<2> zero_solution(const ProblemCase<2>& c, int ns, int nt) {
  DiscretizationParams prm;
  prm.ns = ns;
  prm.n_slabs = nt;
  SpaceTimeSolution<2> sol = interpolate_exact<2>(c.coeff, *c.exact, prm);
  for (auto& s : sol.slabs) {
    s.u.setZero();
    s.p.setZero();
  }
  return sol;
}

}  // namespace

TEST_CASE("eoc arithmetic") {
  CHECK(eoc(0.24844, 0.12573) == doctest::Approx(0.98264).epsilon(1e-4));
  CHECK(eoc(0.04318, 0.01047) == doctest::Approx(2.0441).epsilon(5e-3));
  CHECK(eoc(0.3, 0.3) == 0.0);
  CHECK(eoc(4.0, 1.0) == doctest::Approx(2.0));
  CHECK(std::isnan(eoc(0.0, 1.0)));
  CHECK(std::isnan(eoc(1.0, -1.0)));
}

TEST_CASE("interpolant of an in-space solution has zero error") {
  const auto c = make_case_2d("poly2d");
  DiscretizationParams prm;
  prm.ns = 2;
  prm.n_slabs = 2;
  const auto sol = interpolate_exact<2>(c.coeff, *c.exact, prm);
  const auto e = compute_errors<2>(sol, *c.exact, c.coeff.phi);
  CHECK(e.velocity_l2h1 <= 1e-10);
  CHECK(e.velocity_l2l2 <= 1e-10);
  CHECK(e.pressure_l2l2 <= 1e-10);
}

TEST_CASE("zero field error equals the norm of the exact solution") {
  const auto c = make_case_2d("disk2d_smooth");
  const auto sol = zero_solution(c, 4, 4);
  ErrorOptions opt;
  opt.pressure_modulo_constants = false;
  const auto e = compute_errors<2>(sol, *c.exact, c.coeff.phi, opt);
  const auto o = disk_oracle(c, 8, 8);
  CHECK(e.velocity_l2h1 == doctest::Approx(std::sqrt(o.h1)).epsilon(1e-6));
  CHECK(e.velocity_l2l2 == doctest::Approx(std::sqrt(o.l2)).epsilon(1e-6));
}

TEST_CASE("kinked integrand converges to the oracle under interface refinement") {
  // The leaves are cut by the linear interpolant of phi, an O(H^2) geometric error
  // where grad u jumps; deeper bisection must approach the polar oracle.
  const auto c = make_case_2d("disk2d_kink");
  const auto sol = zero_solution(c, 4, 4);
  const double ref = std::sqrt(disk_oracle(c, 8, 8).h1);
  double prev = 1.0;
  for (int depth : {2, 6, 10}) {
    ErrorOptions opt;
    opt.refine_depth = depth;
    const double dev = std::abs(error_L2H1<2>(sol, *c.exact, c.coeff.phi, opt) - ref) / ref;
    CAPTURE(depth);
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev <= 1e-5);
}

TEST_CASE("errors scale with the field") {
  const auto c = make_case_2d("disk2d_smooth");
  DiscretizationParams prm;
  prm.ns = 4;
  prm.n_slabs = 2;
  auto sol = interpolate_exact<2>(c.coeff, *c.exact, prm);
  // u_h = 3 I u - 2 u  =>  u - u_h = 3 (u - I u)
  auto ref = interpolate_exact<2>(c.coeff, *c.exact, prm);
  const auto e1 = compute_errors<2>(ref, *c.exact, c.coeff.phi);
  ExactSolution<2> scaled = *c.exact;
  scaled.eval = [ex = *c.exact](const Point<2>& x, double t, Phase p, FieldValues<2>& f) {
    ex.eval(x, t, p, f);
    f.u *= 3.0;
    f.grad_u *= 3.0;
    f.p *= 3.0;
  };
  for (auto& s : sol.slabs) {
    s.u *= 3.0;
    s.p *= 3.0;
  }
  const auto e3 = compute_errors<2>(sol, scaled, c.coeff.phi);
  CHECK(e3.velocity_l2h1 == doctest::Approx(3.0 * e1.velocity_l2h1).epsilon(1e-10));
  CHECK(e3.pressure_l2l2 == doctest::Approx(3.0 * e1.pressure_l2l2).epsilon(1e-10));
}

TEST_CASE("pressure error ignores space-constant, time-linear offsets") {
  const auto c = make_case_2d("poly2d");
  DiscretizationParams prm;
  prm.ns = 2;
  prm.n_slabs = 2;
  auto sol = interpolate_exact<2>(c.coeff, *c.exact, prm);
  for (auto& s : sol.slabs) {
    const auto& ps = *s.pspace;
    for (int v = 0; v < ps.num_vertices(); ++v) {
      s.p[ps.dof(ps.slot(v, Phase::Pos), 0)] += 0.7;
      s.p[ps.dof(ps.slot(v, Phase::Pos), 1)] -= 1.3;
    }
  }
  CHECK(error_L2L2_pressure<2>(sol, *c.exact, c.coeff.phi) <= 1e-10);
  ErrorOptions raw;
  raw.pressure_modulo_constants = false;
  CHECK(error_L2L2_pressure<2>(sol, *c.exact, c.coeff.phi, raw) > 0.1);
}

TEST_CASE("serial and parallel error integration agree") {
  const auto c = make_case_2d("disk2d_kink");
  DiscretizationParams prm;
  prm.ns = 4;
  prm.n_slabs = 2;
  const auto sol = interpolate_exact<2>(c.coeff, *c.exact, prm);
  ErrorOptions s, p;
  s.policy = ExecutionPolicy::Serial;
  const auto a = compute_errors<2>(sol, *c.exact, c.coeff.phi, s);
  const auto b = compute_errors<2>(sol, *c.exact, c.coeff.phi, p);
  CHECK(a.velocity_l2h1 == doctest::Approx(b.velocity_l2h1).epsilon(1e-12));
  CHECK(a.pressure_l2l2 == doctest::Approx(b.pressure_l2l2).epsilon(1e-10));
}

TEST_CASE("refinement depth barely changes the measured error") {
  const auto c = make_case_2d("disk2d_kink");
  DiscretizationParams prm;
  prm.ns = 4;
  prm.n_slabs = 4;
  const auto sol = interpolate_exact<2>(c.coeff, *c.exact, prm);
  ErrorOptions lo, hi;
  lo.refine_depth = 3;
  hi.refine_depth = 9;
  const auto a = compute_errors<2>(sol, *c.exact, c.coeff.phi, lo);
  const auto b = compute_errors<2>(sol, *c.exact, c.coeff.phi, hi);
  CHECK(a.velocity_l2h1 == doctest::Approx(b.velocity_l2h1).epsilon(1e-3));
  CHECK(a.pressure_l2l2 == doctest::Approx(b.pressure_l2l2).epsilon(1e-3));
}

TEST_CASE("error table layout and CSV round trip") {
  ErrorTable t({4, 8}, {4, 8}, "velocity");
  t.set(4, 4, 0.24844);
  t.set(4, 8, 0.2);
  t.set(8, 4, 0.15);
  t.set(8, 8, 0.12573);
  const auto es = t.eoc_space();
  CHECK(std::isnan(es[0]));
  CHECK(es[1] == doctest::Approx(std::log2(0.2 / 0.12573)));
  const auto et = t.eoc_time();
  CHECK(et[1] == doctest::Approx(std::log2(0.15 / 0.12573)));
  CHECK(t.eoc_diagonal()[1] == doctest::Approx(0.98264).epsilon(1e-4));

  const std::string csv = t.to_csv();
  CHECK(csv.rfind("NS,4,8,EOC_S\n", 0) == 0);
  CHECK(csv.find("\nEOC_T,") != std::string::npos);
  const auto back = ErrorTable::from_csv(csv);
  for (int a : {4, 8})
    for (int b : {4, 8}) CHECK(*back.get(a, b) == doctest::Approx(*t.get(a, b)).epsilon(1e-5));

  const std::string txt = t.to_text();
  CHECK(txt.find("N_S\\N") != std::string::npos);
  CHECK(txt.find("0.24844") != std::string::npos);
  const auto lines = std::count(txt.begin(), txt.end(), '\n');
  CHECK(lines == 5);  // title, header, two rows, EOC_T
  CHECK(txt.substr(txt.rfind("EOC_T")).find('\n') == txt.size() - txt.rfind("EOC_T") - 1);
  CHECK(t.to_markdown().find("| N_S\\N |") != std::string::npos);
  CHECK(format_value(2.5e-5) == "2.50000e-05");
  CHECK_THROWS_AS(t.set(16, 4, 1.0), Error);
  CHECK_THROWS_AS(ErrorTable::from_csv("N,1\n"), Error);
}
