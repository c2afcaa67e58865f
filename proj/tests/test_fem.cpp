#include "stis/fem.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace stis;

namespace {

SpaceTimeSlab<2> unit_square_slab(int ns = 1, int n_slabs = 1, int n = 1) {
  Box<2> box{Point<2>(0, 0), Point<2>(1, 1)};
  return slab<2>(build_structured_mesh<2>(box, ns), build_time_partition(1.0, n_slabs), n);
}

}  // namespace

TEST_CASE("temporal Radau basis") {
  TemporalBasis b0(0);
  CHECK(b0.nodes() == std::vector<double>{1.0});
  CHECK(b0.value(0, 0.3) == 1.0);
  CHECK(b0.derivative(0, 0.3) == 0.0);
  TemporalBasis b1(1);
  CHECK(b1.nodes()[0] == doctest::Approx(1.0 / 3.0));
  CHECK(b1.value(1, 1.0) == doctest::Approx(1.0));
  CHECK(b1.value(0, 1.0) == doctest::Approx(0.0));
  TemporalBasis b2(2);
  for (double s : {0.0, 0.2, 0.7, 1.0}) {
    double sum = 0.0, dsum = 0.0;
    for (int m = 0; m < 3; ++m) {
      sum += b2.value(m, s);
      dsum += b2.derivative(m, s);
    }
    CHECK(sum == doctest::Approx(1.0));
    CHECK(dsum == doctest::Approx(0.0));
  }
  // derivative of s^2 interpolated exactly
  double ds = 0.0;
  for (int m = 0; m < 3; ++m) ds += b2.nodes()[m] * b2.nodes()[m] * b2.derivative(m, 0.4);
  CHECK(ds == doctest::Approx(0.8));
}

TEST_CASE("velocity space counts and boundary flags") {
  auto s = unit_square_slab();
  auto v1 = build_velocity_space<2>(s, 2, 1);
  CHECK(v1.num_nodes() == 9);
  CHECK(v1.num_dofs() == 36);
  CHECK(build_velocity_space<2>(s, 2, 0).num_dofs() == 18);
  CHECK(v1.num_dirichlet_nodes() == 8);
  int interior = 0;
  for (int n = 0; n < v1.num_nodes(); ++n)
    if (!v1.is_dirichlet_node(n)) {
      ++interior;
      CHECK(v1.node_point(n).isApprox(Point<2>(0.5, 0.5)));
    }
  CHECK(interior == 1);
  CHECK_THROWS_AS(build_velocity_space<2>(s, 1, 1), Error);
}

TEST_CASE("pressure space counts and shared diagonal dofs") {
  auto s = unit_square_slab();
  auto p = build_pressure_space<2>(s, 1, 1);
  CHECK(p.num_dofs() == 8);
  CHECK(build_pressure_space<2>(s, 1, 0).num_dofs() == 4);
  const auto& mesh = *s.mesh;
  int shared = 0;
  for (int v : mesh.simplex(0))
    for (int w : mesh.simplex(1)) shared += (v == w);
  CHECK(shared == 2);
}

TEST_CASE("partition of unity and gradient sum") {
  auto s = unit_square_slab(3, 2, 2);
  auto v = build_velocity_space<2>(s, 2, 1);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int e = 0; e < s.num_prisms(); ++e) {
    SimplexGeometry<2> g(s.mesh->simplex_points(e));
    double a = u(gen), b = u(gen) * (1 - a);
    const Point<2> x = g.points[0] + a * (g.points[1] - g.points[0]) + b * (g.points[2] - g.points[0]);
    const double t = s.t0 + u(gen) * s.duration();
    auto bv = evaluate_velocity_basis<2>(v, e, x, t);
    double sum = 0.0, dt = 0.0;
    Point<2> grad = Point<2>::Zero();
    for (int i = 0; i < kP2Size<2>; ++i)
      for (int m = 0; m < 2; ++m) {
        sum += bv.phi[i] * bv.time_value[m];
        dt += bv.phi[i] * bv.time_derivative[m];
        grad += bv.grad[i] * bv.time_value[m];
      }
    CHECK(std::abs(sum - 1.0) < 1e-13);
    CHECK(std::abs(dt) < 1e-12);
    CHECK(grad.norm() < 1e-12);
  }
  CHECK_THROWS_AS(evaluate_velocity_basis<2>(v, 0, Point<2>(5, 5), s.t0), Error);
  CHECK_THROWS_AS(evaluate_velocity_basis<2>(v, 0, s.mesh->vertex(s.mesh->simplex(0)[0]), 0.0), Error);
}

TEST_CASE("P2 reproduces quadratics") {
  auto s = unit_square_slab(2);
  auto v = build_velocity_space<2>(s, 2, 0);
  auto f = [](const Point<2>& x) { return 1 + x[0] - 2 * x[1] + x[0] * x[1] + 3 * x[1] * x[1]; };
  const Point<2> x(0.3, 0.1);
  for (int e = 0; e < s.num_prisms(); ++e) {
    SimplexGeometry<2> g(s.mesh->simplex_points(e));
    if (!g.contains(x)) continue;
    auto bv = evaluate_velocity_basis<2>(v, e, x, 0.5);
    double val = 0.0;
    for (int i = 0; i < kP2Size<2>; ++i) val += bv.phi[i] * f(v.node_point(bv.nodes[i]));
    CHECK(val == doctest::Approx(f(x)).epsilon(1e-13));
  }
}

TEST_CASE("XFEM enrichment, inclusion and side locality") {
  Box<2> box{Point<2>(-1, -1), Point<2>(1, 1)};
  auto mesh = build_structured_mesh<2>(box, 4);
  auto s = slab<2>(mesh, build_time_partition(1.0, 4), 2);
  LevelSetField<2> uncut;
  uncut.phi = [](const Point<2>&, double) { return 1.0; };
  auto base = build_pressure_space<2>(s, 1, 1);
  auto same = enrich_pressure_xfem<2>(base, interpolate_levelset<2>(uncut, s));
  CHECK(same.num_dofs() == base.num_dofs());

  LevelSetField<2> circle;
  circle.phi = [](const Point<2>& x, double t) { return x.squaredNorm() - 0.3 - 0.1 * t; };
  auto dls = interpolate_levelset<2>(circle, s);
  auto x = enrich_pressure_xfem<2>(base, dls);
  CHECK(x.num_enriched() > 0);
  CHECK(x.num_dofs() == base.num_dofs() + x.num_enriched() * 2);
  for (int e = 0; e < s.num_prisms(); ++e) {
    if (dls.classify(e) != PrismClass::Cut) continue;
    for (int v : mesh->simplex(e)) CHECK(x.is_enriched(v));
  }

  // Inclusion: q_h coefficients copied to both sides reproduce q_h.
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> qb(base.num_dofs()), qx(x.num_dofs());
  for (auto& c : qb) c = u(gen);
  for (int v = 0; v < x.num_vertices(); ++v)
    for (int m = 0; m < 2; ++m)
      for (Phase ph : {Phase::Neg, Phase::Pos})
        qx[x.dof(x.slot(v, ph), m)] = qb[base.dof(base.slot(v, ph), m)];
  for (int e = 0; e < s.num_prisms(); ++e) {
    auto dec = decompose_cut_prism<2>(dls, e);
    for (Phase ph : {Phase::Neg, Phase::Pos}) {
      auto rule = quadrature_subdomain<2>(s, dec, ph, 2, 2);
      for (std::size_t i = 0; i < rule.size(); ++i) {
        const Point<2> pt = rule.points[i].head<2>();
        const double t = rule.points[i][2];
        auto bb = evaluate_pressure_basis<2>(base, e, pt, t, ph);
        auto bx = evaluate_pressure_basis<2>(x, e, pt, t, ph);
        double vb = 0.0, vx = 0.0;
        for (int k = 0; k < 3; ++k)
          for (int m = 0; m < 2; ++m) {
            vb += qb[base.dof(bb.slots[k], m)] * bb.phi[k] * bb.time_value[m];
            vx += qx[x.dof(bx.slots[k], m)] * bx.phi[k] * bx.time_value[m];
          }
        CHECK(std::abs(vb - vx) < 1e-13);
        // Side locality: the opposite-side slot of an enriched vertex never appears.
        const Phase other = ph == Phase::Neg ? Phase::Pos : Phase::Neg;
        for (int k = 0; k < 3; ++k) {
          const int vert = mesh->simplex(e)[k];
          if (x.is_enriched(vert)) CHECK(bx.slots[k] != x.slot(vert, other));
        }
      }
    }
  }

  auto f0 = small_cut_filter<2>(x, 0.0);
  CHECK(f0.num_dofs() == x.num_dofs());
  auto f1 = small_cut_filter<2>(x, 0.45);
  CHECK(f1.num_filtered() > 0);
  CHECK(f1.num_dofs() == x.num_dofs() - 2 * f1.num_filtered());
  for (int v = 0; v < x.num_vertices(); ++v) {
    if (!x.is_enriched(v) || f1.is_enriched(v)) continue;
    const auto& m = x.side_measures()[v];
    CHECK(std::min(m[0], m[1]) < 0.45 * (m[0] + m[1]));
  }
  CHECK_THROWS_AS(small_cut_filter<2>(x, 1.0), Error);
}

TEST_CASE("small-cut threshold on a sliver") {
  Box<2> box{Point<2>(0, 0), Point<2>(1, 1)};
  auto s = slab<2>(build_structured_mesh<2>(box, 1), build_time_partition(1.0, 1), 1);
  LevelSetField<2> sliver;
  sliver.phi = [](const Point<2>& x, double) { return x[0] - 1e-5; };
  auto x = enrich_pressure_xfem<2>(build_pressure_space<2>(s, 1, 1), interpolate_levelset<2>(sliver, s));
  CHECK(x.num_enriched() == 4);
  // Vertex (1,0) meets the strip x < 1e-5 only in a corner of area ~1e-10.
  auto f = small_cut_filter<2>(x, 1e-8);
  CHECK(f.num_enriched() == 3);
  CHECK(f.num_filtered() == 1);
  CHECK_FALSE(f.is_enriched(1));
  auto g = small_cut_filter<2>(x, 1e-3);
  CHECK(g.num_enriched() == 0);
  CHECK(g.num_dofs() == 8);
}

TEST_CASE("broken in time: offsets make slab dofs disjoint") {
  auto s1 = unit_square_slab(2, 2, 1);
  auto s2 = unit_square_slab(2, 2, 2);
  auto v1 = build_velocity_space<2>(s1, 2, 1, 0);
  auto v2 = build_velocity_space<2>(s2, 2, 1, v1.offset() + v1.num_dofs());
  CHECK(v2.offset() >= v1.offset() + v1.num_dofs());
}
