#include "stis/assembly.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace stis;

namespace {

struct Setup {
  std::shared_ptr<const SpatialMesh<2>> mesh;
  SpaceTimeSlab<2> slab;
  SlabGeometry<2> geo;
  VelocitySpace<2> vs;
  PressureSpace<2> ps;
};

Setup make_setup(const ProblemCoefficients<2>& coeff, int ns, int n_slabs, int n, int q, bool xfem) {
  auto mesh = build_structured_mesh<2>(coeff.domain, ns);
  auto sl = slab<2>(mesh, build_time_partition(coeff.final_time, n_slabs), n);
  auto geo = build_slab_geometry<2>(coeff.phi, sl);
  VelocitySpace<2> vs(sl, 2, q);
  PressureSpace<2> ps(sl, 1, q);
  if (xfem) ps = enrich_pressure_xfem<2>(ps, geo.dls);
  return {mesh, sl, std::move(geo), std::move(vs), std::move(ps)};
}

double max_abs(const SparseMatrix& m) {
  double r = 0.0;
  for (int c = 0; c < m.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) r = std::max(r, std::abs(it.value()));
  return r;
}

double entry_sum(const SparseMatrix& m) {
  double s = 0.0;
  for (int c = 0; c < m.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) s += it.value();
  return s;
}

}  // namespace

TEST_CASE("viscous block is symmetric positive semidefinite") {
  const auto c = make_case_2d("disk2d_smooth");
  auto s = make_setup(c.coeff, 4, 4, 2, 1, true);
  const auto sys = assemble_slab_system<2>(s.vs, s.ps, s.geo, c.coeff, {});
  const SparseMatrix asym = SparseMatrix(sys.viscous.transpose()) - sys.viscous;
  CHECK(max_abs(asym) <= 1e-13 * max_abs(sys.viscous));
  // rigid motions are in the kernel of D
  Eigen::VectorXd rot(s.vs.num_dofs());
  for (int nd = 0; nd < s.vs.num_nodes(); ++nd) {
    const Point<2> x = s.vs.node_point(nd);
    for (int m = 0; m < 2; ++m) {
      rot[s.vs.dof(nd, m, 0)] = -x[1];
      rot[s.vs.dof(nd, m, 1)] = x[0];
    }
  }
  CHECK((sys.viscous * rot).lpNorm<Eigen::Infinity>() <= 1e-11 * max_abs(sys.viscous));
}

TEST_CASE("q = 0: no time derivative, upwind is the weighted mass matrix") {
  const auto c = make_case_2d("disk2d_smooth");
  auto s = make_setup(c.coeff, 4, 2, 1, 0, true);
  const auto sys = assemble_slab_system<2>(s.vs, s.ps, s.geo, c.coeff, {});
  CHECK(max_abs(sys.time_derivative) <= 1e-14);
  // sum of all entries = d * int rho(t0) dx over the bottom face
  const auto& dls = s.geo.dls;
  double expect = 0.0;
  for (int e = 0; e < s.mesh->num_simplices(); ++e) {
    const auto cut = dls.bottom_cut(e);
    for (const auto& sx : cut.neg) expect += 10.0 * simplex_measure<2>(sx);
    for (const auto& sx : cut.pos) expect += 1.0 * simplex_measure<2>(sx);
  }
  CHECK(entry_sum(sys.upwind) == doctest::Approx(2.0 * expect).epsilon(1e-12));
  // total density mass lies between the single-phase extremes
  CHECK(expect > 4.0);
  CHECK(expect < 40.0);
}

TEST_CASE("time derivative block annihilates time-constant functions") {
  const auto c = make_case_2d("disk2d_kink");
  auto s = make_setup(c.coeff, 4, 4, 3, 1, true);
  const auto sys = assemble_slab_system<2>(s.vs, s.ps, s.geo, c.coeff, {});
  Eigen::VectorXd one = Eigen::VectorXd::Ones(s.vs.num_dofs());
  CHECK((sys.time_derivative * one).lpNorm<Eigen::Infinity>() <= 1e-13);
}

TEST_CASE("serial and OpenMP assembly agree") {
  const auto c = make_case_2d("disk2d_smooth");
  auto s = make_setup(c.coeff, 8, 4, 2, 1, true);
  const auto a = assemble_slab_system<2>(s.vs, s.ps, s.geo, c.coeff, {}, {}, ExecutionPolicy::Serial);
  const auto b = assemble_slab_system<2>(s.vs, s.ps, s.geo, c.coeff, {}, {}, ExecutionPolicy::Parallel);
  CHECK(max_abs(SparseMatrix(a.matrix - b.matrix)) <= 1e-12 * max_abs(a.matrix));
  CHECK((a.rhs - b.rhs).lpNorm<Eigen::Infinity>() <= 1e-12 * a.rhs.lpNorm<Eigen::Infinity>());
}

TEST_CASE("surface load vanishes without tension and interface force") {
  auto c = make_case_2d("zero");
  auto s = make_setup(c.coeff, 4, 2, 1, 1, true);
  CHECK(s.geo.num_cut() > 0);
  CHECK(surface_tension_rhs<2>(s.vs, s.geo, c.coeff).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("surface tension load of the moving circle") {
  // Pairing the load with v = x gives -tau int int kappa n.x ds dt = -tau pi for
  // R = 1/2 and T = 1; per component sums give -tau int int kappa n ds dt = 0.
  auto c = make_case_2d("zero");
  c.coeff.tau = 1.0;
  double prev_err = 1e9;
  for (int ns : {4, 8, 16}) {
    const int nt = ns / 2;
    double pair = 0.0, sx = 0.0, sy = 0.0;
    for (int n = 1; n <= nt; ++n) {
      auto s = make_setup(c.coeff, ns, nt, n, 1, false);
      const auto f = surface_tension_rhs<2>(s.vs, s.geo, c.coeff);
      for (int nd = 0; nd < s.vs.num_nodes(); ++nd) {
        const Point<2> x = s.vs.node_point(nd);
        for (int m = 0; m < 2; ++m) {
          pair += f[s.vs.dof(nd, m, 0)] * x[0] + f[s.vs.dof(nd, m, 1)] * x[1];
          sx += f[s.vs.dof(nd, m, 0)];
          sy += f[s.vs.dof(nd, m, 1)];
        }
      }
    }
    const double err = std::abs(pair + M_PI);
    CAPTURE(ns);
    CHECK(err < 0.6 * prev_err);
    CHECK(std::abs(sx) <= 1e-10);
    CHECK(std::abs(sy) <= 5.0 * err);
    prev_err = err;
  }
  CHECK(prev_err < 1e-2);
}

TEST_CASE("surface tension without curvature provider is rejected") {
  auto c = make_case_2d("zero");
  c.coeff.tau = 1.0;
  c.coeff.phi.hessian = nullptr;
  auto s = make_setup(c.coeff, 2, 1, 1, 1, false);
  CHECK_THROWS_WITH_AS(assemble_slab_system<2>(s.vs, s.ps, s.geo, c.coeff, {}),
                       doctest::Contains("curvature"), Error);
}

TEST_CASE("mean constraint rows integrate the temporal modes") {
  const auto c = make_case_2d("disk2d_smooth");
  for (bool xfem : {false, true}) {
    auto s = make_setup(c.coeff, 4, 4, 2, 1, xfem);
    const SparseMatrix C = mean_constraint<2>(s.ps, s.geo);
    REQUIRE(C.rows() == 2);
    // Radau-right weights 3/4, 1/4 on [0,1]; |Omega| dt = 4 * 1/4
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(s.ps.num_dofs());
    const Eigen::VectorXd r = C * ones;
    CHECK(r[0] == doctest::Approx(0.75));
    CHECK(r[1] == doctest::Approx(0.25));
  }
}

TEST_CASE("body force load against a constant field") {
  auto c = make_case_2d("zero");
  c.coeff.body_force = [](const Point<2>&, double, Phase p) {
    return Point<2>(p == Phase::Neg ? 1.0 : 3.0, 0.0);
  };
  auto s = make_setup(c.coeff, 8, 2, 1, 1, false);
  const auto f = body_force_rhs<2>(s.vs, s.geo, c.coeff);
  double sx = 0.0, sy = 0.0;
  for (int i = 0; i < f.size(); i += 2) {
    sx += f[i];
    sy += f[i + 1];
  }
  double neg = 0.0;
  for (int e = 0; e < s.mesh->num_simplices(); ++e) {
    if (s.geo.classes[e] == PrismClass::Neg) neg += s.slab.prism_measure(e);
    if (s.geo.cuts[e]) neg += s.geo.cuts[e]->measure(Phase::Neg);
  }
  CHECK(sx == doctest::Approx(neg + 3.0 * (2.0 - neg)).epsilon(1e-12));
  CHECK(std::abs(sy) <= 1e-14);
}

TEST_CASE("polynomial solution satisfies the discrete equations") {
  const auto c = make_case_2d("poly2d");
  for (int n : {1, 2}) {
    CAPTURE(n);
    auto s = make_setup(c.coeff, 4, 2, n, 1, false);
    const auto& ex = *c.exact;
    Eigen::VectorXd prev;
    if (n > 1) {
      prev.resize(s.vs.num_nodes() * 2);
      for (int nd = 0; nd < s.vs.num_nodes(); ++nd)
        prev.segment<2>(nd * 2) = ex(s.vs.node_point(nd), s.slab.t0, Phase::Pos).u;
    }
    const auto sys = assemble_slab_system<2>(s.vs, s.ps, s.geo, c.coeff, prev);
    const auto& L = sys.layout;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(L.size());
    x.head(L.num_velocity) =
        interpolate_velocity<2>(s.vs, [&](const Point<2>& y, double t) { return ex(y, t, Phase::Pos).u; });
    const auto& tn = s.ps.temporal().nodes();
    for (int v = 0; v < s.mesh->num_vertices(); ++v)
      for (int m = 0; m < 2; ++m)
        x[L.pressure_begin() + s.ps.dof(s.ps.slot(v, Phase::Pos), m)] =
            ex(s.mesh->vertex(v), s.slab.t0 + tn[m] * s.slab.duration(), Phase::Pos).p;
    const double res = (sys.matrix * x - sys.rhs).lpNorm<Eigen::Infinity>();
    CHECK(res <= 1e-10 * sys.rhs.lpNorm<Eigen::Infinity>());
  }
}

TEST_CASE("coordinate export") {
  const auto c = make_case_2d("poly2d");
  auto s = make_setup(c.coeff, 1, 1, 1, 0, false);
  const auto sys = assemble_slab_system<2>(s.vs, s.ps, s.geo, c.coeff, {});
  std::ostringstream os;
  sys.export_coo(os);
  std::istringstream is(os.str());
  int r, cc, nnz;
  is >> r >> cc >> nnz;
  CHECK(r == sys.layout.size());
  CHECK(cc == r);
  CHECK(nnz == sys.matrix.nonZeros());
}

TEST_CASE("insufficient quadrature is rejected") {
  const auto c = make_case_2d("poly2d");
  auto s = make_setup(c.coeff, 1, 1, 1, 2, false);
  CHECK_THROWS_WITH_AS(assemble_slab_system<2>(s.vs, s.ps, s.geo, c.coeff, {}, {4, 3, 0}),
                       doctest::Contains("quadrature order"), Error);
}
