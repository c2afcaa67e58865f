/// \file solver.cpp
/// \brief Slab solves, time marching and evaluation of the discrete solution.

#include "stis/solver.hpp"

#include <Eigen/SparseLU>
#ifdef STIS_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#endif

#include <chrono>
#include <cmath>
#include <sstream>

namespace stis {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const char* kSmallCutHint =
    "; the XFEM pressure space may contain near-degenerate cut dofs, try enabling "
    "small-cut filtering (--theta, e.g. 1e-8)";

template <class Diag>
std::string pivot_diagnostic(const Diag& diag) {
  const Eigen::VectorXd a = diag.cwiseAbs();
  std::ostringstream os;
  os << "pivot magnitudes min " << a.minCoeff() << ", max " << a.maxCoeff();
  return os.str();
}

}  // namespace

Eigen::VectorXd solve_slab(const SparseMatrix& matrix, const Eigen::VectorXd& rhs,
                           SolveReport* report, double tolerance) {
  const auto t0 = std::chrono::steady_clock::now();
  if (matrix.rows() != matrix.cols() || matrix.rows() != rhs.size())
    throw Error("solve_slab: dimension mismatch");
  // Symmetric Ruiz equilibration: enriched pressure dofs on small cuts
  // otherwise leave the system badly scaled.
  const Eigen::Index n = matrix.rows();
  Eigen::VectorXd dr = Eigen::VectorXd::Ones(n), dc = Eigen::VectorXd::Ones(n);
  SparseMatrix scaled = matrix;
  for (int sweep = 0; sweep < 8; ++sweep) {
    Eigen::VectorXd rmax = Eigen::VectorXd::Zero(n), cmax = Eigen::VectorXd::Zero(n);
    for (int c = 0; c < scaled.outerSize(); ++c)
      for (SparseMatrix::InnerIterator it(scaled, c); it; ++it) {
        const double a = std::abs(it.value());
        rmax[it.row()] = std::max(rmax[it.row()], a);
        cmax[c] = std::max(cmax[c], a);
      }
    double spread = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (rmax[i] == 0.0 || cmax[i] == 0.0)
        throw Error("singular slab system (empty row or column " + std::to_string(i) + ")" + kSmallCutHint);
      spread = std::max({spread, std::abs(1.0 - rmax[i]), std::abs(1.0 - cmax[i])});
      rmax[i] = 1.0 / std::sqrt(rmax[i]);
      cmax[i] = 1.0 / std::sqrt(cmax[i]);
    }
    scaled = rmax.asDiagonal() * scaled * cmax.asDiagonal();
    dr.array() *= rmax.array();
    dc.array() *= cmax.array();
    if (spread < 1e-2) break;
  }
  scaled.makeCompressed();

  Eigen::VectorXd x;
  std::string backend;
  auto refine = [&](auto& lu) {
    const Eigen::VectorXd b0 = dr.cwiseProduct(rhs);
    x = dc.cwiseProduct(Eigen::VectorXd(lu.solve(b0)));
    for (int step = 0; step < 3; ++step) {
      const Eigen::VectorXd r = rhs - matrix * x;
      if (r.lpNorm<Eigen::Infinity>() <= 1e-3 * tolerance * rhs.lpNorm<Eigen::Infinity>()) break;
      const Eigen::VectorXd br = dr.cwiseProduct(r);
      x += dc.cwiseProduct(Eigen::VectorXd(lu.solve(br)));
    }
  };
#ifdef STIS_HAVE_UMFPACK
  {
    backend = "umfpack";
    Eigen::UmfPackLU<SparseMatrix> lu;
    // The saddle-point pattern is structurally symmetric; AMD/METIS on A + A^T
    // gives far less fill than the default column ordering.
    lu.umfpackControl()(UMFPACK_STRATEGY) = UMFPACK_STRATEGY_SYMMETRIC;
    lu.umfpackControl()(UMFPACK_ORDERING) = UMFPACK_ORDERING_METIS;
    lu.compute(scaled);
    if (lu.info() != Eigen::Success || lu.umfpackFactorizeReturncode() != 0) {
      std::string diag = "factorization failed";
      if (lu.info() == Eigen::Success) diag = pivot_diagnostic(lu.matrixU().diagonal());
      throw Error("singular or ill-conditioned slab system (" + diag + ")" + kSmallCutHint);
    }
    refine(lu);
  }
#else
  {
    backend = "eigen-sparselu";
    Eigen::SparseLU<SparseMatrix> lu;
    lu.compute(scaled);
    if (lu.info() != Eigen::Success)
      throw Error("singular or ill-conditioned slab system (" + lu.lastErrorMessage() + ")" +
                  kSmallCutHint);
    refine(lu);
  }
#endif
  const double bnorm = rhs.lpNorm<Eigen::Infinity>();
  const double rnorm = (matrix * x - rhs).lpNorm<Eigen::Infinity>();
  const double rel = bnorm > 0.0 ? rnorm / bnorm : rnorm;
  if (!std::isfinite(rel) || rel > tolerance) {
    std::ostringstream os;
    os << "slab solve residual " << rel << " exceeds tolerance " << tolerance << kSmallCutHint;
    throw Error(os.str());
  }
  if (report) {
    report->relative_residual = rel;
    report->seconds = seconds_since(t0);
    report->backend = backend;
  }
  return x;
}

const char* to_string(PressureSpaceKind k) { return k == PressureSpaceKind::Xfem ? "xfem" : "standard"; }

PressureSpaceKind pressure_space_from_string(const std::string& s) {
  if (s == "xfem") return PressureSpaceKind::Xfem;
  if (s == "standard") return PressureSpaceKind::Standard;
  throw Error("unknown pressure space '" + s + "' (expected standard or xfem)");
}

template <int d>
Eigen::VectorXd SlabSolution<d>::trace() const {
  const int q = vspace->temporal().degree();
  Eigen::VectorXd tr(vspace->num_nodes() * d);
  // Radau-right basis: the last temporal node is t_n.
  for (int node = 0; node < vspace->num_nodes(); ++node)
    for (int a = 0; a < d; ++a) tr[node * d + a] = u[vspace->dof(node, q, a)];
  return tr;
}

template <int d>
nlohmann::json SlabSolution<d>::stats() const {
  return {{"slab", slab.index},
          {"t0", slab.t0},
          {"t1", slab.t1},
          {"velocity_dofs", vspace->num_dofs()},
          {"pressure", pspace->summary()},
          {"cut_prisms", cut_prisms},
          {"residual", residual},
          {"divergence_inf", divergence_residual},
          {"velocity_inf", velocity_norm},
          {"assemble_seconds", assemble_seconds},
          {"solve_seconds", solve_seconds}};
}

template <int d>
void SpaceTimeSolution<d>::velocity(int n, int e, const Point<d>& x, double t, Point<d>& value,
                                    Matrix<d>& grad) const {
  const auto& s = slabs.at(n - 1);
  const auto& vs = *s.vspace;
  const auto& tb = vs.temporal();
  const SimplexGeometry<d> geo(mesh->simplex_points(e));
  std::array<double, kP2Size<d>> phi;
  std::array<Point<d>, kP2Size<d>> g;
  p2_basis<d>(geo.lambda(x), geo.grad_lambda, phi, g);
  const auto nodes = vs.element_nodes(e);
  const double sref = (t - s.slab.t0) / s.slab.duration();
  value.setZero();
  grad.setZero();
  for (int m = 0; m < tb.size(); ++m) {
    const double lt = tb.value(m, sref);
    for (int i = 0; i < kP2Size<d>; ++i)
      for (int a = 0; a < d; ++a) {
        const double c = s.u[vs.dof(nodes[i], m, a)] * lt;
        value[a] += c * phi[i];
        grad.row(a) += c * g[i].transpose();
      }
  }
}

template <int d>
double SpaceTimeSolution<d>::pressure(int n, int e, const Point<d>& x, double t, Phase side) const {
  const auto& s = slabs.at(n - 1);
  const auto& ps = *s.pspace;
  const auto& tb = ps.temporal();
  const SimplexGeometry<d> geo(mesh->simplex_points(e));
  const auto l = geo.lambda(x);
  const double sref = (t - s.slab.t0) / s.slab.duration();
  double v = 0.0;
  for (int m = 0; m < tb.size(); ++m) {
    const double lt = tb.value(m, sref);
    for (int k = 0; k <= d; ++k) v += s.p[ps.dof(ps.slot(mesh->simplex(e)[k], side), m)] * l[k] * lt;
  }
  return v;
}

template <int d>
double SpaceTimeSolution<d>::pressure(int n, int e, const Point<d>& x, double t) const {
  return pressure(n, e, x, t, slabs.at(n - 1).geometry->dls.phase(e, x, t));
}

template <int d>
double SpaceTimeSolution<d>::max_divergence_ratio() const {
  double r = 0.0;
  for (const auto& s : slabs)
    if (s.velocity_norm > 0.0) r = std::max(r, s.divergence_residual / s.velocity_norm);
  return r;
}

template <int d>
double SpaceTimeSolution<d>::max_residual() const {
  double r = 0.0;
  for (const auto& s : slabs) r = std::max(r, s.residual);
  return r;
}

template <int d>
long estimate_slab_unknowns(const Box<d>& domain, const DiscretizationParams& params) {
  // A Kuhn mesh has one diagonal per face square and per cell, so its P2 nodes
  // are exactly the points of the tensor grid with spacing h/2.
  long vertices = 1, p2 = 1;
  for (int a = 0; a < d; ++a) {
    const long n = std::lround((domain.upper[a] - domain.lower[a]) * params.ns);
    vertices *= n + 1;
    p2 *= 2 * n + 1;
  }
  const long modes = params.q + 1;
  return p2 * modes * d + vertices * modes + modes;
}

template <int d>
SlabSolution<d> setup_slab(const ProblemCoefficients<d>& coeff, const DiscretizationParams& params,
                           const std::shared_ptr<const SpatialMesh<d>>& mesh, const TimePartition& time,
                           int n, long velocity_offset, long pressure_offset) {
  SlabSolution<d> s;
  s.slab = slab<d>(mesh, time, n);
  s.geometry = std::make_shared<const SlabGeometry<d>>(build_slab_geometry<d>(coeff.phi, s.slab));
  s.vspace = std::make_shared<const VelocitySpace<d>>(s.slab, params.r, params.q, velocity_offset);
  auto ps = build_pressure_space<d>(s.slab, params.r - 1, params.q, pressure_offset);
  if (params.pressure == PressureSpaceKind::Xfem) {
    ps = enrich_pressure_xfem<d>(ps, s.geometry->dls);
    ps = small_cut_filter<d>(ps, params.theta);
  }
  s.pspace = std::make_shared<const PressureSpace<d>>(std::move(ps));
  s.cut_prisms = s.geometry->num_cut();
  s.u = Eigen::VectorXd::Zero(s.vspace->num_dofs());
  s.p = Eigen::VectorXd::Zero(s.pspace->num_dofs());
  s.multipliers = Eigen::VectorXd::Zero(params.q + 1);
  return s;
}

template <int d>
SpaceTimeSolution<d> march(const ProblemCoefficients<d>& coeff, const DiscretizationParams& params,
                           const SlabCallback& on_slab) {
  coeff.validate();
  SpaceTimeSolution<d> sol{build_structured_mesh<d>(coeff.domain, params.ns),
                           build_time_partition(coeff.final_time, params.n_slabs),
                           {}};
  Eigen::VectorXd prev;  // empty: u_{h,0} = 0
  long offset_v = 0, offset_p = 0;
  for (int n = 1; n <= params.n_slabs; ++n) {
    try {
      const auto t0 = std::chrono::steady_clock::now();
      SlabSolution<d> s = setup_slab<d>(coeff, params, sol.mesh, sol.time, n, offset_v, offset_p);
      offset_v += s.vspace->num_dofs();
      offset_p += s.pspace->num_dofs();

      const SlabSystem sys = assemble_slab_system<d>(*s.vspace, *s.pspace, *s.geometry, coeff, prev,
                                                     params.orders, params.policy);
      s.assemble_seconds = seconds_since(t0);
      SolveReport rep;
      const Eigen::VectorXd x = solve_slab(sys, &rep, params.solver_tolerance);
      s.solve_seconds = rep.seconds;
      s.residual = rep.relative_residual;
      const auto& L = sys.layout;
      s.u = x.head(L.num_velocity);
      s.p = x.segment(L.pressure_begin(), L.num_pressure);
      s.multipliers = x.tail(L.num_multipliers);
      s.divergence_residual = (sys.divergence * s.u).template lpNorm<Eigen::Infinity>();
      s.velocity_norm = s.u.template lpNorm<Eigen::Infinity>();
      prev = s.trace();
      if (on_slab) on_slab(n, s.stats());
      sol.slabs.push_back(std::move(s));
    } catch (const Error& e) {
      throw Error("slab " + std::to_string(n) + ": " + e.what());
    }
  }
  return sol;
}

template struct SlabSolution<2>;
template struct SlabSolution<3>;
template class SpaceTimeSolution<2>;
template class SpaceTimeSolution<3>;
template SpaceTimeSolution<2> march<2>(const ProblemCoefficients<2>&, const DiscretizationParams&,
                                       const SlabCallback&);
template SpaceTimeSolution<3> march<3>(const ProblemCoefficients<3>&, const DiscretizationParams&,
                                       const SlabCallback&);
template SlabSolution<2> setup_slab<2>(const ProblemCoefficients<2>&, const DiscretizationParams&,
                                       const std::shared_ptr<const SpatialMesh<2>>&,
                                       const TimePartition&, int, long, long);
template SlabSolution<3> setup_slab<3>(const ProblemCoefficients<3>&, const DiscretizationParams&,
                                       const std::shared_ptr<const SpatialMesh<3>>&,
                                       const TimePartition&, int, long, long);
template long estimate_slab_unknowns<2>(const Box<2>&, const DiscretizationParams&);
template long estimate_slab_unknowns<3>(const Box<3>&, const DiscretizationParams&);

}  // namespace stis
