/// \file assembly.cpp
/// \brief Element kernels and slab assembly, serial and OpenMP.

#include "stis/assembly.hpp"

#include <cmath>
#include <ostream>

#ifdef STIS_HAVE_OPENMP
#include <omp.h>
#endif

namespace stis {

SparseMatrix SlabSystem::velocity_block() const {
  SparseMatrix a = time_derivative + viscous + upwind;
  if (convection.nonZeros() > 0) a += convection;
  return a;
}

void SlabSystem::export_coo(std::ostream& os) const {
  os << matrix.rows() << ' ' << matrix.cols() << ' ' << matrix.nonZeros() << '\n';
  os.precision(17);
  for (int c = 0; c < matrix.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(matrix, c); it; ++it)
      os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
}

template <int d>
int SlabGeometry<d>::num_cut() const {
  int n = 0;
  for (auto c : classes) n += c == PrismClass::Cut;
  return n;
}

template <int d>
SlabGeometry<d> build_slab_geometry(const LevelSetField<d>& phi, const SpaceTimeSlab<d>& slab) {
  SlabGeometry<d> geo{interpolate_levelset<d>(phi, slab), {}, {}};
  const int np = slab.num_prisms();
  geo.classes.resize(np);
  geo.cuts.resize(np);
  for (int e = 0; e < np; ++e) geo.classes[e] = geo.dls.classify(e);
#pragma omp parallel for schedule(dynamic, 64)
  for (int e = 0; e < np; ++e)
    if (geo.classes[e] == PrismClass::Cut) geo.cuts[e] = decompose_cut_prism<d>(geo.dls, e);
  return geo;
}

namespace {

struct Parts {
  bool matrices = true;
  bool body = true;
  bool surface = true;
  bool upwind = true;
};

struct ResolvedOrders {
  int space, time, interface;
};

ResolvedOrders resolve(const QuadratureOrders& o, int r, int q) {
  ResolvedOrders out;
  out.space = o.space > 0 ? o.space : 2 * r;
  out.time = o.time > 0 ? o.time : 2 * q + 1;
  out.interface = o.interface > 0 ? o.interface : out.space + out.time;
  if (out.space < 2 * r - 2 || out.time < 2 * q)
    throw Error("quadrature order insufficient for the requested degrees (need space >= " +
                std::to_string(2 * r - 2) + ", time >= " + std::to_string(2 * q) + ")");
  return out;
}

template <int d>
struct Context {
  const VelocitySpace<d>& vspace;
  const PressureSpace<d>& pspace;
  const SlabGeometry<d>& geo;
  const ProblemCoefficients<d>& coeff;
  const Eigen::VectorXd& prev_trace;
  ResolvedOrders orders;
  Parts parts;
};

template <int d>
struct Local {
  static constexpr int nodes = kP2Size<d>;
  int Q = 0;
  int nv = 0;  // velocity local size
  int np = 0;  // pressure local size (vertex, phase, mode)
  Eigen::MatrixXd mt, visc, conv, up, b, c;
  Eigen::VectorXd fb, fs, fu;
  std::vector<int> vdofs, pdofs;

  void resize(int q) {
    Q = q + 1;
    nv = nodes * Q * d;
    np = (d + 1) * 2 * Q;
    mt.setZero(nv, nv);
    visc.setZero(nv, nv);
    conv.setZero(nv, nv);
    up.setZero(nv, nv);
    b.setZero(np, nv);
    c.setZero(Q, np);
    fb.setZero(nv);
    fs.setZero(nv);
    fu.setZero(nv);
    vdofs.resize(nv);
    pdofs.resize(np);
  }
  int vi(int node, int mode, int comp) const { return (node * Q + mode) * d + comp; }
  int pi(int vert, int phase, int mode) const { return (vert * 2 + phase) * Q + mode; }
};

template <int d>
void volume_terms(const Context<d>& ctx, const SimplexGeometry<d>& geo, Phase phase,
                  const STQuadRule<d>& rule, Local<d>& L) {
  const auto& slab = ctx.vspace.slab();
  const auto& tb = ctx.vspace.temporal();
  const int Q = L.Q;
  const double rho = ctx.coeff.rho_of(phase), mu = ctx.coeff.mu_of(phase);
  const int ph = static_cast<int>(phase);
  const bool conv = static_cast<bool>(ctx.coeff.convection);
  const bool body = ctx.parts.body && static_cast<bool>(ctx.coeff.body_force);
  std::array<double, kP2Size<d>> phi;
  std::array<Point<d>, kP2Size<d>> grad;
  std::vector<double> lt(Q), dlt(Q);

  for (std::size_t qp = 0; qp < rule.size(); ++qp) {
    const Point<d> x = rule.points[qp].template head<d>();
    const double t = rule.points[qp][d];
    const double w = rule.weights[qp];
    const auto lambda = geo.lambda(x);
    p2_basis<d>(lambda, geo.grad_lambda, phi, grad);
    const double s = (t - slab.t0) / slab.duration();
    for (int m = 0; m < Q; ++m) {
      lt[m] = tb.value(m, s);
      dlt[m] = tb.derivative(m, s) / slab.duration();
    }

    if (body) {
      const Point<d> g = ctx.coeff.body_force(x, t, phase);
      for (int j = 0; j < L.nodes; ++j)
        for (int l = 0; l < Q; ++l)
          for (int b = 0; b < d; ++b) L.fb[L.vi(j, l, b)] += w * lt[l] * phi[j] * g[b];
    }
    if (!ctx.parts.matrices) continue;

    Point<d> wv = Point<d>::Zero();
    if (conv) wv = ctx.coeff.convection(x, t);

    for (int j = 0; j < L.nodes; ++j) {
      for (int i = 0; i < L.nodes; ++i) {
        const double mass = w * rho * phi[i] * phi[j];
        const double gg = grad[i].dot(grad[j]);
        const double adv = conv ? w * rho * phi[j] * wv.dot(grad[i]) : 0.0;
        for (int l = 0; l < Q; ++l)
          for (int m = 0; m < Q; ++m) {
            const double tt = w * mu * lt[m] * lt[l];
            const double dm = mass * dlt[m] * lt[l];
            const double cv = adv * lt[m] * lt[l];
            for (int a = 0; a < d; ++a) {
              const int col = L.vi(i, m, a);
              for (int b = 0; b < d; ++b) {
                const int row = L.vi(j, l, b);
                double v = 2.0 * tt * grad[i][b] * grad[j][a];
                if (a == b) {
                  v += 2.0 * tt * gg;
                  L.mt(row, col) += dm;
                  if (conv) L.conv(row, col) += cv;
                }
                L.visc(row, col) += v;
              }
            }
          }
      }
    }
    // Divergence and mean rows; pressure basis lambda_k of this phase.
    for (int k = 0; k <= d; ++k)
      for (int l = 0; l < Q; ++l) {
        const int prow = L.pi(k, ph, l);
        for (int i = 0; i < L.nodes; ++i)
          for (int m = 0; m < Q; ++m) {
            const double base = w * lambda[k] * lt[l] * lt[m];
            for (int a = 0; a < d; ++a) L.b(prow, L.vi(i, m, a)) += base * grad[i][a];
          }
        for (int m = 0; m < Q; ++m) L.c(m, prow) += w * lt[m] * lt[l] * lambda[k];
      }
  }
}

template <int d>
void upwind_terms(const Context<d>& ctx, int e, const SimplexGeometry<d>& geo,
                  const std::array<int, kP2Size<d>>& nodes, Local<d>& L) {
  const auto& tb = ctx.vspace.temporal();
  const int Q = L.Q;
  std::vector<double> l0(Q);
  for (int m = 0; m < Q; ++m) l0[m] = tb.value(m, 0.0);
  const bool have_prev = ctx.prev_trace.size() > 0;
  const auto cut = ctx.geo.dls.bottom_cut(e);
  std::array<double, kP2Size<d>> phi;
  std::array<Point<d>, kP2Size<d>> grad;
  for (Phase phase : {Phase::Neg, Phase::Pos}) {
    const double rho = ctx.coeff.rho_of(phase);
    QuadRule<d> rule;
    for (const auto& s : (phase == Phase::Neg ? cut.neg : cut.pos))
      append_simplex_rule<d>(s, ctx.orders.space, rule);
    for (std::size_t qp = 0; qp < rule.size(); ++qp) {
      const double w = rule.weights[qp] * rho;
      p2_basis<d>(geo.lambda(rule.points[qp]), geo.grad_lambda, phi, grad);
      Point<d> prev = Point<d>::Zero();
      if (have_prev)
        for (int i = 0; i < L.nodes; ++i)
          prev += phi[i] * ctx.prev_trace.template segment<d>(nodes[i] * d);
      for (int j = 0; j < L.nodes; ++j)
        for (int l = 0; l < Q; ++l) {
          if (l0[l] == 0.0) continue;
          for (int b = 0; b < d; ++b) L.fu[L.vi(j, l, b)] += w * phi[j] * l0[l] * prev[b];
          if (!ctx.parts.matrices) continue;
          for (int i = 0; i < L.nodes; ++i)
            for (int m = 0; m < Q; ++m) {
              const double v = w * phi[i] * phi[j] * l0[m] * l0[l];
              for (int a = 0; a < d; ++a) L.up(L.vi(j, l, a), L.vi(i, m, a)) += v;
            }
        }
    }
  }
}

template <int d>
void surface_terms(const Context<d>& ctx, const CutDecomposition<d>& dec,
                   const SimplexGeometry<d>& geo, Local<d>& L) {
  const auto& coeff = ctx.coeff;
  const bool tension = coeff.tau > 0.0;
  const bool extra = static_cast<bool>(coeff.interface_force);
  if (!tension && !extra) return;
  const auto& slab = ctx.vspace.slab();
  const auto& tb = ctx.vspace.temporal();
  const int Q = L.Q;
  const auto rule = quadrature_interface<d>(dec, ctx.orders.interface);
  std::array<double, kP2Size<d>> phi;
  std::array<Point<d>, kP2Size<d>> grad;
  for (std::size_t qp = 0; qp < rule.size(); ++qp) {
    const double w = rule.weights[qp] * rule.nx_factor[qp];
    if (w == 0.0) continue;
    const Point<d> x = rule.points[qp].template head<d>();
    const double t = rule.points[qp][d];
    Point<d> force = Point<d>::Zero();
    if (tension) force -= coeff.tau * coeff.phi.curvature(x, t) * coeff.phi.normal(x, t);
    if (extra) force += coeff.interface_force(x, t);
    p2_basis<d>(geo.lambda(x), geo.grad_lambda, phi, grad);
    const double s = (t - slab.t0) / slab.duration();
    for (int l = 0; l < Q; ++l) {
      const double lt = tb.value(l, s);
      for (int j = 0; j < L.nodes; ++j)
        for (int b = 0; b < d; ++b) L.fs[L.vi(j, l, b)] += w * lt * phi[j] * force[b];
    }
  }
}

template <int d>
void element_kernel(const Context<d>& ctx, int e, Local<d>& L) {
  const auto& vs = ctx.vspace;
  const auto& ps = ctx.pspace;
  const auto& slab = vs.slab();
  const auto& mesh = *slab.mesh;
  L.resize(vs.temporal().degree());
  const auto nodes = vs.element_nodes(e);
  for (int i = 0; i < L.nodes; ++i)
    for (int m = 0; m < L.Q; ++m)
      for (int a = 0; a < d; ++a) L.vdofs[L.vi(i, m, a)] = vs.dof(nodes[i], m, a);
  for (int k = 0; k <= d; ++k)
    for (int ph = 0; ph < 2; ++ph)
      for (int m = 0; m < L.Q; ++m)
        L.pdofs[L.pi(k, ph, m)] = ps.dof(ps.slot(mesh.simplex(e)[k], static_cast<Phase>(ph)), m);

  const SimplexGeometry<d> geo(mesh.simplex_points(e));
  const PrismClass cls = ctx.geo.classes[e];
  if (ctx.parts.matrices || ctx.parts.body) {
    if (cls == PrismClass::Cut) {
      const auto& dec = *ctx.geo.cuts[e];
      for (Phase phase : {Phase::Neg, Phase::Pos}) {
        const auto rule = quadrature_subdomain<d>(slab, dec, phase, ctx.orders.space, ctx.orders.time);
        volume_terms<d>(ctx, geo, phase, rule, L);
      }
    } else {
      const auto rule = prism_tensor_rule<d>(slab, e, ctx.orders.space, ctx.orders.time);
      volume_terms<d>(ctx, geo, cls == PrismClass::Neg ? Phase::Neg : Phase::Pos, rule, L);
    }
  }
  if (ctx.parts.upwind) upwind_terms<d>(ctx, e, geo, nodes, L);
  if (ctx.parts.surface && cls == PrismClass::Cut) surface_terms<d>(ctx, *ctx.geo.cuts[e], geo, L);
}

struct Accumulator {
  std::vector<Triplet> mt, visc, conv, up, b, c;
  Eigen::VectorXd fb, fs, fu;

  void init(int nv) {
    fb.setZero(nv);
    fs.setZero(nv);
    fu.setZero(nv);
  }
  void merge(Accumulator& o) {
    auto cat = [](std::vector<Triplet>& a, std::vector<Triplet>& src) {
      a.insert(a.end(), src.begin(), src.end());
      std::vector<Triplet>().swap(src);
    };
    cat(mt, o.mt);
    cat(visc, o.visc);
    cat(conv, o.conv);
    cat(up, o.up);
    cat(b, o.b);
    cat(c, o.c);
    fb += o.fb;
    fs += o.fs;
    fu += o.fu;
  }
};

template <int d>
void scatter(const Local<d>& L, Accumulator& acc, bool matrices, bool conv) {
  auto add = [](std::vector<Triplet>& out, const Eigen::MatrixXd& m, const std::vector<int>& rows,
                const std::vector<int>& cols) {
    for (int c = 0; c < m.cols(); ++c)
      for (int r = 0; r < m.rows(); ++r)
        if (m(r, c) != 0.0) out.emplace_back(rows[r], cols[c], m(r, c));
  };
  if (matrices) {
    add(acc.mt, L.mt, L.vdofs, L.vdofs);
    add(acc.visc, L.visc, L.vdofs, L.vdofs);
    if (conv) add(acc.conv, L.conv, L.vdofs, L.vdofs);
    add(acc.b, L.b, L.pdofs, L.vdofs);
    std::vector<int> modes(L.Q);
    for (int m = 0; m < L.Q; ++m) modes[m] = m;
    add(acc.c, L.c, modes, L.pdofs);
  }
  add(acc.up, L.up, L.vdofs, L.vdofs);
  for (int i = 0; i < L.nv; ++i) {
    acc.fb[L.vdofs[i]] += L.fb[i];
    acc.fs[L.vdofs[i]] += L.fs[i];
    acc.fu[L.vdofs[i]] += L.fu[i];
  }
}

template <int d>
Accumulator run(const Context<d>& ctx, ExecutionPolicy policy) {
  const int np = ctx.vspace.slab().num_prisms();
  const int nv = ctx.vspace.num_dofs();
  const bool conv = static_cast<bool>(ctx.coeff.convection);
  Accumulator total;
  total.init(nv);
  if (policy == ExecutionPolicy::Serial) {
    Local<d> L;
    for (int e = 0; e < np; ++e) {
      element_kernel<d>(ctx, e, L);
      scatter<d>(L, total, ctx.parts.matrices, conv);
    }
    return total;
  }
#ifdef STIS_HAVE_OPENMP
  const int nthreads = omp_get_max_threads();
#else
  const int nthreads = 1;
#endif
  std::vector<Accumulator> per_thread(nthreads);
  std::vector<std::string> errors(nthreads);
#pragma omp parallel num_threads(nthreads)
  {
#ifdef STIS_HAVE_OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
    Accumulator& acc = per_thread[tid];
    acc.init(nv);
    Local<d> L;
#pragma omp for schedule(dynamic, 64)
    for (int e = 0; e < np; ++e) {
      if (!errors[tid].empty()) continue;
      try {
        element_kernel<d>(ctx, e, L);
        scatter<d>(L, acc, ctx.parts.matrices, conv);
      } catch (const std::exception& ex) {
        errors[tid] = ex.what();
      }
    }
  }
  for (const auto& msg : errors)
    if (!msg.empty()) throw Error(msg);
  for (auto& acc : per_thread) total.merge(acc);
  return total;
}

SparseMatrix from_triplets(int rows, int cols, const std::vector<Triplet>& t) {
  SparseMatrix m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

template <int d>
void check_coefficients(const ProblemCoefficients<d>& coeff) {
  coeff.validate();
  if (coeff.tau > 0.0 && !(coeff.phi.grad && coeff.phi.hessian))
    throw Error("surface tension needs a curvature provider (analytic gradient and Hessian of phi)");
}

}  // namespace

template <int d>
Eigen::VectorXd interpolate_velocity(const VelocitySpace<d>& vspace,
                                     const std::function<Point<d>(const Point<d>&, double)>& u) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(vspace.num_dofs());
  if (!u) return out;
  const auto& slab = vspace.slab();
  const auto& tb = vspace.temporal();
  for (int n = 0; n < vspace.num_nodes(); ++n) {
    const Point<d> x = vspace.node_point(n);
    for (int m = 0; m < tb.size(); ++m) {
      const Point<d> val = u(x, slab.t0 + tb.nodes()[m] * slab.duration());
      for (int a = 0; a < d; ++a) out[vspace.dof(n, m, a)] = val[a];
    }
  }
  return out;
}

template <int d>
SlabSystem assemble_slab_system(const VelocitySpace<d>& vspace, const PressureSpace<d>& pspace,
                                const SlabGeometry<d>& geo, const ProblemCoefficients<d>& coeff,
                                const Eigen::VectorXd& prev_trace, QuadratureOrders orders,
                                ExecutionPolicy policy) {
  check_coefficients<d>(coeff);
  const int q = vspace.temporal().degree();
  if (prev_trace.size() != 0 && prev_trace.size() != vspace.num_nodes() * d)
    throw Error("previous trace has the wrong size");
  Context<d> ctx{vspace, pspace, geo, coeff, prev_trace, resolve(orders, vspace.spatial_degree(), q), {}};
  Accumulator acc = run<d>(ctx, policy);

  SlabSystem sys;
  const int nv = vspace.num_dofs(), np = pspace.num_dofs(), nq = q + 1;
  sys.layout = {nv, np, nq};
  sys.time_derivative = from_triplets(nv, nv, acc.mt);
  sys.viscous = from_triplets(nv, nv, acc.visc);
  sys.convection = from_triplets(nv, nv, acc.conv);
  sys.upwind = from_triplets(nv, nv, acc.up);
  sys.divergence = from_triplets(np, nv, acc.b);
  sys.mean = from_triplets(nq, np, acc.c);
  sys.rhs_body = std::move(acc.fb);
  sys.rhs_surface = std::move(acc.fs);
  sys.rhs_upwind = std::move(acc.fu);

  sys.dirichlet.assign(nv, false);
  for (int i = 0; i < nv; ++i) sys.dirichlet[i] = vspace.is_dirichlet(i);
  sys.dirichlet_values = interpolate_velocity<d>(vspace, coeff.dirichlet);
  for (int i = 0; i < nv; ++i)
    if (!sys.dirichlet[i]) sys.dirichlet_values[i] = 0.0;

  const int n = sys.layout.size();
  const int p0 = sys.layout.pressure_begin(), l0 = sys.layout.multiplier_begin();
  const auto& g = sys.dirichlet_values;
  const auto& dir = sys.dirichlet;
  sys.rhs = Eigen::VectorXd::Zero(n);
  sys.rhs.head(nv) = sys.rhs_body + sys.rhs_surface + sys.rhs_upwind;

  std::vector<Triplet> t;
  const SparseMatrix A = sys.velocity_block();
  t.reserve(A.nonZeros() + 2 * sys.divergence.nonZeros() + 2 * sys.mean.nonZeros() + nv);
  for (int c = 0; c < A.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(A, c); it; ++it) {
      if (dir[it.row()]) continue;
      if (dir[c]) {
        sys.rhs[it.row()] -= it.value() * g[c];
        continue;
      }
      t.emplace_back(it.row(), c, it.value());
    }
  for (int c = 0; c < sys.divergence.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(sys.divergence, c); it; ++it) {
      const int prow = p0 + it.row();
      if (dir[c]) {
        sys.rhs[prow] += it.value() * g[c];
        continue;
      }
      t.emplace_back(prow, c, -it.value());
      t.emplace_back(c, prow, -it.value());
    }
  for (int c = 0; c < sys.mean.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(sys.mean, c); it; ++it) {
      t.emplace_back(l0 + it.row(), p0 + c, it.value());
      t.emplace_back(p0 + c, l0 + it.row(), it.value());
    }
  for (int i = 0; i < nv; ++i)
    if (dir[i]) {
      t.emplace_back(i, i, 1.0);
      sys.rhs[i] = g[i];
    }
  sys.matrix = from_triplets(n, n, t);
  return sys;
}

template <int d>
Eigen::VectorXd surface_tension_rhs(const VelocitySpace<d>& vspace, const SlabGeometry<d>& geo,
                                    const ProblemCoefficients<d>& coeff, QuadratureOrders orders) {
  check_coefficients<d>(coeff);
  const PressureSpace<d> ps(vspace.slab(), 1, vspace.temporal().degree());
  const Eigen::VectorXd none;
  Context<d> ctx{vspace, ps, geo, coeff, none,
                 resolve(orders, vspace.spatial_degree(), vspace.temporal().degree()),
                 {false, false, true, false}};
  return run<d>(ctx, ExecutionPolicy::Serial).fs;
}

template <int d>
Eigen::VectorXd body_force_rhs(const VelocitySpace<d>& vspace, const SlabGeometry<d>& geo,
                               const ProblemCoefficients<d>& coeff, QuadratureOrders orders) {
  const PressureSpace<d> ps(vspace.slab(), 1, vspace.temporal().degree());
  const Eigen::VectorXd none;
  Context<d> ctx{vspace, ps, geo, coeff, none,
                 resolve(orders, vspace.spatial_degree(), vspace.temporal().degree()),
                 {false, true, false, false}};
  return run<d>(ctx, ExecutionPolicy::Serial).fb;
}

template <int d>
SparseMatrix mean_constraint(const PressureSpace<d>& pspace, const SlabGeometry<d>& geo,
                             QuadratureOrders orders) {
  const VelocitySpace<d> vs(pspace.slab(), 2, pspace.temporal().degree());
  ProblemCoefficients<d> coeff;
  coeff.phi.phi = [](const Point<d>&, double) { return 1.0; };
  const Eigen::VectorXd none;
  Context<d> ctx{vs, pspace, geo, coeff, none, resolve(orders, 2, pspace.temporal().degree()),
                 {true, false, false, false}};
  Accumulator acc = run<d>(ctx, ExecutionPolicy::Serial);
  return from_triplets(pspace.temporal().size(), pspace.num_dofs(), acc.c);
}

#define STIS_INSTANTIATE(d)                                                                       \
  template struct SlabGeometry<d>;                                                                \
  template SlabGeometry<d> build_slab_geometry<d>(const LevelSetField<d>&, const SpaceTimeSlab<d>&); \
  template SlabSystem assemble_slab_system<d>(const VelocitySpace<d>&, const PressureSpace<d>&,   \
                                              const SlabGeometry<d>&, const ProblemCoefficients<d>&, \
                                              const Eigen::VectorXd&, QuadratureOrders,           \
                                              ExecutionPolicy);                                   \
  template Eigen::VectorXd surface_tension_rhs<d>(const VelocitySpace<d>&, const SlabGeometry<d>&, \
                                                  const ProblemCoefficients<d>&, QuadratureOrders); \
  template Eigen::VectorXd body_force_rhs<d>(const VelocitySpace<d>&, const SlabGeometry<d>&,     \
                                             const ProblemCoefficients<d>&, QuadratureOrders);    \
  template SparseMatrix mean_constraint<d>(const PressureSpace<d>&, const SlabGeometry<d>&,       \
                                           QuadratureOrders);                                     \
  template Eigen::VectorXd interpolate_velocity<d>(                                               \
      const VelocitySpace<d>&, const std::function<Point<d>(const Point<d>&, double)>&);

STIS_INSTANTIATE(2)
STIS_INSTANTIATE(3)

#undef STIS_INSTANTIATE

}  // namespace stis
