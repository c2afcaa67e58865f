/// \file error_analysis.cpp
/// \brief Error integrals with analytic-interface refinement, EOC and tables.

#include "stis/error_analysis.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <sstream>

#ifdef STIS_HAVE_OPENMP
#include <omp.h>
#endif

namespace stis {

namespace {

struct Accum {
  double h1 = 0.0, l2 = 0.0, p2 = 0.0;
  std::vector<double> pb;  // int int e_p l_m

  void add(const Accum& o) {
    h1 += o.h1;
    l2 += o.l2;
    p2 += o.p2;
    for (std::size_t m = 0; m < pb.size(); ++m) pb[m] += o.pb[m];
  }
};

struct Resolved {
  int space, time, cut, leaf, depth;
};

// Discrete solution restricted to one prism.
template <int d>
struct PrismData {
  static constexpr int N = kP2Size<d>;
  SimplexGeometry<d> geo;
  int e;
  int Q;
  std::vector<Point<d>> U;                 // (node * Q + mode)
  std::array<std::vector<double>, 2> P;    // per side: vertex * Q + mode

  PrismData(const SlabSolution<d>& s, int e)
      : geo(s.slab.mesh->simplex_points(e)), e(e), Q(s.vspace->temporal().size()) {
    const auto& vs = *s.vspace;
    const auto& ps = *s.pspace;
    const auto nodes = vs.element_nodes(e);
    U.resize(N * Q);
    for (int i = 0; i < N; ++i)
      for (int m = 0; m < Q; ++m)
        for (int a = 0; a < d; ++a) U[i * Q + m][a] = s.u[vs.dof(nodes[i], m, a)];
    const auto& cell = s.slab.mesh->simplex(e);
    for (int side = 0; side < 2; ++side) {
      P[side].resize((d + 1) * Q);
      for (int k = 0; k <= d; ++k)
        for (int m = 0; m < Q; ++m)
          P[side][k * Q + m] = s.p[ps.dof(ps.slot(cell[k], static_cast<Phase>(side)), m)];
    }
  }
};

template <int d>
struct Integrator {
  const SlabSolution<d>& s;
  const ExactSolution<d>& exact;
  const LevelSetField<d>& phi;
  Resolved o;
  bool discrete_side = false;

  static constexpr int D = d + 1;

  void point(const PrismData<d>& pd, const STPoint<d>& y, double w, Phase side, Accum& acc) const {
    const Point<d> x = y.template head<d>();
    const double t = y[d];
    const Phase pside = discrete_side ? s.geometry->dls.phase(pd.e, x, t) : side;
    std::array<double, kP2Size<d>> val;
    std::array<Point<d>, kP2Size<d>> grad;
    p2_basis<d>(pd.geo.lambda(x), pd.geo.grad_lambda, val, grad);
    const auto lambda = pd.geo.lambda(x);
    const auto& tb = s.vspace->temporal();
    const double sref = (t - s.slab.t0) / s.slab.duration();
    Point<d> uh = Point<d>::Zero();
    Matrix<d> gh = Matrix<d>::Zero();
    double ph = 0.0;
    const int side_i = static_cast<int>(pside);
    for (int m = 0; m < pd.Q; ++m) {
      const double lt = tb.value(m, sref);
      for (int i = 0; i < kP2Size<d>; ++i) {
        const Point<d>& c = pd.U[i * pd.Q + m];
        uh += (lt * val[i]) * c;
        gh += (lt * c) * grad[i].transpose();
      }
      for (int k = 0; k <= d; ++k) ph += pd.P[side_i][k * pd.Q + m] * lambda[k] * lt;
    }
    const FieldValues<d> f = exact(x, t, side);
    acc.h1 += w * (f.grad_u - gh).squaredNorm();
    acc.l2 += w * (f.u - uh).squaredNorm();
    const double ep = f.p - ph;
    acc.p2 += w * ep * ep;
    for (int m = 0; m < pd.Q; ++m) acc.pb[m] += w * ep * tb.value(m, sref);
  }

  // Space-time gradient bound of phi over a simplex (exact for quadratic phi).
  double lipschitz(const Simplex<D>& sx) const {
    double L = 0.0;
    for (const auto& v : sx) {
      const Point<d> x = v.template head<d>();
      const double t = v[d];
      double dt;
      if (phi.dt) {
        dt = phi.dt(x, t);
      } else {
        const double h = 1e-6;
        dt = (phi(x, t + h) - phi(x, t - h)) / (2 * h);
      }
      const Point<d> g = phi.gradient(x, t);
      L = std::max(L, std::sqrt(g.squaredNorm() + dt * dt));
    }
    return 1.1 * L;
  }

  static double diameter(const Simplex<D>& sx) {
    double m = 0.0;
    for (int i = 0; i <= D; ++i)
      for (int j = i + 1; j <= D; ++j) m = std::max(m, (sx[i] - sx[j]).norm());
    return m;
  }

  bool may_cut(const Simplex<D>& sx, const std::array<double, D + 1>& vals) const {
    bool neg = false, pos = false;
    double mn = std::numeric_limits<double>::infinity();
    for (double v : vals) {
      (v < 0.0 ? neg : pos) = true;
      mn = std::min(mn, std::abs(v));
    }
    if (neg && pos) return true;
    return mn <= lipschitz(sx) * diameter(sx);
  }

  std::array<double, D + 1> values(const Simplex<D>& sx) const {
    std::array<double, D + 1> v;
    for (int i = 0; i <= D; ++i) v[i] = phi(sx[i].template head<d>(), sx[i][d]);
    return v;
  }

  void rule_on(const PrismData<d>& pd, const Simplex<D>& sx, int degree, Phase side, Accum& acc) const {
    QuadRule<D> r;
    append_simplex_rule<D>(sx, degree, r);
    for (std::size_t q = 0; q < r.size(); ++q) point(pd, r.points[q], r.weights[q], side, acc);
  }

  void simplex(const PrismData<d>& pd, const Simplex<D>& sx, int level, Accum& acc) const {
    const auto vals = values(sx);
    if (!may_cut(sx, vals)) {
      rule_on(pd, sx, level == 0 ? o.cut : o.leaf, vals[0] < 0.0 ? Phase::Neg : Phase::Pos, acc);
      return;
    }
    if (level >= o.depth) {
      const auto cut = cut_simplex<D>(sx, vals);
      for (const auto& c : cut.neg) rule_on(pd, c, o.leaf, Phase::Neg, acc);
      for (const auto& c : cut.pos) rule_on(pd, c, o.leaf, Phase::Pos, acc);
      return;
    }
    int bi = 0, bj = 1;
    double best = -1.0;
    for (int i = 0; i <= D; ++i)
      for (int j = i + 1; j <= D; ++j) {
        const double len = (sx[i] - sx[j]).squaredNorm();
        if (len > best) {
          best = len;
          bi = i;
          bj = j;
        }
      }
    const STPoint<d> mid = 0.5 * (sx[bi] + sx[bj]);
    Simplex<D> a = sx, b = sx;
    a[bj] = mid;
    b[bi] = mid;
    simplex(pd, a, level + 1, acc);
    simplex(pd, b, level + 1, acc);
  }

  void prism(int e, Accum& acc) const {
    const PrismData<d> pd(s, e);
    const auto& slab = s.slab;
    std::vector<Simplex<D>> parts;
    bool cut = false;
    for (const auto& st : prism_split<d>(*slab.mesh, e)) {
      Simplex<D> sx;
      for (int r = 0; r <= D; ++r) sx[r] = slab.prism_vertex(e, st[r].first, st[r].second);
      parts.push_back(sx);
      if (!cut) cut = may_cut(sx, values(sx));
    }
    if (cut) {
      for (const auto& sx : parts) simplex(pd, sx, 0, acc);
      return;
    }
    const auto rule = prism_tensor_rule<d>(slab, e, o.space, o.time);
    const auto v0 = slab.prism_vertex(e, 0, 0);
    const Phase side = phi(v0.template head<d>(), v0[d]) < 0.0 ? Phase::Neg : Phase::Pos;
    for (std::size_t q = 0; q < rule.size(); ++q) point(pd, rule.points[q], rule.weights[q], side, acc);
  }
};

Resolved resolve(const ErrorOptions& opt, int r, int q) {
  Resolved o;
  o.space = opt.space_order > 0 ? opt.space_order : 2 * r + 2;
  o.time = opt.time_order > 0 ? opt.time_order : 2 * q + 2;
  o.cut = opt.cut_degree > 0 ? opt.cut_degree : o.space + o.time;
  o.leaf = opt.leaf_degree;
  o.depth = opt.refine_depth;
  if (o.leaf < 1 || o.depth < 0) throw Error("invalid error quadrature options");
  return o;
}

}  // namespace

template <int d>
ErrorNorms compute_errors(const SpaceTimeSolution<d>& sol, const ExactSolution<d>& exact,
                          const LevelSetField<d>& phi, const ErrorOptions& opt) {
  ErrorNorms out;
  for (const auto& s : sol.slabs) {
    const int Q = s.vspace->temporal().size();
    const Integrator<d> integ{s, exact, phi, resolve(opt, s.vspace->spatial_degree(), Q - 1),
                              opt.discrete_pressure_side};
    const int np = s.slab.num_prisms();
    Accum total;
    total.pb.assign(Q, 0.0);
    if (opt.policy == ExecutionPolicy::Serial) {
      for (int e = 0; e < np; ++e) integ.prism(e, total);
    } else {
      std::string error;
#pragma omp parallel
      {
        Accum local;
        local.pb.assign(Q, 0.0);
#pragma omp for schedule(dynamic, 32)
        for (int e = 0; e < np; ++e) {
          try {
            integ.prism(e, local);
          } catch (const std::exception& ex) {
#pragma omp critical
            error = ex.what();
          }
        }
#pragma omp critical
        total.add(local);
      }
      if (!error.empty()) throw Error(error);
    }
    out.velocity_l2h1 += total.h1;
    out.velocity_l2l2 += total.l2;
    double p2 = total.p2;
    if (opt.pressure_modulo_constants) {
      // min over c in P_q(I_n) of ||e_p - c||^2 = ||e_p||^2 - b^T G^{-1} b,
      // G_mk = |Omega| int_{I_n} l_m l_k.
      const auto& tb = s.vspace->temporal();
      const Rule1D& g = gauss_rule_for_degree(2 * Q);
      Eigen::MatrixXd G = Eigen::MatrixXd::Zero(Q, Q);
      for (std::size_t i = 0; i < g.points.size(); ++i)
        for (int m = 0; m < Q; ++m)
          for (int k = 0; k < Q; ++k)
            G(m, k) += g.weights[i] * tb.value(m, g.points[i]) * tb.value(k, g.points[i]);
      G *= sol.mesh->box().volume() * s.slab.duration();
      const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(total.pb.data(), Q);
      p2 -= b.dot(G.ldlt().solve(b));
    }
    out.pressure_l2l2 += std::max(p2, 0.0);
  }
  out.velocity_l2h1 = std::sqrt(out.velocity_l2h1);
  out.velocity_l2l2 = std::sqrt(out.velocity_l2l2);
  out.pressure_l2l2 = std::sqrt(out.pressure_l2l2);
  return out;
}

template <int d>
double error_L2H1(const SpaceTimeSolution<d>& sol, const ExactSolution<d>& exact,
                  const LevelSetField<d>& phi, const ErrorOptions& opt) {
  return compute_errors<d>(sol, exact, phi, opt).velocity_l2h1;
}

template <int d>
double error_L2L2_pressure(const SpaceTimeSolution<d>& sol, const ExactSolution<d>& exact,
                           const LevelSetField<d>& phi, const ErrorOptions& opt) {
  return compute_errors<d>(sol, exact, phi, opt).pressure_l2l2;
}

template <int d>
SpaceTimeSolution<d> interpolate_exact(const ProblemCoefficients<d>& coeff,
                                       const ExactSolution<d>& exact,
                                       const DiscretizationParams& params) {
  SpaceTimeSolution<d> sol{build_structured_mesh<d>(coeff.domain, params.ns),
                           build_time_partition(coeff.final_time, params.n_slabs),
                           {}};
  const auto& phi = coeff.phi;
  auto side = [&](const Point<d>& x, double t) { return phi(x, t) < 0.0 ? Phase::Neg : Phase::Pos; };
  for (int n = 1; n <= params.n_slabs; ++n) {
    SlabSolution<d> s = setup_slab<d>(coeff, params, sol.mesh, sol.time, n);
    s.u = interpolate_velocity<d>(*s.vspace, [&](const Point<d>& x, double t) {
      return exact(x, t, side(x, t)).u;
    });
    const auto& ps = *s.pspace;
    const auto& nodes = ps.temporal().nodes();
    for (int v = 0; v < ps.num_vertices(); ++v) {
      const Point<d>& x = sol.mesh->vertex(v);
      for (int m = 0; m < ps.temporal().size(); ++m) {
        const double t = s.slab.t0 + nodes[m] * s.slab.duration();
        if (ps.is_enriched(v)) {
          for (Phase p : {Phase::Neg, Phase::Pos}) s.p[ps.dof(ps.slot(v, p), m)] = exact(x, t, p).p;
        } else {
          s.p[ps.dof(ps.slot(v, Phase::Neg), m)] = exact(x, t, side(x, t)).p;
        }
      }
    }
    sol.slabs.push_back(std::move(s));
  }
  return sol;
}

double eoc(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0) || !std::isfinite(e_coarse) || !std::isfinite(e_fine))
    return std::numeric_limits<double>::quiet_NaN();
  return std::log2(e_coarse / e_fine);
}

std::string format_value(double v) {
  if (!std::isfinite(v)) return "";
  char buf[32];
  if (v != 0.0 && std::abs(v) < 1e-3)
    std::snprintf(buf, sizeof buf, "%.5e", v);
  else
    std::snprintf(buf, sizeof buf, "%.5f", v);
  return buf;
}

ErrorTable::ErrorTable(std::vector<int> ns, std::vector<int> nt, std::string title)
    : title_(std::move(title)), ns_(std::move(ns)), nt_(std::move(nt)), values_(ns_.size() * nt_.size()) {
  if (ns_.empty() || nt_.empty()) throw Error("error table needs at least one row and column");
}

int ErrorTable::row(int ns) const {
  const auto it = std::find(ns_.begin(), ns_.end(), ns);
  if (it == ns_.end()) throw Error("N_S = " + std::to_string(ns) + " is not a table row");
  return static_cast<int>(it - ns_.begin());
}

int ErrorTable::col(int nt) const {
  const auto it = std::find(nt_.begin(), nt_.end(), nt);
  if (it == nt_.end()) throw Error("N = " + std::to_string(nt) + " is not a table column");
  return static_cast<int>(it - nt_.begin());
}

void ErrorTable::set(int ns, int nt, double value) { values_[row(ns) * nt_.size() + col(nt)] = value; }

std::optional<double> ErrorTable::get(int ns, int nt) const { return values_[row(ns) * nt_.size() + col(nt)]; }

namespace {
double value_or_nan(const std::optional<double>& v) {
  return v ? *v : std::numeric_limits<double>::quiet_NaN();
}
}  // namespace

std::vector<double> ErrorTable::eoc_space() const {
  const int last = static_cast<int>(nt_.size()) - 1;
  std::vector<double> out(ns_.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 1; i < ns_.size(); ++i)
    out[i] = eoc(value_or_nan(values_[(i - 1) * nt_.size() + last]), value_or_nan(values_[i * nt_.size() + last]));
  return out;
}

std::vector<double> ErrorTable::eoc_time() const {
  const std::size_t last = ns_.size() - 1;
  std::vector<double> out(nt_.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t j = 1; j < nt_.size(); ++j)
    out[j] = eoc(value_or_nan(values_[last * nt_.size() + j - 1]), value_or_nan(values_[last * nt_.size() + j]));
  return out;
}

std::vector<double> ErrorTable::eoc_diagonal() const {
  if (ns_.size() != nt_.size()) throw Error("diagonal orders need a square table");
  std::vector<double> out(ns_.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 1; i < ns_.size(); ++i)
    out[i] = eoc(value_or_nan(values_[(i - 1) * nt_.size() + i - 1]), value_or_nan(values_[i * nt_.size() + i]));
  return out;
}

std::string ErrorTable::to_csv() const {
  std::ostringstream os;
  os << "NS";
  for (int n : nt_) os << ',' << n;
  os << ",EOC_S\n";
  const auto es = eoc_space();
  for (std::size_t i = 0; i < ns_.size(); ++i) {
    os << ns_[i];
    for (std::size_t j = 0; j < nt_.size(); ++j) os << ',' << format_value(value_or_nan(values_[i * nt_.size() + j]));
    os << ',' << format_value(es[i]) << '\n';
  }
  os << "EOC_T";
  for (double v : eoc_time()) os << ',' << format_value(v);
  os << ",\n";
  return os.str();
}

namespace {

std::vector<std::vector<std::string>> cells(const ErrorTable& t) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> head{"N_S\\N"};
  for (int n : t.nt()) head.push_back(std::to_string(n));
  head.push_back("EOC_S");
  rows.push_back(head);
  const auto es = t.eoc_space();
  for (std::size_t i = 0; i < t.ns().size(); ++i) {
    std::vector<std::string> r{std::to_string(t.ns()[i])};
    for (int n : t.nt()) r.push_back(format_value(value_or_nan(t.get(t.ns()[i], n))));
    r.push_back(format_value(es[i]));
    rows.push_back(r);
  }
  std::vector<std::string> last{"EOC_T"};
  for (double v : t.eoc_time()) last.push_back(format_value(v));
  last.push_back("");
  rows.push_back(last);
  return rows;
}

}  // namespace

std::string ErrorTable::to_markdown() const {
  const auto rows = cells(*this);
  std::ostringstream os;
  if (!title_.empty()) os << "**" << title_ << "**\n\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << '|';
    for (const auto& c : rows[i]) os << ' ' << c << " |";
    os << '\n';
    if (i == 0) {
      os << '|';
      for (std::size_t j = 0; j < rows[i].size(); ++j) os << "---|";
      os << '\n';
    }
  }
  return os.str();
}

std::string ErrorTable::to_text() const {
  const auto rows = cells(*this);
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& r : rows)
    for (std::size_t j = 0; j < r.size(); ++j) width[j] = std::max(width[j], r[j].size());
  std::ostringstream os;
  if (!title_.empty()) os << title_ << '\n';
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j) os << "  ";
      os << std::setw(static_cast<int>(width[j])) << r[j];
    }
    os << '\n';
  }
  return os.str();
}

ErrorTable ErrorTable::from_csv(const std::string& csv, std::string title) {
  std::istringstream is(csv);
  std::string line;
  auto split = [](const std::string& l) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ls(l);
    while (std::getline(ls, cell, ',')) out.push_back(cell);
    if (!l.empty() && l.back() == ',') out.push_back("");
    return out;
  };
  if (!std::getline(is, line)) throw Error("empty error table CSV");
  const auto head = split(line);
  if (head.size() < 3 || head.front() != "NS" || head.back() != "EOC_S")
    throw Error("error table CSV header must read NS,<N...>,EOC_S");
  std::vector<int> nt;
  for (std::size_t j = 1; j + 1 < head.size(); ++j) nt.push_back(std::stoi(head[j]));
  std::vector<std::vector<std::string>> body;
  std::vector<int> ns;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto r = split(line);
    if (r.front() == "EOC_T") break;
    ns.push_back(std::stoi(r.front()));
    body.push_back(std::move(r));
  }
  ErrorTable t(ns, nt, std::move(title));
  for (std::size_t i = 0; i < body.size(); ++i)
    for (std::size_t j = 0; j < nt.size(); ++j)
      if (j + 1 < body[i].size() && !body[i][j + 1].empty()) t.set(ns[i], nt[j], std::stod(body[i][j + 1]));
  return t;
}

template ErrorNorms compute_errors<2>(const SpaceTimeSolution<2>&, const ExactSolution<2>&,
                                      const LevelSetField<2>&, const ErrorOptions&);
template ErrorNorms compute_errors<3>(const SpaceTimeSolution<3>&, const ExactSolution<3>&,
                                      const LevelSetField<3>&, const ErrorOptions&);
template double error_L2H1<2>(const SpaceTimeSolution<2>&, const ExactSolution<2>&,
                              const LevelSetField<2>&, const ErrorOptions&);
template double error_L2H1<3>(const SpaceTimeSolution<3>&, const ExactSolution<3>&,
                              const LevelSetField<3>&, const ErrorOptions&);
template double error_L2L2_pressure<2>(const SpaceTimeSolution<2>&, const ExactSolution<2>&,
                                       const LevelSetField<2>&, const ErrorOptions&);
template double error_L2L2_pressure<3>(const SpaceTimeSolution<3>&, const ExactSolution<3>&,
                                       const LevelSetField<3>&, const ErrorOptions&);
template SpaceTimeSolution<2> interpolate_exact<2>(const ProblemCoefficients<2>&, const ExactSolution<2>&,
                                                   const DiscretizationParams&);
template SpaceTimeSolution<3> interpolate_exact<3>(const ProblemCoefficients<3>&, const ExactSolution<3>&,
                                                   const DiscretizationParams&);

}  // namespace stis
