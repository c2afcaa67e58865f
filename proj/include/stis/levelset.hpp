/// \file levelset.hpp
/// \brief Level set interpolation on slabs, prism classification and cut-prism
///        decomposition with subdomain and interface quadrature.

#pragma once

#include "stis/common.hpp"
#include "stis/geometry.hpp"
#include "stis/mesh.hpp"
#include "stis/quadrature.hpp"

#include <json.hpp>

#include <functional>
#include <vector>

namespace stis {

/// Analytic level set phi(x,t). Gradient and Hessian are optional; curvature
/// needs both.
template <int d>
struct LevelSetField {
  std::function<double(const Point<d>&, double)> phi;
  std::function<Point<d>(const Point<d>&, double)> grad;
  std::function<Matrix<d>(const Point<d>&, double)> hessian;
  std::function<double(const Point<d>&, double)> dt;

  double operator()(const Point<d>& x, double t) const { return phi(x, t); }

  /// Spatial gradient, by central differences when no analytic gradient is set.
  Point<d> gradient(const Point<d>& x, double t) const;

  /// kappa = div(grad phi / |grad phi|); needs grad and hessian.
  double curvature(const Point<d>& x, double t) const;

  /// Unit spatial normal grad phi / |grad phi| (points into {phi > 0}).
  Point<d> normal(const Point<d>& x, double t) const;

  /// Sample |grad phi| near {phi = 0} on a lattice of the box x [0,T]; throws if
  /// it drops below `min_grad`.
  void check_nondegenerate(const Box<d>& box, double final_time, int samples_per_axis = 16,
                           double min_grad = 1e-8) const;
};

enum class PrismClass { Neg, Pos, Cut };

const char* to_string(PrismClass c);

/// Nodal values of phi at the spatial vertices at t_{n-1} (bottom) and t_n (top).
template <int d>
class DiscreteLevelSet {
 public:
  DiscreteLevelSet(SpaceTimeSlab<d> slab, std::vector<double> bottom, std::vector<double> top);

  const SpaceTimeSlab<d>& slab() const { return slab_; }
  double bottom(int v) const { return bottom_[v]; }
  double top(int v) const { return top_[v]; }

  /// Values at the 2(d+1) prism vertices: bottom 0..d, then top 0..d.
  std::array<double, 2 * (d + 1)> prism_values(int e) const;

  PrismClass classify(int e) const;

  /// Value of the piecewise linear space-time interpolant (linear on each
  /// space-time simplex of the prism split) at (x,t) inside prism e.
  double evaluate(int e, const Point<d>& x, double t) const;

  /// Bilinear (space x time) interpolant.
  double evaluate_bilinear(int e, const Point<d>& x, double t) const;

  Phase phase(int e, const Point<d>& x, double t) const {
    return evaluate(e, x, t) < 0.0 ? Phase::Neg : Phase::Pos;
  }

  /// Cut of the bottom face of prism e by the bottom nodal values.
  SimplexCut<d> bottom_cut(int e) const;

 private:
  SpaceTimeSlab<d> slab_;
  std::vector<double> bottom_;
  std::vector<double> top_;
};

template <int d>
DiscreteLevelSet<d> interpolate_levelset(const LevelSetField<d>& phi, const SpaceTimeSlab<d>& slab);

/// Split of prism e into d+1 space-time simplices. The local spatial vertices
/// are ordered by global index so that neighbouring prisms split conformingly.
/// Each simplex is given as (local spatial vertex, level) pairs.
template <int d>
std::vector<std::array<ProductVertex, d + 2>> prism_split(const SpatialMesh<d>& mesh, int e);

template <int d>
struct InterfaceFacet {
  std::array<STPoint<d>, d + 1> vertices;
  STPoint<d> normal;  // unit space-time normal, from neg to pos
  double measure;     // d-dimensional space-time measure
};

template <int d>
struct CutDecomposition {
  int prism = -1;
  PrismClass cls = PrismClass::Pos;
  std::vector<Simplex<d + 1>> neg;
  std::vector<Simplex<d + 1>> pos;
  std::vector<InterfaceFacet<d>> facets;

  double measure(Phase p) const;
  /// Integral of ds dt over the interface piece: sum of facet measure * |nu_x|.
  double interface_measure() const;
  nlohmann::json to_json() const;
};

/// Decompose prism e. Uncut prisms give a single-phase decomposition; the
/// classification is stored either way. Throws if measures do not add up.
template <int d>
CutDecomposition<d> decompose_cut_prism(const DiscreteLevelSet<d>& dls, int e);

/// Quadrature on a space-time subdomain of a prism; points are (x, t).
template <int d>
using STQuadRule = QuadRule<d + 1>;

template <int d>
struct SurfaceQuadRule {
  std::vector<STPoint<d>> points;
  std::vector<double> weights;       // space-time surface weights (d sigma)
  std::vector<double> nx_factor;     // |nu_x|
  std::vector<Point<d>> normal_x;    // nu_x / |nu_x| (zero where |nu_x| = 0)

  std::size_t size() const { return points.size(); }
  /// sum w |nu_x| f(p), i.e. the ds dt integral of f.
  double integrate(const std::function<double(const STPoint<d>&)>& f) const;
};

/// Tensor rule on an uncut prism: simplex rule of `space_degree` times Gauss
/// rule exact for `time_degree`.
template <int d>
STQuadRule<d> prism_tensor_rule(const SpaceTimeSlab<d>& slab, int e, int space_degree,
                                int time_degree);

/// Subdomain rule over the sub-simplices of the given phase. For uncut prisms the
/// tensor rule is used (empty if the prism lies in the other phase). Sub-simplex
/// rules have total degree space_degree + time_degree.
template <int d>
STQuadRule<d> quadrature_subdomain(const SpaceTimeSlab<d>& slab, const CutDecomposition<d>& dec,
                                   Phase phase, int space_degree, int time_degree);

template <int d>
SurfaceQuadRule<d> quadrature_interface(const CutDecomposition<d>& dec, int degree);

}  // namespace stis
