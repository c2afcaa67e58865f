/// \file mesh.hpp
/// \brief Structured simplicial meshes of boxes, time partitions and space-time slabs.

#pragma once

#include "stis/common.hpp"
#include "stis/geometry.hpp"

#include <json.hpp>

#include <array>
#include <memory>
#include <vector>

namespace stis {

template <int d>
struct Box {
  Point<d> lower;
  Point<d> upper;

  double volume() const { return (upper - lower).prod(); }
  double diameter() const { return (upper - lower).norm(); }
};

/// Conforming simplicial mesh of an axis-aligned box. Immutable after construction.
template <int d>
class SpatialMesh {
 public:
  static constexpr int dim = d;
  using Cell = std::array<int, d + 1>;
  using Facet = std::array<int, d>;

  struct BoundaryFacet {
    Facet vertices;
    int marker;  // 2*axis + (0 lower, 1 upper); -1 if not on a box face
  };

  SpatialMesh(Box<d> box, double h, std::array<int, d> cells, std::vector<Point<d>> vertices,
              std::vector<Cell> simplices);

  const Box<d>& box() const { return box_; }
  double h() const { return h_; }
  const std::array<int, d>& cells_per_axis() const { return cells_; }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_simplices() const { return static_cast<int>(simplices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const Point<d>& vertex(int i) const { return vertices_[i]; }
  const std::vector<Point<d>>& vertices() const { return vertices_; }
  const Cell& simplex(int e) const { return simplices_[e]; }
  const std::vector<Cell>& simplices() const { return simplices_; }

  /// Vertex coordinates of simplex e in local order.
  Simplex<d> simplex_points(int e) const;
  double simplex_volume(int e) const { return simplex_measure<d>(simplex_points(e)); }
  double total_volume() const;

  /// Edge list (sorted vertex pairs) and the local edge table of each simplex.
  /// Local edge k of a simplex joins local vertices local_edge(k).
  const std::array<int, 2>& edge(int i) const { return edges_[i]; }
  int simplex_edge(int e, int k) const { return simplex_edges_[e][k]; }
  static constexpr int num_local_edges() { return d * (d + 1) / 2; }
  static std::array<int, 2> local_edge(int k);

  const std::vector<BoundaryFacet>& boundary_facets() const { return boundary_facets_; }
  bool is_boundary_vertex(int v) const { return boundary_vertex_[v]; }
  bool is_boundary_edge(int i) const { return boundary_edge_[i]; }

  /// Number of simplices sharing each facet (1 on the boundary, 2 inside).
  std::vector<int> facet_multiplicities() const;

  nlohmann::json summary() const;

 private:
  Box<d> box_;
  double h_;
  std::array<int, d> cells_;
  std::vector<Point<d>> vertices_;
  std::vector<Cell> simplices_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<int, d*(d + 1) / 2>> simplex_edges_;
  std::vector<BoundaryFacet> boundary_facets_;
  std::vector<bool> boundary_vertex_;
  std::vector<bool> boundary_edge_;
};

/// Structured mesh with h = 1/cells_per_unit. 2D squares are split along the
/// (+,+) diagonal into 2 triangles, 3D cubes into 6 Kuhn tetrahedra.
/// Throws if an extent is not an integer multiple of h.
template <int d>
std::shared_ptr<const SpatialMesh<d>> build_structured_mesh(const Box<d>& box, int cells_per_unit);

/// Uniform partition 0 = t_0 < ... < t_N = T.
class TimePartition {
 public:
  TimePartition(double final_time, std::vector<double> nodes);
  double final_time() const { return final_time_; }
  int num_slabs() const { return static_cast<int>(nodes_.size()) - 1; }
  const std::vector<double>& nodes() const { return nodes_; }
  double node(int n) const { return nodes_[n]; }

 private:
  double final_time_;
  std::vector<double> nodes_;
};

TimePartition build_time_partition(double final_time, int num_slabs);

/// Tensor-product slab I_n x mesh; prism e is simplex e times I_n.
template <int d>
struct SpaceTimeSlab {
  int index = 1;  // 1-based as in t_{n-1}, t_n
  double t0 = 0.0;
  double t1 = 1.0;
  std::shared_ptr<const SpatialMesh<d>> mesh;

  int num_prisms() const { return mesh->num_simplices(); }
  double duration() const { return t1 - t0; }
  double prism_measure(int e) const { return mesh->simplex_volume(e) * duration(); }

  /// Space-time vertex of prism e: local spatial vertex i at the bottom (level 0)
  /// or top (level 1).
  STPoint<d> prism_vertex(int e, int i, int level) const {
    return make_st<d>(mesh->vertex(mesh->simplex(e)[i]), level == 0 ? t0 : t1);
  }
};

template <int d>
SpaceTimeSlab<d> slab(std::shared_ptr<const SpatialMesh<d>> mesh, const TimePartition& tp, int n);

}  // namespace stis
