/// \file mesh.cpp
/// \brief Structured mesh generation, time partitions and slabs.

#include "stis/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace stis {

template <int d>
std::array<int, 2> SpatialMesh<d>::local_edge(int k) {
  int c = 0;
  for (int i = 0; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j)
      if (c++ == k) return {i, j};
  throw Error("local edge index out of range");
}

template <int d>
SpatialMesh<d>::SpatialMesh(Box<d> box, double h, std::array<int, d> cells,
                            std::vector<Point<d>> vertices, std::vector<Cell> simplices)
    : box_(box), h_(h), cells_(cells), vertices_(std::move(vertices)),
      simplices_(std::move(simplices)) {
  // Edges.
  std::map<std::array<int, 2>, int> edge_index;
  simplex_edges_.resize(simplices_.size());
  for (std::size_t e = 0; e < simplices_.size(); ++e) {
    for (int k = 0; k < num_local_edges(); ++k) {
      const auto [a, b] = local_edge(k);
      std::array<int, 2> key{simplices_[e][a], simplices_[e][b]};
      if (key[0] > key[1]) std::swap(key[0], key[1]);
      auto [it, inserted] = edge_index.try_emplace(key, static_cast<int>(edges_.size()));
      if (inserted) edges_.push_back(key);
      simplex_edges_[e][k] = it->second;
    }
  }

  // Boundary facets: facets lying in a box face.
  const double tol = 1e-12 * box_.diameter();
  boundary_vertex_.assign(vertices_.size(), false);
  boundary_edge_.assign(edges_.size(), false);
  std::map<Facet, int> seen;
  for (const auto& s : simplices_) {
    for (int omit = 0; omit <= d; ++omit) {
      Facet f;
      int c = 0;
      for (int i = 0; i <= d; ++i)
        if (i != omit) f[c++] = s[i];
      std::sort(f.begin(), f.end());
      ++seen[f];
    }
  }
  for (const auto& [f, count] : seen) {
    if (count != 1) continue;
    int marker = -1;
    for (int axis = 0; axis < d && marker < 0; ++axis) {
      for (int side = 0; side < 2; ++side) {
        const double plane = side == 0 ? box_.lower[axis] : box_.upper[axis];
        bool on = true;
        for (int v : f) on = on && std::abs(vertices_[v][axis] - plane) <= tol;
        if (on) {
          marker = 2 * axis + side;
          break;
        }
      }
    }
    boundary_facets_.push_back({f, marker});
    for (int v : f) boundary_vertex_[v] = true;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) boundary_edge_[edge_index.at({f[i], f[j]})] = true;
  }
}

template <int d>
Simplex<d> SpatialMesh<d>::simplex_points(int e) const {
  Simplex<d> s;
  for (int i = 0; i <= d; ++i) s[i] = vertices_[simplices_[e][i]];
  return s;
}

template <int d>
double SpatialMesh<d>::total_volume() const {
  double v = 0.0;
  for (int e = 0; e < num_simplices(); ++e) v += simplex_volume(e);
  return v;
}

template <int d>
std::vector<int> SpatialMesh<d>::facet_multiplicities() const {
  std::map<Facet, int> seen;
  for (const auto& s : simplices_) {
    for (int omit = 0; omit <= d; ++omit) {
      Facet f;
      int c = 0;
      for (int i = 0; i <= d; ++i)
        if (i != omit) f[c++] = s[i];
      std::sort(f.begin(), f.end());
      ++seen[f];
    }
  }
  std::vector<int> out;
  out.reserve(seen.size());
  for (const auto& kv : seen) out.push_back(kv.second);
  return out;
}

template <int d>
nlohmann::json SpatialMesh<d>::summary() const {
  nlohmann::json j;
  j["dimension"] = d;
  j["h"] = h_;
  j["lower"] = std::vector<double>(box_.lower.data(), box_.lower.data() + d);
  j["upper"] = std::vector<double>(box_.upper.data(), box_.upper.data() + d);
  j["cells_per_axis"] = cells_;
  j["vertices"] = num_vertices();
  j["edges"] = num_edges();
  j["simplices"] = num_simplices();
  j["boundary_facets"] = boundary_facets_.size();
  j["volume"] = total_volume();
  return j;
}

template <int d>
std::shared_ptr<const SpatialMesh<d>> build_structured_mesh(const Box<d>& box, int cells_per_unit) {
  static_assert(d == 2 || d == 3, "structured meshes exist for d = 2, 3");
  if (cells_per_unit < 1) throw Error("cells per unit length must be >= 1");
  const double h = 1.0 / cells_per_unit;
  std::array<int, d> n{};
  static const char* axis_name[] = {"x", "y", "z"};
  for (int a = 0; a < d; ++a) {
    const double extent = box.upper[a] - box.lower[a];
    const double cells = extent * cells_per_unit;
    const double rounded = std::round(cells);
    if (extent <= 0.0 || std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells))
      throw Error(std::string("box extent along axis ") + axis_name[a] + " (" +
                  std::to_string(extent) + ") is not an integer multiple of h = 1/" +
                  std::to_string(cells_per_unit));
    n[a] = static_cast<int>(rounded);
  }

  std::array<int, d> stride{};
  stride[0] = 1;
  for (int a = 1; a < d; ++a) stride[a] = stride[a - 1] * (n[a - 1] + 1);
  int nv = 1;
  for (int a = 0; a < d; ++a) nv *= n[a] + 1;

  std::vector<Point<d>> vertices(nv);
  for (int v = 0; v < nv; ++v) {
    int rest = v;
    for (int a = 0; a < d; ++a) {
      const int i = rest % (n[a] + 1);
      rest /= (n[a] + 1);
      // Exact multiples of h where representable; the last node is the box bound.
      vertices[v][a] = (i == n[a]) ? box.upper[a] : box.lower[a] + i * h;
    }
  }

  std::vector<typename SpatialMesh<d>::Cell> simplices;
  int ncells = 1;
  for (int a = 0; a < d; ++a) ncells *= n[a];
  simplices.reserve(static_cast<std::size_t>(ncells) * (d == 2 ? 2 : 6));

  std::array<int, d> perm;
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::array<int, d>> perms;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  for (int c = 0; c < ncells; ++c) {
    int rest = c, base = 0;
    for (int a = 0; a < d; ++a) {
      base += (rest % n[a]) * stride[a];
      rest /= n[a];
    }
    // Kuhn simplices: monotone paths from the lower to the upper cube corner.
    // In 2D these are the two triangles of the (+,+) diagonal split.
    for (const auto& p : perms) {
      typename SpatialMesh<d>::Cell s;
      int v = base;
      s[0] = v;
      for (int k = 0; k < d; ++k) {
        v += stride[p[k]];
        s[k + 1] = v;
      }
      Simplex<d> pts;
      for (int k = 0; k <= d; ++k) pts[k] = vertices[s[k]];
      if (signed_volume<d>(pts) < 0.0) std::swap(s[d - 1], s[d]);
      simplices.push_back(s);
    }
  }
  auto mesh = std::make_shared<const SpatialMesh<d>>(box, h, n, std::move(vertices), std::move(simplices));
  for (const auto& f : mesh->boundary_facets())
    if (f.marker < 0) throw Error("structured mesh is not conforming: unmatched interior facet");
  return mesh;
}

TimePartition::TimePartition(double final_time, std::vector<double> nodes)
    : final_time_(final_time), nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw Error("time partition needs at least one slab");
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (!(nodes_[i] > nodes_[i - 1])) throw Error("time nodes must be strictly increasing");
  if (nodes_.front() != 0.0 || nodes_.back() != final_time_)
    throw Error("time partition must run from 0 to T");
}

TimePartition build_time_partition(double final_time, int num_slabs) {
  if (num_slabs < 1) throw Error("number of time slabs must be >= 1");
  if (!(final_time > 0.0)) throw Error("final time must be positive");
  std::vector<double> nodes(num_slabs + 1);
  for (int n = 0; n <= num_slabs; ++n) nodes[n] = final_time * n / num_slabs;
  nodes.back() = final_time;
  return TimePartition(final_time, std::move(nodes));
}

template <int d>
SpaceTimeSlab<d> slab(std::shared_ptr<const SpatialMesh<d>> mesh, const TimePartition& tp, int n) {
  if (n < 1 || n > tp.num_slabs())
    throw Error("slab index " + std::to_string(n) + " out of range 1.." +
                std::to_string(tp.num_slabs()));
  SpaceTimeSlab<d> s;
  s.index = n;
  s.t0 = tp.node(n - 1);
  s.t1 = tp.node(n);
  s.mesh = std::move(mesh);
  return s;
}

template class SpatialMesh<2>;
template class SpatialMesh<3>;
template std::shared_ptr<const SpatialMesh<2>> build_structured_mesh<2>(const Box<2>&, int);
template std::shared_ptr<const SpatialMesh<3>> build_structured_mesh<3>(const Box<3>&, int);
template SpaceTimeSlab<2> slab<2>(std::shared_ptr<const SpatialMesh<2>>, const TimePartition&, int);
template SpaceTimeSlab<3> slab<3>(std::shared_ptr<const SpatialMesh<3>>, const TimePartition&, int);

}  // namespace stis
