#pragma once

#include <array>
#include <iosfwd>
#include <vector>

namespace gbhe {

struct Vertex {
    double x = 0.0;
    double y = 0.0;
};

enum class FacetKind { interior, boundary };

/// A mesh facet: a vertex in 1D, an edge in 2D. `elem[1]` is -1 on the
/// boundary. Outward unit normals are stored per side, each computed from
/// its own element's geometry.
struct Facet {
    std::array<int, 2> vertices{-1, -1}; // vertices[1] == -1 in 1D
    std::array<int, 2> elem{-1, -1};
    std::array<std::array<double, 2>, 2> normal{{{0, 0}, {0, 0}}};
    double measure = 1.0; // edge length in 2D, 1 in 1D
    FacetKind kind = FacetKind::interior;
};

/// Simplicial mesh: uniform interval partitions in 1D, structured
/// triangulations of rectangles in 2D (each grid square split along the
/// lower-left to upper-right diagonal). Immutable after construction.
struct Mesh {
    int dimension = 1;
    std::vector<Vertex> vertices;
    std::vector<std::array<int, 3>> elements; // 1D uses entries 0,1; 2D all three, CCW
    std::vector<Facet> facets;
    std::vector<std::array<int, 3>> element_facets; // facet id per local edge/end
    std::vector<double> element_diameters;

    int n_elements() const { return static_cast<int>(elements.size()); }
    int n_vertices() const { return static_cast<int>(vertices.size()); }

    /// measure (length/area) of element e
    double element_measure(int e) const;
};

struct MeshMetrics {
    double h_max = 0.0;
    double h_min = 0.0;
    double ratio = 1.0;
    int n_dof_hint = 0; // vertex count
};

/// Uniform partition of [a,b] into n_cells elements.
Mesh build_interval_mesh(int n_cells, double a, double b);

/// n x n grid of squares on [ax,bx] x [ay,by], each split into two
/// triangles along the lower-left/upper-right diagonal: 2n^2 elements,
/// (n+1)^2 vertices, 3n^2 - 2n interior edges.
Mesh build_unit_square_triangulation(int n, double ax = 0.0, double bx = 1.0,
                                     double ay = 0.0, double by = 1.0);

MeshMetrics mesh_metrics(const Mesh& mesh);

/// Debugging dump: one vertex per line, then one element per line.
void dump_mesh(const Mesh& mesh, std::ostream& os);

} // namespace gbhe
