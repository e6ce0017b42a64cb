#include "gbhe/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace gbhe {

double Mesh::element_measure(int e) const
{
    const auto& el = elements[e];
    const Vertex& a = vertices[el[0]];
    const Vertex& b = vertices[el[1]];
    if (dimension == 1) return std::abs(b.x - a.x);
    const Vertex& c = vertices[el[2]];
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

Mesh build_interval_mesh(int n_cells, double a, double b)
{
    if (n_cells < 1) throw std::invalid_argument("build_interval_mesh: n_cells must be >= 1");
    if (!(a < b)) throw std::invalid_argument("build_interval_mesh: need a < b");

    Mesh mesh;
    mesh.dimension = 1;
    const double h = (b - a) / n_cells;
    mesh.vertices.resize(n_cells + 1);
    for (int i = 0; i <= n_cells; ++i) mesh.vertices[i] = {a + i * h, 0.0};

    mesh.elements.resize(n_cells);
    mesh.element_facets.resize(n_cells);
    mesh.element_diameters.assign(n_cells, h);
    for (int e = 0; e < n_cells; ++e) mesh.elements[e] = {e, e + 1, -1};

    // one facet per vertex; normals point outward from each side's element
    mesh.facets.resize(n_cells + 1);
    for (int i = 0; i <= n_cells; ++i) {
        Facet& f = mesh.facets[i];
        f.vertices = {i, -1};
        f.measure = 1.0;
        if (i == 0) {
            f.kind = FacetKind::boundary;
            f.elem = {0, -1};
            f.normal[0] = {-1.0, 0.0};
        } else if (i == n_cells) {
            f.kind = FacetKind::boundary;
            f.elem = {n_cells - 1, -1};
            f.normal[0] = {1.0, 0.0};
        } else {
            f.kind = FacetKind::interior;
            f.elem = {i - 1, i};
            f.normal[0] = {1.0, 0.0};
            f.normal[1] = {-1.0, 0.0};
        }
    }
    for (int e = 0; e < n_cells; ++e) mesh.element_facets[e] = {e, e + 1, -1};
    return mesh;
}

Mesh build_unit_square_triangulation(int n, double ax, double bx, double ay, double by)
{
    if (n < 1) throw std::invalid_argument("build_unit_square_triangulation: n must be >= 1");
    if (!(ax < bx && ay < by))
        throw std::invalid_argument("build_unit_square_triangulation: empty domain");

    Mesh mesh;
    mesh.dimension = 2;
    const double hx = (bx - ax) / n;
    const double hy = (by - ay) / n;

    mesh.vertices.resize((n + 1) * (n + 1));
    auto vid = [n](int i, int j) { return j * (n + 1) + i; };
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) mesh.vertices[vid(i, j)] = {ax + i * hx, ay + j * hy};

    // square (i,j): corners a=(i,j) b=(i+1,j) c=(i+1,j+1) d=(i,j+1),
    // diagonal a-c: triangles (a,b,c) and (a,c,d), both CCW
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
            mesh.elements.push_back({a, b, c});
            mesh.elements.push_back({a, c, d});
        }

    const int ne = mesh.n_elements();
    mesh.element_facets.assign(ne, {-1, -1, -1});
    mesh.element_diameters.resize(ne);
    for (int e = 0; e < ne; ++e) {
        const auto& el = mesh.elements[e];
        double d = 0.0;
        for (int k = 0; k < 3; ++k) {
            const Vertex& p = mesh.vertices[el[k]];
            const Vertex& q = mesh.vertices[el[(k + 1) % 3]];
            d = std::max(d, std::hypot(q.x - p.x, q.y - p.y));
        }
        mesh.element_diameters[e] = d;
    }

    // facets keyed by sorted vertex pair
    std::map<std::pair<int, int>, int> edge_of;
    for (int e = 0; e < ne; ++e) {
        const auto& el = mesh.elements[e];
        for (int k = 0; k < 3; ++k) {
            const int va = el[k], vb = el[(k + 1) % 3];
            const auto key = std::minmax(va, vb);
            auto it = edge_of.find(key);
            int fid;
            if (it == edge_of.end()) {
                fid = static_cast<int>(mesh.facets.size());
                edge_of.emplace(key, fid);
                Facet f;
                f.vertices = {va, vb};
                f.elem = {e, -1};
                const Vertex& p = mesh.vertices[va];
                const Vertex& q = mesh.vertices[vb];
                f.measure = std::hypot(q.x - p.x, q.y - p.y);
                mesh.facets.push_back(f);
            } else {
                fid = it->second;
                mesh.facets[fid].elem[1] = e;
            }
            mesh.element_facets[e][k] = fid;
        }
    }

    for (auto& f : mesh.facets) {
        f.kind = f.elem[1] < 0 ? FacetKind::boundary : FacetKind::interior;
        const Vertex& p = mesh.vertices[f.vertices[0]];
        const Vertex& q = mesh.vertices[f.vertices[1]];
        const double ex = q.x - p.x, ey = q.y - p.y;
        const double len = std::hypot(ex, ey);
        const double mx = 0.5 * (p.x + q.x), my = 0.5 * (p.y + q.y);
        for (int side = 0; side < 2; ++side) {
            if (f.elem[side] < 0) break;
            const auto& el = mesh.elements[f.elem[side]];
            const double cx = (mesh.vertices[el[0]].x + mesh.vertices[el[1]].x + mesh.vertices[el[2]].x) / 3.0;
            const double cy = (mesh.vertices[el[0]].y + mesh.vertices[el[1]].y + mesh.vertices[el[2]].y) / 3.0;
            double nx = ey / len, ny = -ex / len;
            if (nx * (cx - mx) + ny * (cy - my) > 0.0) { nx = -nx; ny = -ny; }
            f.normal[side] = {nx, ny};
        }
    }
    return mesh;
}

MeshMetrics mesh_metrics(const Mesh& mesh)
{
    MeshMetrics m;
    m.h_max = *std::max_element(mesh.element_diameters.begin(), mesh.element_diameters.end());
    m.h_min = *std::min_element(mesh.element_diameters.begin(), mesh.element_diameters.end());
    m.ratio = m.h_max / m.h_min;
    m.n_dof_hint = mesh.n_vertices();
    return m;
}

void dump_mesh(const Mesh& mesh, std::ostream& os)
{
    for (const auto& v : mesh.vertices) os << v.x << ' ' << v.y << '\n';
    for (const auto& el : mesh.elements) {
        os << el[0] << ' ' << el[1];
        if (mesh.dimension == 2) os << ' ' << el[2];
        os << '\n';
    }
}

} // namespace gbhe
