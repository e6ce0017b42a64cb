#include "gbhe/space_fem.hpp"

#include "fe_local.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace gbhe {

using detail::ElemMap;
using detail::LocalFE;

FunctionSpace::FunctionSpace(const Mesh& mesh, int degree)
    : mesh_(&mesh),
      degree_(degree),
      basis_(mesh.dimension == 1 ? ElementFamily::interval : ElementFamily::triangle, degree)
{
    const int r = degree;
    const int nv = mesh.n_vertices();
    const int ne = mesh.n_elements();

    dof_points_.resize(nv);
    for (int v = 0; v < nv; ++v) dof_points_[v] = mesh.vertices[v];

    element_dofs_.resize(ne);
    std::set<int> bset;

    if (mesh.dimension == 1) {
        int next = nv;
        for (int e = 0; e < ne; ++e) {
            auto& dofs = element_dofs_[e];
            dofs = {mesh.elements[e][0], mesh.elements[e][1]};
            const double x0 = mesh.vertices[mesh.elements[e][0]].x;
            const double h = mesh.vertices[mesh.elements[e][1]].x - x0;
            for (int i = 1; i < r; ++i) {
                dofs.push_back(next++);
                dof_points_.push_back({x0 + h * i / r, 0.0});
            }
        }
        n_dof_ = next;
        for (const auto& f : mesh.facets)
            if (f.kind == FacetKind::boundary) bset.insert(f.vertices[0]);
    } else {
        // global slots: vertices, then (r-1) per edge, then interior
        const int nf = static_cast<int>(mesh.facets.size());
        const int edge_base = nv;
        const int interior_base = edge_base + nf * (r - 1);
        const int n_interior = (r - 1) * (r - 2) / 2;
        n_dof_ = interior_base + ne * n_interior;
        dof_points_.resize(n_dof_);

        for (int f = 0; f < nf; ++f) {
            const auto& fc = mesh.facets[f];
            const int ga = std::min(fc.vertices[0], fc.vertices[1]);
            const int gb = std::max(fc.vertices[0], fc.vertices[1]);
            for (int s = 1; s < r; ++s) {
                const double frac = double(s) / r;
                dof_points_[edge_base + f * (r - 1) + s - 1] = {
                    mesh.vertices[ga].x + frac * (mesh.vertices[gb].x - mesh.vertices[ga].x),
                    mesh.vertices[ga].y + frac * (mesh.vertices[gb].y - mesh.vertices[ga].y)};
            }
        }

        for (int e = 0; e < ne; ++e) {
            const auto& el = mesh.elements[e];
            auto& dofs = element_dofs_[e];
            dofs.assign(el.begin(), el.begin() + 3);
            for (int k = 0; k < 3; ++k) {
                const int fid = mesh.element_facets[e][k];
                const bool forward = el[k] < el[(k + 1) % 3];
                for (int i = 1; i < r; ++i) {
                    const int slot = forward ? i - 1 : r - 1 - i;
                    dofs.push_back(edge_base + fid * (r - 1) + slot);
                }
            }
            const ElemMap map(mesh, e);
            int count = 0;
            for (int a = 1; a < r; ++a)
                for (int b = 1; a + b < r; ++b) {
                    const int g = interior_base + e * n_interior + count++;
                    dofs.push_back(g);
                    dof_points_[g] = map.to_physical(double(a) / r, double(b) / r);
                }
        }

        for (const auto& fc : mesh.facets) {
            if (fc.kind != FacetKind::boundary) continue;
            bset.insert(fc.vertices[0]);
            bset.insert(fc.vertices[1]);
            const int fid = int(&fc - mesh.facets.data());
            for (int s = 0; s < r - 1; ++s) bset.insert(edge_base + fid * (r - 1) + s);
        }
    }
    boundary_dofs_.assign(bset.begin(), bset.end());
}

namespace {

SpMat assemble_bilinear(const FunctionSpace& space, bool stiffness)
{
    const Mesh& mesh = space.mesh();
    const int r = space.degree();
    const ElementFamily fam = mesh.dimension == 1 ? ElementFamily::interval : ElementFamily::triangle;
    const LocalFE fe(space.basis(), simplex_quadrature(fam, 2 * r));
    const int n_loc = space.basis().size();

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(size_t(mesh.n_elements()) * n_loc * n_loc);
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const ElemMap map(mesh, e);
        Eigen::MatrixXd ke = Eigen::MatrixXd::Zero(n_loc, n_loc);
        for (int q = 0; q < fe.rule.size(); ++q) {
            const double w = fe.rule.weights[q] * map.detJ;
            if (stiffness) {
                Eigen::MatrixXd g = fe.dN[q] * map.invJT.transpose(); // n_loc x 2 physical grads
                if (mesh.dimension == 1) g.col(1).setZero();
                ke += w * g * g.transpose();
            } else {
                ke += w * fe.N[q] * fe.N[q].transpose();
            }
        }
        const auto& dofs = space.element_dofs(e);
        for (int i = 0; i < n_loc; ++i)
            for (int j = 0; j < n_loc; ++j) trips.emplace_back(dofs[i], dofs[j], ke(i, j));
    }
    SpMat A(space.n_dof(), space.n_dof());
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
}

} // namespace

SpMat assemble_mass(const FunctionSpace& space) { return assemble_bilinear(space, false); }
SpMat assemble_stiffness(const FunctionSpace& space) { return assemble_bilinear(space, true); }

void advection_residual(const FunctionSpace& space, const Vec& coeffs, int delta,
                        Vec& residual, SpMat* jacobian)
{
    if (delta < 1) throw std::invalid_argument("advection_residual: delta must be >= 1");
    const Mesh& mesh = space.mesh();
    const int r = space.degree();
    const ElementFamily fam = mesh.dimension == 1 ? ElementFamily::interval : ElementFamily::triangle;
    const LocalFE fe(space.basis(), simplex_quadrature(fam, (delta + 1) * r + (r - 1)));
    const int n_loc = space.basis().size();

    residual = Vec::Zero(space.n_dof());
    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd re(n_loc);
    Eigen::MatrixXd je(n_loc, n_loc);

    for (int e = 0; e < mesh.n_elements(); ++e) {
        const ElemMap map(mesh, e);
        const auto& dofs = space.element_dofs(e);
        re.setZero();
        je.setZero();
        for (int q = 0; q < fe.rule.size(); ++q) {
            const double w = fe.rule.weights[q] * map.detJ;
            Eigen::MatrixXd g = fe.dN[q] * map.invJT.transpose();
            if (mesh.dimension == 1) g.col(1).setZero();
            double u = 0.0, sgrad = 0.0;
            Eigen::VectorXd sg = g.col(0) + g.col(1); // sum of partials per shape fn
            for (int i = 0; i < n_loc; ++i) {
                const double c = coeffs(dofs[i]);
                u += c * fe.N[q](i);
                sgrad += c * sg(i);
            }
            const double ud = std::pow(u, delta);
            re += (w * ud * sgrad) * fe.N[q];
            if (jacobian) {
                const double dud = delta * std::pow(u, delta - 1);
                je += w * fe.N[q] * (dud * sgrad * fe.N[q] + ud * sg).transpose();
            }
        }
        for (int i = 0; i < n_loc; ++i) {
            residual(dofs[i]) += re(i);
            if (jacobian)
                for (int j = 0; j < n_loc; ++j) trips.emplace_back(dofs[i], dofs[j], je(i, j));
        }
    }
    if (jacobian) {
        jacobian->resize(space.n_dof(), space.n_dof());
        jacobian->setFromTriplets(trips.begin(), trips.end());
    }
}

void reaction_residual(const FunctionSpace& space, const Vec& coeffs, int delta,
                       double gamma_r, Vec& residual, SpMat* jacobian)
{
    const Mesh& mesh = space.mesh();
    const int r = space.degree();
    const ElementFamily fam = mesh.dimension == 1 ? ElementFamily::interval : ElementFamily::triangle;
    const LocalFE fe(space.basis(), simplex_quadrature(fam, (2 * delta + 2) * r));
    const int n_loc = space.basis().size();

    residual = Vec::Zero(space.n_dof());
    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd re(n_loc);
    Eigen::MatrixXd je(n_loc, n_loc);

    for (int e = 0; e < mesh.n_elements(); ++e) {
        const ElemMap map(mesh, e);
        const auto& dofs = space.element_dofs(e);
        re.setZero();
        je.setZero();
        for (int q = 0; q < fe.rule.size(); ++q) {
            const double w = fe.rule.weights[q] * map.detJ;
            double u = 0.0;
            for (int i = 0; i < n_loc; ++i) u += coeffs(dofs[i]) * fe.N[q](i);
            const double ud = std::pow(u, delta);
            const double c = u * (1.0 - ud) * (ud - gamma_r);
            re += (w * c) * fe.N[q];
            if (jacobian) {
                const double cp = (1.0 + delta) * (1.0 + gamma_r) * ud
                                  - (2.0 * delta + 1.0) * ud * ud - gamma_r;
                je += (w * cp) * fe.N[q] * fe.N[q].transpose();
            }
        }
        for (int i = 0; i < n_loc; ++i) {
            residual(dofs[i]) += re(i);
            if (jacobian)
                for (int j = 0; j < n_loc; ++j) trips.emplace_back(dofs[i], dofs[j], je(i, j));
        }
    }
    if (jacobian) {
        jacobian->resize(space.n_dof(), space.n_dof());
        jacobian->setFromTriplets(trips.begin(), trips.end());
    }
}

void apply_dirichlet(SpMat& matrix, Vec& rhs, const std::vector<int>& dofs, const Vec& values)
{
    const int n = static_cast<int>(matrix.rows());
    std::vector<char> constrained(n, 0);
    for (size_t k = 0; k < dofs.size(); ++k) {
        if (dofs[k] < 0 || dofs[k] >= n)
            throw std::invalid_argument("apply_dirichlet: dof index out of range");
        constrained[dofs[k]] = 1;
    }
    // move known columns to the right-hand side
    for (size_t k = 0; k < dofs.size(); ++k) {
        const double val = values(static_cast<Eigen::Index>(k));
        if (val == 0.0) continue;
        for (SpMat::InnerIterator it(matrix, dofs[k]); it; ++it)
            if (!constrained[it.row()]) rhs(it.row()) -= it.value() * val;
    }
    for (int col = 0; col < matrix.outerSize(); ++col)
        for (SpMat::InnerIterator it(matrix, col); it; ++it)
            if (constrained[it.row()] || constrained[col]) it.valueRef() = 0.0;
    for (size_t k = 0; k < dofs.size(); ++k) {
        matrix.coeffRef(dofs[k], dofs[k]) = 1.0;
        rhs(dofs[k]) = values(static_cast<Eigen::Index>(k));
    }
    matrix.prune(0.0);
}

Vec interpolate(const FunctionSpace& space, const SpaceFn& fn)
{
    Vec out(space.n_dof());
    for (int i = 0; i < space.n_dof(); ++i)
        out(i) = fn(space.dof_points()[i].x, space.dof_points()[i].y);
    return out;
}

Vec load_vector(const FunctionSpace& space, const SpaceTimeFn& f, double t, int quad_degree)
{
    const Mesh& mesh = space.mesh();
    const ElementFamily fam = mesh.dimension == 1 ? ElementFamily::interval : ElementFamily::triangle;
    const LocalFE fe(space.basis(), simplex_quadrature(fam, quad_degree));
    const int n_loc = space.basis().size();

    Vec out = Vec::Zero(space.n_dof());
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const ElemMap map(mesh, e);
        const auto& dofs = space.element_dofs(e);
        for (int q = 0; q < fe.rule.size(); ++q) {
            const Vertex p = map.to_physical(fe.rule.points[q].x, fe.rule.points[q].y);
            const double w = fe.rule.weights[q] * map.detJ * f(p.x, p.y, t);
            for (int i = 0; i < n_loc; ++i) out(dofs[i]) += w * fe.N[q](i);
        }
    }
    return out;
}

double l2_error(const FunctionSpace& space, const Vec& coeffs, const SpaceFn& exact,
                int quad_degree)
{
    const Mesh& mesh = space.mesh();
    const int qd = quad_degree > 0 ? quad_degree : 2 * space.degree() + 2;
    const ElementFamily fam = mesh.dimension == 1 ? ElementFamily::interval : ElementFamily::triangle;
    const LocalFE fe(space.basis(), simplex_quadrature(fam, qd));
    const int n_loc = space.basis().size();

    double acc = 0.0;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const ElemMap map(mesh, e);
        const auto& dofs = space.element_dofs(e);
        for (int q = 0; q < fe.rule.size(); ++q) {
            const Vertex p = map.to_physical(fe.rule.points[q].x, fe.rule.points[q].y);
            double uh = 0.0;
            for (int i = 0; i < n_loc; ++i) uh += coeffs(dofs[i]) * fe.N[q](i);
            const double d = uh - exact(p.x, p.y);
            acc += fe.rule.weights[q] * map.detJ * d * d;
        }
    }
    return std::sqrt(acc);
}

double h1_seminorm_error(const FunctionSpace& space, const Vec& coeffs,
                         const SpaceFn& exact_dx, const SpaceFn& exact_dy, int quad_degree)
{
    const Mesh& mesh = space.mesh();
    const int qd = quad_degree > 0 ? quad_degree : 2 * space.degree() + 2;
    const ElementFamily fam = mesh.dimension == 1 ? ElementFamily::interval : ElementFamily::triangle;
    const LocalFE fe(space.basis(), simplex_quadrature(fam, qd));
    const int n_loc = space.basis().size();

    double acc = 0.0;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const ElemMap map(mesh, e);
        const auto& dofs = space.element_dofs(e);
        for (int q = 0; q < fe.rule.size(); ++q) {
            const Vertex p = map.to_physical(fe.rule.points[q].x, fe.rule.points[q].y);
            Eigen::MatrixXd g = fe.dN[q] * map.invJT.transpose();
            if (mesh.dimension == 1) g.col(1).setZero();
            double gx = 0.0, gy = 0.0;
            for (int i = 0; i < n_loc; ++i) {
                gx += coeffs(dofs[i]) * g(i, 0);
                gy += coeffs(dofs[i]) * g(i, 1);
            }
            const double dx = gx - exact_dx(p.x, p.y);
            const double dy = mesh.dimension == 1 ? 0.0 : gy - exact_dy(p.x, p.y);
            acc += fe.rule.weights[q] * map.detJ * (dx * dx + dy * dy);
        }
    }
    return std::sqrt(acc);
}

} // namespace gbhe
