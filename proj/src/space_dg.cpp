#include "gbhe/space_dg.hpp"

#include "fe_local.hpp"

#include <cmath>
#include <stdexcept>

namespace gbhe {

using detail::ElemMap;
using detail::LocalFE;

namespace {

double sign0(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

/// quadrature points along a physical edge with trace data for one element
struct EdgeTrace {
    std::vector<Eigen::VectorXd> N;       // per qp
    std::vector<Eigen::VectorXd> dn;      // per qp: normal derivative rows
    std::vector<Eigen::MatrixXd> grad;    // per qp: physical gradients n_loc x 2
};

struct EdgeQuad {
    std::vector<Vertex> points;
    std::vector<double> weights;
};

EdgeQuad edge_quadrature(const Mesh& mesh, const Facet& f, int degree)
{
    const QuadratureRule gl = gauss_legendre(degree / 2 + 1);
    const Vertex& p = mesh.vertices[f.vertices[0]];
    const Vertex& q = mesh.vertices[f.vertices[1]];
    EdgeQuad eq;
    for (int i = 0; i < gl.size(); ++i) {
        const double t = 0.5 * (1.0 + gl.points[i].x);
        eq.points.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
        eq.weights.push_back(0.5 * gl.weights[i] * f.measure);
    }
    return eq;
}

EdgeTrace element_trace(const DgSpace& space, int e, const EdgeQuad& eq,
                        const std::array<double, 2>& normal)
{
    const ElemMap map(space.mesh(), e);
    EdgeTrace tr;
    Eigen::VectorXd N;
    Eigen::MatrixXd dN;
    for (const Vertex& p : eq.points) {
        const Vertex r = map.to_reference(p.x, p.y);
        space.basis().eval(r.x, r.y, N, dN);
        Eigen::MatrixXd g = dN * map.invJT.transpose();
        tr.N.push_back(N);
        tr.grad.push_back(g);
        tr.dn.push_back(g.col(0) * normal[0] + g.col(1) * normal[1]);
    }
    return tr;
}

} // namespace

DgSpace::DgSpace(const Mesh& mesh, int degree, double sigma0)
    : mesh_(&mesh), degree_(degree), sigma0_(sigma0), basis_(ElementFamily::triangle, degree)
{
    if (mesh.dimension != 2)
        throw std::invalid_argument("DgSpace: only 2D meshes are supported");
    n_dof_ = mesh.n_elements() * basis_.size();

    facet_h_.resize(mesh.facets.size());
    for (size_t f = 0; f < mesh.facets.size(); ++f) {
        const Facet& fc = mesh.facets[f];
        double h = mesh.element_diameters[fc.elem[0]];
        if (fc.elem[1] >= 0) h = std::max(h, mesh.element_diameters[fc.elem[1]]);
        facet_h_[f] = h;
    }
}

SpMat assemble_mass_dg(const DgSpace& space)
{
    const Mesh& mesh = space.mesh();
    const LocalFE fe(space.basis(), simplex_quadrature(ElementFamily::triangle, 2 * space.degree()));
    const int n_loc = space.n_local();

    std::vector<Eigen::Triplet<double>> trips;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const ElemMap map(mesh, e);
        Eigen::MatrixXd ke = Eigen::MatrixXd::Zero(n_loc, n_loc);
        for (int q = 0; q < fe.rule.size(); ++q)
            ke += fe.rule.weights[q] * map.detJ * fe.N[q] * fe.N[q].transpose();
        for (int i = 0; i < n_loc; ++i)
            for (int j = 0; j < n_loc; ++j)
                trips.emplace_back(space.dof(e, i), space.dof(e, j), ke(i, j));
    }
    SpMat M(space.n_dof(), space.n_dof());
    M.setFromTriplets(trips.begin(), trips.end());
    return M;
}

SpMat assemble_a_dg(const DgSpace& space)
{
    const Mesh& mesh = space.mesh();
    const int r = space.degree();
    const int n_loc = space.n_local();
    std::vector<Eigen::Triplet<double>> trips;

    // volume gradients
    const LocalFE fe(space.basis(), simplex_quadrature(ElementFamily::triangle, 2 * r));
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const ElemMap map(mesh, e);
        Eigen::MatrixXd ke = Eigen::MatrixXd::Zero(n_loc, n_loc);
        for (int q = 0; q < fe.rule.size(); ++q) {
            Eigen::MatrixXd g = fe.dN[q] * map.invJT.transpose();
            ke += fe.rule.weights[q] * map.detJ * g * g.transpose();
        }
        for (int i = 0; i < n_loc; ++i)
            for (int j = 0; j < n_loc; ++j)
                trips.emplace_back(space.dof(e, i), space.dof(e, j), ke(i, j));
    }

    // facet terms: -{{grad u}}.[[v]] - {{grad v}}.[[u]] + gamma_h [[u]].[[v]]
    for (size_t f = 0; f < mesh.facets.size(); ++f) {
        const Facet& fc = mesh.facets[f];
        const EdgeQuad eq = edge_quadrature(mesh, fc, 2 * r + 1);
        const double gamma_h = space.facet_penalty(static_cast<int>(f));
        const bool interior = fc.kind == FacetKind::interior;
        const int nsides = interior ? 2 : 1;

        std::vector<EdgeTrace> tr;
        tr.push_back(element_trace(space, fc.elem[0], eq, fc.normal[0]));
        if (interior) tr.push_back(element_trace(space, fc.elem[1], eq, fc.normal[0]));
        // both normal derivatives are taken along normal[0]; the jump sign
        // handles the orientation of side 1

        const int nn = nsides * n_loc;
        Eigen::MatrixXd ke = Eigen::MatrixXd::Zero(nn, nn);
        Eigen::VectorXd jmp(nn), avg(nn);
        for (size_t q = 0; q < eq.points.size(); ++q) {
            const double w = eq.weights[q];
            for (int s = 0; s < nsides; ++s) {
                const double jsign = s == 0 ? 1.0 : -1.0;
                const double afac = interior ? 0.5 : 1.0;
                jmp.segment(s * n_loc, n_loc) = jsign * tr[s].N[q];
                avg.segment(s * n_loc, n_loc) = afac * tr[s].dn[q];
            }
            ke -= w * (avg * jmp.transpose() + jmp * avg.transpose());
            ke += w * gamma_h * jmp * jmp.transpose();
        }
        for (int si = 0; si < nsides; ++si)
            for (int sj = 0; sj < nsides; ++sj)
                for (int i = 0; i < n_loc; ++i)
                    for (int j = 0; j < n_loc; ++j)
                        trips.emplace_back(space.dof(fc.elem[si], i), space.dof(fc.elem[sj], j),
                                           ke(si * n_loc + i, sj * n_loc + j));
    }

    SpMat A(space.n_dof(), space.n_dof());
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
}

void convection_residual_dg(const DgSpace& space, const Vec& coeffs, int delta, double alpha,
                            Vec& residual, SpMat* jacobian)
{
    if (delta < 1) throw std::invalid_argument("convection_residual_dg: delta must be >= 1");
    const Mesh& mesh = space.mesh();
    const int r = space.degree();
    const int n_loc = space.n_local();
    const double pref = alpha / (delta + 2.0);

    residual = Vec::Zero(space.n_dof());
    std::vector<Eigen::Triplet<double>> trips;

    // volume: w.grad(u) v - w.grad(v) u, w = u^delta (1,1)
    const LocalFE fe(space.basis(),
                     simplex_quadrature(ElementFamily::triangle, (delta + 2) * r));
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const ElemMap map(mesh, e);
        Eigen::VectorXd re = Eigen::VectorXd::Zero(n_loc);
        Eigen::MatrixXd je = Eigen::MatrixXd::Zero(n_loc, n_loc);
        for (int q = 0; q < fe.rule.size(); ++q) {
            const double w = fe.rule.weights[q] * map.detJ;
            Eigen::MatrixXd g = fe.dN[q] * map.invJT.transpose();
            Eigen::VectorXd sg = g.col(0) + g.col(1);
            double u = 0.0, su = 0.0;
            for (int i = 0; i < n_loc; ++i) {
                u += coeffs(space.dof(e, i)) * fe.N[q](i);
                su += coeffs(space.dof(e, i)) * sg(i);
            }
            const double ud = std::pow(u, delta);
            const double dud = delta * std::pow(u, delta - 1);
            re += w * pref * ud * su * fe.N[q];
            re -= w * pref * ud * u * sg;
            if (jacobian) {
                je += w * pref * fe.N[q] * (dud * su * fe.N[q] + ud * sg).transpose();
                je -= w * pref * sg * ((dud * u + ud) * fe.N[q]).transpose();
            }
        }
        for (int i = 0; i < n_loc; ++i) {
            residual(space.dof(e, i)) += re(i);
            if (jacobian)
                for (int j = 0; j < n_loc; ++j)
                    trips.emplace_back(space.dof(e, i), space.dof(e, j), je(i, j));
        }
    }

    // facet fluxes, one pass per element side
    for (size_t f = 0; f < mesh.facets.size(); ++f) {
        const Facet& fc = mesh.facets[f];
        const EdgeQuad eq = edge_quadrature(mesh, fc, (delta + 2) * r + 1);
        const bool interior = fc.kind == FacetKind::interior;
        const int nsides = interior ? 2 : 1;

        std::vector<EdgeTrace> tr;
        for (int s = 0; s < nsides; ++s)
            tr.push_back(element_trace(space, fc.elem[s], eq, fc.normal[s]));

        for (int s = 0; s < nsides; ++s) {
            const int eK = fc.elem[s];
            const int eN = interior ? fc.elem[1 - s] : -1;
            const double nsum = fc.normal[s][0] + fc.normal[s][1];
            for (size_t q = 0; q < eq.points.size(); ++q) {
                const double w = eq.weights[q];
                double uK = 0.0, uE = 0.0;
                for (int i = 0; i < n_loc; ++i) uK += coeffs(space.dof(eK, i)) * tr[s].N[q](i);
                if (eN >= 0)
                    for (int i = 0; i < n_loc; ++i) uE += coeffs(space.dof(eN, i)) * tr[1 - s].N[q](i);

                const double wn = std::pow(uK, delta) * nsum;
                const double lam = 0.5 * (wn - std::abs(wn));
                const double dlam = 0.5 * (1.0 - sign0(wn)) * delta * std::pow(uK, delta - 1) * nsum;

                // term 2: + lam (uE - uK) v   for v on K
                // term 4: - lam (vE - vK) uK  for v on K and on the neighbor
                for (int i = 0; i < n_loc; ++i) {
                    const double vK = tr[s].N[q](i);
                    residual(space.dof(eK, i)) += w * pref * (lam * (uE - uK) * vK + lam * uK * vK);
                    if (eN >= 0) {
                        const double vE = tr[1 - s].N[q](i);
                        residual(space.dof(eN, i)) -= w * pref * lam * uK * vE;
                    }
                }
                if (jacobian) {
                    for (int i = 0; i < n_loc; ++i) {
                        const double vK = tr[s].N[q](i);
                        for (int j = 0; j < n_loc; ++j) {
                            const double NKj = tr[s].N[q](j);
                            // d/d uK_j of lam (uE - uK + uK) vK = lam' NKj (uE) vK + ... expanded:
                            double dK = dlam * NKj * (uE - uK) * vK - lam * NKj * vK
                                        + dlam * NKj * uK * vK + lam * NKj * vK;
                            trips.emplace_back(space.dof(eK, i), space.dof(eK, j), w * pref * dK);
                            if (eN >= 0) {
                                const double NEj = tr[1 - s].N[q](j);
                                trips.emplace_back(space.dof(eK, i), space.dof(eN, j),
                                                   w * pref * lam * NEj * vK);
                            }
                        }
                        if (eN >= 0) {
                            const double vE = tr[1 - s].N[q](i);
                            for (int j = 0; j < n_loc; ++j) {
                                const double NKj = tr[s].N[q](j);
                                trips.emplace_back(space.dof(eN, i), space.dof(eK, j),
                                                   -w * pref * (dlam * NKj * uK + lam * NKj) * vE);
                            }
                        }
                    }
                }
            }
        }
    }

    if (jacobian) {
        jacobian->resize(space.n_dof(), space.n_dof());
        jacobian->setFromTriplets(trips.begin(), trips.end());
    }
}

void reaction_residual_dg(const DgSpace& space, const Vec& coeffs, int delta, double gamma_r,
                          Vec& residual, SpMat* jacobian)
{
    const Mesh& mesh = space.mesh();
    const int r = space.degree();
    const LocalFE fe(space.basis(),
                     simplex_quadrature(ElementFamily::triangle, (2 * delta + 2) * r));
    const int n_loc = space.n_local();

    residual = Vec::Zero(space.n_dof());
    std::vector<Eigen::Triplet<double>> trips;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const ElemMap map(mesh, e);
        for (int q = 0; q < fe.rule.size(); ++q) {
            const double w = fe.rule.weights[q] * map.detJ;
            double u = 0.0;
            for (int i = 0; i < n_loc; ++i) u += coeffs(space.dof(e, i)) * fe.N[q](i);
            const double ud = std::pow(u, delta);
            const double c = u * (1.0 - ud) * (ud - gamma_r);
            for (int i = 0; i < n_loc; ++i) residual(space.dof(e, i)) += w * c * fe.N[q](i);
            if (jacobian) {
                const double cp = (1.0 + delta) * (1.0 + gamma_r) * ud
                                  - (2.0 * delta + 1.0) * ud * ud - gamma_r;
                for (int i = 0; i < n_loc; ++i)
                    for (int j = 0; j < n_loc; ++j)
                        trips.emplace_back(space.dof(e, i), space.dof(e, j),
                                           w * cp * fe.N[q](i) * fe.N[q](j));
            }
        }
    }
    if (jacobian) {
        jacobian->resize(space.n_dof(), space.n_dof());
        jacobian->setFromTriplets(trips.begin(), trips.end());
    }
}

double dg_norm(const DgSpace& space, const Vec& coeffs)
{
    const double broken = h1_broken_seminorm_error_dg(
        space, coeffs, [](double, double) { return 0.0; }, [](double, double) { return 0.0; });
    const double jumps = jump_seminorm(space, coeffs);
    return std::sqrt(broken * broken + jumps * jumps);
}

Vec interpolate_dg(const DgSpace& space, const SpaceFn& fn)
{
    const Mesh& mesh = space.mesh();
    Vec out(space.n_dof());
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const ElemMap map(mesh, e);
        const auto& nodes = space.basis().nodes();
        for (int i = 0; i < space.n_local(); ++i) {
            const Vertex p = map.to_physical(nodes[i].x, nodes[i].y);
            out(space.dof(e, i)) = fn(p.x, p.y);
        }
    }
    return out;
}

Vec load_vector_dg(const DgSpace& space, const SpaceTimeFn& f, double t, int quad_degree)
{
    const Mesh& mesh = space.mesh();
    const LocalFE fe(space.basis(), simplex_quadrature(ElementFamily::triangle, quad_degree));
    Vec out = Vec::Zero(space.n_dof());
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const ElemMap map(mesh, e);
        for (int q = 0; q < fe.rule.size(); ++q) {
            const Vertex p = map.to_physical(fe.rule.points[q].x, fe.rule.points[q].y);
            const double w = fe.rule.weights[q] * map.detJ * f(p.x, p.y, t);
            for (int i = 0; i < space.n_local(); ++i) out(space.dof(e, i)) += w * fe.N[q](i);
        }
    }
    return out;
}

double l2_error_dg(const DgSpace& space, const Vec& coeffs, const SpaceFn& exact, int quad_degree)
{
    const Mesh& mesh = space.mesh();
    const int qd = quad_degree > 0 ? quad_degree : 2 * space.degree() + 2;
    const LocalFE fe(space.basis(), simplex_quadrature(ElementFamily::triangle, qd));
    double acc = 0.0;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const ElemMap map(mesh, e);
        for (int q = 0; q < fe.rule.size(); ++q) {
            const Vertex p = map.to_physical(fe.rule.points[q].x, fe.rule.points[q].y);
            double uh = 0.0;
            for (int i = 0; i < space.n_local(); ++i) uh += coeffs(space.dof(e, i)) * fe.N[q](i);
            const double d = uh - exact(p.x, p.y);
            acc += fe.rule.weights[q] * map.detJ * d * d;
        }
    }
    return std::sqrt(acc);
}

double h1_broken_seminorm_error_dg(const DgSpace& space, const Vec& coeffs,
                                   const SpaceFn& exact_dx, const SpaceFn& exact_dy,
                                   int quad_degree)
{
    const Mesh& mesh = space.mesh();
    const int qd = quad_degree > 0 ? quad_degree : 2 * space.degree() + 2;
    const LocalFE fe(space.basis(), simplex_quadrature(ElementFamily::triangle, qd));
    double acc = 0.0;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const ElemMap map(mesh, e);
        for (int q = 0; q < fe.rule.size(); ++q) {
            const Vertex p = map.to_physical(fe.rule.points[q].x, fe.rule.points[q].y);
            Eigen::MatrixXd g = fe.dN[q] * map.invJT.transpose();
            double gx = 0.0, gy = 0.0;
            for (int i = 0; i < space.n_local(); ++i) {
                gx += coeffs(space.dof(e, i)) * g(i, 0);
                gy += coeffs(space.dof(e, i)) * g(i, 1);
            }
            const double dx = gx - exact_dx(p.x, p.y);
            const double dy = gy - exact_dy(p.x, p.y);
            acc += fe.rule.weights[q] * map.detJ * (dx * dx + dy * dy);
        }
    }
    return std::sqrt(acc);
}

double jump_seminorm(const DgSpace& space, const Vec& coeffs)
{
    const Mesh& mesh = space.mesh();
    const int n_loc = space.n_local();
    double acc = 0.0;
    for (size_t f = 0; f < mesh.facets.size(); ++f) {
        const Facet& fc = mesh.facets[f];
        const EdgeQuad eq = edge_quadrature(mesh, fc, 2 * space.degree() + 1);
        const double gamma_h = space.facet_penalty(static_cast<int>(f));
        const bool interior = fc.kind == FacetKind::interior;

        EdgeTrace tp = element_trace(space, fc.elem[0], eq, fc.normal[0]);
        EdgeTrace tm;
        if (interior) tm = element_trace(space, fc.elem[1], eq, fc.normal[0]);
        for (size_t q = 0; q < eq.points.size(); ++q) {
            double jump = 0.0;
            for (int i = 0; i < n_loc; ++i) {
                jump += coeffs(space.dof(fc.elem[0], i)) * tp.N[q](i);
                if (interior) jump -= coeffs(space.dof(fc.elem[1], i)) * tm.N[q](i);
            }
            acc += eq.weights[q] * gamma_h * jump * jump;
        }
    }
    return std::sqrt(acc);
}

} // namespace gbhe
