#include "gbhe/predator.hpp"

#include "gbhe/memory_weights.hpp"
#include "fe_local.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace gbhe {

using detail::ElemMap;
using detail::LocalFE;

namespace {

struct Poly {
    std::vector<Vertex> pts;
};

// clip a convex polygon against half-plane a*x + b*y <= c
Poly clip_halfplane(const Poly& in, double a, double b, double c)
{
    Poly out;
    const size_t n = in.pts.size();
    for (size_t i = 0; i < n; ++i) {
        const Vertex& p = in.pts[i];
        const Vertex& q = in.pts[(i + 1) % n];
        const double dp = a * p.x + b * p.y - c;
        const double dq = a * q.x + b * q.y - c;
        if (dp <= 0.0) out.pts.push_back(p);
        if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
            const double s = dp / (dp - dq);
            out.pts.push_back({p.x + s * (q.x - p.x), p.y + s * (q.y - p.y)});
        }
    }
    return out;
}

void write_grid_snapshot(const std::string& path, const Mesh& mesh, int n, const Vec& values)
{
    std::ofstream os(path);
    os << (n + 1) << ' ' << (n + 1) << '\n';
    os.precision(9);
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            if (i) os << ' ';
            os << values(j * (n + 1) + i);
        }
        os << '\n';
    }
    (void)mesh;
}

} // namespace

Vec patch_projection(const FunctionSpace& space, const SpMat& mass, double height, double x0,
                     double x1, double y0, double y1)
{
    if (space.degree() != 1)
        throw std::invalid_argument("patch_projection: P1 spaces only");
    const Mesh& mesh = space.mesh();
    Vec b = Vec::Zero(space.n_dof());
    Eigen::VectorXd N;
    Eigen::MatrixXd dN;

    for (int e = 0; e < mesh.n_elements(); ++e) {
        const auto& el = mesh.elements[e];
        Poly tri;
        for (int k = 0; k < 3; ++k) tri.pts.push_back(mesh.vertices[el[k]]);
        Poly clipped = clip_halfplane(tri, 1, 0, x1);
        clipped = clip_halfplane(clipped, -1, 0, -x0);
        clipped = clip_halfplane(clipped, 0, 1, y1);
        clipped = clip_halfplane(clipped, 0, -1, -y0);
        if (clipped.pts.size() < 3) continue;

        const ElemMap map(mesh, e);
        // fan triangulation; P1 shape functions are exact with centroid values
        for (size_t k = 1; k + 1 < clipped.pts.size(); ++k) {
            const Vertex& p0 = clipped.pts[0];
            const Vertex& p1 = clipped.pts[k];
            const Vertex& p2 = clipped.pts[k + 1];
            const double area =
                0.5 * std::abs((p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y));
            if (area <= 0.0) continue;
            const double cx = (p0.x + p1.x + p2.x) / 3.0;
            const double cy = (p0.y + p1.y + p2.y) / 3.0;
            const Vertex ref = map.to_reference(cx, cy);
            space.basis().eval(ref.x, ref.y, N, dN);
            for (int i = 0; i < 3; ++i) b(space.element_dofs(e)[i]) += height * area * N(i);
        }
    }

    Eigen::SimplicialLDLT<SpMat> ldlt(mass);
    return ldlt.solve(b);
}

PredatorResult run_predator(const RunConfig& config, std::ostream* log)
{
    const int n = config.mesh_n;
    const double L = 200.0;
    const double T = config.final_time;
    const double k = config.dt;
    const int steps = std::max(1, static_cast<int>(std::llround(T / k)));

    // ecological constants; the reaction terms follow the source model:
    //   u_t -     Lap u = g u (u - beta_e)(1 - u) - u v / (1 + alpha_e u)
    //   v_t - eps Lap v = (u v / (1 + alpha_e u)) v - delta_e v
    const double eps = 1.0;
    const double alpha_e = 0.2;
    const double beta_e = 0.1;
    const double delta_e = 0.37;
    const double g = config.prey_growth;
    const double eta = config.eta;
    const bool memory_on_v = config.memory_species == "both";

    const Mesh mesh = build_unit_square_triangulation(n, 0.0, L, 0.0, L);
    const FunctionSpace space(mesh, 1);
    const int S = space.n_dof();
    const SpMat M = assemble_mass(space);
    const SpMat A = assemble_stiffness(space);

    // initial patches: p on the centred square, q offset by (a, b)
    const double half = 20.0, a_off = 5.0, b_off = 30.0, p0 = 1.0, q0 = 0.5;
    Vec u = patch_projection(space, M, p0, L / 2 - half, L / 2 + half, L / 2 - half, L / 2 + half);
    Vec v = patch_projection(space, M, q0, L / 2 + a_off - half, L / 2 + a_off + half,
                             L / 2 + b_off - half, L / 2 + b_off + half);

    // degree-0 memory weights depend only on the lag for a uniform partition
    std::vector<double> w_lag;
    std::vector<Vec> au_hist, av_hist;
    if (eta > 0.0) {
        const TimePartition part = TimePartition::uniform(steps, T, 0);
        const TemporalBasis p0b(0);
        w_lag.resize(steps);
        for (int lag = 0; lag < steps; ++lag)
            w_lag[lag] = moment_block(part, lag + 1, 1, config.sigma, p0b, p0b)(0, 0);
    }

    std::filesystem::create_directories(config.output);
    std::ofstream series(std::filesystem::path(config.output) / "series.csv");
    series << "t,u_min,u_max,u_mass,v_min,v_max,v_mass\n";
    series.precision(10);

    PredatorResult result;
    const Vec ones = Vec::Ones(S);
    auto sample = [&](double t) {
        PredatorSample s;
        s.t = t;
        s.u_min = u.minCoeff();
        s.u_max = u.maxCoeff();
        s.u_mass = ones.dot(M * u);
        s.v_min = v.minCoeff();
        s.v_max = v.maxCoeff();
        s.v_mass = ones.dot(M * v);
        result.series.push_back(s);
        series << s.t << ',' << s.u_min << ',' << s.u_max << ',' << s.u_mass << ',' << s.v_min
               << ',' << s.v_max << ',' << s.v_mass << '\n';
        result.max_abs_u = std::max({result.max_abs_u, std::abs(s.u_min), std::abs(s.u_max)});
        result.max_abs_v = std::max({result.max_abs_v, std::abs(s.v_min), std::abs(s.v_max)});
    };
    auto snapshot = [&](int step) {
        char tag[16];
        std::snprintf(tag, sizeof(tag), "%05d", step);
        write_grid_snapshot((std::filesystem::path(config.output) / ("prey_" + std::string(tag) + ".txt")).string(),
                            mesh, n, u);
        write_grid_snapshot((std::filesystem::path(config.output) / ("pred_" + std::string(tag) + ".txt")).string(),
                            mesh, n, v);
        ++result.snapshots_written;
    };

    sample(0.0);
    snapshot(0);

    const LocalFE fe(space.basis(), simplex_quadrature(ElementFamily::triangle, 4));
    Eigen::SparseLU<SpMat> lu;

    for (int step = 1; step <= steps; ++step) {
        const Vec u_prev = u, v_prev = v;

        // memory history: eta * sum_{j<n} W_{n,j} A w_j
        Vec hist_u = Vec::Zero(S), hist_v = Vec::Zero(S);
        if (eta > 0.0) {
            for (int j = 0; j < static_cast<int>(au_hist.size()); ++j) {
                const double w = w_lag[step - 1 - j];
                hist_u += eta * w * au_hist[j];
                if (memory_on_v) hist_v += eta * w * av_hist[j];
            }
        }
        const double w_diag = eta > 0.0 ? w_lag[0] : 0.0;

        double r0 = -1.0;
        for (int iter = 0;; ++iter) {
            // reaction load and its four Jacobian blocks
            Vec Fu = Vec::Zero(S), Fv = Vec::Zero(S);
            std::vector<Eigen::Triplet<double>> rj;
            for (int e = 0; e < mesh.n_elements(); ++e) {
                const ElemMap map(mesh, e);
                const auto& dofs = space.element_dofs(e);
                for (int q = 0; q < fe.rule.size(); ++q) {
                    const double w = fe.rule.weights[q] * map.detJ;
                    double uq = 0.0, vq = 0.0;
                    for (int i = 0; i < 3; ++i) {
                        uq += u(dofs[i]) * fe.N[q](i);
                        vq += v(dofs[i]) * fe.N[q](i);
                    }
                    const double sat = 1.0 + alpha_e * uq;
                    const double coupling = uq * vq / sat;
                    const double fu = g * uq * (uq - beta_e) * (1.0 - uq) - coupling;
                    const double fv = coupling * vq - delta_e * vq;
                    const double dfu_du = g * ((uq - beta_e) * (1.0 - uq) + uq * (1.0 - uq)
                                               - uq * (uq - beta_e)) - vq / (sat * sat);
                    const double dfu_dv = -uq / sat;
                    const double dfv_du = vq * vq / (sat * sat);
                    const double dfv_dv = 2.0 * uq * vq / sat - delta_e;
                    for (int i = 0; i < 3; ++i) {
                        Fu(dofs[i]) += w * fu * fe.N[q](i);
                        Fv(dofs[i]) += w * fv * fe.N[q](i);
                        for (int jj = 0; jj < 3; ++jj) {
                            const double nij = w * fe.N[q](i) * fe.N[q](jj);
                            rj.emplace_back(dofs[i], dofs[jj], -k * dfu_du * nij);
                            rj.emplace_back(dofs[i], S + dofs[jj], -k * dfu_dv * nij);
                            rj.emplace_back(S + dofs[i], dofs[jj], -k * dfv_du * nij);
                            rj.emplace_back(S + dofs[i], S + dofs[jj], -k * dfv_dv * nij);
                        }
                    }
                }
            }

            Vec Ru = M * (u - u_prev) + k * (A * u) + w_diag * eta * (A * u) + hist_u - k * Fu;
            Vec Rv = M * (v - v_prev) + k * eps * (A * v) +
                     (memory_on_v ? w_diag * eta : 0.0) * (A * v) + hist_v - k * Fv;
            Eigen::VectorXd R(2 * S);
            R << Ru, Rv;
            const double rnorm = R.norm();
            if (r0 < 0.0) r0 = rnorm;
            if (rnorm <= std::max(config.newton_abs_tol, config.newton_rel_tol * r0)) break;
            if (iter >= config.newton_max_iter)
                throw NewtonDivergence(step, rnorm);

            std::vector<Eigen::Triplet<double>> trips = rj;
            auto add_block = [&](const SpMat& B, int ro, int co, double c) {
                for (int col = 0; col < B.outerSize(); ++col)
                    for (SpMat::InnerIterator it(B, col); it; ++it)
                        trips.emplace_back(ro + int(it.row()), co + col, c * it.value());
            };
            add_block(M, 0, 0, 1.0);
            add_block(A, 0, 0, k + w_diag * eta);
            add_block(M, S, S, 1.0);
            add_block(A, S, S, k * eps + (memory_on_v ? w_diag * eta : 0.0));

            SpMat J(2 * S, 2 * S);
            J.setFromTriplets(trips.begin(), trips.end());
            lu.compute(J);
            if (lu.info() != Eigen::Success)
                throw std::runtime_error("run_predator: singular system at step " +
                                         std::to_string(step));
            const Eigen::VectorXd dz = lu.solve(R);
            u -= dz.head(S);
            v -= dz.tail(S);
        }

        if (eta > 0.0) {
            au_hist.push_back(A * u);
            if (memory_on_v) av_hist.push_back(A * v);
            else av_hist.push_back(Vec::Zero(0));
        }

        const double t = step * k;
        sample(t);
        if (step % config.snapshot_stride == 0 || step == steps) snapshot(step);
        if (!u.allFinite() || !v.allFinite()) {
            result.finite = false;
            break;
        }
        if (log && (step % 50 == 0))
            *log << "t = " << t << "  max u = " << u.maxCoeff() << "  max v = " << v.maxCoeff()
                 << '\n';
    }

    result.u_final = u;
    result.v_final = v;
    result.finite = result.finite && u.allFinite() && v.allFinite();
    return result;
}

} // namespace gbhe
