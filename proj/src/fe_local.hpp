#pragma once

// element-local helpers shared by the conforming and DG assembly paths

#include "gbhe/mesh.hpp"
#include "gbhe/polybasis.hpp"

#include <Eigen/Dense>

#include <vector>

namespace gbhe::detail {

/// Affine element map; 1D elements are embedded with a trivial y-direction
/// so both dimensions share one code path.
struct ElemMap {
    double ax = 0, ay = 0;
    Eigen::Matrix2d J = Eigen::Matrix2d::Identity();
    Eigen::Matrix2d invJT = Eigen::Matrix2d::Identity();
    double detJ = 1.0;

    ElemMap() = default;
    ElemMap(const Mesh& mesh, int e)
    {
        const auto& el = mesh.elements[e];
        const Vertex& p0 = mesh.vertices[el[0]];
        const Vertex& p1 = mesh.vertices[el[1]];
        ax = p0.x;
        ay = p0.y;
        if (mesh.dimension == 1) {
            J(0, 0) = p1.x - p0.x;
            J(1, 1) = 1.0;
        } else {
            const Vertex& p2 = mesh.vertices[el[2]];
            J(0, 0) = p1.x - p0.x;
            J(0, 1) = p2.x - p0.x;
            J(1, 0) = p1.y - p0.y;
            J(1, 1) = p2.y - p0.y;
        }
        detJ = J.determinant();
        invJT = J.inverse().transpose();
    }

    Vertex to_physical(double xr, double yr) const
    {
        return {ax + J(0, 0) * xr + J(0, 1) * yr, ay + J(1, 0) * xr + J(1, 1) * yr};
    }

    Vertex to_reference(double x, double y) const
    {
        Eigen::Vector2d r = J.inverse() * Eigen::Vector2d(x - ax, y - ay);
        return {r(0), r(1)};
    }
};

/// Basis values/gradients tabulated at the points of a reference rule.
struct LocalFE {
    QuadratureRule rule;
    std::vector<Eigen::VectorXd> N;      // per point
    std::vector<Eigen::MatrixXd> dN;     // per point, n_loc x 2 (reference)

    LocalFE(const SpatialBasis& basis, const QuadratureRule& r) : rule(r)
    {
        N.resize(rule.size());
        dN.resize(rule.size());
        for (int q = 0; q < rule.size(); ++q)
            basis.eval(rule.points[q].x, rule.points[q].y, N[q], dN[q]);
    }
};

} // namespace gbhe::detail
