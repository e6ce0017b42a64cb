#pragma once

#include <vector>

namespace gbhe {

enum class ElementFamily { interval, triangle };

struct QuadPoint {
    double x = 0.0;
    double y = 0.0;
};

/// A fixed quadrature rule on a reference domain. 1D rules use only
/// QuadPoint::x. `exactness` is the highest polynomial degree the rule
/// integrates exactly (with respect to its built-in weight, if any).
struct QuadratureRule {
    int dim = 1;
    std::vector<QuadPoint> points;
    std::vector<double> weights;
    int exactness = 0;

    int size() const { return static_cast<int>(points.size()); }
};

/// n-point Gauss-Legendre rule on [-1,1], exact for degree 2n-1.
QuadratureRule gauss_legendre(int n);

/// n-point Gauss-Jacobi rule on [0,1] with weight (1-s)^alpha * s^beta,
/// alpha, beta > -1. Integrates polynomials up to degree 2n-1 exactly
/// against the weight. Built by Golub-Welsch from the Jacobi recurrence.
QuadratureRule gauss_jacobi_01(int n, double alpha, double beta);

/// n-point rule on [0,1] for the weakly singular weight s^-sigma,
/// sigma in (0,1). Throws std::invalid_argument outside that range.
QuadratureRule gauss_jacobi_singular(int n, double sigma);

/// Rule on the reference simplex (interval [0,1] or unit triangle
/// {x,y >= 0, x+y <= 1}) exact for total degree d. Triangle rules use the
/// classic symmetric rules for d <= 2 and Gauss conical-product rules
/// beyond; all weights positive.
QuadratureRule simplex_quadrature(ElementFamily family, int degree);

} // namespace gbhe
