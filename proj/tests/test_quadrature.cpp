#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gbhe/quadrature.hpp"
#include "support/oracles.hpp"

#include <cmath>

using namespace gbhe;

namespace {

double integrate_1d(const QuadratureRule& rule, const std::function<double(double)>& f)
{
    double s = 0.0;
    for (int q = 0; q < rule.size(); ++q) s += rule.weights[q] * f(rule.points[q].x);
    return s;
}

double integrate_2d(const QuadratureRule& rule, const std::function<double(double, double)>& f)
{
    double s = 0.0;
    for (int q = 0; q < rule.size(); ++q)
        s += rule.weights[q] * f(rule.points[q].x, rule.points[q].y);
    return s;
}

// int over reference triangle of x^a y^b = a! b! / (a+b+2)!
double triangle_monomial(int a, int b)
{
    double num = 1.0, den = 1.0;
    for (int i = 2; i <= a; ++i) num *= i;
    for (int i = 2; i <= b; ++i) num *= i;
    for (int i = 2; i <= a + b + 2; ++i) den *= i;
    return num / den;
}

} // namespace

TEST_CASE("gauss_legendre basics")
{
    const QuadratureRule r1 = gauss_legendre(1);
    CHECK(r1.points[0].x == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r1.weights[0] == doctest::Approx(2.0).epsilon(1e-14));

    const QuadratureRule r2 = gauss_legendre(2);
    CHECK(std::abs(r2.points[0].x) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-14));

    const QuadratureRule r3 = gauss_legendre(3);
    CHECK(integrate_1d(r3, [](double t) { return t * t * t * t; }) ==
          doctest::Approx(0.4).epsilon(1e-14));

    CHECK_THROWS(gauss_legendre(0));
}

TEST_CASE("gauss_legendre monomial exactness")
{
    for (int n = 1; n <= 10; ++n) {
        const QuadratureRule rule = gauss_legendre(n);
        for (int d = 0; d <= rule.exactness; ++d) {
            const double exact = d % 2 == 1 ? 0.0 : 2.0 / (d + 1);
            const double got = integrate_1d(rule, [d](double t) { return std::pow(t, d); });
            CHECK(got == doctest::Approx(exact).epsilon(1e-12));
        }
    }
}

TEST_CASE("gauss_jacobi_singular moments")
{
    const QuadratureRule r1 = gauss_jacobi_singular(1, 0.5);
    CHECK(integrate_1d(r1, [](double) { return 1.0; }) == doctest::Approx(2.0).epsilon(1e-14));

    const QuadratureRule r2 = gauss_jacobi_singular(2, 0.5);
    CHECK(integrate_1d(r2, [](double s) { return s; }) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    // all weights positive, several sizes and exponents
    for (double sigma : {0.1, 0.3, 0.5, 0.7, 0.9})
        for (int n : {1, 2, 5, 9}) {
            const QuadratureRule r = gauss_jacobi_singular(n, sigma);
            for (double w : r.weights) CHECK(w > 0.0);
            // monomial moments: int_0^1 s^{m-sigma} ds = 1/(m+1-sigma)
            for (int m = 0; m <= r.exactness; ++m) {
                const double got = integrate_1d(r, [m](double s) { return std::pow(s, m); });
                CHECK(got == doctest::Approx(1.0 / (m + 1.0 - sigma)).epsilon(1e-12));
            }
        }

    CHECK_THROWS(gauss_jacobi_singular(2, 0.0));
    CHECK_THROWS(gauss_jacobi_singular(2, 1.0));
    CHECK_THROWS(gauss_jacobi_singular(2, -0.5));
}

TEST_CASE("two-sided jacobi reproduces the beta identity")
{
    // int_0^1 s^{-1/2} (1-s)^{3/2} ds = B(1/2, 5/2) = 3 pi / 8
    for (int n : {2, 3, 6}) {
        const QuadratureRule r = gauss_jacobi_01(n, 1.5, -0.5);
        double mass = 0.0;
        for (double w : r.weights) mass += w;
        CHECK(mass == doctest::Approx(3.0 * std::acos(-1.0) / 8.0).epsilon(1e-13));
    }
}

TEST_CASE("simplex quadrature on triangles")
{
    const QuadratureRule c = simplex_quadrature(ElementFamily::triangle, 1);
    REQUIRE(c.size() == 1);
    CHECK(c.points[0].x == doctest::Approx(1.0 / 3.0));
    CHECK(c.weights[0] == doctest::Approx(0.5));

    const QuadratureRule d2 = simplex_quadrature(ElementFamily::triangle, 2);
    REQUIRE(d2.size() == 3);
    CHECK(integrate_2d(d2, [](double x, double y) { return x * y; }) ==
          doctest::Approx(1.0 / 24.0).epsilon(1e-14));

    for (int d = 1; d <= 12; ++d) {
        const QuadratureRule r = simplex_quadrature(ElementFamily::triangle, d);
        for (double w : r.weights) CHECK(w > 0.0);
        for (int a = 0; a <= d; ++a)
            for (int b = 0; a + b <= d; ++b) {
                const double got = integrate_2d(
                    r, [a, b](double x, double y) { return std::pow(x, a) * std::pow(y, b); });
                CHECK(got == doctest::Approx(triangle_monomial(a, b)).epsilon(1e-12));
            }
    }
    CHECK_THROWS(simplex_quadrature(ElementFamily::triangle, 21));
}

TEST_CASE("simplex quadrature on intervals")
{
    const QuadratureRule r = simplex_quadrature(ElementFamily::interval, 3);
    CHECK(r.size() == 2);
    for (int d = 0; d <= 3; ++d)
        CHECK(integrate_1d(r, [d](double x) { return std::pow(x, d); }) ==
              doctest::Approx(1.0 / (d + 1)).epsilon(1e-13));
}

TEST_CASE("randomized polynomial exactness")
{
    testsupport::Rng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + int(rng.uniform(0, 9.999));
        const QuadratureRule r = simplex_quadrature(ElementFamily::triangle, d);
        // random polynomial of total degree <= d, integrated monomial-by-monomial
        double exact = 0.0, got = 0.0;
        for (int a = 0; a <= d; ++a)
            for (int b = 0; a + b <= d; ++b) {
                const double coef = rng.uniform(-1.0, 1.0);
                exact += coef * triangle_monomial(a, b);
                got += coef * integrate_2d(r, [a, b](double x, double y) {
                           return std::pow(x, a) * std::pow(y, b);
                       });
            }
        CHECK(got == doctest::Approx(exact).epsilon(1e-12));
    }
}
