#include "gawq/errors.hpp"
#include "gawq/quadrature.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace gawq;

TEST_SUITE("quadrature") {

TEST_CASE("smooth integrands") {
    const auto r = quad::integrate([](double x) { return cplx(std::exp(x), std::cos(x)); }, 0.0, 2.0);
    CHECK(std::abs(r.value - cplx(std::exp(2.0) - 1.0, std::sin(2.0))) < 1e-13);
    CHECK(r.error < 1e-10);
    const std::vector<double> bp{0.3, 0.3, 5.0, -1.0};
    const auto s = quad::integrate([](double x) { return cplx(std::abs(x - 0.3)); }, 0.0, 1.0, bp);
    CHECK(std::abs(s.value - cplx(0.5 * 0.09 + 0.5 * 0.49)) < 1e-14);
}

TEST_CASE("integrate reports non-convergence") {
    quad::Options opt;
    opt.max_depth = 3;
    CHECK_THROWS_AS(quad::integrate([](double x) { return cplx(std::sin(1.0 / (x + 1e-9))); }, 0.0, 1.0, {}, opt),
                    NumericalError);
}

TEST_CASE("complex resolvent matches the residue closed form") {
    SystemParams p;
    for (cplx q : {cplx(0.7, 0.3), cplx(1.32, 0.05), cplx(2.5, 0.8), cplx(0.0, 0.39)}) {
        const cplx E = dispersion(p, q);
        for (long m : {0L, 1L, 3L, -4L, 10L}) {
            const auto f = [m](double k) { return std::exp(cplx(0.0, k * m)); };
            const auto r = quad::resolvent(p, E, f, +1);
            CHECK(std::abs(r.value - oracle::contour_resolvent(p, q, m)) < 1e-9);
        }
    }
}

TEST_CASE("real in-band resolvent takes the i0 limit on either side") {
    SystemParams p;
    p.omega_c = 0.2;
    p.J = 1.1;
    for (double q : {0.4, 1.32, 2.6}) {
        const double E = dispersion(p, q);
        for (long m : {0L, 2L, -5L}) {
            const auto f = [m](double k) { return std::exp(cplx(0.0, k * m)); };
            const cplx plus = oracle::contour_resolvent(p, cplx(q, 0.0), m);
            // E - i0 is the mirror image: q -> -q
            const cplx minus = oracle::contour_resolvent(p, cplx(-q, 0.0), m);
            CHECK(std::abs(quad::resolvent(p, cplx(E, 0.0), f, +1).value - plus) < 1e-9);
            CHECK(std::abs(quad::resolvent(p, cplx(E, 0.0), f, -1).value - minus) < 1e-9);
        }
    }
}

TEST_CASE("finite epsilon approaches the limit linearly") {
    SystemParams p;
    const double q = 1.1;
    const double E = dispersion(p, q);
    const auto f = [](double k) { return cplx(1.0 + std::cos(3 * k), std::sin(k)); };
    const cplx lim = quad::resolvent(p, cplx(E), f, +1).value;
    double prev = 1e300;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        const cplx v = quad::resolvent_eps(p, cplx(E), f, +1, eps).value;
        const double err = std::abs(v - lim);
        CHECK(err < prev);
        CHECK(err < 50 * eps);
        prev = err;
    }
}

TEST_CASE("out-of-band real energy is a regular integral") {
    SystemParams p;
    const double kappa = 0.6;
    const cplx q(0.0, kappa);
    const cplx E = dispersion(p, q);
    CHECK(std::abs(E.imag()) < 1e-15);
    const auto f = [](double) { return cplx(1.0); };
    const cplx ref = oracle::contour_resolvent(p, q, 0);
    CHECK(std::abs(quad::resolvent(p, E, f, +1).value - ref) < 1e-10);
    CHECK(std::abs(quad::resolvent(p, E, f, -1).value - ref) < 1e-10);
    CHECK(std::abs(oracle::trapezoid([&](double k) { return f(k) / (E - dispersion(p, k)); }, 4096) - ref) < 1e-12);
}

}
