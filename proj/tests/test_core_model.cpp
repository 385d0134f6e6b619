#include "gawq/core_model.hpp"
#include "gawq/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace gawq;

TEST_SUITE("core_model") {

TEST_CASE("dispersion and group velocity at hand-evaluable points") {
    SystemParams p;
    CHECK(std::abs(dispersion(p, pi / 2)) < 1e-15);
    CHECK(dispersion(p, 0.0) == -2.0);
    CHECK(std::abs(dispersion(p, 1.32) - (-0.496)) < 5e-3);
    CHECK(group_velocity(p, pi / 2) == 2.0);
    CHECK(group_velocity(p, 0.0) == 0.0);
    CHECK(group_velocity(p, 1.32) == doctest::Approx(1.9374302002365306).epsilon(1e-14));
    p.omega_c = 0.7;
    p.J = 1.3;
    CHECK(dispersion(p, 0.0) == doctest::Approx(0.7 - 2.6));
}

TEST_CASE("dispersion is even and 2pi periodic") {
    SystemParams p;
    p.omega_c = 0.3;
    p.J = 0.9;
    for (double k = -7.0; k <= 7.0; k += 0.173) {
        CHECK(dispersion(p, k) == doctest::Approx(dispersion(p, -k)).epsilon(1e-15));
        CHECK(dispersion(p, k) == doctest::Approx(dispersion(p, k + 2 * pi)).epsilon(1e-13));
        CHECK(dispersion(p, k) >= p.omega_c - 2 * p.J);
        CHECK(dispersion(p, k) <= p.omega_c + 2 * p.J);
    }
}

TEST_CASE("group velocity is the derivative of the dispersion") {
    SystemParams p;
    p.J = 1.7;
    const double h = 1e-5;
    for (double k = 0.05; k < pi; k += 0.05) {
        const double fd = (dispersion(p, k + h) - dispersion(p, k - h)) / (2 * h);
        const double v = group_velocity(p, k);
        CHECK(std::abs(fd - v) <= 1e-8 * std::max(1.0, std::abs(v)));
    }
}

TEST_CASE("wavenumber_from_energy inverts the dispersion") {
    SystemParams p;
    CHECK(wavenumber_from_energy(p, 0.0) == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK(wavenumber_from_energy(p, -2.0) == 0.0);
    // invert -2 cos k = -0.496 by bisection
    double lo = 0.0, hi = pi / 2;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (-2 * std::cos(mid) < -0.496 ? lo : hi) = mid;
    }
    CHECK(wavenumber_from_energy(p, -0.496) == doctest::Approx(lo).epsilon(1e-14));
    CHECK(std::abs(wavenumber_from_energy(p, -0.496) - 1.32018111370718) < 1e-13);
    CHECK(std::abs(wavenumber_from_energy(p, -0.496) - 1.32) < 1e-3);
    p.omega_c = -0.4;
    p.J = 0.6;
    for (double k = 0.01; k < pi; k += 0.01)
        CHECK(std::abs(wavenumber_from_energy(p, dispersion(p, k)) - k) < 1e-12 / std::max(1e-3, std::sin(k)));
}

TEST_CASE("wavenumber_from_energy rejects energies outside the band") {
    SystemParams p;
    CHECK_THROWS_AS(wavenumber_from_energy(p, 2.1), DomainError);
    CHECK_THROWS_AS(wavenumber_from_energy(p, -2.0001), DomainError);
    CHECK_THROWS_WITH(wavenumber_from_energy(p, 3.0), doctest::Contains("outside the band"));
}

TEST_CASE("coupling_phase") {
    SystemParams p;
    p.N = 3;
    CHECK(std::abs(coupling_phase(p, pi / 3)) < 1e-15);
    p.N = 2;
    CHECK(std::abs(coupling_phase(p, pi / 2)) < 1e-15);
    p.N = 3;
    const cplx v = coupling_phase(p, 1.32);
    CHECK(v.real() == doctest::Approx(1.0 + std::cos(3.96)).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(std::sin(3.96)).epsilon(1e-14));
    CHECK(std::abs(v - cplx(0.316615196416664, -0.730058360839300)) < 1e-12);
    // complex argument
    const cplx k(0.4, 0.3);
    CHECK(std::abs(coupling_phase(p, k) - (1.0 + std::exp(cplx(0, 3) * k))) < 1e-15);
}

TEST_CASE("coupling_phase vanishes exactly at the odd multiples of pi/N") {
    for (int N = 1; N <= 7; ++N) {
        SystemParams p;
        p.N = N;
        for (int m = 0; m < N; ++m) {
            const double k = (2 * m + 1) * pi / N;
            CHECK(std::abs(coupling_phase(p, k)) < 1e-14 * N);
            CHECK(std::abs(coupling_phase(p, k + 1e-3)) > 1e-4);
        }
        for (int m = 0; m < N; ++m) CHECK(std::abs(coupling_phase(p, 2.0 * m * pi / N)) == doctest::Approx(2.0));
    }
}

TEST_CASE("parameter validation names the offending field") {
    SystemParams p;
    p.N = 0;
    CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("system.N"), DomainError);
    p.N = 3;
    p.J = 0.0;
    CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("system.J"), DomainError);
    p.J = 1.0;
    p.g = -1.0;
    CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("system.g"), DomainError);
    p.g = 0.5;
    p.gamma = std::nan("");
    CHECK_THROWS_AS(p.validate(), DomainError);
    p.gamma = 0.1;
    CHECK_NOTHROW(p.validate());
}

TEST_CASE("bloch_mode rejects band edges") {
    SystemParams p;
    CHECK_THROWS_AS(bloch_mode(p, 0.0), DomainError);
    CHECK_THROWS_AS(bloch_mode(p, pi), DomainError);
    CHECK_THROWS_AS(bloch_mode(p, 1e-10), DomainError);
    CHECK_THROWS_AS(bloch_mode(p, -0.5), DomainError);
    const BlochMode m = bloch_mode(p, 1.0);
    CHECK(m.omega_k == dispersion(p, 1.0));
    CHECK(m.v_g == group_velocity(p, 1.0));
}

}
