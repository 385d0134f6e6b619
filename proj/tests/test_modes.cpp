#include "gawq/errors.hpp"
#include "gawq/modes.hpp"
#include "gawq/packet.hpp"
#include "gawq/spectral.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace gawq;

namespace {

struct CriticalPoles {
    SystemParams p;
    SiegertPole k1; // in-continuum
    SiegertPole k2; // growing
};

const CriticalPoles& critical_poles() {
    static const CriticalPoles c = [] {
        CriticalPoles out;
        out.p = oracle::params(critical_gain(oracle::params(0.0)));
        const auto poles = solve_poles(out.p);
        REQUIRE(poles.size() == 2);
        for (const auto& pole : poles) (pole.cls == SiegertClass::in_continuum ? out.k1 : out.k2) = pole;
        return out;
    }();
    return c;
}

SiegertPole hermitian_bound_pole() {
    const auto poles = solve_poles(oracle::params(0.0));
    REQUIRE(poles.size() == 1);
    return poles[0];
}

// 1 + g^2/2pi Int |1+e^{ikN}|^2 w(E - w_k) by the periodic trapezoid rule.
cplx trapezoid_norm_sum(const SystemParams& p, cplx E, bool modulus, long n) {
    const auto f = [&](double k) -> cplx {
        const cplx d = E - dispersion(p, k);
        const double w = 2.0 + 2.0 * std::cos(p.N * k);
        return modulus ? cplx(w / std::norm(d)) : w / (d * d);
    };
    return 1.0 + p.g * p.g / (2 * pi) * oracle::trapezoid(f, n);
}

} // namespace

TEST_SUITE("modes") {

TEST_CASE("normalization of the Hermitian bound state against a dense trapezoid") {
    const auto p = oracle::params(0.0);
    const auto pole = hermitian_bound_pole();
    const cplx n_mod = normalization_factor(p, pole, NormConvention::modulus);
    const cplx n_bil = normalization_factor(p, pole, NormConvention::bilinear);
    CHECK(std::abs(n_mod.imag()) < 1e-14);
    CHECK(n_mod.real() > 0.0);
    CHECK(n_mod.real() < 1.0);
    const cplx ref = 1.0 / std::sqrt(trapezoid_norm_sum(p, pole.E, true, 1'000'000));
    CHECK(std::abs(n_mod - ref) < 1e-8);
    CHECK(std::abs(n_bil - n_mod) < 1e-10);
}

TEST_CASE("bilinear normalization of the growing pole against a dense trapezoid") {
    const auto& c = critical_poles();
    const cplx n = normalization_factor(c.p, c.k2, NormConvention::bilinear);
    const cplx ref_sq = 1.0 / trapezoid_norm_sum(c.p, c.k2.E, false, 1'000'000);
    CHECK(std::abs(n * n - ref_sq) < 1e-8);
    const cplx m = normalization_factor(c.p, c.k2, NormConvention::modulus);
    CHECK(std::abs(m * m - 1.0 / trapezoid_norm_sum(c.p, c.k2.E, true, 1'000'000)) < 1e-8);
}

TEST_CASE("normalization limits") {
    auto free = oracle::params(0.1, 3, 0.0);
    SiegertPole any;
    any.k = cplx(0.5, 0.3);
    any.E = dispersion(free, any.k);
    CHECK(normalization_factor(free, any) == cplx(1.0));
    const auto& c = critical_poles();
    CHECK(in_band_real(c.p, c.k1));
    CHECK_THROWS_AS(normalization_factor(c.p, c.k1), NonNormalizable);
    CHECK_THROWS_AS(normalization_factor(c.p, c.k1, NormConvention::bilinear), NonNormalizable);
    const auto prof = bound_profile(c.p, c.k1);
    CHECK(!prof.normalized);
    CHECK(prof.norm_factor == cplx(1.0));
}

TEST_CASE("profile quadrature agrees with the closed form on and off the coupling region") {
    const auto& c = critical_poles();
    const auto h = oracle::params(0.0);
    const auto hb = hermitian_bound_pole();
    for (long j : {-7L, -1L, 0L, 1L, 2L, 3L, 4L, 9L}) {
        for (const auto& [p, pole] : {std::pair{c.p, c.k1}, std::pair{c.p, c.k2}, std::pair{h, hb}}) {
            const cplx a = profile_quadrature(p, pole, 1.0, j);
            const cplx b = profile_closed_form(p, pole, 1.0, j);
            CHECK(std::abs(a - b) < 1e-8 * std::max(1.0, std::abs(b)));
        }
    }
    const auto prof = bound_profile(c.p, c.k2);
    REQUIRE(prof.interior.size() == 2);
    for (long j : {1L, 2L})
        CHECK(std::abs(prof.amplitude(c.p, j) - profile_closed_form(c.p, c.k2, prof.norm_factor, j)) < 1e-8);
}

TEST_CASE("exterior profile shapes") {
    const auto& c = critical_poles();
    const auto grow = bound_profile(c.p, c.k2);
    const double ratio = std::abs(grow.amplitude(c.p, -11) / grow.amplitude(c.p, -10));
    CHECK(ratio == doctest::Approx(std::exp(-c.k2.k.imag())).epsilon(1e-12));
    CHECK(std::abs(ratio - std::exp(-0.388)) < 0.01);
    for (long j = -30; j < -1; ++j) {
        const double lhs = std::log(std::abs(grow.amplitude(c.p, j)));
        const double rhs = std::log(std::abs(grow.amplitude(c.p, j + 1)));
        CHECK(rhs - lhs == doctest::Approx(c.k2.k.imag()).epsilon(1e-10));
    }
    const auto flat = bound_profile(c.p, c.k1);
    const double ref = std::abs(flat.amplitude(c.p, -1));
    for (long j : {-500L, -40L, -2L, 4L, 17L, 1000L}) CHECK(std::abs(flat.amplitude(c.p, j)) == doctest::Approx(ref).epsilon(1e-12));
    // symmetric about the middle of the coupling region
    for (long j : {-5L, -1L, 1L}) CHECK(std::abs(grow.amplitude(c.p, j) - grow.amplitude(c.p, c.p.N - j)) < 1e-12);

    auto free = oracle::params(0.2, 3, 0.0);
    for (long j : {-3L, 0L, 5L}) CHECK(profile_closed_form(free, c.k2, 1.0, j) == cplx(0.0));
}

TEST_CASE("asymptotic amplitude identity") {
    const auto& c = critical_poles();
    const auto packet = GaussianPacketSpec{};
    for (const auto& pole : {c.k1, c.k2}) {
        const auto d = overlap_coefficient(c.p, pole, packet);
        const cplx s = std::sin(pole.k);
        const cplx ref = cplx(0, -1) * d.norm_factor * d.C * c.p.g * (1.0 + std::exp(cplx(0, -c.p.N) * pole.k)) /
                         (2.0 * c.p.J * s);
        CHECK(std::abs(d.A - ref) <= 1e-12 * std::abs(ref));
        CHECK(d.t_origin == doctest::Approx(-packet.t_c(c.p)));
    }
}

TEST_CASE("Hermitian overlap equals the lattice inner product") {
    const auto p = oracle::params(0.0);
    const auto pole = hermitian_bound_pole();
    GaussianPacketSpec packet;
    packet.alpha = 0.2;
    packet.j_c = -15;
    packet.k_c = 1.0;
    const auto d = overlap_coefficient(p, pole, packet);
    CHECK(!d.from_lattice_sum);
    const auto prof = bound_profile(p, pole);
    cplx direct{};
    for (long j = -5000; j < 5000; ++j) direct += std::conj(prof.amplitude(p, j)) * packet.amplitude(j);
    CHECK(std::abs(direct) > 1e-4);
    CHECK(std::abs(d.C - direct) < 1e-6 * std::abs(direct));
}

TEST_CASE("quadrature and lattice-sum overlaps agree where both resolve") {
    const auto& c = critical_poles();
    GaussianPacketSpec near;
    near.alpha = 0.1;
    near.j_c = -40;
    for (const auto& pole : {c.k1, c.k2}) {
        const cplx a = overlap_integral(c.p, pole, near, 0.0, nullptr, +1);
        const cplx b = overlap_lattice_sum(c.p, pole, near);
        CHECK(std::abs(a - b) < 1e-7 * std::abs(b));
    }
    // the two sides coincide for a complex pole
    CHECK(std::abs(overlap_integral(c.p, c.k2, near, 0.0, nullptr, -1) - overlap_integral(c.p, c.k2, near, 0.0, nullptr, +1)) < 1e-14);
    const cplx a = overlap_integral(c.p, c.k1, GaussianPacketSpec{}, 0.0, nullptr, +1);
    const cplx b = overlap_lattice_sum(c.p, c.k1, GaussianPacketSpec{});
    CHECK(std::abs(a - b) < 1e-7 * std::abs(b));
}

TEST_CASE("the two sides of an in-continuum overlap differ by the delta term") {
    const auto& c = critical_poles();
    for (long jc : {-40L, -500L}) {
        GaussianPacketSpec packet;
        packet.j_c = jc;
        packet.alpha = jc == -40 ? 0.1 : 0.02;
        const cplx minus = overlap_integral(c.p, c.k1, packet, 0.0, nullptr, -1);
        const cplx plus = overlap_integral(c.p, c.k1, packet, 0.0, nullptr, +1);
        const double k1 = c.k1.k.real();
        cplx delta{};
        for (double ks : {k1, -k1}) delta += packet.momentum_amplitude(ks) * (1.0 + std::exp(cplx(0, ks * c.p.N)));
        delta *= c.p.g / std::sqrt(2 * pi) * cplx(0, 2 * pi) / (2 * c.p.J * std::sin(k1));
        CHECK(std::abs(minus - plus - delta) < 1e-8 * std::abs(plus));
    }
    // an incoming packet has almost no weight on the -i0 side
    const GaussianPacketSpec far;
    CHECK(std::abs(overlap_integral(c.p, c.k1, far, 0.0, nullptr, -1)) < 1e-6 * std::abs(overlap_integral(c.p, c.k1, far, 0.0, nullptr, +1)));
    CHECK_THROWS_AS(overlap_integral(c.p, c.k1, far, 0.0, nullptr, 0), DomainError);
}

TEST_CASE("in-continuum overlap matches the epsilon extrapolation") {
    const auto& c = critical_poles();
    GaussianPacketSpec near;
    near.alpha = 0.1;
    near.j_c = -40;
    // The finite-eps correction scales with eps |j_c| / v, so the far packet needs
    // a smaller sequence.
    struct Case {
        GaussianPacketSpec packet;
        int side;
        double e0;
    };
    for (const auto& [packet, side, e0] : {Case{near, -1, 1e-3}, Case{near, +1, 1e-3}, Case{GaussianPacketSpec{}, +1, 1e-4}}) {
        const cplx lim = overlap_integral(c.p, c.k1, packet, 0.0, nullptr, side);
        // quadratic through (eps, C(eps)) at e0, e0/10, e0/100, evaluated at 0
        const double e[3] = {e0, e0 / 10, e0 / 100};
        cplx v[3];
        for (int i = 0; i < 3; ++i) v[i] = overlap_integral(c.p, c.k1, packet, e[i], nullptr, side);
        cplx extrap{};
        for (int i = 0; i < 3; ++i) {
            double w = 1.0;
            for (int j = 0; j < 3; ++j)
                if (j != i) w *= e[j] / (e[j] - e[i]);
            extrap += w * v[i];
        }
        CHECK(std::abs(lim - extrap) < 1e-6 * std::abs(lim));
    }
}

TEST_CASE("first bound state dominates the critical-gain decomposition") {
    const auto& c = critical_poles();
    const GaussianPacketSpec packet;
    const auto d1 = overlap_coefficient(c.p, c.k1, packet);
    const auto d2 = overlap_coefficient(c.p, c.k2, packet);
    CHECK(!d1.normalized);
    CHECK(d2.normalized);
    CHECK(d2.from_lattice_sum);
    CHECK(std::norm(d1.C) > 1e6 * std::norm(d2.C));
}

TEST_CASE("packet centred on a decoupling point barely overlaps") {
    const auto p = oracle::params(0.0);
    const auto pole = hermitian_bound_pole();
    GaussianPacketSpec packet;
    packet.alpha = 1e-4;
    packet.k_c = pi / 3;
    const double at_decoupling = std::abs(overlap_integral(p, pole, packet));
    packet.k_c = 1.0;
    const double broadband = std::abs(overlap_integral(p, pole, packet));
    CHECK(at_decoupling < 1e-3 * broadband);
}

TEST_CASE("no coefficients without poles") { CHECK(solve_poles(oracle::params(-0.215)).empty()); }

TEST_CASE("pole-only density laws") {
    const auto& c = critical_poles();
    DecompositionCoefficient g;
    g.pole = c.k2;
    g.C = 1.0;
    g.A = asymptotic_amplitude(c.p, c.k2, 1.0, 1.0);
    const std::vector<DecompositionCoefficient> grow{g};
    const double t1 = 100.0, t2 = 300.0;
    const double rate = (std::log(predict_longtime_density(c.p, grow, -10, t2)) -
                         std::log(predict_longtime_density(c.p, grow, -10, t1))) / (t2 - t1);
    CHECK(rate == doctest::Approx(2 * c.k2.E.imag()).epsilon(1e-10));
    CHECK(std::abs(rate - 0.042) < 0.004);
    const double left = std::log(predict_longtime_density(c.p, grow, -10, t1)) -
                        std::log(predict_longtime_density(c.p, grow, -11, t1));
    CHECK(left == doctest::Approx(2 * c.k2.k.imag()).epsilon(1e-10));
    const double right = std::log(predict_longtime_density(c.p, grow, 14, t1)) -
                         std::log(predict_longtime_density(c.p, grow, 13, t1));
    CHECK(right == doctest::Approx(-2 * c.k2.k.imag()).epsilon(1e-10));

    DecompositionCoefficient f = g;
    f.pole = c.k1;
    f.A = asymptotic_amplitude(c.p, c.k1, 1.0, 1.0);
    const std::vector<DecompositionCoefficient> flat{f};
    const double ref = predict_longtime_density(c.p, flat, -1, 0.0);
    for (long j : {-300L, -5L, 3L, 8L, 900L})
        for (double t : {0.0, 250.0, 2200.0})
            CHECK(predict_longtime_density(c.p, flat, j, t) == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("continuum amplitude fit recovers a synthetic plateau") {
    const auto& c = critical_poles();
    DecompositionCoefficient truth;
    truth.pole = c.k1;
    truth.C = cplx(0.3, -0.2);
    truth.A = asymptotic_amplitude(c.p, c.k1, 1.0, truth.C);
    truth.t_origin = -10.0;
    const std::vector<DecompositionCoefficient> tv{truth};
    const long j_min = -200;
    std::vector<cplx> amps;
    for (long j = j_min; j < 200; ++j) amps.push_back(predict_longtime_amplitude(c.p, tv, j, 150.0));
    std::vector<long> window;
    for (long j = -150; j <= -20; ++j) window.push_back(j);
    for (long j = 23; j <= 150; ++j) window.push_back(j);
    const auto fit = fit_continuum_amplitude(c.p, c.k1, amps, j_min, window, 150.0);
    const std::vector<DecompositionCoefficient> fv{fit};
    for (long j : {-100L, -1L, 0L, 4L, 60L})
        CHECK(std::abs(predict_longtime_amplitude(c.p, fv, j, 150.0) - amps[j - j_min]) < 1e-12);
    const std::vector<long> outside{500};
    CHECK_THROWS_AS(fit_continuum_amplitude(c.p, c.k1, amps, j_min, outside, 150.0), DomainError);
}

}
