#include "gawq/modes.hpp"

#include "gawq/errors.hpp"
#include "gawq/quadrature.hpp"

#include <cmath>
#include <sstream>

namespace gawq {

namespace {

constexpr cplx I{0.0, 1.0};

// |1 + e^{ikN}|^2 for real k.
double phase_weight(const SystemParams& p, double k) { return 2.0 + 2.0 * std::cos(p.N * k); }

cplx prefactor(const SystemParams& p, const SiegertPole& pole) {
    const cplx s = std::sin(pole.k);
    if (std::abs(s) < 1e-12) throw NumericalError("profile: sin k_n vanishes");
    return -I * p.g / (2.0 * p.J * s);
}

} // namespace

bool in_band_real(const SystemParams& p, const SiegertPole& pole) {
    return pole.E.imag() == 0.0 && std::abs(pole.E.real() - p.omega_c) <= 2.0 * p.J;
}

cplx normalization_factor(const SystemParams& p, const SiegertPole& pole, NormConvention conv) {
    if (p.g == 0.0) return 1.0;
    if (in_band_real(p, pole)) {
        std::ostringstream os;
        os.precision(17);
        os << "non-normalizable in-continuum state at E = " << pole.E.real();
        throw NonNormalizable(os.str());
    }
    const cplx E = pole.E;
    quad::Result r;
    if (conv == NormConvention::modulus) {
        r = quad::integrate(
            [&](double k) -> cplx { return phase_weight(p, k) / std::norm(E - dispersion(p, k)); }, -pi, pi,
            std::vector<double>{-std::abs(pole.k.real()), std::abs(pole.k.real())});
    } else {
        r = quad::resolvent(
            p, E,
            [&](double k) -> cplx { return phase_weight(p, k) / (E - dispersion(p, k)); }, +1);
    }
    return 1.0 / std::sqrt(1.0 + p.g * p.g / (2.0 * pi) * r.value);
}

cplx profile_closed_form(const SystemParams& p, const SiegertPole& pole, cplx norm_factor, long j) {
    const auto jd = static_cast<double>(j);
    const double dist_b = std::abs(jd - p.N);
    return norm_factor * prefactor(p, pole) *
           (std::exp(I * pole.k * std::abs(jd)) + std::exp(I * pole.k * dist_b));
}

cplx profile_quadrature(const SystemParams& p, const SiegertPole& pole, cplx norm_factor, long j) {
    if (pole.k.imag() < 0.0) throw DomainError("profile_quadrature: lower-branch pole has no integral form");
    const auto jd = static_cast<double>(j);
    const auto Nd = static_cast<double>(p.N);
    auto f = [&](double k) -> cplx { return std::exp(I * (k * jd)) + std::exp(I * (k * (jd - Nd))); };
    const auto r = quad::resolvent(p, pole.E, f, +1);
    return norm_factor * p.g / (2.0 * pi) * r.value;
}

cplx BoundStateProfile::amplitude(const SystemParams& p, long j) const {
    if (j > 0 && j < p.N && static_cast<std::size_t>(j - 1) < interior.size()) {
        return interior[static_cast<std::size_t>(j - 1)];
    }
    return profile_closed_form(p, pole, norm_factor, j);
}

BoundStateProfile bound_profile(const SystemParams& p, const SiegertPole& pole, NormConvention conv) {
    BoundStateProfile out;
    out.pole = pole;
    try {
        out.norm_factor = normalization_factor(p, pole, conv);
        out.normalized = true;
    } catch (const NonNormalizable&) {
        out.norm_factor = 1.0;
        out.normalized = false;
    }
    for (long j = 1; j < p.N; ++j) {
        out.interior.push_back(pole.k.imag() >= 0.0 ? profile_quadrature(p, pole, out.norm_factor, j)
                                                    : profile_closed_form(p, pole, out.norm_factor, j));
    }
    return out;
}

cplx overlap_integral(const SystemParams& p, const SiegertPole& pole, const GaussianPacketSpec& packet,
                      double epsilon, double* error, int side) {
    packet.validate();
    if (side != 1 && side != -1) throw DomainError("overlap_integral: side must be +1 or -1");
    const auto Nd = static_cast<double>(p.N);
    auto f = [&](double k) -> cplx {
        return packet.momentum_amplitude(k) * (1.0 + std::exp(I * (k * Nd)));
    };
    const double hw = packet.momentum_halfwidth();
    const std::vector<double> bp{packet.k_c - hw, packet.k_c - hw / 3.0, packet.k_c, packet.k_c + hw / 3.0,
                                 packet.k_c + hw};
    const auto r = epsilon > 0.0 ? quad::resolvent_eps(p, pole.E, f, side, epsilon, bp)
                                 : quad::resolvent(p, pole.E, f, side, bp);
    if (error) *error = p.g / std::sqrt(2.0 * pi) * r.error;
    return p.g / std::sqrt(2.0 * pi) * r.value;
}

cplx overlap_lattice_sum(const SystemParams& p, const SiegertPole& pole, const GaussianPacketSpec& packet) {
    packet.validate();
    const auto reach = static_cast<long>(std::ceil(40.0 / packet.alpha));
    const long lo = std::min(packet.j_c - reach, 0L);
    const long hi = std::max(packet.j_c + reach, static_cast<long>(p.N));
    const auto prof = bound_profile(p, pole, NormConvention::bilinear);
    cplx sum = 0.0;
    double norm = 0.0;
    for (long j = lo; j <= hi; ++j) {
        const cplx phi = packet.amplitude(j);
        norm += std::norm(phi);
        sum += phi * prof.amplitude(p, j);
    }
    return sum / (std::sqrt(norm) * prof.norm_factor);
}

cplx asymptotic_amplitude(const SystemParams& p, const SiegertPole& pole, cplx norm_factor, cplx C) {
    return norm_factor * C * prefactor(p, pole) * (1.0 + std::exp(-I * pole.k * static_cast<double>(p.N)));
}

DecompositionCoefficient overlap_coefficient(const SystemParams& p, const SiegertPole& pole,
                                             const GaussianPacketSpec& packet, double epsilon,
                                             NormConvention conv) {
    DecompositionCoefficient d;
    d.pole = pole;
    try {
        d.norm_factor = normalization_factor(p, pole, conv);
        d.normalized = true;
    } catch (const NonNormalizable&) {
        d.norm_factor = 1.0;
        d.normalized = false;
    }
    double err = 0.0;
    cplx C = overlap_integral(p, pole, packet, epsilon, &err, +1);
    if (!in_band_real(p, pole) && std::abs(C) < 10.0 * err) {
        C = overlap_lattice_sum(p, pole, packet);
        d.from_lattice_sum = true;
    }
    d.C = d.norm_factor * C;
    d.A = asymptotic_amplitude(p, pole, d.norm_factor, d.C);
    d.t_origin = -packet.t_c(p);
    return d;
}

cplx predict_longtime_amplitude(const SystemParams& p, std::span<const DecompositionCoefficient> coeffs, long j,
                                double t) {
    const auto jd = static_cast<double>(j);
    const double dist = std::max(jd, p.N - jd);
    cplx sum = 0.0;
    for (const auto& c : coeffs) {
        if (j > 0 && j < p.N) {
            sum += c.C * profile_closed_form(p, c.pole, c.norm_factor, j) * std::exp(-I * c.pole.E * (t - c.t_origin));
        } else {
            sum += c.A * std::exp(-I * c.pole.E * (t - c.t_origin)) * std::exp(I * c.pole.k * dist);
        }
    }
    return sum;
}

double predict_longtime_density(const SystemParams& p, std::span<const DecompositionCoefficient> coeffs, long j,
                                double t) {
    return std::norm(predict_longtime_amplitude(p, coeffs, j, t));
}

DecompositionCoefficient fit_continuum_amplitude(const SystemParams& p, const SiegertPole& pole,
                                                 std::span<const cplx> amps, long j_min,
                                                 std::span<const long> window, double t) {
    cplx num = 0.0;
    double den = 0.0;
    for (long j : window) {
        const long idx = j - j_min;
        if (idx < 0 || static_cast<std::size_t>(idx) >= amps.size()) {
            throw DomainError("fit_continuum_amplitude: window outside the lattice");
        }
        const auto jd = static_cast<double>(j);
        const cplx u = std::exp(I * pole.k * std::max(jd, p.N - jd));
        num += std::conj(u) * amps[static_cast<std::size_t>(idx)];
        den += std::norm(u);
    }
    if (!(den > 0.0)) throw DomainError("fit_continuum_amplitude: empty window");
    DecompositionCoefficient d;
    d.pole = pole;
    d.norm_factor = 1.0;
    d.normalized = false;
    d.t_origin = t;
    d.A = num / den;
    d.C = d.A / asymptotic_amplitude(p, pole, 1.0, 1.0);
    return d;
}

} // namespace gawq
