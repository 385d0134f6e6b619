#include "gawq/scattering.hpp"

#include "gawq/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace gawq {

namespace {

constexpr double singular_rel_tol = 1e-12;
constexpr double decoupled_tol = 1e-12;
constexpr double max_condition = 1e14;
constexpr cplx I{0.0, 1.0};

void require_resonant(const SystemParams& p) {
    if (!p.resonant()) {
        throw DomainError("closed-form amplitudes require omega_a == omega_c; use stationary_solve");
    }
}

struct Closed {
    cplx r;
    cplx t;
};

Closed closed_form(const SystemParams& p, double k) {
    require_resonant(p);
    require_interior_k(k);
    const cplx phase = coupling_phase(p, k);
    if (p.g == 0.0 || std::abs(phase) <= decoupled_tol) return {0.0, 1.0};
    if (is_singular(p, k)) throw SingularScattering(k, p.gamma);
    const cplx den = scattering_denominator(p, k);
    const cplx conj_phase = 1.0 + std::exp(-I * k * static_cast<double>(p.N));
    const double g2 = p.g * p.g;
    return {-g2 * phase * phase / den, 1.0 - g2 * phase * conj_phase / den};
}

} // namespace

cplx scattering_denominator(const SystemParams& p, double k) {
    const double g2 = p.g * p.g;
    const double s = std::sin(k);
    return 2.0 * g2 * coupling_phase(p, k) - 2.0 * p.J * p.gamma * s +
           4.0 * I * p.J * p.J * s * std::cos(k);
}

bool is_singular(const SystemParams& p, double k) {
    const double g2 = p.g * p.g;
    const double s = std::sin(k);
    const double scale = 2.0 * g2 * std::abs(coupling_phase(p, k)) + std::abs(2.0 * p.J * p.gamma * s) +
                         std::abs(4.0 * p.J * p.J * s * std::cos(k));
    return std::abs(scattering_denominator(p, k)) < singular_rel_tol * scale;
}

cplx reflection_amplitude(const SystemParams& p, double k) { return closed_form(p, k).r; }

cplx transmission_amplitude(const SystemParams& p, double k) { return closed_form(p, k).t; }

ScatteringResult scatter(const SystemParams& p, double k) {
    ScatteringResult out;
    out.k = k;
    out.omega_k = dispersion(p, k);
    if (p.resonant()) {
        const Closed c = closed_form(p, k);
        out.r = c.r;
        out.t = c.t;
    } else {
        const StationaryAmplitudes s = stationary_solve(p, k);
        out.r = s.r();
        out.t = s.t();
    }
    out.R = std::norm(out.r);
    out.T = std::norm(out.t);
    out.flux_sum = out.R + out.T;
    return out;
}

cplx generalized_reflection(const SystemParams& p, cplx k) {
    const cplx s = std::sin(k);
    const cplx den = 2.0 * p.J * p.J * s * std::cos(k) + I * p.gamma * p.J * s -
                     I * p.g * p.g * coupling_phase(p, k);
    const double scale = 2.0 * p.J * p.J * std::abs(s) + std::abs(p.gamma * p.J * s) +
                         p.g * p.g * std::abs(coupling_phase(p, k));
    if (std::abs(den) < singular_rel_tol * scale || den == 0.0) throw SingularScattering(k.real(), p.gamma);
    return -p.J * s / den;
}

std::vector<ScatteringResult> spectrum_sweep(const SystemParams& p, std::span<const double> k_grid) {
    if (k_grid.empty()) throw DomainError("spectrum_sweep: empty k grid");
    p.validate();
    std::vector<ScatteringResult> out;
    out.reserve(k_grid.size());
    for (double k : k_grid) {
        require_interior_k(k);
        try {
            out.push_back(scatter(p, k));
        } catch (const SingularScattering&) {
            constexpr double nan = std::numeric_limits<double>::quiet_NaN();
            ScatteringResult s;
            s.k = k;
            s.omega_k = dispersion(p, k);
            s.r = s.t = cplx(nan, nan);
            s.R = s.T = s.flux_sum = nan;
            s.singular = true;
            out.push_back(s);
        }
    }
    return out;
}

StationaryAmplitudes stationary_solve(const SystemParams& p, double k) {
    require_interior_k(k);
    p.validate();
    const double J = p.J;
    const double g2 = p.g * p.g;
    const auto N = static_cast<double>(p.N);
    const double wk = dispersion(p, k);
    const cplx d = wk - p.omega_a - I * p.gamma;
    const cplx e = std::exp(I * k);
    const cplx eN = std::exp(I * k * N);
    const cplx emN = std::exp(-I * k * N);
    const double detune = wk - p.omega_c;

    // Unknowns (W, X, Y, Z); Psi(j<0) = e^{ikj} + W e^{-ikj}, Psi(0<=j<N) = X e^{ikj} + Y e^{-ikj},
    // Psi(j>=N) = Z e^{ikj}. The coupled-site equations are multiplied by d so that
    // Psi(a) = g (Psi(0) + Psi(N)) / d is eliminated without dividing.
    Eigen::Matrix4cd A = Eigen::Matrix4cd::Zero();
    Eigen::Vector4cd b = Eigen::Vector4cd::Zero();

    // Site 0: d[(wk-wc)Psi(0) + J(Psi(-1)+Psi(1))] - g^2 (Psi(0)+Psi(N)) = 0,
    // Psi(0) = X + Y, Psi(-1) = e^{-ik} + W e^{ik}, Psi(1) = X e^{ik} + Y e^{-ik}, Psi(N) = Z e^{ikN}.
    A(0, 0) = d * J * e;
    A(0, 1) = d * (detune + J * e) - g2;
    A(0, 2) = d * (detune + J / e) - g2;
    A(0, 3) = -g2 * eN;
    b(0) = -d * J / e;

    // Site N: Psi(N-1) = X e^{ik(N-1)} + Y e^{-ik(N-1)}, Psi(N+1) = Z e^{ik(N+1)}.
    A(1, 1) = d * J * eN / e - g2;
    A(1, 2) = d * J * emN * e - g2;
    A(1, 3) = d * (detune * eN + J * eN * e) - g2 * eN;

    // Continuity: 1 + W = X + Y and X e^{ikN} + Y e^{-ikN} = Z e^{ikN}.
    A(2, 0) = 1.0;
    A(2, 1) = -1.0;
    A(2, 2) = -1.0;
    b(2) = -1.0;
    A(3, 1) = eN;
    A(3, 2) = emN;
    A(3, 3) = -eN;

    const Eigen::JacobiSVD<Eigen::Matrix4cd> svd(A);
    const auto& sv = svd.singularValues();
    const double cond = sv(3) > 0.0 ? sv(0) / sv(3) : std::numeric_limits<double>::infinity();
    if (!(cond <= max_condition)) throw SingularScattering(k, p.gamma);

    const Eigen::Vector4cd x = A.fullPivLu().solve(b);
    StationaryAmplitudes s;
    s.W = x(0);
    s.X = x(1);
    s.Y = x(2);
    s.Z = x(3);
    s.condition = cond;
    s.psi_a = (std::abs(d) > 0.0) ? p.g * (s.X + s.Y + s.Z * eN) / d : cplx(std::numeric_limits<double>::quiet_NaN());
    return s;
}

} // namespace gawq
