#pragma once
// Independent reference computations used only by the tests.

#include "gawq/core_model.hpp"

#include <cmath>
#include <complex>
#include <functional>

namespace oracle {

using gawq::cplx;

// Stationary amplitudes in the general detuned form, with the atom eliminated
// analytically: r = W/V, t = Z/V.
inline cplx detuned_denominator(const gawq::SystemParams& p, double k) {
    const cplx e = std::exp(cplx(0.0, k * p.N));
    const double wk = p.omega_c - 2.0 * p.J * std::cos(k);
    return 2.0 * p.g * p.g * (1.0 + e) - cplx(0.0, 2.0 * p.J * std::sin(k)) * (wk - p.omega_a - cplx(0.0, p.gamma));
}

inline cplx detuned_r(const gawq::SystemParams& p, double k) {
    const cplx e = std::exp(cplx(0.0, k * p.N));
    return -p.g * p.g * (1.0 + e) * (1.0 + e) / detuned_denominator(p, k);
}

inline cplx detuned_t(const gawq::SystemParams& p, double k) {
    const cplx e = std::exp(cplx(0.0, k * p.N));
    return 1.0 - p.g * p.g * (1.0 + e) * (1.0 + 1.0 / e) / detuned_denominator(p, k);
}

// Int_{-pi}^{pi} e^{ikm} / (E - w_k) dk by residues, E = w_c - 2J cos q with
// Im q > 0 (complex E, or the +i0 side of a real in-band E when q is real).
inline cplx contour_resolvent(const gawq::SystemParams& p, cplx q, long m) {
    return cplx(0.0, -gawq::pi) * std::exp(cplx(0.0, 1.0) * q * static_cast<double>(std::labs(m))) /
           (p.J * std::sin(q));
}

// Periodic trapezoid rule on [-pi, pi); spectrally accurate for smooth periodic f.
inline cplx trapezoid(const std::function<cplx(double)>& f, long n) {
    cplx s{};
    const double h = 2.0 * gawq::pi / static_cast<double>(n);
    for (long i = 0; i < n; ++i) s += f(-gawq::pi + h * static_cast<double>(i));
    return s * h;
}

inline gawq::SystemParams params(double gamma, int N = 3, double g = 0.812) {
    gawq::SystemParams p;
    p.gamma = gamma;
    p.N = N;
    p.g = g;
    return p;
}

} // namespace oracle
