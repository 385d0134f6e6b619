#pragma once

// Adaptive quadrature of complex integrands over the Brillouin zone, and
// resolvent integrals  Int f(k) / (E - w_k) dk  with the i0 limit taken
// analytically when E is real and inside the band.

#include "gawq/core_model.hpp"

#include <functional>
#include <span>

namespace gawq::quad {

using Integrand = std::function<cplx(double)>;

struct Options {
    double rel_tol = 1e-12;
    double abs_tol = 1e-10;
    int max_depth = 14; // at most 2^max_depth subintervals
    // Relative floor on the error target for integrands that lose digits
    // internally (target is also at least noise_floor * L1).
    double noise_floor = 0.0;
};

struct Result {
    cplx value{};
    double error = 0.0; // estimated absolute error
};

// Int_a^b f, split at every breakpoint inside (a, b). Throws NumericalError
// when the error estimate misses max(abs_tol, rel_tol * L1) by more than 100x.
Result integrate(const Integrand& f, double a, double b, std::span<const double> breakpoints = {},
                 const Options& opt = {});

// Int_{-pi}^{pi} f(k) / (E + i*sign*0 - w_k) dk, sign = +1 or -1.
// Complex E: direct quadrature, split where w_k = Re E. Real E in the band:
// principal value plus the -i*sign*pi delta-function term.
Result resolvent(const SystemParams& p, cplx E, const Integrand& f, int sign,
                 std::span<const double> breakpoints = {}, const Options& opt = {});

// Same integral at finite epsilon, E + i*sign*eps. Rounding in E - w_k near
// resonance limits the accuracy to about 1e-14 * L1 / eps.
Result resolvent_eps(const SystemParams& p, cplx E, const Integrand& f, int sign, double eps,
                     std::span<const double> breakpoints = {}, const Options& opt = {});

} // namespace gawq::quad
