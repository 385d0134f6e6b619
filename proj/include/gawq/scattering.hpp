#pragma once

// Time-independent single-photon scattering off the two-point atom: closed-form
// amplitudes for the resonant case, the atomic response factor, and the
// stationary-state linear solve that serves as an independent route.

#include "gawq/core_model.hpp"

#include <span>
#include <vector>

namespace gawq {

struct ScatteringResult {
    double k = 0.0;
    double omega_k = 0.0;
    cplx r{};
    cplx t{};
    double R = 0.0;
    double T = 0.0;
    double flux_sum = 0.0;
    bool singular = false; // amplitudes are NaN when set
};

struct StationaryAmplitudes {
    cplx V{1.0, 0.0};
    cplx W{};
    cplx X{};
    cplx Y{};
    cplx Z{};
    cplx psi_a{};
    double condition = 0.0; // 2-norm condition number of the solved 4x4 system

    cplx r() const { return W / V; }
    cplx t() const { return Z / V; }
};

// Denominator 2g^2(1+e^{ikN}) - 2J gamma sin k + 4i J^2 sin k cos k shared by r and t.
cplx scattering_denominator(const SystemParams& p, double k);

// True when |denominator| < 1e-12 times the sum of its term magnitudes.
bool is_singular(const SystemParams& p, double k);

// Resonant case only (omega_a == omega_c). Throws DomainError off resonance or at
// band edges, SingularScattering at a spectral singularity.
cplx reflection_amplitude(const SystemParams& p, double k);
cplx transmission_amplitude(const SystemParams& p, double k);

// Both amplitudes and rates. Uses the closed forms at resonance and the
// stationary solve otherwise.
ScatteringResult scatter(const SystemParams& p, double k);

// Atomic response factor -J sin k / (2J^2 sin k cos k + i gamma J sin k - i g^2 (e^{ikN}+1)).
cplx generalized_reflection(const SystemParams& p, cplx k);

// One result per grid point, in order. Singular points are flagged, not thrown.
std::vector<ScatteringResult> spectrum_sweep(const SystemParams& p, std::span<const double> k_grid);

// Dense 4x4 solve of the stationary equations with V = 1; valid off resonance.
StationaryAmplitudes stationary_solve(const SystemParams& p, double k);

} // namespace gawq
