#pragma once

// Physical parameters of the waveguide + giant-atom model and the band
// quantities every other module is built on. Energies are in the same units
// as J; wave numbers are dimensionless (lattice constant 1).

#include <complex>
#include <numbers>

namespace gawq {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

// Distance from 0 or pi below which a real wave number counts as a band edge.
inline constexpr double band_edge_guard = 1e-9;

struct SystemParams {
    double omega_a = 0.0; // atomic transition frequency
    double omega_c = 0.0; // cavity frequency (band centre)
    double gamma = 0.0;   // gamma < 0 loss, gamma > 0 gain
    double J = 1.0;       // hopping
    double g = 0.0;       // atom-waveguide coupling at each of the two sites
    int N = 1;            // separation of the coupling sites 0 and N

    // Throws DomainError naming the first violated invariant.
    void validate() const;

    bool resonant() const noexcept { return omega_a == omega_c; }
};

struct BlochMode {
    double k = 0.0;
    double omega_k = 0.0;
    double v_g = 0.0;
};

// omega_c - 2J cos k, for real or complex k.
template <class K>
K dispersion(const SystemParams& p, K k) {
    using std::cos;
    return p.omega_c - 2.0 * p.J * cos(k);
}

template <class K>
K group_velocity(const SystemParams& p, K k) {
    using std::sin;
    return 2.0 * p.J * sin(k);
}

// Second derivative of the dispersion, 2J cos k.
inline double dispersion_curvature(const SystemParams& p, double k) {
    return 2.0 * p.J * std::cos(k);
}

// Inverse of the dispersion on [0, pi]; throws DomainError outside the band.
double wavenumber_from_energy(const SystemParams& p, double omega);

// Two-point interference factor 1 + e^{ikN}.
cplx coupling_phase(const SystemParams& p, cplx k);

// Validated mode with k strictly inside (0, pi) away from the band edges.
BlochMode bloch_mode(const SystemParams& p, double k);

// Throws DomainError unless k lies in (0, pi) at least band_edge_guard from the edges.
void require_interior_k(double k);

} // namespace gawq
