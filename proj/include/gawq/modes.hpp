#pragma once

// Real-space Siegert states, their normalization, overlaps with a Gaussian
// packet, and the pole-only long-time density.

#include "gawq/core_model.hpp"
#include "gawq/packet.hpp"
#include "gawq/spectral.hpp"

#include <span>
#include <vector>

namespace gawq {

// modulus:  1 / sqrt(1 + g^2/2pi Int |1+e^{ikN}|^2 / |E - w_k|^2)
// bilinear: 1 / sqrt(1 + g^2/2pi Int |1+e^{ikN}|^2 / (E - w_k)^2), the
//           normalization under the unconjugated product; the one that makes
//           pole expansions of the dynamics consistent.
enum class NormConvention { modulus, bilinear };

// Throws NonNormalizable for a real energy inside the band.
cplx normalization_factor(const SystemParams& p, const SiegertPole& pole,
                          NormConvention conv = NormConvention::modulus);

// True when the pole energy is real and inside the band.
bool in_band_real(const SystemParams& p, const SiegertPole& pole);

struct BoundStateProfile {
    SiegertPole pole;
    cplx norm_factor{1.0, 0.0}; // also the atomic amplitude
    bool normalized = false;
    std::vector<cplx> interior; // sites 1 .. N-1, by quadrature

    // <j|Psi_n>: closed form outside (0, N), tabulated inside.
    cplx amplitude(const SystemParams& p, long j) const;
};

// Un-normalized (norm_factor = 1) when the state is not normalizable.
BoundStateProfile bound_profile(const SystemParams& p, const SiegertPole& pole,
                                NormConvention conv = NormConvention::bilinear);

// Closed form -i N g / (2J sin k_n) (e^{ik_n|j|} + e^{ik_n|j-N|}), valid for every j.
cplx profile_closed_form(const SystemParams& p, const SiegertPole& pole, cplx norm_factor, long j);

// g N / (2 pi) Int (e^{ikj} + e^{ik(j-N)}) / (E_n - w_k + i0) dk; upper-branch poles only.
cplx profile_quadrature(const SystemParams& p, const SiegertPole& pole, cplx norm_factor, long j);

// g / sqrt(2 pi) Int beta(k) (1 + e^{ikN}) / (E_n - w_k + i side eps) dk, without the
// normalization factor. eps = 0 takes the limit. side = -1 is the expansion-coefficient
// form; side = +1 matches the +i0 of the profile and the lattice sum. The two differ
// only for a real in-band E_n.
cplx overlap_integral(const SystemParams& p, const SiegertPole& pole, const GaussianPacketSpec& packet,
                      double epsilon = 0.0, double* error = nullptr, int side = -1);

// The same overlap as the unconjugated lattice sum sum_j <j|Psi_n> phi(j), with the
// +i0 profile and the discretely normalized packet. Exact up to rounding, so it
// resolves overlaps far below the quadrature error (distant packets).
cplx overlap_lattice_sum(const SystemParams& p, const SiegertPole& pole, const GaussianPacketSpec& packet);

struct DecompositionCoefficient {
    SiegertPole pole;
    cplx norm_factor{1.0, 0.0};
    bool normalized = false;
    cplx C{};           // overlap with the initial packet
    cplx A{};           // -i N C g (1 + e^{-ik_nN}) / (2J sin k_n)
    double t_origin = 0.0; // time at which C is taken
    bool from_lattice_sum = false;
};

// N_n times overlap_integral on the +i0 side; N_n = 1 when the state is not
// normalizable. For a complex pole whose overlap is below ten times the
// quadrature error estimate, the lattice sum is used instead.
DecompositionCoefficient overlap_coefficient(const SystemParams& p, const SiegertPole& pole,
                                             const GaussianPacketSpec& packet, double epsilon = 0.0,
                                             NormConvention conv = NormConvention::bilinear);

cplx asymptotic_amplitude(const SystemParams& p, const SiegertPole& pole, cplx norm_factor, cplx C);

// Site amplitude of the pole part, A_n e^{-iE_n(t - t_origin)} e^{ik_n max(j, N-j)} summed over poles.
cplx predict_longtime_amplitude(const SystemParams& p, std::span<const DecompositionCoefficient> coeffs, long j,
                                double t);

double predict_longtime_density(const SystemParams& p, std::span<const DecompositionCoefficient> coeffs, long j,
                                double t);

// Least-squares amplitude of an in-continuum pole from simulated site amplitudes
// at time t: returns a coefficient whose prediction best matches amps[j - j_min]
// over sites in `window`. C holds the product N_1 C_1.
DecompositionCoefficient fit_continuum_amplitude(const SystemParams& p, const SiegertPole& pole,
                                                 std::span<const cplx> amps, long j_min,
                                                 std::span<const long> window, double t);

} // namespace gawq
