#pragma once

// Single-photon Gaussian wave packet on the lattice.

#include "gawq/core_model.hpp"

namespace gawq {

struct GaussianPacketSpec {
    double alpha = 0.02; // inverse width in sites
    long j_c = -500;     // initial centre
    double k_c = 1.32;   // mean wave number

    void validate() const;

    double v_c(const SystemParams& p) const { return group_velocity(p, k_c); }
    // Time for the centre to reach site 0; the run starts at t = -t_c.
    double t_c(const SystemParams& p) const { return -static_cast<double>(j_c) / v_c(p); }

    // Sites of margin needed between the centre and a lattice edge.
    long margin() const;

    // True when the initial Gaussian reaches the coupling sites (within 6/alpha).
    bool overlaps_coupling(const SystemParams& p) const;

    // Site amplitude pi^{-1/4} alpha^{1/2} exp(-alpha^2 (j-j_c)^2 / 2) exp(i k_c j).
    cplx amplitude(long j) const;

    // Momentum amplitude beta(k) with phi(j) = (2 pi)^{-1/2} Int beta(k) e^{ikj} dk.
    cplx momentum_amplitude(double k) const;

    // Interval outside which |beta| is below e^{-72} of its peak.
    double momentum_halfwidth() const { return 12.0 * alpha; }
};

} // namespace gawq
