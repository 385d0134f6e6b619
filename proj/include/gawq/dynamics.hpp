#pragma once

// Time evolution of a single photon on a finite open chain coupled to the
// two-point atom, and the observables extracted from it.
//
// Clock: t = 0 is when the packet centre would reach site 0 in free flight,
// so a run starts at t = -t_c.

#include "gawq/core_model.hpp"
#include "gawq/integrator.hpp"
#include "gawq/packet.hpp"

#include <span>
#include <utility>
#include <vector>

namespace gawq {

struct Lattice {
    long j_min = -5000;
    long sites = 10000;

    long j_max() const { return j_min + sites - 1; }
    bool contains(long j) const { return j >= j_min && j <= j_max(); }
    std::size_t index(long j) const { return static_cast<std::size_t>(j - j_min); }

    // Sites j_min = -sites/2 .. sites/2 - 1, which puts 0 .. N near the middle.
    static Lattice centered(long sites);
};

struct LatticeState {
    double time = 0.0;
    Lattice lattice;
    std::vector<cplx> amps; // lattice sites in order, then the atom

    cplx site(long j) const { return amps[lattice.index(j)]; }
    cplx atom() const { return amps.back(); }
    std::span<const cplx> sites() const { return {amps.data(), amps.size() - 1}; }
    double total_probability() const;
};

// Gaussian packet at t = -t_c, renormalized to unit total probability.
// Throws DomainError without 6/alpha sites of margin on each side or when the
// coupling sites fall outside the lattice; warns on stderr when the packet
// overlaps the coupling sites.
LatticeState init_gaussian(const SystemParams& p, const GaussianPacketSpec& spec, const Lattice& lattice);

// Right-hand side of the equations of motion for the state vector (sites, atom).
struct LatticeRhs {
    SystemParams params;
    Lattice lattice;
    bool flip_atom_energy = false; // use -(omega_a + i gamma) in the atom equation

    void operator()(double t, std::span<const cplx> y, std::span<cplx> dy) const;
};

std::vector<cplx> rhs(const SystemParams& p, const LatticeState& state, bool flip_atom_energy = false);

struct Sample {
    double t = 0.0;
    double R_L = 0.0;       // sum over j < 0
    double T_L = 0.0;       // sum over j > N
    double interior = 0.0;  // sum over 0 <= j <= N
    double atom_prob = 0.0;
    double total_norm = 0.0;
    double central_prob = 0.0; // sum over |j - N/2| <= 100
};

struct Snapshot {
    double t = 0.0;
    std::vector<cplx> amps; // lattice sites only

    double density(const Lattice& lat, long j) const { return std::norm(amps[lat.index(j)]); }
};

struct EvolveOptions {
    double t_end = 0.0;
    std::vector<double> snapshots; // sorted, within [start, t_end]
    double tol = 1e-9;
    double sample_dt = 1.0;
    bool flip_atom_energy = false;
    double guard = 1e-8;   // max edge probability as a fraction of the total
    long guard_sites = 20; // sites per edge counted by the guard
};

struct RunObservables {
    Lattice lattice;
    std::vector<Snapshot> snapshots;
    std::vector<Sample> series;
    LatticeState final_state;
    DormandPrince::Stats stats;

    const Snapshot& snapshot_at(double t) const;
};

// Throws BoundaryViolation when the guard trips at any sample time.
RunObservables evolve(const SystemParams& p, const LatticeState& state0, const EvolveOptions& opt);

Sample measure(const SystemParams& p, const LatticeState& state);

// (R_L, T_L) of a state.
std::pair<double, double> reflect_transmit(const SystemParams& p, const LatticeState& state);

// Free-flight density: Gaussian of width^2 = alpha^-2 + (alpha w''(k_c) (t + t_c))^2 centred at v_c t.
double analytic_free_density(const SystemParams& p, const GaussianPacketSpec& spec, long j, double t);

// Least-squares slope of ln(central_prob) over samples with t in [t0, t1].
double fit_growth_rate(const RunObservables& obs, double t0, double t1);

// Least-squares slope of ln P(j) for j in [j_lo, j_hi].
double fit_spatial_slope(const Snapshot& snap, const Lattice& lat, long j_lo, long j_hi);

// max P / min P over [j_lo, j_hi].
double plateau_flatness(const Snapshot& snap, const Lattice& lat, long j_lo, long j_hi);

// Ordinary least-squares slope of y against x.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

} // namespace gawq
