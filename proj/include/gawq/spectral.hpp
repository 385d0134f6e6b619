#pragma once

// Spectral singularities (real-k poles of the scattering amplitudes) and the
// complex Siegert poles of the two-branch eigenvalue equation.

#include "gawq/core_model.hpp"

#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace gawq {

struct SingularityPoint {
    double k = 0.0;
    double gamma = 0.0;
    double omega = 0.0;
    double residual = 0.0; // max-abs of the two real conditions
};

enum class SiegertClass { bound, virtual_state, resonant, antiresonant, growing, decaying, in_continuum };

std::string_view to_string(SiegertClass c);

// Which case of the eigenvalue equation a pole satisfies.
enum class Branch { upper, lower }; // Im k >= 0, Im k < 0

std::string_view to_string(Branch b);

struct SiegertPole {
    cplx k{};
    cplx E{};
    Branch branch = Branch::upper;
    SiegertClass cls = SiegertClass::bound;
    double residual = 0.0;
};

// Rectangle in the complex k plane.
struct SearchBox {
    double re_min = 0.0;
    double re_max = pi - 0.02;
    double im_min = -2.0;
    double im_max = 2.0;
    int re_points = 80;
    int im_points = 80;
    // The lower-branch residual at k equals the upper-branch residual at -k, so
    // each lower-branch root mirrors an incoming-wave root with Re k <= 0.
    // Such roots are dropped unless this is set.
    bool keep_mirror_roots = false;

    void validate() const;
};

// The two real conditions for a spectral singularity at real k with trial gain:
// g^2 sin Nk + 2J^2 sin k cos k + (omega_a - omega_c) J sin k  and
// g^2 (1 + cos Nk) - J gamma sin k.
std::pair<double, double> singularity_residual(const SystemParams& p, double k, double gamma_trial);

// All non-decoupled roots in (0, pi), sorted by k. p.gamma is ignored.
std::vector<SingularityPoint> find_singularities(const SystemParams& p);

// Gain at the lowest-k spectral singularity; throws NumericalError if none exists.
double critical_gain(const SystemParams& p);

// Eigenvalue-equation residual, branch chosen by the sign of Im k.
cplx eigen_residual(const SystemParams& p, cplx k);

// Residual of a fixed branch, analytic in k away from sin k = 0.
cplx branch_residual(const SystemParams& p, cplx k, Branch branch);

SiegertClass classify_siegert(cplx k);

// Damped-Newton search seeded on a grid over the box. Extra seeds are tried
// before the grid (used for warm starts). Output sorted by Re k then Im k.
// Roots at which 1 + e^{ikN} vanishes are dropped, and g = 0 gives no poles.
std::vector<SiegertPole> solve_poles(const SystemParams& p, const SearchBox& box = {},
                                     std::span<const cplx> extra_seeds = {});

struct TrajectoryRow {
    double gamma = 0.0;
    std::vector<SiegertPole> poles;
};

// One row per gamma; each gamma is warm-started from the previous roots.
std::vector<TrajectoryRow> trajectory_sweep(const SystemParams& p, std::span<const double> gamma_grid,
                                            const SearchBox& box = {});

} // namespace gawq
