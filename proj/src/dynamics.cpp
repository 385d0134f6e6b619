#include "gawq/dynamics.hpp"

#include "gawq/errors.hpp"
#include "gawq/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

namespace gawq {

namespace {

constexpr cplx I{0.0, 1.0};

void check_coupling_sites(const SystemParams& p, const Lattice& lat) {
    if (!lat.contains(0) || !lat.contains(p.N)) throw DomainError("coupling sites 0 and N must lie on the lattice");
}

} // namespace

Lattice Lattice::centered(long sites) {
    if (sites < 2) throw DomainError("lattice.sites must be at least 2");
    return Lattice{-sites / 2, sites};
}

double LatticeState::total_probability() const { return kernels::norm2(amps.data(), amps.size()); }

LatticeState init_gaussian(const SystemParams& p, const GaussianPacketSpec& spec, const Lattice& lattice) {
    p.validate();
    spec.validate();
    check_coupling_sites(p, lattice);
    const long m = spec.margin();
    if (spec.j_c - m < lattice.j_min || spec.j_c + m > lattice.j_max()) {
        std::ostringstream os;
        os << "packet centre " << spec.j_c << " needs " << m << " sites of margin inside [" << lattice.j_min << ", "
           << lattice.j_max() << "]";
        throw DomainError(os.str());
    }
    if (spec.overlaps_coupling(p)) std::cerr << "warning: packet overlaps the coupling sites\n";

    LatticeState s;
    s.time = -spec.t_c(p);
    s.lattice = lattice;
    s.amps.assign(static_cast<std::size_t>(lattice.sites) + 1, cplx{});
    for (long j = lattice.j_min; j <= lattice.j_max(); ++j) s.amps[lattice.index(j)] = spec.amplitude(j);
    const double scale = 1.0 / std::sqrt(s.total_probability());
    for (auto& a : s.amps) a *= scale;
    return s;
}

void LatticeRhs::operator()(double, std::span<const cplx> y, std::span<cplx> dy) const {
    const auto n = static_cast<std::size_t>(lattice.sites);
    kernels::hopping(y.data(), dy.data(), n, params.omega_c, params.J);
    const cplx a = y[n];
    const std::size_t i0 = lattice.index(0);
    const std::size_t iN = lattice.index(params.N);
    dy[i0] -= I * params.g * a;
    dy[iN] -= I * params.g * a;
    const double s = flip_atom_energy ? -1.0 : 1.0;
    dy[n] = -I * (s * (params.omega_a + I * params.gamma) * a + params.g * (y[i0] + y[iN]));
}

std::vector<cplx> rhs(const SystemParams& p, const LatticeState& state, bool flip_atom_energy) {
    check_coupling_sites(p, state.lattice);
    std::vector<cplx> dy(state.amps.size());
    LatticeRhs{p, state.lattice, flip_atom_energy}(state.time, state.amps, dy);
    return dy;
}

Sample measure(const SystemParams& p, const LatticeState& st) {
    Sample s;
    s.t = st.time;
    const Lattice& lat = st.lattice;
    const double half = 0.5 * p.N;
    for (long j = lat.j_min; j <= lat.j_max(); ++j) {
        const double P = std::norm(st.amps[lat.index(j)]);
        if (j < 0) {
            s.R_L += P;
        } else if (j > p.N) {
            s.T_L += P;
        } else {
            s.interior += P;
        }
        if (std::abs(j - half) <= 100.0) s.central_prob += P;
    }
    s.atom_prob = std::norm(st.atom());
    s.total_norm = s.R_L + s.T_L + s.interior + s.atom_prob;
    return s;
}

std::pair<double, double> reflect_transmit(const SystemParams& p, const LatticeState& state) {
    const Sample s = measure(p, state);
    return {s.R_L, s.T_L};
}

const Snapshot& RunObservables::snapshot_at(double t) const {
    for (const auto& s : snapshots) {
        if (std::abs(s.t - t) < 1e-9 * std::max(1.0, std::abs(t))) return s;
    }
    std::ostringstream os;
    os << "no snapshot at t = " << t;
    throw DomainError(os.str());
}

RunObservables evolve(const SystemParams& p, const LatticeState& state0, const EvolveOptions& opt) {
    p.validate();
    check_coupling_sites(p, state0.lattice);
    const double t0 = state0.time;
    if (!(opt.t_end > t0)) throw DomainError("evolve.t_end must be after the start time");
    if (!(opt.tol > 0.0)) throw DomainError("evolve.tol must be positive");
    if (!(opt.sample_dt > 0.0)) throw DomainError("evolve.sample_dt must be positive");
    if (!std::is_sorted(opt.snapshots.begin(), opt.snapshots.end())) {
        throw DomainError("evolve.snapshots must be sorted");
    }
    for (double ts : opt.snapshots) {
        if (ts < t0 || ts > opt.t_end) {
            std::ostringstream os;
            os << "snapshot time " << ts << " outside the run [" << t0 << ", " << opt.t_end << "]";
            throw DomainError(os.str());
        }
    }

    std::vector<double> times;
    for (long i = 0;; ++i) {
        const double ts = t0 + static_cast<double>(i) * opt.sample_dt;
        if (ts >= opt.t_end) break;
        times.push_back(ts);
    }
    times.push_back(opt.t_end);
    times.insert(times.end(), opt.snapshots.begin(), opt.snapshots.end());
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    RunObservables obs;
    obs.lattice = state0.lattice;
    const Lattice& lat = state0.lattice;
    const auto n = static_cast<std::size_t>(lat.sites);
    const auto edge = static_cast<std::size_t>(std::min(opt.guard_sites, lat.sites / 2));
    std::size_t next_snap = 0;

    LatticeState cur = state0;
    auto observer = [&](double t, std::span<const cplx> y) {
        cur.time = t;
        std::copy(y.begin(), y.end(), cur.amps.begin());
        Sample s = measure(p, cur);
        const double edge_prob =
            kernels::norm2(y.data(), edge) + kernels::norm2(y.data() + (n - edge), edge);
        const double frac = edge_prob / s.total_norm;
        if (frac > opt.guard) throw BoundaryViolation(t, frac);
        obs.series.push_back(s);
        while (next_snap < opt.snapshots.size() && opt.snapshots[next_snap] == t) {
            obs.snapshots.push_back(Snapshot{t, std::vector<cplx>(y.begin(), y.begin() + static_cast<long>(n))});
            ++next_snap;
        }
    };

    DormandPrince::Options io;
    io.atol = opt.tol;
    io.rtol = opt.tol;
    io.h_min = 1e-12 / p.J;
    DormandPrince dp(LatticeRhs{p, lat, opt.flip_atom_energy}, io);
    std::vector<cplx> y = state0.amps;
    dp.integrate(t0, y, times, observer);
    obs.final_state = cur;
    obs.stats = dp.stats();
    return obs;
}

double analytic_free_density(const SystemParams& p, const GaussianPacketSpec& spec, long j, double t) {
    const double vc = spec.v_c(p);
    const double spread = spec.alpha * dispersion_curvature(p, spec.k_c) * (t + spec.t_c(p));
    const double w2 = 1.0 / (spec.alpha * spec.alpha) + spread * spread;
    const double x = static_cast<double>(j) - vc * t;
    return std::exp(-x * x / w2) / std::sqrt(pi * w2);
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("least squares needs at least two points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw DomainError("least squares: degenerate abscissae");
    return sxy / sxx;
}

double fit_growth_rate(const RunObservables& obs, double t0, double t1) {
    std::vector<double> ts, ls;
    for (const auto& s : obs.series) {
        if (s.t < t0 || s.t > t1) continue;
        if (!(s.central_prob > 0.0)) throw NumericalError("growth fit: non-positive probability in window");
        ts.push_back(s.t);
        ls.push_back(std::log(s.central_prob));
    }
    if (ts.size() < 2) throw DomainError("growth fit: fewer than two samples in the window");
    return least_squares_slope(ts, ls);
}

double fit_spatial_slope(const Snapshot& snap, const Lattice& lat, long j_lo, long j_hi) {
    if (!(j_lo < j_hi) || !lat.contains(j_lo) || !lat.contains(j_hi)) {
        throw DomainError("slope fit window must be an ordered range on the lattice");
    }
    std::vector<double> js, ls;
    for (long j = j_lo; j <= j_hi; ++j) {
        const double P = snap.density(lat, j);
        if (!(P > 0.0)) throw NumericalError("slope fit: non-positive density in window");
        js.push_back(static_cast<double>(j));
        ls.push_back(std::log(P));
    }
    return least_squares_slope(js, ls);
}

double plateau_flatness(const Snapshot& snap, const Lattice& lat, long j_lo, long j_hi) {
    if (!(j_lo <= j_hi) || !lat.contains(j_lo) || !lat.contains(j_hi)) {
        throw DomainError("plateau window must be an ordered range on the lattice");
    }
    double lo = INFINITY, hi = 0.0;
    for (long j = j_lo; j <= j_hi; ++j) {
        const double P = snap.density(lat, j);
        lo = std::min(lo, P);
        hi = std::max(hi, P);
    }
    return hi / lo;
}

} // namespace gawq
