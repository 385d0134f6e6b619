#include "gawq/spectral.hpp"

#include "gawq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gawq {

namespace {

constexpr cplx I{0.0, 1.0};

// Newton controls.
constexpr int max_iterations = 200;
constexpr int max_halvings = 30;
constexpr double converge_residual = 1e-12;
constexpr double converge_step = 1e-12;

// Root acceptance.
constexpr double accept_residual = 1e-10;
constexpr double dedup_radius = 1e-8;
constexpr double real_axis_tol = 1e-8;
constexpr double imag_axis_tol = 1e-9;
constexpr double sin_reject = 1e-9;

// Scan resolution for the real singularity equation.
constexpr int singularity_scan_points = 20000;

double first_condition(const SystemParams& p, double k) {
    const double s = std::sin(k);
    return p.g * p.g * std::sin(p.N * k) + 2.0 * p.J * p.J * s * std::cos(k) + (p.omega_a - p.omega_c) * p.J * s;
}

double first_condition_derivative(const SystemParams& p, double k) {
    return p.g * p.g * p.N * std::cos(p.N * k) + 2.0 * p.J * p.J * std::cos(2.0 * k) +
           (p.omega_a - p.omega_c) * p.J * std::cos(k);
}

// Polish a bracketed root of first_condition: safeguarded Newton inside [a, b].
double polish_real_root(const SystemParams& p, double a, double b) {
    double fa = first_condition(p, a);
    double x = 0.5 * (a + b);
    for (int it = 0; it < 200; ++it) {
        const double fx = first_condition(p, x);
        if (fx == 0.0) return x;
        if ((fx < 0.0) == (fa < 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        const double d = first_condition_derivative(p, x);
        double next = (d != 0.0) ? x - fx / d : 0.5 * (a + b);
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        if (std::abs(next - x) < 1e-16 * std::max(1.0, std::abs(x)) || b - a < 1e-15) return next;
        x = next;
    }
    return x;
}

// Newton polish of first_condition from a starting point, unbracketed.
double polish_real_newton(const SystemParams& p, double x) {
    for (int it = 0; it < 50; ++it) {
        const double d = first_condition_derivative(p, x);
        if (d == 0.0) break;
        const double step = first_condition(p, x) / d;
        x -= step;
        if (std::abs(step) < 1e-16) break;
    }
    return x;
}

bool in_box(const SearchBox& box, cplx k) {
    constexpr double slack = 1e-9;
    return k.real() >= box.re_min - slack && k.real() <= box.re_max + slack && k.imag() >= box.im_min - slack &&
           k.imag() <= box.im_max + slack;
}

struct NewtonResult {
    cplx k;
    double residual;
    bool ok;
};

NewtonResult damped_newton(const SystemParams& p, cplx k, Branch branch) {
    auto f = [&](cplx z) { return branch_residual(p, z, branch); };
    auto outside = [](cplx z) {
        return !(z.real() > -0.5 && z.real() < pi + 0.5 && std::abs(z.imag()) < 6.0) ||
               std::abs(std::sin(z)) < 1e-12;
    };
    if (outside(k)) return {k, 0.0, false};
    cplx fk = f(k);
    for (int it = 0; it < max_iterations; ++it) {
        const double h = 1e-7 * std::max(1.0, std::abs(k));
        const cplx deriv = (f(k + h) - f(k - h)) / (2.0 * h);
        if (deriv == 0.0 || !std::isfinite(std::abs(deriv))) return {k, std::abs(fk), false};
        cplx step = -fk / deriv;
        cplx trial = k + step;
        cplx ftrial = outside(trial) ? cplx(INFINITY) : f(trial);
        int halvings = 0;
        while (!(std::abs(ftrial) < std::abs(fk)) && halvings < max_halvings) {
            step *= 0.5;
            trial = k + step;
            ftrial = outside(trial) ? cplx(INFINITY) : f(trial);
            ++halvings;
        }
        if (!(std::abs(ftrial) < std::abs(fk))) {
            // No descent: converged to the floating-point floor or stuck.
            return {k, std::abs(fk), std::abs(fk) < accept_residual};
        }
        k = trial;
        fk = ftrial;
        if (std::abs(fk) < converge_residual && std::abs(step) < converge_step) return {k, std::abs(fk), true};
    }
    return {k, std::abs(fk), std::abs(fk) < accept_residual};
}

// Finalize a converged Newton root into a pole, or reject it.
bool finalize(const SystemParams& p, NewtonResult nr, Branch branch, bool keep_mirror, SiegertPole& pole) {
    cplx k = nr.k;
    if (branch == Branch::lower && !keep_mirror) return false;
    if (branch == Branch::upper && k.imag() < -real_axis_tol) return false;
    if (branch == Branch::lower && k.imag() > -real_axis_tol) return false;
    if (std::abs(k.real()) < imag_axis_tol) k.real(0.0);
    if (k.real() < 0.0 || k.real() >= pi) return false;
    if (std::abs(std::sin(k)) < sin_reject) return false;
    // Decoupled roots are dark states of the atom alone, not poles of r and t.
    if (std::abs(coupling_phase(p, k)) < 1e-10) return false;

    if (branch == Branch::upper && std::abs(k.imag()) < real_axis_tol) {
        // In-continuum candidate: polish the real-part condition on the real line.
        const double kr = polish_real_newton(p, k.real());
        if (!(kr > 0.0 && kr < pi)) return false;
        k = cplx(kr, 0.0);
    }
    const double res = std::abs(eigen_residual(p, k));
    if (!(res < accept_residual)) return false;
    pole.k = k;
    pole.E = dispersion(p, k);
    pole.branch = (k.imag() >= 0.0) ? Branch::upper : Branch::lower;
    pole.cls = classify_siegert(k);
    pole.residual = res;
    return true;
}

} // namespace

std::string_view to_string(SiegertClass c) {
    switch (c) {
    case SiegertClass::bound: return "bound";
    case SiegertClass::virtual_state: return "virtual";
    case SiegertClass::resonant: return "resonant";
    case SiegertClass::antiresonant: return "antiresonant";
    case SiegertClass::growing: return "growing";
    case SiegertClass::decaying: return "decaying";
    case SiegertClass::in_continuum: return "in-continuum";
    }
    return "unknown";
}

std::string_view to_string(Branch b) { return b == Branch::upper ? "upper" : "lower"; }

void SearchBox::validate() const {
    if (!(re_min >= 0.0 && re_max <= pi && re_min < re_max)) {
        throw DomainError("search box must satisfy 0 <= re_min < re_max <= pi");
    }
    if (!(im_min < im_max)) throw DomainError("search box must satisfy im_min < im_max");
    if (re_points < 1 || im_points < 1) throw DomainError("search box needs at least one seed per axis");
}

std::pair<double, double> singularity_residual(const SystemParams& p, double k, double gamma_trial) {
    return {first_condition(p, k), p.g * p.g * (1.0 + std::cos(p.N * k)) - p.J * gamma_trial * std::sin(k)};
}

std::vector<SingularityPoint> find_singularities(const SystemParams& p) {
    p.validate();
    if (p.g <= 0.0) throw DomainError("find_singularities requires g > 0");
    std::vector<double> roots;
    const double lo = band_edge_guard * 10.0;
    const double hi = pi - lo;
    const double dk = (hi - lo) / singularity_scan_points;
    double a = lo;
    double fa = first_condition(p, a);
    for (int i = 1; i <= singularity_scan_points; ++i) {
        const double b = lo + i * dk;
        const double fb = first_condition(p, b);
        if (fa == 0.0) {
            roots.push_back(a);
        } else if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
            roots.push_back(polish_real_root(p, a, b));
        }
        a = b;
        fa = fb;
    }

    std::vector<SingularityPoint> out;
    for (double k : roots) {
        if (std::abs(coupling_phase(p, k)) < 1e-8) continue; // decoupled: atom invisible
        SingularityPoint s;
        s.k = k;
        s.gamma = p.g * p.g * (1.0 + std::cos(p.N * k)) / (p.J * std::sin(k));
        s.omega = dispersion(p, k);
        const auto [c1, c2] = singularity_residual(p, k, s.gamma);
        s.residual = std::max(std::abs(c1), std::abs(c2));
        if (s.gamma > 0.0) out.push_back(s);
    }
    return out;
}

double critical_gain(const SystemParams& p) {
    const auto pts = find_singularities(p);
    if (pts.empty()) throw NumericalError("no spectral singularity for these parameters");
    return pts.front().gamma;
}

cplx branch_residual(const SystemParams& p, cplx k, Branch branch) {
    const cplx s = std::sin(k);
    const double g2 = p.g * p.g;
    const auto N = static_cast<double>(p.N);
    const cplx self_energy = (branch == Branch::upper) ? -I * g2 * (1.0 + std::exp(I * k * N)) / (p.J * s)
                                                       : I * g2 * (1.0 + std::exp(-I * k * N)) / (p.J * s);
    return dispersion(p, k) - (p.omega_a + I * p.gamma + self_energy);
}

cplx eigen_residual(const SystemParams& p, cplx k) {
    if (std::abs(std::sin(k)) < 1e-12) {
        std::ostringstream os;
        os << "eigen_residual: sin k vanishes at k=" << k;
        throw NumericalError(os.str());
    }
    return branch_residual(p, k, k.imag() >= 0.0 ? Branch::upper : Branch::lower);
}

SiegertClass classify_siegert(cplx k) {
    constexpr double tol = 1e-8;
    const double re = k.real();
    const double im = k.imag();
    const bool on_imag_axis = std::abs(re) < tol;
    const bool on_real_axis = std::abs(im) < tol;
    if (on_real_axis) return SiegertClass::in_continuum;
    if (on_imag_axis) return im > 0.0 ? SiegertClass::bound : SiegertClass::virtual_state;
    if (re > 0.0) return im > 0.0 ? SiegertClass::growing : SiegertClass::resonant;
    return im > 0.0 ? SiegertClass::decaying : SiegertClass::antiresonant;
}

std::vector<SiegertPole> solve_poles(const SystemParams& p, const SearchBox& box, std::span<const cplx> extra_seeds) {
    p.validate();
    box.validate();
    // A decoupled atom only has its own complex energy, with no photon part.
    if (p.g == 0.0) return {};

    std::vector<cplx> seeds(extra_seeds.begin(), extra_seeds.end());
    const double dre = (box.re_max - box.re_min) / box.re_points;
    const double dim = (box.im_max - box.im_min) / box.im_points;
    for (int i = 0; i < box.re_points; ++i) {
        for (int j = 0; j < box.im_points; ++j) {
            seeds.emplace_back(box.re_min + (i + 0.5) * dre, box.im_min + (j + 0.5) * dim);
        }
    }

    std::vector<SiegertPole> found;
    for (const cplx seed : seeds) {
        const Branch branch = seed.imag() >= 0.0 ? Branch::upper : Branch::lower;
        if (branch == Branch::lower && !box.keep_mirror_roots) continue;
        const NewtonResult nr = damped_newton(p, seed, branch);
        if (!nr.ok) continue;
        SiegertPole pole;
        if (!finalize(p, nr, branch, box.keep_mirror_roots, pole)) continue;
        if (!in_box(box, pole.k)) continue;
        auto dup = std::find_if(found.begin(), found.end(),
                                [&](const SiegertPole& q) { return std::abs(q.k - pole.k) < dedup_radius; });
        if (dup == found.end()) {
            found.push_back(pole);
        } else if (pole.residual < dup->residual) {
            *dup = pole;
        }
    }
    std::sort(found.begin(), found.end(), [](const SiegertPole& a, const SiegertPole& b) {
        if (a.k.real() != b.k.real()) return a.k.real() < b.k.real();
        return a.k.imag() < b.k.imag();
    });
    return found;
}

std::vector<TrajectoryRow> trajectory_sweep(const SystemParams& p, std::span<const double> gamma_grid,
                                            const SearchBox& box) {
    if (!std::is_sorted(gamma_grid.begin(), gamma_grid.end())) {
        throw DomainError("trajectory_sweep: gamma grid must be sorted ascending");
    }
    std::vector<TrajectoryRow> rows;
    rows.reserve(gamma_grid.size());
    std::vector<cplx> warm;
    for (double gamma : gamma_grid) {
        SystemParams q = p;
        q.gamma = gamma;
        TrajectoryRow row{gamma, solve_poles(q, box, warm)};
        warm.clear();
        for (const auto& pole : row.poles) warm.push_back(pole.k);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace gawq
