#include "gawq/verify.hpp"

#include "gawq/commands.hpp"
#include "gawq/config.hpp"
#include "gawq/csv.hpp"
#include "gawq/errors.hpp"
#include "gawq/modes.hpp"
#include "gawq/scattering.hpp"
#include "gawq/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace gawq {

namespace fs = std::filesystem;

namespace {

std::string num(double x, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

bool within(double x, double target, double tol) { return std::abs(x - target) <= tol; }

struct Check {
    bool pass = true;
    std::string detail;

    void add(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += what;
        if (!ok) detail += " [FAIL]";
    }
};

Check c1_oracle() {
    Check c;
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> nd(1, 8);
    std::uniform_real_distribution<double> gd(0.05, 1.5), gam(-0.5, 0.5), jd(0.5, 2.0), wd(-1.0, 1.0),
        kd(0.02, pi - 0.02);
    int done = 0;
    double worst = 0.0;
    int attempts = 0;
    while (done < 200 && attempts < 10000) {
        ++attempts;
        SystemParams p;
        p.N = nd(rng);
        p.g = gd(rng);
        p.gamma = gam(rng);
        p.J = jd(rng);
        p.omega_c = wd(rng);
        p.omega_a = p.omega_c;
        const double k = kd(rng);
        if (is_singular(p, k) || std::abs(scattering_denominator(p, k)) < 1e-6) continue;
        const auto st = stationary_solve(p, k);
        worst = std::max({worst, std::abs(reflection_amplitude(p, k) - st.r()),
                          std::abs(transmission_amplitude(p, k) - st.t())});
        ++done;
    }
    c.add(done == 200, std::to_string(done) + " tuples");
    c.add(worst < 1e-10, "max |closed - solve| = " + num(worst, 3));
    return c;
}

Check c2_unitarity() {
    Check c;
    double worst = 0.0;
    for (int N : {1, 2, 3, 5}) {
        for (double g : {0.3, 0.812}) {
            SystemParams p;
            p.N = N;
            p.g = g;
            std::vector<double> grid;
            for (int i = 0; i < 1000; ++i) grid.push_back(pi * (i + 0.5) / 1000.0);
            for (const auto& r : spectrum_sweep(p, grid)) {
                if (r.singular) {
                    worst = INFINITY;
                    continue;
                }
                worst = std::max(worst, std::abs(r.flux_sum - 1.0));
            }
        }
    }
    c.add(worst < 1e-12, "max |R+T-1| = " + num(worst, 3));
    return c;
}

Check c3_decoupling() {
    Check c;
    double worst_R = 0.0, worst_T = 0.0;
    int points = 0;
    for (int N : {2, 3, 4, 5, 7}) {
        for (double gamma : {-0.215, 0.0, 0.215}) {
            SystemParams p = reference_params(gamma, N);
            for (int m = 0; (2 * m + 1) < N; ++m) {
                const double k = (2 * m + 1) * pi / N;
                const auto r = scatter(p, k);
                worst_R = std::max(worst_R, r.R);
                worst_T = std::max(worst_T, std::abs(r.T - 1.0));
                ++points;
            }
        }
    }
    c.add(worst_R < 1e-24, "max R = " + num(worst_R, 3));
    c.add(worst_T < 1e-12, "max |T-1| = " + num(worst_T, 3) + " over " + std::to_string(points) + " points");
    return c;
}

Check c4_singularity() {
    Check c;
    const auto pts = find_singularities(reference_params(0.0));
    auto it = std::find_if(pts.begin(), pts.end(), [](const SingularityPoint& s) {
        return within(s.k, 1.32, 0.01) && within(s.gamma, 0.215, 0.005) && within(s.omega, -0.496, 0.005);
    });
    c.add(it != pts.end(), "root near k = 1.32 found among " + std::to_string(pts.size()));
    if (it != pts.end()) {
        c.add(it->residual < 1e-12, "k = " + num(it->k, 10) + ", gamma = " + num(it->gamma, 10) +
                                        ", omega = " + num(it->omega, 8) + ", residual = " + num(it->residual, 3));
    }
    return c;
}

Check c5_poles() {
    Check c;
    {
        const auto poles = solve_poles(reference_params(0.0));
        const bool ok = poles.size() == 1 && poles[0].cls == SiegertClass::bound &&
                        within(poles[0].E.real(), -2.152, 0.005);
        c.add(ok, "(a) gamma=0: " + std::to_string(poles.size()) + " pole(s)" +
                      (poles.empty() ? "" : ", E = " + num(poles[0].E.real(), 7)));
    }
    {
        const double gc = critical_gain(reference_params(0.0));
        const auto poles = solve_poles(reference_params(gc));
        bool ok = poles.size() == 2;
        std::string d = "(b) gamma_c = " + num(gc, 10) + ": " + std::to_string(poles.size()) + " poles";
        if (ok) {
            const auto& p1 = *std::find_if(poles.begin(), poles.end(),
                                           [](const SiegertPole& q) { return q.cls == SiegertClass::in_continuum; });
            const auto p2 = std::find_if(poles.begin(), poles.end(),
                                         [](const SiegertPole& q) { return q.cls == SiegertClass::growing; });
            ok = p2 != poles.end() && within(p1.E.real(), -0.496, 0.005) && std::abs(p1.E.imag()) < 1e-8 &&
                 within(p2->E.imag(), 0.021, 0.002) && within(2.0 * p2->k.imag(), 0.776, 0.01);
            if (p2 != poles.end()) {
                d += ", E1 = " + num(p1.E.real(), 7) + ", Im E2 = " + num(p2->E.imag(), 6) +
                     ", 2 Im k2 = " + num(2.0 * p2->k.imag(), 6);
            }
        }
        c.add(ok, d);
    }
    {
        std::size_t total = 0;
        for (double gamma : {-0.05, -0.215, -0.5}) total += solve_poles(reference_params(gamma)).size();
        c.add(total == 0, "(c) gamma<0: " + std::to_string(total) + " poles");
    }
    return c;
}

Check c6_consistency() {
    Check c;
    double worst = 0.0;
    int count = 0;
    for (int N : {1, 2, 3, 4, 5}) {
        for (double g : {0.3, 0.5, 0.812, 1.2}) {
            SystemParams p = reference_params(0.0, N);
            p.g = g;
            for (const auto& s : find_singularities(p)) {
                p.gamma = s.gamma;
                worst = std::max(worst, std::abs(eigen_residual(p, cplx(s.k, 0.0))));
                ++count;
            }
        }
    }
    c.add(count > 0 && worst < 1e-10,
          std::to_string(count) + " singularities, max |eigen residual| = " + num(worst, 3));
    return c;
}

Check c7_loss(VerifyContext& ctx) {
    Check c;
    const auto& run = ctx.loss_run();
    const auto& s = *std::find_if(run.series.begin(), run.series.end(),
                                  [](const Sample& x) { return std::abs(x.t - 260.0) < 1e-9; });
    const auto sc = scatter(reference_params(-0.215), reference_packet().k_c);
    c.add(within(s.R_L, 0.245, 0.01), "R_L = " + num(s.R_L));
    c.add(within(s.T_L, 0.252, 0.01), "T_L = " + num(s.T_L));
    c.add(std::abs(s.R_L - sc.R) < 0.01, "|R_L - R(k_c)| = " + num(std::abs(s.R_L - sc.R), 3));
    c.add(std::abs(s.T_L - sc.T) < 0.01, "|T_L - T(k_c)| = " + num(std::abs(s.T_L - sc.T), 3));
    return c;
}

Check c8_free(VerifyContext& ctx) {
    Check c;
    const auto& run = ctx.loss_run();
    const auto& snap = run.snapshot_at(-60.0);
    const auto spec = reference_packet();
    const auto p = reference_params(-0.215);
    double worst = 0.0;
    for (long j = run.lattice.j_min; j <= run.lattice.j_max(); ++j) {
        worst = std::max(worst, std::abs(snap.density(run.lattice, j) - analytic_free_density(p, spec, j, -60.0)));
    }
    c.add(worst < 1e-3, "sup |P_sim - P_free| at Jt=-60: " + num(worst, 3));
    return c;
}

Check c9_gain(VerifyContext& ctx) {
    Check c;
    const auto& run = ctx.gain_run();
    const auto& lat = run.lattice;
    const auto p = reference_params(critical_gain(reference_params(0.0)));
    const int N = p.N;
    {
        const auto& snap = run.snapshot_at(160.0);
        const long reach = static_cast<long>(reference_packet().v_c(p) * 160.0 / 2.0);
        const double left = fit_spatial_slope(snap, lat, -reach, -20);
        const double right = fit_spatial_slope(snap, lat, N + 20, N + reach);
        c.add(std::abs(left) < 0.01 && std::abs(right) < 0.01,
              "plateau slopes at Jt=160: " + num(left, 3) + ", " + num(right, 3));
    }
    const double rate = fit_growth_rate(run, 1900.0, 2500.0);
    c.add(within(rate, 0.042, 0.0042), "growth rate = " + num(rate));
    const auto& snap = run.snapshot_at(2200.0);
    const double left = fit_spatial_slope(snap, lat, -20, -1);
    const double right = fit_spatial_slope(snap, lat, N + 1, N + 20);
    c.add(within(left, 0.776, 0.0388), "left slope = " + num(left));
    c.add(within(right, -0.776, 0.0388), "right slope = " + num(right));
    return c;
}

Check c10_closure(VerifyContext& ctx) {
    Check c;
    const auto& run = ctx.gain_run();
    const auto& lat = run.lattice;
    const auto p = reference_params(critical_gain(reference_params(0.0)));
    const auto spec = reference_packet();
    const auto poles = solve_poles(p);
    const auto p1 = std::find_if(poles.begin(), poles.end(),
                                 [](const SiegertPole& q) { return q.cls == SiegertClass::in_continuum; });
    const auto p2 =
        std::find_if(poles.begin(), poles.end(), [](const SiegertPole& q) { return q.cls == SiegertClass::growing; });
    if (p1 == poles.end() || p2 == poles.end()) {
        c.add(false, "expected an in-continuum and a growing pole");
        return c;
    }
    const double t = 2200.0;
    const auto& snap = run.snapshot_at(t);
    std::vector<long> plateau;
    for (long j = -1000; j <= -60; ++j) plateau.push_back(j);
    for (long j = p.N + 60; j <= p.N + 1000; ++j) plateau.push_back(j);
    std::vector<DecompositionCoefficient> coeffs;
    coeffs.push_back(fit_continuum_amplitude(p, *p1, snap.amps, lat.j_min, plateau, t));
    coeffs.push_back(overlap_coefficient(p, *p2, spec));
    double worst = 0.0;
    std::vector<long> window;
    for (long j = -20; j <= -1; ++j) window.push_back(j);
    for (long j = p.N + 1; j <= p.N + 20; ++j) window.push_back(j);
    for (long j : window) {
        const double sim = snap.density(lat, j);
        const double pred = predict_longtime_density(p, coeffs, j, t);
        worst = std::max(worst, std::abs(pred / sim - 1.0));
    }
    c.add(worst < 0.15, "|C2| = " + num(std::abs(coeffs[1].C), 3) +
                            (coeffs[1].from_lattice_sum ? " (lattice sum)" : " (quadrature)") +
                            "; max relative error over the slope windows at Jt=2200: " + num(worst, 3) +
                            " (P_sim(0) = " + num(snap.density(lat, 0), 3) +
                            ", P_pred(0) = " + num(predict_longtime_density(p, coeffs, 0, t), 3) + ")");
    return c;
}

Check c11_properties(VerifyContext& ctx) {
    Check c;
    // Norm law on a short near-field gain run with fine sampling.
    {
        const auto p = reference_params(critical_gain(reference_params(0.0)));
        GaussianPacketSpec spec{0.1, -100, 1.32};
        const auto s0 = init_gaussian(p, spec, Lattice::centered(1200));
        EvolveOptions opt;
        opt.t_end = 60.0;
        opt.tol = 1e-12;
        const double dt = 1.0 / 64.0;
        opt.sample_dt = dt;
        const auto run = evolve(p, s0, opt);
        double worst = 0.0, scale = 0.0;
        const auto& sr = run.series;
        for (std::size_t i = 2; i + 2 < sr.size(); ++i) {
            if (sr[i].t < -20.0) continue;
            if (std::abs(sr[i + 2].t - sr[i - 2].t - 4.0 * dt) > 1e-9) continue;
            const double d = (-sr[i + 2].total_norm + 8.0 * sr[i + 1].total_norm - 8.0 * sr[i - 1].total_norm +
                              sr[i - 2].total_norm) /
                             (12.0 * dt);
            const double law = 2.0 * p.gamma * sr[i].atom_prob;
            worst = std::max(worst, std::abs(d - law));
            scale = std::max(scale, std::abs(law));
        }
        c.add(scale > 0.0 && worst / scale < 1e-6, "norm law rel. error = " + num(worst / scale, 3));
    }
    // Step-halving on the loss run.
    {
        auto at = [](const RunObservables& r) {
            return *std::find_if(r.series.begin(), r.series.end(),
                                 [](const Sample& x) { return std::abs(x.t - 260.0) < 1e-9; });
        };
        const Sample a = at(ctx.loss_run(1e-9));
        const Sample b = at(ctx.loss_run(5e-10));
        const double d = std::max(std::abs(a.R_L - b.R_L), std::abs(a.T_L - b.T_L));
        c.add(d < 1e-6, "tol halving changes R_L,T_L by " + num(d, 3));
    }
    // Seed-grid doubling.
    {
        const auto p = reference_params(critical_gain(reference_params(0.0)));
        SearchBox fine;
        fine.re_points = 160;
        fine.im_points = 160;
        const auto a = solve_poles(p);
        const auto b = solve_poles(p, fine);
        double d = a.size() == b.size() ? 0.0 : INFINITY;
        for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) d = std::max(d, std::abs(a[i].k - b[i].k));
        c.add(d < 1e-9, "seed doubling moves poles by " + num(d, 3));
    }
    // Byte-identical CSV on repeated runs.
    {
        const RunConfig cfg = parse_config("system.g = 0.812\nsystem.N = 3\nsystem.gamma = 0.215\n"
                                           "grid.k_start = pi/3000\ngrid.k_stop = 2999*pi/3000\n"
                                           "grid.k_count = 2999\n");
        std::ostringstream log;
        bool same = true;
        for (const char* cmd : {"spectrum", "poles"}) {
            std::string bytes[2];
            for (int rep = 0; rep < 2; ++rep) {
                const fs::path dir = ctx.scratch() / ("det" + std::to_string(rep));
                run_subcommand(cmd, cfg, dir, log);
                std::ifstream is(dir / (std::string(cmd) == "spectrum" ? "spectrum.csv" : "poles.csv"),
                                 std::ios::binary);
                std::ostringstream ss;
                ss << is.rdbuf();
                bytes[rep] = ss.str();
            }
            same = same && !bytes[0].empty() && bytes[0] == bytes[1];
        }
        c.add(same, same ? "CSV output byte-identical" : "CSV output differs between runs");
    }
    return c;
}

} // namespace

SystemParams reference_params(double gamma, int N) {
    SystemParams p;
    p.N = N;
    p.g = 0.812;
    p.gamma = gamma;
    return p;
}

GaussianPacketSpec reference_packet() { return GaussianPacketSpec{0.02, -500, 1.32}; }

VerifyContext::VerifyContext(fs::path scratch) : scratch_(std::move(scratch)) {}

const RunObservables& VerifyContext::loss_run(double tol) {
    auto it = loss_.find(tol);
    if (it != loss_.end()) return it->second;
    const auto p = reference_params(-0.215);
    const auto s0 = init_gaussian(p, reference_packet(), Lattice::centered(10000));
    EvolveOptions opt;
    opt.t_end = 260.0;
    opt.tol = tol;
    opt.snapshots = {-60.0, 260.0};
    return loss_.emplace(tol, evolve(p, s0, opt)).first->second;
}

const RunObservables& VerifyContext::gain_run() {
    if (!gain_) {
        const auto p = reference_params(critical_gain(reference_params(0.0)));
        const auto s0 = init_gaussian(p, reference_packet(), Lattice::centered(10000));
        EvolveOptions opt;
        opt.t_end = 2500.0;
        opt.snapshots = {-60.0, 160.0, 1900.0, 2200.0, 2500.0};
        gain_ = evolve(p, s0, opt);
    }
    return *gain_;
}

const std::vector<int>& criterion_ids() {
    static const std::vector<int> ids = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    return ids;
}

std::string criterion_title(int id) {
    switch (id) {
    case 1: return "scattering closed forms vs stationary solve";
    case 2: return "unitarity at gamma = 0";
    case 3: return "decoupling points";
    case 4: return "spectral singularity";
    case 5: return "pole spectrum";
    case 6: return "singularity / pole consistency";
    case 7: return "loss-run reflection and transmission";
    case 8: return "free propagation";
    case 9: return "gain-run plateau, growth and slopes";
    case 10: return "long-time pole closure";
    case 11: return "property suite";
    default: return "unknown";
    }
}

CriterionResult run_criterion(int id, VerifyContext& ctx) {
    CriterionResult r;
    r.id = id;
    r.title = criterion_title(id);
    const auto start = std::chrono::steady_clock::now();
    try {
        Check c;
        switch (id) {
        case 1: c = c1_oracle(); break;
        case 2: c = c2_unitarity(); break;
        case 3: c = c3_decoupling(); break;
        case 4: c = c4_singularity(); break;
        case 5: c = c5_poles(); break;
        case 6: c = c6_consistency(); break;
        case 7: c = c7_loss(ctx); break;
        case 8: c = c8_free(ctx); break;
        case 9: c = c9_gain(ctx); break;
        case 10: c = c10_closure(ctx); break;
        case 11: c = c11_properties(ctx); break;
        default: c.add(false, "no such criterion");
        }
        r.pass = c.pass;
        r.detail = c.detail;
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string format_result(const CriterionResult& r) {
    char head[128];
    std::snprintf(head, sizeof head, "%s %2d  %-44s %8.2fs  ", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(),
                  r.seconds);
    return head + r.detail;
}

} // namespace gawq
