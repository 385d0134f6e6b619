#include "gawq/commands.hpp"

#include "gawq/csv.hpp"
#include "gawq/dynamics.hpp"
#include "gawq/errors.hpp"
#include "gawq/modes.hpp"
#include "gawq/scattering.hpp"
#include "gawq/spectral.hpp"
#include "gawq/verify.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

namespace gawq {

namespace fs = std::filesystem;

namespace {

void add_pole_row(CsvTable& t, double gamma, const SiegertPole& q) {
    t.add_row({gamma, q.k.real(), q.k.imag(), q.E.real(), q.E.imag(), std::string(to_string(q.cls)), q.residual,
               std::string(to_string(q.branch))});
}

CsvTable pole_table() {
    return CsvTable({"gamma", "Re_k", "Im_k", "Re_E", "Im_E", "class", "residual", "branch"});
}

void require_system(const RunConfig& cfg, std::string_view cmd) { cfg.require({"system.g", "system.N"}, cmd); }

int cmd_spectrum(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    require_system(cfg, "spectrum");
    cfg.require({"grid.k_start", "grid.k_stop", "grid.k_count"}, "spectrum");
    const SystemParams p = cfg.params();
    const auto grid = cfg.grid.values();
    const auto rows = spectrum_sweep(p, grid);
    CsvTable t({"k", "omega_k", "Re_r", "Im_r", "Re_t", "Im_t", "R", "T", "flux_sum", "singular_flag"});
    long singular = 0;
    for (const auto& r : rows) {
        t.add_row({r.k, r.omega_k, r.r.real(), r.r.imag(), r.t.real(), r.t.imag(), r.R, r.T, r.flux_sum,
                   static_cast<long>(r.singular)});
        singular += r.singular;
    }
    write_file_atomic(out / "spectrum.csv", t.str());
    log << "spectrum: " << rows.size() << " points, " << singular << " singular -> " << (out / "spectrum.csv").string()
        << '\n';
    return exit_code::ok;
}

int cmd_singularity(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    require_system(cfg, "singularity");
    const auto pts = find_singularities(cfg.system);
    CsvTable t({"k", "gamma", "omega", "residual"});
    for (const auto& s : pts) t.add_row({s.k, s.gamma, s.omega, s.residual});
    write_file_atomic(out / "singularities.csv", t.str());
    log << "singularity: " << pts.size() << " roots -> " << (out / "singularities.csv").string() << '\n';
    return exit_code::ok;
}

int cmd_poles(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    require_system(cfg, "poles");
    const SystemParams p = cfg.params();
    const auto poles = solve_poles(p, cfg.box);
    CsvTable t = pole_table();
    for (const auto& q : poles) add_pole_row(t, p.gamma, q);
    write_file_atomic(out / "poles.csv", t.str());
    log << "poles: gamma = " << format_number(p.gamma) << ", " << poles.size() << " poles -> "
        << (out / "poles.csv").string() << '\n';
    return exit_code::ok;
}

int cmd_trajectory(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    require_system(cfg, "trajectory");
    cfg.require({"sweep.gamma_start", "sweep.gamma_stop", "sweep.gamma_count"}, "trajectory");
    const auto rows = trajectory_sweep(cfg.system, cfg.sweep.values(), cfg.box);
    CsvTable t = pole_table();
    for (const auto& row : rows) {
        for (const auto& q : row.poles) add_pole_row(t, row.gamma, q);
    }
    write_file_atomic(out / "trajectory.csv", t.str());
    log << "trajectory: " << rows.size() << " gamma values, " << t.rows() << " rows -> "
        << (out / "trajectory.csv").string() << '\n';
    return exit_code::ok;
}

int cmd_modes(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    require_system(cfg, "modes");
    const SystemParams p = cfg.params();
    const auto poles = solve_poles(p, cfg.box);
    CsvTable pt = pole_table();
    for (const auto& q : poles) add_pole_row(pt, p.gamma, q);
    write_file_atomic(out / "poles.csv", pt.str());

    const bool with_packet = cfg.has("packet.alpha") || cfg.has("packet.j_c") || cfg.has("packet.k_c");
    CsvTable ct({"pole_id", "Re_C", "Im_C", "Re_A", "Im_A"});
    for (std::size_t id = 0; id < poles.size(); ++id) {
        const auto prof = bound_profile(p, poles[id]);
        CsvTable t({"j", "Re_amp", "Im_amp", "abs2"});
        for (long j = cfg.profile_j_min; j <= cfg.profile_j_max; ++j) {
            const cplx a = prof.amplitude(p, j);
            t.add_row({j, a.real(), a.imag(), std::norm(a)});
        }
        const fs::path file = out / ("profile_" + std::to_string(id) + ".csv");
        write_file_atomic(file, t.str());
        log << "modes: pole " << id << " (" << to_string(poles[id].cls) << (prof.normalized ? "" : ", un-normalized")
            << ") -> " << file.string() << '\n';
        if (with_packet) {
            const auto d = overlap_coefficient(p, poles[id], cfg.packet);
            ct.add_row({static_cast<long>(id), d.C.real(), d.C.imag(), d.A.real(), d.A.imag()});
        }
    }
    if (with_packet) {
        write_file_atomic(out / "coefficients.csv", ct.str());
        log << "modes: coefficients -> " << (out / "coefficients.csv").string() << '\n';
    }
    return exit_code::ok;
}

int cmd_evolve(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    require_system(cfg, "evolve");
    cfg.require({"evolve.t_end"}, "evolve");
    const SystemParams p = cfg.params();
    const LatticeState s0 = init_gaussian(p, cfg.packet, Lattice::centered(cfg.lattice_sites));
    EvolveOptions opt;
    opt.t_end = cfg.t_end;
    opt.snapshots = cfg.snapshots;
    opt.tol = cfg.tol;
    opt.sample_dt = cfg.sample_dt;
    opt.flip_atom_energy = cfg.flip_atom_energy;
    const RunObservables obs = evolve(p, s0, opt);
    const Lattice& lat = obs.lattice;

    CsvTable st({"t", "j", "P"});
    for (const auto& snap : obs.snapshots) {
        for (long j = lat.j_min; j <= lat.j_max(); ++j) st.add_row({snap.t, j, snap.density(lat, j)});
    }
    write_file_atomic(out / "snapshots.csv", st.str());

    CsvTable ot({"t", "R_L", "T_L", "interior", "atom_prob", "total_norm"});
    for (const auto& s : obs.series) ot.add_row({s.t, s.R_L, s.T_L, s.interior, s.atom_prob, s.total_norm});
    write_file_atomic(out / "observables.csv", ot.str());

    std::ostringstream fits;
    const Sample& last = obs.series.back();
    fits << "t_start = " << format_number(s0.time) << '\n';
    fits << "t_end = " << format_number(last.t) << '\n';
    fits << "gamma = " << format_number(p.gamma) << '\n';
    fits << "R_L = " << format_number(last.R_L) << '\n';
    fits << "T_L = " << format_number(last.T_L) << '\n';
    fits << "total_norm = " << format_number(last.total_norm) << '\n';
    if (cfg.fit.growth_t0 >= s0.time && cfg.fit.growth_t1 <= cfg.t_end) {
        fits << "fitted_growth_rate = " << format_number(fit_growth_rate(obs, cfg.fit.growth_t0, cfg.fit.growth_t1))
             << '\n';
    }
    const long w = cfg.fit.slope_sites;
    for (const auto& snap : obs.snapshots) {
        if (snap.t == cfg.fit.slope_time) {
            fits << "fitted_left_slope = " << format_number(fit_spatial_slope(snap, lat, -w, -1)) << '\n';
            fits << "fitted_right_slope = " << format_number(fit_spatial_slope(snap, lat, p.N + 1, p.N + w)) << '\n';
        }
        if (snap.t == cfg.fit.plateau_time && snap.t > 0.0) {
            const long reach = static_cast<long>(cfg.packet.v_c(p) * snap.t / 2.0);
            if (reach > 22) {
                fits << "plateau_left_slope = " << format_number(fit_spatial_slope(snap, lat, -reach, -20)) << '\n';
                fits << "plateau_right_slope = "
                     << format_number(fit_spatial_slope(snap, lat, p.N + 20, p.N + reach)) << '\n';
                fits << "plateau_flatness = "
                     << format_number(std::max(plateau_flatness(snap, lat, -reach, -20),
                                               plateau_flatness(snap, lat, p.N + 20, p.N + reach)))
                     << '\n';
            }
        }
    }
    write_file_atomic(out / "fits.txt", fits.str());
    log << "evolve: " << obs.stats.accepted << " steps (" << obs.stats.rejected << " rejected), " << obs.snapshots.size()
        << " snapshots -> " << out.string() << '\n';
    log << fits.str();
    return exit_code::ok;
}

int cmd_verify(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    std::vector<int> ids;
    for (long id : cfg.verify_criteria) ids.push_back(static_cast<int>(id));
    if (ids.empty()) ids = criterion_ids();
    VerifyContext ctx(out / "verify_scratch");
    bool all = true;
    std::string report;
    for (int id : ids) {
        const CriterionResult r = run_criterion(id, ctx);
        const std::string line = format_result(r);
        log << line << '\n' << std::flush;
        report += line + '\n';
        all = all && r.pass;
    }
    write_file_atomic(out / "verify.txt", report);
    fs::remove_all(out / "verify_scratch");
    return all ? exit_code::ok : exit_code::verification;
}

int cmd_dump(const RunConfig& cfg, const fs::path&, std::ostream& log) {
    log << dump_config(cfg);
    return exit_code::ok;
}

} // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"spectrum", "singularity", "poles", "trajectory",
                                                   "modes",    "evolve",      "verify", "dump"};
    return names;
}

int run_subcommand(const std::string& name, const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
    if (name == "spectrum") return cmd_spectrum(cfg, out_dir, log);
    if (name == "singularity") return cmd_singularity(cfg, out_dir, log);
    if (name == "poles") return cmd_poles(cfg, out_dir, log);
    if (name == "trajectory") return cmd_trajectory(cfg, out_dir, log);
    if (name == "modes") return cmd_modes(cfg, out_dir, log);
    if (name == "evolve") return cmd_evolve(cfg, out_dir, log);
    if (name == "verify") return cmd_verify(cfg, out_dir, log);
    if (name == "dump") return cmd_dump(cfg, out_dir, log);
    throw ConfigError("", 0, "unknown subcommand '" + name + "'");
}

int dispatch(const std::string& name, const fs::path& config_path, const std::string& out_override, std::ostream& log,
             std::ostream& err) {
    try {
        const RunConfig cfg = load_config(config_path);
        const fs::path out = out_override.empty() ? fs::path(cfg.out_dir) : fs::path(out_override);
        return run_subcommand(name, cfg, out, log);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::config;
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_code::config;
    } catch (const SingularScattering& e) {
        err << "singular scattering: " << e.what() << '\n';
        return exit_code::numerical;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return exit_code::numerical;
    } catch (const BoundaryViolation& e) {
        err << "boundary violation: " << e.what() << '\n';
        return exit_code::boundary;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::io;
    }
}

} // namespace gawq
