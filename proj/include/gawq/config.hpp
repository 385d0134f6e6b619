#pragma once

// Run configuration: flat `key = value` text with `#` comments.
//
// Reals accept products and quotients of numbers and `pi` (e.g. `pi/3`,
// `-2*pi/3`). Lists are comma separated. `system.gamma = critical` selects the
// gain at the lowest-k spectral singularity.

#include "gawq/core_model.hpp"
#include "gawq/packet.hpp"
#include "gawq/spectral.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace gawq {

// count points from start to stop inclusive.
struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    long count = 0;

    std::vector<double> values() const;
};

struct FitSettings {
    double growth_t0 = 1900.0;
    double growth_t1 = 2500.0;
    double slope_time = 2200.0;
    long slope_sites = 20;
    double plateau_time = 160.0;
};

struct RunConfig {
    SystemParams system;
    bool gamma_critical = false;
    GaussianPacketSpec packet;
    long lattice_sites = 10000;

    double t_end = 0.0;
    double tol = 1e-9;
    std::vector<double> snapshots;
    double sample_dt = 1.0;
    bool flip_atom_energy = false;

    GridSpec grid;
    GridSpec sweep;
    SearchBox box;
    FitSettings fit;
    long profile_j_min = -40;
    long profile_j_max = 43;
    std::vector<long> verify_criteria;
    std::string out_dir = "out";

    // Keys given explicitly, with their source line.
    std::map<std::string, int> present;

    bool has(const std::string& key) const { return present.count(key) != 0; }
    // Throws ConfigError naming the first missing key.
    void require(std::initializer_list<const char*> keys, std::string_view command) const;

    // System parameters with a critical gamma resolved.
    SystemParams params() const;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

// Canonical text: explicitly given keys in a fixed order, one per line.
// parse_config(dump_config(c)) reproduces c.
std::string dump_config(const RunConfig& cfg);

// All recognised keys in canonical order.
const std::vector<std::string>& config_keys();

} // namespace gawq
