#include "gawq/config.hpp"
#include "gawq/csv.hpp"
#include "gawq/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gawq;

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void check_error(const std::string& text, const std::string& key, int line) {
    try {
        parse_config(text);
        FAIL("expected ConfigError for " << key);
    } catch (const ConfigError& e) {
        CHECK(e.key() == key);
        CHECK(e.line() == line);
        CHECK(std::string(e.what()).find(key) != std::string::npos);
    }
}

} // namespace

TEST_SUITE("config") {

TEST_CASE("minimal spectrum config fills defaults") {
    const auto c = parse_config("# Fig. 2\nsystem.g = 0.812\nsystem.N = 3\n\ngrid.k_start = pi/3000\n"
                                "grid.k_stop = 2999*pi/3000\ngrid.k_count = 2999\n");
    CHECK(c.system.g == 0.812);
    CHECK(c.system.N == 3);
    CHECK(c.system.J == 1.0);
    CHECK(c.system.gamma == 0.0);
    CHECK(c.grid.start == doctest::Approx(M_PI / 3000).epsilon(1e-15));
    const auto v = c.grid.values();
    REQUIRE(v.size() == 2999);
    CHECK(v.front() == c.grid.start);
    CHECK(v.back() == c.grid.stop);
    CHECK(c.lattice_sites == 10000);
    CHECK(c.tol == 1e-9);
    CHECK(c.has("system.g"));
    CHECK(!c.has("system.gamma"));
    CHECK(c.present.at("grid.k_count") == 7);
}

TEST_CASE("errors name the offending key and line") {
    check_error("system.g = 0.8\nsystem.N = 0\n", "system.N", 2);
    check_error("system.bogus = 1\n", "system.bogus", 1);
    check_error("system.g = 0.8\n\nsystem.g = 0.9\n", "system.g", 3);
    check_error("system.N = three\n", "system.N", 1);
    check_error("system.N = 2.5\n", "system.N", 1);
    check_error("packet.alpha = -0.1\n", "packet.alpha", 1);
    check_error("system.J = 0\n", "system.J", 1);
    check_error("evolve.snapshots = 3, 1\n", "evolve.snapshots", 1);
    check_error("evolve.flip_atom_energy = maybe\n", "evolve.flip_atom_energy", 1);
    CHECK_THROWS_AS(parse_config("this line has no equals sign\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("system.g =\n"), ConfigError);
}

TEST_CASE("required keys are reported") {
    const auto c = parse_config("system.g = 0.8\n");
    try {
        c.require({"system.g", "grid.k_count"}, "spectrum");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "grid.k_count");
        CHECK(std::string(e.what()).find("spectrum") != std::string::npos);
    }
}

TEST_CASE("value forms") {
    const auto c = parse_config("system.gamma = -2*pi/3\nsystem.omega_c = 1e-3\nevolve.snapshots = -60, 160,1900\n"
                                "evolve.flip_atom_energy = true\npacket.j_c = -500\nbox.re_max = 3*pi/4\n");
    CHECK(c.system.gamma == doctest::Approx(-2 * M_PI / 3).epsilon(1e-15));
    CHECK(c.system.omega_c == 1e-3);
    CHECK(c.snapshots == std::vector<double>{-60, 160, 1900});
    CHECK(c.flip_atom_energy);
    CHECK(c.packet.j_c == -500);
    CHECK(c.box.re_max == doctest::Approx(3 * M_PI / 4).epsilon(1e-15));
    CHECK_THROWS_AS(parse_config("box.re_max = pi - 0.02\n"), ConfigError);
}

TEST_CASE("critical gamma resolves to the singularity gain") {
    const auto c = parse_config("system.gamma = critical\nsystem.g = 0.812\nsystem.N = 3\n");
    CHECK(c.gamma_critical);
    CHECK(c.params().gamma == doctest::Approx(0.21525207677352853).epsilon(1e-10));
    CHECK(dump_config(c).find("system.gamma = critical") != std::string::npos);
}

TEST_CASE("parse, dump, parse is the identity") {
    const std::string text = "system.omega_a = 0.1\nsystem.gamma = -0.215\nsystem.g = 0.812\nsystem.N = 5\n"
                             "packet.alpha = 0.02\npacket.j_c = -500\npacket.k_c = 1.32\nlattice.sites = 4000\n"
                             "evolve.t_end = 260\nevolve.snapshots = -60, 260\nsweep.gamma_start = 0\n"
                             "sweep.gamma_stop = 0.4\nsweep.gamma_count = 41\nbox.im_min = -1.5\nout.dir = somewhere\n"
                             "grid.k_start = pi/7\ngrid.k_stop = 3\ngrid.k_count = 11\nverify.criteria = 1, 4\n";
    const auto a = parse_config(text);
    const std::string d1 = dump_config(a);
    const auto b = parse_config(d1);
    CHECK(dump_config(b) == d1);
    CHECK(b.system.omega_a == a.system.omega_a);
    CHECK(b.grid.start == a.grid.start);
    CHECK(b.grid.values() == a.grid.values());
    CHECK(b.snapshots == a.snapshots);
    CHECK(b.box.im_min == a.box.im_min);
    CHECK(b.verify_criteria == a.verify_criteria);
    CHECK(b.out_dir == "somewhere");
    // canonical order regardless of input order
    const auto r = parse_config("system.N = 5\nsystem.g = 0.812\n");
    CHECK(dump_config(r) == "system.g = 0.812\nsystem.N = 5\n");
}

TEST_CASE("the shipped gain configuration round-trips byte for byte") {
    const std::filesystem::path file = std::filesystem::path(GAWQ_CONFIG_DIR) / "fig4b.cfg";
    const std::string text = read_file(file);
    const auto c = load_config(file);
    CHECK(dump_config(c) == text);
    CHECK(c.system.N == 3);
    CHECK(c.system.g == 0.812);
    CHECK(c.system.gamma == 0.215);
    CHECK(c.packet.alpha == 0.02);
    CHECK(c.packet.j_c == -500);
    CHECK(c.packet.k_c == 1.32);
    CHECK(c.lattice_sites == 10000);
    CHECK(c.snapshots == std::vector<double>{-60, 160, 1900, 2200, 2500});
}

TEST_CASE("every shipped config parses and round-trips semantically") {
    for (const auto& entry : std::filesystem::directory_iterator(GAWQ_CONFIG_DIR)) {
        if (entry.path().extension() != ".cfg") continue;
        CAPTURE(entry.path().string());
        const auto c = load_config(entry.path());
        const auto d = dump_config(c);
        CHECK(dump_config(parse_config(d)) == d);
    }
}

TEST_CASE("csv formatting") {
    CHECK(format_number(1.0) == "1.0000000000000000e+00");
    CHECK(format_number(-0.1) == "-1.0000000000000001e-01");
    CHECK(std::stod(format_number(M_PI)) == M_PI);
    CsvTable t({"a", "b", "c"});
    t.add_row({1.5, 7L, std::string("x")});
    CHECK(t.str() == "a,b,c\n1.5000000000000000e+00,7,x\n");
    CHECK_THROWS_AS(t.add_row({1.0}), DomainError);
    const auto dir = std::filesystem::temp_directory_path() / "gawq_csv_test";
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / "t.csv", t.str());
    CHECK(read_file(dir / "t.csv") == t.str());
    CHECK(!std::filesystem::exists(dir / "t.csv.tmp"));
    std::filesystem::remove_all(dir);
}

}
