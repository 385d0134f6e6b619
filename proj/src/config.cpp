#include "gawq/config.hpp"

#include "gawq/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace gawq {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string shortest(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

bool parse_plain_real(std::string_view s, double& out) {
    if (s == "pi") {
        out = pi;
        return true;
    }
    if (s.empty()) return false;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
    return r.ec == std::errc() && r.ptr == s.data() + s.size();
}

// [sign] factor (('*' | '/') factor)*, factor = number | pi
bool parse_real_expr(std::string_view text, double& out) {
    std::string s;
    for (char c : text) {
        if (c != ' ' && c != '\t') s += c;
    }
    if (s.empty()) return false;
    double sign = 1.0;
    std::size_t pos = 0;
    if (s[0] == '-' || s[0] == '+') {
        sign = s[0] == '-' ? -1.0 : 1.0;
        pos = 1;
    }
    double value = 0.0;
    char op = '*';
    bool first = true;
    while (pos <= s.size()) {
        std::size_t next = pos;
        // A factor ends at * or / that does not belong to an exponent.
        while (next < s.size() && s[next] != '*' && s[next] != '/') ++next;
        double f = 0.0;
        if (!parse_plain_real(std::string_view(s).substr(pos, next - pos), f)) return false;
        if (first) {
            value = f;
            first = false;
        } else if (op == '*') {
            value *= f;
        } else {
            value /= f;
        }
        if (next >= s.size()) break;
        op = s[next];
        pos = next + 1;
        if (pos >= s.size()) return false;
    }
    out = sign * value;
    return std::isfinite(out);
}

bool parse_integer(std::string_view s, long& out) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
    return r.ec == std::errc() && r.ptr == s.data() + s.size() && !s.empty();
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(trim(cur));
    return parts;
}

enum class Kind { real, integer, boolean, real_list, integer_list, text, gamma };

struct KeySpec {
    const char* name;
    Kind kind;
    std::function<void*(RunConfig&)> field;
};

const std::vector<KeySpec>& key_table() {
    static const std::vector<KeySpec> table = {
        {"system.omega_a", Kind::real, [](RunConfig& c) -> void* { return &c.system.omega_a; }},
        {"system.omega_c", Kind::real, [](RunConfig& c) -> void* { return &c.system.omega_c; }},
        {"system.gamma", Kind::gamma, [](RunConfig& c) -> void* { return &c.system.gamma; }},
        {"system.J", Kind::real, [](RunConfig& c) -> void* { return &c.system.J; }},
        {"system.g", Kind::real, [](RunConfig& c) -> void* { return &c.system.g; }},
        {"system.N", Kind::integer, [](RunConfig&) -> void* { return nullptr; }},
        {"packet.alpha", Kind::real, [](RunConfig& c) -> void* { return &c.packet.alpha; }},
        {"packet.j_c", Kind::integer, [](RunConfig& c) -> void* { return &c.packet.j_c; }},
        {"packet.k_c", Kind::real, [](RunConfig& c) -> void* { return &c.packet.k_c; }},
        {"lattice.sites", Kind::integer, [](RunConfig& c) -> void* { return &c.lattice_sites; }},
        {"evolve.t_end", Kind::real, [](RunConfig& c) -> void* { return &c.t_end; }},
        {"evolve.tol", Kind::real, [](RunConfig& c) -> void* { return &c.tol; }},
        {"evolve.snapshots", Kind::real_list, [](RunConfig& c) -> void* { return &c.snapshots; }},
        {"evolve.sample_dt", Kind::real, [](RunConfig& c) -> void* { return &c.sample_dt; }},
        {"evolve.flip_atom_energy", Kind::boolean, [](RunConfig& c) -> void* { return &c.flip_atom_energy; }},
        {"grid.k_start", Kind::real, [](RunConfig& c) -> void* { return &c.grid.start; }},
        {"grid.k_stop", Kind::real, [](RunConfig& c) -> void* { return &c.grid.stop; }},
        {"grid.k_count", Kind::integer, [](RunConfig& c) -> void* { return &c.grid.count; }},
        {"sweep.gamma_start", Kind::real, [](RunConfig& c) -> void* { return &c.sweep.start; }},
        {"sweep.gamma_stop", Kind::real, [](RunConfig& c) -> void* { return &c.sweep.stop; }},
        {"sweep.gamma_count", Kind::integer, [](RunConfig& c) -> void* { return &c.sweep.count; }},
        {"box.re_min", Kind::real, [](RunConfig& c) -> void* { return &c.box.re_min; }},
        {"box.re_max", Kind::real, [](RunConfig& c) -> void* { return &c.box.re_max; }},
        {"box.im_min", Kind::real, [](RunConfig& c) -> void* { return &c.box.im_min; }},
        {"box.im_max", Kind::real, [](RunConfig& c) -> void* { return &c.box.im_max; }},
        {"fit.growth_t0", Kind::real, [](RunConfig& c) -> void* { return &c.fit.growth_t0; }},
        {"fit.growth_t1", Kind::real, [](RunConfig& c) -> void* { return &c.fit.growth_t1; }},
        {"fit.slope_time", Kind::real, [](RunConfig& c) -> void* { return &c.fit.slope_time; }},
        {"fit.slope_sites", Kind::integer, [](RunConfig& c) -> void* { return &c.fit.slope_sites; }},
        {"fit.plateau_time", Kind::real, [](RunConfig& c) -> void* { return &c.fit.plateau_time; }},
        {"profile.j_min", Kind::integer, [](RunConfig& c) -> void* { return &c.profile_j_min; }},
        {"profile.j_max", Kind::integer, [](RunConfig& c) -> void* { return &c.profile_j_max; }},
        {"verify.criteria", Kind::integer_list, [](RunConfig& c) -> void* { return &c.verify_criteria; }},
        {"out.dir", Kind::text, [](RunConfig& c) -> void* { return &c.out_dir; }},
    };
    return table;
}

const KeySpec* find_key(std::string_view name) {
    for (const auto& k : key_table()) {
        if (name == k.name) return &k;
    }
    return nullptr;
}

void assign(RunConfig& cfg, const KeySpec& spec, const std::string& value, int line) {
    const std::string key = spec.name;
    auto bad = [&](const char* expect) { throw ConfigError(key, line, std::string("expected ") + expect + ", got '" + value + "'"); };
    if (key == "system.N") {
        long n = 0;
        if (!parse_integer(value, n)) bad("an integer");
        if (n < 1 || n > 1'000'000) throw ConfigError(key, line, "must be a positive integer");
        cfg.system.N = static_cast<int>(n);
        return;
    }
    void* field = spec.field(cfg);
    switch (spec.kind) {
    case Kind::real:
        if (!parse_real_expr(value, *static_cast<double*>(field))) bad("a real number");
        break;
    case Kind::gamma:
        if (value == "critical") {
            cfg.gamma_critical = true;
            cfg.system.gamma = 0.0;
        } else if (!parse_real_expr(value, *static_cast<double*>(field))) {
            bad("a real number or 'critical'");
        }
        break;
    case Kind::integer:
        if (!parse_integer(value, *static_cast<long*>(field))) bad("an integer");
        break;
    case Kind::boolean:
        if (value == "true") {
            *static_cast<bool*>(field) = true;
        } else if (value == "false") {
            *static_cast<bool*>(field) = false;
        } else {
            bad("true or false");
        }
        break;
    case Kind::real_list: {
        auto& out = *static_cast<std::vector<double>*>(field);
        out.clear();
        for (const auto& part : split_list(value)) {
            double x = 0.0;
            if (!parse_real_expr(part, x)) bad("a comma-separated list of reals");
            out.push_back(x);
        }
        break;
    }
    case Kind::integer_list: {
        auto& out = *static_cast<std::vector<long>*>(field);
        out.clear();
        for (const auto& part : split_list(value)) {
            long x = 0;
            if (!parse_integer(part, x)) bad("a comma-separated list of integers");
            out.push_back(x);
        }
        break;
    }
    case Kind::text:
        if (value.empty()) bad("a non-empty value");
        *static_cast<std::string*>(field) = value;
        break;
    }
}

void validate(const RunConfig& c) {
    auto line = [&](const std::string& key) {
        const auto it = c.present.find(key);
        return it == c.present.end() ? 0 : it->second;
    };
    auto check = [&](bool ok, const std::string& key, const std::string& what) {
        if (!ok) throw ConfigError(key, line(key), what);
    };
    const auto& s = c.system;
    check(std::isfinite(s.J) && s.J > 0.0, "system.J", "must be > 0");
    check(s.g >= 0.0, "system.g", "must be >= 0");
    check(c.packet.alpha > 0.0, "packet.alpha", "must be > 0");
    check(c.packet.k_c > band_edge_guard && c.packet.k_c < pi - band_edge_guard, "packet.k_c", "must lie in (0, pi)");
    check(c.lattice_sites >= 2, "lattice.sites", "must be at least 2");
    check(c.tol > 0.0, "evolve.tol", "must be > 0");
    check(c.sample_dt > 0.0, "evolve.sample_dt", "must be > 0");
    check(std::is_sorted(c.snapshots.begin(), c.snapshots.end()), "evolve.snapshots", "must be sorted ascending");
    if (c.has("grid.k_count")) check(c.grid.count >= 1, "grid.k_count", "must be >= 1");
    if (c.has("grid.k_start") || c.has("grid.k_stop")) {
        check(c.grid.start > 0.0 && c.grid.start < pi, "grid.k_start", "must lie in (0, pi)");
        check(c.grid.stop > 0.0 && c.grid.stop < pi, "grid.k_stop", "must lie in (0, pi)");
        check(c.grid.start <= c.grid.stop, "grid.k_stop", "must not be below grid.k_start");
    }
    if (c.has("sweep.gamma_count")) check(c.sweep.count >= 1, "sweep.gamma_count", "must be >= 1");
    check(c.sweep.start <= c.sweep.stop, "sweep.gamma_stop", "must not be below sweep.gamma_start");
    check(c.box.re_min >= 0.0, "box.re_min", "must be >= 0");
    check(c.box.re_max <= pi, "box.re_max", "must be <= pi");
    check(c.box.re_min < c.box.re_max, "box.re_max", "must exceed box.re_min");
    check(c.box.im_min < c.box.im_max, "box.im_max", "must exceed box.im_min");
    check(c.fit.growth_t0 < c.fit.growth_t1, "fit.growth_t1", "must exceed fit.growth_t0");
    check(c.fit.slope_sites >= 2, "fit.slope_sites", "must be >= 2");
    check(c.profile_j_min <= c.profile_j_max, "profile.j_max", "must not be below profile.j_min");
    for (long id : c.verify_criteria) check(id >= 1 && id <= 11, "verify.criteria", "criteria are numbered 1 to 11");
}

std::string format_value(const RunConfig& c, const KeySpec& spec) {
    RunConfig& m = const_cast<RunConfig&>(c);
    const std::string key = spec.name;
    if (key == "system.N") return std::to_string(c.system.N);
    if (key == "system.gamma" && c.gamma_critical) return "critical";
    void* field = spec.field(m);
    switch (spec.kind) {
    case Kind::real:
    case Kind::gamma: return shortest(*static_cast<double*>(field));
    case Kind::integer: return std::to_string(*static_cast<long*>(field));
    case Kind::boolean: return *static_cast<bool*>(field) ? "true" : "false";
    case Kind::real_list: {
        std::string out;
        for (double x : *static_cast<std::vector<double>*>(field)) out += (out.empty() ? "" : ", ") + shortest(x);
        return out;
    }
    case Kind::integer_list: {
        std::string out;
        for (long x : *static_cast<std::vector<long>*>(field)) out += (out.empty() ? "" : ", ") + std::to_string(x);
        return out;
    }
    case Kind::text: return *static_cast<std::string*>(field);
    }
    return {};
}

} // namespace

std::vector<double> GridSpec::values() const {
    std::vector<double> v;
    if (count <= 0) return v;
    if (count == 1) return {start};
    v.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        v.push_back(start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    v.back() = stop;
    return v;
}

void RunConfig::require(std::initializer_list<const char*> keys, std::string_view command) const {
    for (const char* k : keys) {
        if (!has(k)) throw ConfigError(k, 0, "required by " + std::string(command));
    }
}

SystemParams RunConfig::params() const {
    SystemParams p = system;
    if (gamma_critical) p.gamma = critical_gain(p);
    return p;
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& s : key_table()) k.emplace_back(s.name);
        return k;
    }();
    return keys;
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw ConfigError("", line, "expected 'key = value', got '" + body + "'");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        const KeySpec* spec = find_key(key);
        if (!spec) throw ConfigError(key, line, "unknown key");
        if (cfg.present.count(key)) throw ConfigError(key, line, "duplicate key");
        if (value.empty()) throw ConfigError(key, line, "missing value");
        assign(cfg, *spec, value, line);
        cfg.present[key] = line;
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("", 0, "cannot read config file " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

std::string dump_config(const RunConfig& cfg) {
    std::string out;
    for (const auto& spec : key_table()) {
        if (!cfg.has(spec.name)) continue;
        out += spec.name;
        out += " = ";
        out += format_value(cfg, spec);
        out += '\n';
    }
    return out;
}

} // namespace gawq
