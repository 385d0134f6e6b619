#include "gawq/quadrature.hpp"

#include "gawq/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace gawq::quad {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

std::vector<double> cut_points(double a, double b, std::span<const double> breakpoints) {
    std::vector<double> pts{a, b};
    for (double x : breakpoints) {
        if (x > a && x < b) pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(), [](double u, double v) { return std::abs(u - v) < 1e-14; }),
              pts.end());
    return pts;
}

// Points where w_k = Re E for k in [-pi, pi], if Re E lies in the band.
std::vector<double> resonance_points(const SystemParams& p, double energy) {
    const double c = (p.omega_c - energy) / (2.0 * p.J);
    if (!(std::abs(c) < 1.0)) return {};
    const double k = std::acos(c);
    return {-k, k};
}

} // namespace

Result integrate(const Integrand& f, double a, double b, std::span<const double> breakpoints, const Options& opt) {
    struct Leaf {
        double lo, hi;
        cplx value;
        double error, l1;
        bool operator<(const Leaf& o) const { return error < o.error; }
    };
    auto eval = [&](double lo, double hi) {
        Leaf leaf{lo, hi, {}, 0.0, 0.0};
        leaf.value = GK::integrate(f, lo, hi, 0, 0.0, &leaf.error, &leaf.l1);
        // Boost rescales L1 to [lo, hi] but returns the error estimate on [-1, 1].
        leaf.error *= 0.5 * (hi - lo);
        return leaf;
    };

    // Global adaptive bisection: always split the leaf with the largest error.
    std::priority_queue<Leaf> leaves;
    double total_err = 0.0;
    double l1 = 0.0;
    const auto pts = cut_points(a, b, breakpoints);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Leaf leaf = eval(pts[i], pts[i + 1]);
        total_err += leaf.error;
        l1 += leaf.l1;
        leaves.push(leaf);
    }
    const std::size_t max_leaves = std::size_t{1} << std::min(opt.max_depth, 24);
    const double min_width = 1e-13 * (b - a);
    auto target = [&] { return std::max({opt.abs_tol, opt.rel_tol * l1, opt.noise_floor * l1}); };
    while (total_err > target() && leaves.size() < max_leaves) {
        const Leaf worst = leaves.top();
        if (worst.hi - worst.lo < min_width) break;
        leaves.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        const Leaf left = eval(worst.lo, mid);
        const Leaf right = eval(mid, worst.hi);
        total_err += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        leaves.push(left);
        leaves.push(right);
    }

    Result out;
    // Sum in a fixed order so the result does not depend on heap layout.
    std::vector<Leaf> all;
    all.reserve(leaves.size());
    while (!leaves.empty()) {
        all.push_back(leaves.top());
        leaves.pop();
    }
    std::sort(all.begin(), all.end(), [](const Leaf& x, const Leaf& y) { return x.lo < y.lo; });
    for (const auto& leaf : all) {
        out.value += leaf.value;
        out.error += leaf.error;
    }
    if (!std::isfinite(std::abs(out.value)) || out.error > 100.0 * target()) {
        std::ostringstream os;
        os.precision(3);
        os << "quadrature did not converge: achieved error " << out.error << ", target " << target();
        throw NumericalError(os.str());
    }
    return out;
}

Result resolvent(const SystemParams& p, cplx E, const Integrand& f, int sign, std::span<const double> breakpoints,
                 const Options& opt) {
    std::vector<double> bp(breakpoints.begin(), breakpoints.end());
    const auto res = resonance_points(p, E.real());
    bp.insert(bp.end(), res.begin(), res.end());

    if (E.imag() != 0.0 || res.empty()) {
        return integrate([&](double k) { return f(k) / (E - dispersion(p, k)); }, -pi, pi, bp, opt);
    }

    // Real E inside the band: subtract a + b sin k matching f at the two
    // resonant points. Both terms have vanishing principal value over the period.
    const double k1 = res[1];
    const double s1 = std::sin(k1);
    if (std::abs(s1) < band_edge_guard) throw NumericalError("resolvent: energy at a band edge");
    const cplx fp = f(k1);
    const cplx fm = f(-k1);
    const cplx ca = 0.5 * (fp + fm);
    const cplx cb = (fp - fm) / (2.0 * s1);
    const double e = E.real();
    auto g = [&](double k) -> cplx {
        const double den = e - dispersion(p, k);
        if (den == 0.0) return 0.0;
        return (f(k) - ca - cb * std::sin(k)) / den;
    };
    // g is finite at +-k1 but evaluates as 0/0 there; rounding noise grows like
    // 1/|k - k1|. Cut out a small neighbourhood and use the midpoint rule on it.
    constexpr double delta = 1e-6;
    Result pv;
    double edges[] = {-pi, -k1 - delta, -k1 + delta, k1 - delta, k1 + delta, pi};
    for (int seg = 0; seg < 5; seg += 2) {
        const Result part = integrate(g, edges[seg], edges[seg + 1], bp, opt);
        pv.value += part.value;
        pv.error += part.error;
    }
    for (double kc : {-k1, k1}) pv.value += delta * (g(kc - delta) + g(kc + delta));
    // delta(E - w_k) = sum over +-k1 of delta(k - k*) / (2 J sin k1)
    const cplx I{0.0, 1.0};
    pv.value += -I * static_cast<double>(sign) * pi * (fp + fm) / (2.0 * p.J * s1);
    return pv;
}

Result resolvent_eps(const SystemParams& p, cplx E, const Integrand& f, int sign, double eps,
                     std::span<const double> breakpoints, const Options& opt) {
    if (!(eps > 0.0)) throw DomainError("resolvent_eps: eps must be positive");
    const cplx Eeps = E + cplx(0.0, sign * eps);
    Options o = opt;
    o.noise_floor = std::max(o.noise_floor, 1e-14 / eps);
    std::vector<double> bp(breakpoints.begin(), breakpoints.end());
    for (double k : resonance_points(p, E.real())) {
        // Resolve the Lorentzian of width ~eps around each resonant point.
        for (double w : {-1e2, -10.0, -1.0, 0.0, 1.0, 10.0, 1e2}) bp.push_back(k + w * eps);
    }
    return integrate([&](double k) { return f(k) / (Eeps - dispersion(p, k)); }, -pi, pi, bp, o);
}

} // namespace gawq::quad
