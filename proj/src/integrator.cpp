#include "gawq/integrator.hpp"

#include "gawq/errors.hpp"
#include "gawq/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace gawq {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr std::array<double, 1> a2{1.0 / 5};
constexpr std::array<double, 2> a3{3.0 / 40, 9.0 / 40};
constexpr std::array<double, 3> a4{44.0 / 45, -56.0 / 15, 32.0 / 9};
constexpr std::array<double, 4> a5{19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729};
constexpr std::array<double, 5> a6{9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656};
// Fifth-order weights (k2 weight is zero).
constexpr std::array<double, 5> b{35.0 / 384, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84};
// b - b*, for k1 k3 k4 k5 k6 k7.
constexpr std::array<double, 6> e{71.0 / 57600, -71.0 / 16695, 71.0 / 1920, -17253.0 / 339200, 22.0 / 525,
                                  -1.0 / 40};
// Dense output, for k1 k3 k4 k5 k6 k7.
constexpr std::array<double, 6> d{-12715105075.0 / 11282082432,  87487479700.0 / 32700410799,
                                  -10690763975.0 / 1880347072,   701980252875.0 / 199316789632,
                                  -1453857185.0 / 822651844,     69997945.0 / 29380423};

} // namespace

DormandPrince::DormandPrince(Rhs rhs, Options opt) : rhs_(std::move(rhs)), opt_(opt) {
    if (!(opt_.atol > 0.0 && opt_.rtol >= 0.0)) throw DomainError("integrator tolerances must be positive");
}

void DormandPrince::integrate(double t0, std::vector<cplx>& y, std::span<const double> out_times,
                              const Observer& obs) {
    if (out_times.empty()) return;
    if (!std::is_sorted(out_times.begin(), out_times.end()) || out_times.front() < t0) {
        throw DomainError("output times must be sorted and not before the start time");
    }
    const std::size_t n = y.size();
    const double t_end = out_times.back();
    std::vector<cplx> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ys(n), ynew(n);
    std::vector<cplx> r5(n), out(n);
    const std::vector<cplx> zeros(n);

    auto call = [&](double t, const std::vector<cplx>& in, std::vector<cplx>& out) {
        rhs_(t, in, out);
        ++stats_.rhs_calls;
    };

    std::size_t next_out = 0;
    while (next_out < out_times.size() && out_times[next_out] == t0) {
        obs(t0, y);
        ++next_out;
    }
    if (next_out == out_times.size()) return;

    double t = t0;
    call(t, y, k1);
    double h = opt_.h0;
    if (h <= 0.0) {
        const double scale = std::sqrt(kernels::norm2(k1.data(), n) / std::max(kernels::norm2(y.data(), n), 1e-300));
        h = 0.01 / std::max(scale, 1.0);
    }
    if (opt_.h_max > 0.0) h = std::min(h, opt_.h_max);

    bool last_rejected = false;
    long steps = 0;
    while (t < t_end) {
        if (++steps > opt_.max_steps) throw NumericalError("integrator exceeded the step budget");
        bool final_step = false;
        if (t + h >= t_end) {
            h = t_end - t;
            final_step = true;
        }
        if (h < opt_.h_min) {
            std::ostringstream os;
            os << "step size underflow at t = " << t << " (h = " << h << ")";
            throw NumericalError(os.str());
        }

        {
            const cplx* ks[] = {k1.data()};
            kernels::lincomb(ys.data(), y.data(), h, a2.data(), ks, 1, n);
            call(t + c2 * h, ys, k2);
        }
        {
            const cplx* ks[] = {k1.data(), k2.data()};
            kernels::lincomb(ys.data(), y.data(), h, a3.data(), ks, 2, n);
            call(t + c3 * h, ys, k3);
        }
        {
            const cplx* ks[] = {k1.data(), k2.data(), k3.data()};
            kernels::lincomb(ys.data(), y.data(), h, a4.data(), ks, 3, n);
            call(t + c4 * h, ys, k4);
        }
        {
            const cplx* ks[] = {k1.data(), k2.data(), k3.data(), k4.data()};
            kernels::lincomb(ys.data(), y.data(), h, a5.data(), ks, 4, n);
            call(t + c5 * h, ys, k5);
        }
        {
            const cplx* ks[] = {k1.data(), k2.data(), k3.data(), k4.data(), k5.data()};
            kernels::lincomb(ys.data(), y.data(), h, a6.data(), ks, 5, n);
            call(t + h, ys, k6);
        }
        {
            const cplx* ks[] = {k1.data(), k3.data(), k4.data(), k5.data(), k6.data()};
            kernels::lincomb(ynew.data(), y.data(), h, b.data(), ks, 5, n);
        }
        const double t_new = final_step ? t_end : t + h;
        call(t_new, ynew, k7);

        const cplx* ek[] = {k1.data(), k3.data(), k4.data(), k5.data(), k6.data(), k7.data()};
        const double err =
            kernels::max_scaled_error(y.data(), ynew.data(), h, e.data(), ek, 6, n, opt_.atol, opt_.rtol);
        if (!std::isfinite(err)) throw NumericalError("integrator produced a non-finite state");

        if (err > 1.0) {
            ++stats_.rejected;
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            last_rejected = true;
            continue;
        }
        ++stats_.accepted;

        // Report every output time inside (t, t_new].
        if (next_out < out_times.size() && out_times[next_out] <= t_new) {
            const cplx* dk[] = {k1.data(), k3.data(), k4.data(), k5.data(), k6.data(), k7.data()};
            kernels::lincomb(r5.data(), zeros.data(), h, d.data(), dk, 6, n);
            while (next_out < out_times.size() && out_times[next_out] <= t_new) {
                const double tout = out_times[next_out];
                if (tout == t_new) {
                    obs(tout, ynew);
                } else {
                    const double th = (tout - t) / h;
                    const double th1 = 1.0 - th;
                    for (std::size_t i = 0; i < n; ++i) {
                        const cplx rc2 = ynew[i] - y[i];
                        const cplx rc3 = h * k1[i] - rc2;
                        const cplx rc4 = rc2 - h * k7[i] - rc3;
                        out[i] = y[i] + th * (rc2 + th1 * (rc3 + th * (rc4 + th1 * r5[i])));
                    }
                    obs(tout, out);
                }
                ++next_out;
            }
        }

        y.swap(ynew);
        k1.swap(k7);
        t = t_new;

        double factor = std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
        if (last_rejected) factor = std::min(factor, 1.0);
        last_rejected = false;
        if (!final_step) h *= factor;
        if (opt_.h_max > 0.0) h = std::min(h, opt_.h_max);
    }
}

} // namespace gawq
