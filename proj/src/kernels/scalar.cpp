#include "gawq/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace gawq::kernels::scalar {

namespace {

inline const double* re(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* re(cplx* p) { return reinterpret_cast<double*>(p); }

} // namespace

void hopping(const cplx* xc, cplx* outc, std::size_t n, double omega_c, double J) {
    if (n == 0) return;
    const double* x = re(xc);
    double* out = re(outc);
    for (std::size_t j = 0; j < n; ++j) {
        const double lr = j > 0 ? x[2 * j - 2] : 0.0;
        const double li = j > 0 ? x[2 * j - 1] : 0.0;
        const double rr = j + 1 < n ? x[2 * j + 2] : 0.0;
        const double ri = j + 1 < n ? x[2 * j + 3] : 0.0;
        const double sr = omega_c * x[2 * j] - J * (rr + lr);
        const double si = omega_c * x[2 * j + 1] - J * (ri + li);
        out[2 * j] = si;
        out[2 * j + 1] = -sr;
    }
}

void lincomb(cplx* outc, const cplx* yc, double h, const double* c, const cplx* const* k, int m, std::size_t n) {
    const double* y = re(yc);
    double* out = re(outc);
    const std::size_t len = 2 * n;
    for (std::size_t i = 0; i < len; ++i) {
        double acc = c[0] * re(k[0])[i];
        for (int s = 1; s < m; ++s) acc = acc + c[s] * re(k[s])[i];
        out[i] = y[i] + h * acc;
    }
}

double max_scaled_error(const cplx* ac, const cplx* bc, double h, const double* c, const cplx* const* k, int m,
                        std::size_t n, double atol, double rtol) {
    const double* a = re(ac);
    const double* b = re(bc);
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double er = c[0] * re(k[0])[2 * j];
        double ei = c[0] * re(k[0])[2 * j + 1];
        for (int s = 1; s < m; ++s) {
            er = er + c[s] * re(k[s])[2 * j];
            ei = ei + c[s] * re(k[s])[2 * j + 1];
        }
        er = h * er;
        ei = h * ei;
        const double ea = std::sqrt(er * er + ei * ei);
        const double ma = std::sqrt(a[2 * j] * a[2 * j] + a[2 * j + 1] * a[2 * j + 1]);
        const double mb = std::sqrt(b[2 * j] * b[2 * j] + b[2 * j + 1] * b[2 * j + 1]);
        const double r = ea / (atol + rtol * std::max(ma, mb));
        worst = std::max(worst, r);
    }
    return worst;
}

double norm2(const cplx* xc, std::size_t n) {
    const double* x = re(xc);
    double s = 0.0;
    for (std::size_t i = 0; i < 2 * n; ++i) s += x[i] * x[i];
    return s;
}

} // namespace gawq::kernels::scalar
