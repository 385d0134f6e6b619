#include "gawq/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

// Two complex numbers per 256-bit register, interleaved (re, im, re, im).
// No FMA so results match the scalar path bit for bit.

namespace gawq::kernels::avx2 {

namespace {

inline const double* re(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* re(cplx* p) { return reinterpret_cast<double*>(p); }

} // namespace

__attribute__((target("avx2"))) void hopping(const cplx* xc, cplx* outc, std::size_t n, double omega_c, double J) {
    if (n < 4) {
        scalar::hopping(xc, outc, n, omega_c, J);
        return;
    }
    const double* x = re(xc);
    double* out = re(outc);
    const __m256d w = _mm256_set1_pd(omega_c);
    const __m256d jj = _mm256_set1_pd(J);
    const __m256d flip = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0); // negate the new imaginary parts

    // Interior sites 1 .. n-2 in pairs; the ends use the scalar rule.
    std::size_t j = 1;
    for (; j + 2 <= n - 1; j += 2) {
        const __m256d c = _mm256_loadu_pd(x + 2 * j);
        const __m256d l = _mm256_loadu_pd(x + 2 * j - 2);
        const __m256d r = _mm256_loadu_pd(x + 2 * j + 2);
        const __m256d s = _mm256_sub_pd(_mm256_mul_pd(w, c), _mm256_mul_pd(jj, _mm256_add_pd(r, l)));
        const __m256d swapped = _mm256_permute_pd(s, 0b0101);
        _mm256_storeu_pd(out + 2 * j, _mm256_xor_pd(swapped, flip));
    }
    auto one = [&](std::size_t q) {
        const double lr = q > 0 ? x[2 * q - 2] : 0.0;
        const double li = q > 0 ? x[2 * q - 1] : 0.0;
        const double rr = q + 1 < n ? x[2 * q + 2] : 0.0;
        const double ri = q + 1 < n ? x[2 * q + 3] : 0.0;
        const double sr = omega_c * x[2 * q] - J * (rr + lr);
        const double si = omega_c * x[2 * q + 1] - J * (ri + li);
        out[2 * q] = si;
        out[2 * q + 1] = -sr;
    };
    one(0);
    for (; j < n; ++j) one(j);
}

__attribute__((target("avx2"))) void lincomb(cplx* outc, const cplx* yc, double h, const double* c,
                                             const cplx* const* k, int m, std::size_t n) {
    const double* y = re(yc);
    double* out = re(outc);
    const std::size_t len = 2 * n;
    const __m256d hv = _mm256_set1_pd(h);
    __m256d cv[8];
    for (int s = 0; s < m; ++s) cv[s] = _mm256_set1_pd(c[s]);
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        __m256d acc = _mm256_mul_pd(cv[0], _mm256_loadu_pd(re(k[0]) + i));
        for (int s = 1; s < m; ++s) acc = _mm256_add_pd(acc, _mm256_mul_pd(cv[s], _mm256_loadu_pd(re(k[s]) + i)));
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(hv, acc)));
    }
    for (; i < len; ++i) {
        double acc = c[0] * re(k[0])[i];
        for (int s = 1; s < m; ++s) acc = acc + c[s] * re(k[s])[i];
        out[i] = y[i] + h * acc;
    }
}

__attribute__((target("avx2"))) double max_scaled_error(const cplx* ac, const cplx* bc, double h, const double* c,
                                                        const cplx* const* k, int m, std::size_t n, double atol,
                                                        double rtol) {
    const double* a = re(ac);
    const double* b = re(bc);
    const __m256d hv = _mm256_set1_pd(h);
    const __m256d av = _mm256_set1_pd(atol);
    const __m256d rv = _mm256_set1_pd(rtol);
    __m256d cv[8];
    for (int s = 0; s < m; ++s) cv[s] = _mm256_set1_pd(c[s]);
    __m256d worst = _mm256_setzero_pd();
    std::size_t j = 0;
    const std::size_t len = 2 * n;
    for (std::size_t i = 0; i + 4 <= len; i += 4, j += 2) {
        __m256d e = _mm256_mul_pd(cv[0], _mm256_loadu_pd(re(k[0]) + i));
        for (int s = 1; s < m; ++s) e = _mm256_add_pd(e, _mm256_mul_pd(cv[s], _mm256_loadu_pd(re(k[s]) + i)));
        e = _mm256_mul_pd(hv, e);
        const __m256d va = _mm256_loadu_pd(a + i);
        const __m256d vb = _mm256_loadu_pd(b + i);
        // |z|^2 lands in both lanes of each complex after a horizontal add.
        const __m256d e2 = _mm256_mul_pd(e, e);
        const __m256d a2 = _mm256_mul_pd(va, va);
        const __m256d b2 = _mm256_mul_pd(vb, vb);
        const __m256d ea = _mm256_sqrt_pd(_mm256_hadd_pd(e2, e2));
        const __m256d ma = _mm256_sqrt_pd(_mm256_hadd_pd(a2, a2));
        const __m256d mb = _mm256_sqrt_pd(_mm256_hadd_pd(b2, b2));
        const __m256d r = _mm256_div_pd(ea, _mm256_add_pd(av, _mm256_mul_pd(rv, _mm256_max_pd(ma, mb))));
        worst = _mm256_max_pd(worst, r);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, worst);
    double out = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    if (j < n) {
        const cplx* ks[8];
        for (int s = 0; s < m; ++s) ks[s] = k[s] + j;
        out = std::max(out, scalar::max_scaled_error(ac + j, bc + j, h, c, ks, m, n - j, atol, rtol));
    }
    return out;
}

__attribute__((target("avx2"))) double norm2(const cplx* xc, std::size_t n) {
    const double* x = re(xc);
    const std::size_t len = 2 * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < len; ++i) s += x[i] * x[i];
    return s;
}

} // namespace gawq::kernels::avx2
