#include "gawq/kernels.hpp"

#include "gawq/errors.hpp"

#include <atomic>

namespace gawq::kernels {

namespace {

Isa detect() { return avx2_supported() ? Isa::avx2 : Isa::scalar; }

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

} // namespace

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa active_isa() { return current().load(); }

void set_isa(Isa isa) {
    if (isa == Isa::avx2 && !avx2_supported()) throw DomainError("AVX2 is not available on this host");
    current().store(isa);
}

void hopping(const cplx* x, cplx* out, std::size_t n, double omega_c, double J) {
    if (active_isa() == Isa::avx2) {
        avx2::hopping(x, out, n, omega_c, J);
    } else {
        scalar::hopping(x, out, n, omega_c, J);
    }
}

void lincomb(cplx* out, const cplx* y, double h, const double* c, const cplx* const* k, int m, std::size_t n) {
    if (active_isa() == Isa::avx2) {
        avx2::lincomb(out, y, h, c, k, m, n);
    } else {
        scalar::lincomb(out, y, h, c, k, m, n);
    }
}

double max_scaled_error(const cplx* a, const cplx* b, double h, const double* c, const cplx* const* k, int m,
                        std::size_t n, double atol, double rtol) {
    if (active_isa() == Isa::avx2) return avx2::max_scaled_error(a, b, h, c, k, m, n, atol, rtol);
    return scalar::max_scaled_error(a, b, h, c, k, m, n, atol, rtol);
}

double norm2(const cplx* x, std::size_t n) {
    if (active_isa() == Isa::avx2) return avx2::norm2(x, n);
    return scalar::norm2(x, n);
}

} // namespace gawq::kernels
