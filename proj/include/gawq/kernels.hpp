#pragma once

// Vector kernels for the lattice integrator. Each kernel has a scalar
// reference and an AVX2 variant; the active one is picked at first use from
// the host CPU and can be overridden for testing.
//
// Elementwise kernels give bitwise-identical results in both variants.
// norm2 is a reduction and agrees to rounding only.

#include "gawq/core_model.hpp"

#include <cstddef>
#include <string_view>

namespace gawq::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

bool avx2_supported();
Isa active_isa();
// Throws DomainError when the host lacks the requested instruction set.
void set_isa(Isa isa);

// out[j] = -i (omega_c x[j] - J (x[j+1] + x[j-1])), hard walls at both ends.
void hopping(const cplx* x, cplx* out, std::size_t n, double omega_c, double J);

// out = y + h * sum_{s<m} c[s] * k[s]   (m <= 8)
void lincomb(cplx* out, const cplx* y, double h, const double* c, const cplx* const* k, int m, std::size_t n);

// max_j |e_j| / (atol + rtol * max(|a_j|, |b_j|)), e = h * sum_s c[s] k[s]
double max_scaled_error(const cplx* a, const cplx* b, double h, const double* c, const cplx* const* k, int m,
                        std::size_t n, double atol, double rtol);

// sum_j |x_j|^2
double norm2(const cplx* x, std::size_t n);

namespace scalar {
void hopping(const cplx* x, cplx* out, std::size_t n, double omega_c, double J);
void lincomb(cplx* out, const cplx* y, double h, const double* c, const cplx* const* k, int m, std::size_t n);
double max_scaled_error(const cplx* a, const cplx* b, double h, const double* c, const cplx* const* k, int m,
                        std::size_t n, double atol, double rtol);
double norm2(const cplx* x, std::size_t n);
} // namespace scalar

namespace avx2 {
void hopping(const cplx* x, cplx* out, std::size_t n, double omega_c, double J);
void lincomb(cplx* out, const cplx* y, double h, const double* c, const cplx* const* k, int m, std::size_t n);
double max_scaled_error(const cplx* a, const cplx* b, double h, const double* c, const cplx* const* k, int m,
                        std::size_t n, double atol, double rtol);
double norm2(const cplx* x, std::size_t n);
} // namespace avx2

} // namespace gawq::kernels
