#include "gawq/packet.hpp"

#include "gawq/errors.hpp"

#include <cmath>
#include <sstream>

namespace gawq {

void GaussianPacketSpec::validate() const {
    if (!(std::isfinite(alpha) && alpha > 0.0)) throw DomainError("packet.alpha must be positive");
    if (!(std::isfinite(k_c) && k_c > band_edge_guard && k_c < pi - band_edge_guard)) {
        throw DomainError("packet.k_c must lie in (0, pi)");
    }
}

long GaussianPacketSpec::margin() const { return static_cast<long>(std::ceil(6.0 / alpha)); }

bool GaussianPacketSpec::overlaps_coupling(const SystemParams& p) const {
    const double reach = 6.0 / alpha;
    return static_cast<double>(j_c) + reach >= 0.0 && static_cast<double>(j_c) - reach <= p.N;
}

cplx GaussianPacketSpec::amplitude(long j) const {
    const double x = static_cast<double>(j - j_c);
    const double mag = std::pow(pi, -0.25) * std::sqrt(alpha) * std::exp(-0.5 * alpha * alpha * x * x);
    return std::polar(mag, k_c * static_cast<double>(j));
}

cplx GaussianPacketSpec::momentum_amplitude(double k) const {
    const double d = k_c - k;
    const double mag = std::pow(pi, -0.25) / std::sqrt(alpha) * std::exp(-d * d / (2.0 * alpha * alpha));
    return std::polar(mag, d * static_cast<double>(j_c));
}

} // namespace gawq
