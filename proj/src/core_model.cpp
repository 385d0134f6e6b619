#include "gawq/core_model.hpp"

#include "gawq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gawq {

SingularScattering::SingularScattering(double k, double gamma)
    : NumericalError([&] {
          std::ostringstream os;
          os.precision(17);
          os << "singular scattering at k=" << k << ", gamma=" << gamma
             << " (spectral singularity; use time-domain dynamics)";
          return os.str();
      }()),
      k_(k), gamma_(gamma) {}

BoundaryViolation::BoundaryViolation(double time, double edge_fraction)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "boundary violation at t=" << time << ": edge probability fraction " << edge_fraction;
          return os.str();
      }()),
      time_(time), edge_fraction_(edge_fraction) {}

ConfigError::ConfigError(const std::string& key, int line, const std::string& what)
    : std::runtime_error([&] {
          std::ostringstream os;
          if (!key.empty()) os << key << ": ";
          os << what;
          if (line > 0) os << " (line " << line << ")";
          return os.str();
      }()),
      key_(key), line_(line) {}

void SystemParams::validate() const {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(omega_a)) throw DomainError("system.omega_a must be finite");
    if (!finite(omega_c)) throw DomainError("system.omega_c must be finite");
    if (!finite(gamma)) throw DomainError("system.gamma must be finite");
    if (!finite(J) || J <= 0.0) throw DomainError("system.J must be finite and > 0");
    if (!finite(g) || g < 0.0) throw DomainError("system.g must be finite and >= 0");
    if (N < 1) throw DomainError("system.N must be >= 1");
}

double wavenumber_from_energy(const SystemParams& p, double omega) {
    const double x = (p.omega_c - omega) / (2.0 * p.J);
    constexpr double slack = 1e-14;
    if (!(std::abs(x) <= 1.0 + slack)) {
        std::ostringstream os;
        os.precision(17);
        os << "energy " << omega << " outside the band [" << p.omega_c - 2.0 * p.J << ", "
           << p.omega_c + 2.0 * p.J << "]";
        throw DomainError(os.str());
    }
    return std::acos(std::clamp(x, -1.0, 1.0));
}

cplx coupling_phase(const SystemParams& p, cplx k) {
    return 1.0 + std::exp(cplx(0.0, 1.0) * k * static_cast<double>(p.N));
}

void require_interior_k(double k) {
    if (!std::isfinite(k) || k <= band_edge_guard || k >= pi - band_edge_guard) {
        std::ostringstream os;
        os.precision(17);
        os << "wave number " << k << " must lie in (0, pi) away from the band edges";
        throw DomainError(os.str());
    }
}

BlochMode bloch_mode(const SystemParams& p, double k) {
    require_interior_k(k);
    return {k, dispersion(p, k), group_velocity(p, k)};
}

} // namespace gawq
