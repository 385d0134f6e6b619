#pragma once

#include <stdexcept>
#include <string>

namespace gawq {

// Invalid argument or out-of-domain input (band edges, out-of-band energies).
class DomainError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Any failure of a numerical procedure: quadrature, root polishing, step underflow.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// The scattering denominator vanishes; time-independent amplitudes do not exist.
class SingularScattering : public NumericalError {
  public:
    SingularScattering(double k, double gamma);
    double k() const noexcept { return k_; }
    double gamma() const noexcept { return gamma_; }

  private:
    double k_;
    double gamma_;
};

// Real in-band pole energy: the modulus normalization integral diverges.
class NonNormalizable : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

// Probability reached the hard-wall ends of the lattice.
class BoundaryViolation : public std::runtime_error {
  public:
    BoundaryViolation(double time, double edge_fraction);
    double time() const noexcept { return time_; }
    double edge_fraction() const noexcept { return edge_fraction_; }

  private:
    double time_;
    double edge_fraction_;
};

class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& key, int line, const std::string& what);
    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

  private:
    std::string key_;
    int line_;
};

} // namespace gawq
