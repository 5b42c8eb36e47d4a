#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nlslab {

/// Machine-readable category attached to every failure the library reports.
enum class Diagnostic {
  InvalidInput,
  NonFinite,
  DomainTooSmall,        // free evolution reached the box boundary
  UnderResolved,         // spectral tail above threshold
  StepTooLarge,          // mass drift beyond tolerance
  BoxTooSmall,           // boundary guard tripped during time integration
  NoModifiedScattering,  // Cauchy differences do not decay
  LogDivergence,         // kernel transform requested at zero frequency
  KernelTooSmoothing,    // every mode falls below the spectral cutoff
  NotConverged,
  MissingSamples,
  ToleranceNotMet,
  Io,
};

std::string_view to_string(Diagnostic d) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Diagnostic code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Diagnostic code() const noexcept { return code_; }

 private:
  Diagnostic code_;
};

}  // namespace nlslab
