#pragma once

// Numeric residual checks for equilibrium parametrizations at random
// log-uniform parameter samples.

#include "crnt/network.hpp"
#include "crnt/parametrization.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace crnt {

struct VerifyOptions {
  std::size_t samples = 100;
  std::uint64_t seed = 42;
  double tol = 1e-8;       // ODE and complex-balance residuals, relative
  double log_tol = 1e-9;   // M^T ln x - ln kappa, absolute
  double low = 0.1;
  double high = 10.0;
};

struct SampleResult {
  std::size_t index = 0;
  double ode = 0;
  double complex_balance = 0;
  double log_linear = 0;
  bool passed = false;
};

struct VerifyReport {
  std::vector<SampleResult> samples;
  double max_ode = 0;
  double max_complex_balance = 0;
  double max_log_linear = 0;
  std::size_t failures = 0;
  bool passed() const { return failures == 0; }
};

/// Concentrations from the sampled symbol values (indexed by the network's
/// symbol ids, solved phantoms already filled in) and the sampled taus.
using ConcentrationMap = std::function<std::vector<double>(std::span<const double> values, std::span<const double> tau)>;

/// Samples every network symbol and `tau_count` taus, overwrites the solved
/// phantoms with h(k) and checks x = map(values, tau) against the ODE, the
/// complex-balance equations and the log-linear system of the network.
VerifyReport numeric_verify(const Gcrn& net, std::size_t tau_count,
                            const std::map<SymbolId, RationalFunction>& solved_phantoms, const ConcentrationMap& map,
                            const VerifyOptions& options = {});

VerifyReport numeric_verify(const Gcrn& net, const Parametrization& p, const VerifyOptions& options = {});

/// Pointwise residuals for one concentration vector.
double ode_residual(const Gcrn& net, std::span<const double> values, std::span<const double> x);
double complex_balance_residual(const Gcrn& net, std::span<const double> values, std::span<const double> x);
double log_linear_residual(const Gcrn& net, std::span<const double> values, std::span<const double> x);

}  // namespace crnt
