#pragma once

// Positive parametrizations of complex-balanced equilibria:
//
//   x = kappa^(H^T) o tau^(B^T)
//
// with kappa the tree-constant quotients along a spanning forest, H a
// generalized inverse of M^T (M = kinetic complexes times forest incidence)
// and im B = ker M^T. When the kinetic deficiency is positive the phantom
// parameters must first satisfy kappa^C = 1 with im C = ker M.

#include "crnt/network.hpp"
#include "crnt/polynomial.hpp"
#include "crnt/rational.hpp"
#include "crnt/tree_constants.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace crnt {

/// base^exponent with a non-integer exponent; the base is a polynomial with positive value.
struct RadicalFactor {
  RationalFunction base;
  Rational exponent;
};

struct ParamComponent {
  SpeciesIndex species = 0;
  RationalFunction coefficient;
  std::vector<RadicalFactor> radicals;
  std::vector<Rational> tau_exponents;  // row of B
};

struct Parametrization {
  std::vector<std::string> species;
  SymbolTable symbols;  // network symbols followed by tau1, tau2, ...
  std::vector<ParamComponent> components;
  std::vector<SymbolId> tau_symbols;
  std::vector<SymbolId> free_phantoms;
  std::map<SymbolId, RationalFunction> solved_phantoms;
  std::vector<RationalFunction> conditions;  // kappa^C, one per kinetic-deficiency dimension
  bool x_equals_zbar = false;
  std::size_t kinetic_deficiency = 0;

  SpanningForest forest;
  TreeConstants tree_constants;
  RationalMatrix m, h, b, c;

  std::size_t tau_count() const { return tau_symbols.size(); }
};

/// The kinetic-deficiency conditions could not be solved for the phantom parameters.
class ConditionNotSolvable : public AnalysisError {
 public:
  ConditionNotSolvable(const std::string& message, std::vector<RationalFunction> conditions)
      : AnalysisError(message), conditions_(std::move(conditions)) {}
  const std::vector<RationalFunction>& conditions() const { return conditions_; }

 private:
  std::vector<RationalFunction> conditions_;
};

/// n x (m - l) matrix with column kinetic(j) - kinetic(i) per forest pair (i, j).
/// Throws AnalysisError if a forest vertex lacks a kinetic complex.
RationalMatrix build_m(const Gcrn& net, const SpanningForest& forest);

/// delta' = 0 and the network is V*-directed.
bool theorem_main_verdict(const Gcrn& net, const VertexSet& vstar);

/// Symbols labelling phantom edges, ascending.
std::vector<SymbolId> phantom_symbols(const Gcrn& net);

struct ParametrizeOptions {
  std::optional<VertexSet> vstar;    // for the verdict; default_vstar otherwise
  std::optional<RationalMatrix> h;   // replaces the echelon-form generalized inverse
};

/// Kinetic deficiency zero. Throws AnalysisError otherwise or when not weakly reversible.
Parametrization parametrize_zero(const Gcrn& net, const ParametrizeOptions& options = {});

/// Positive kinetic deficiency: solves each condition for a phantom parameter
/// occurring linearly (lowest symbol id first), then proceeds as in the zero
/// case. Throws ConditionNotSolvable when some condition admits no such solution.
Parametrization parametrize_positive_deficiency(const Gcrn& net, const ParametrizeOptions& options = {});

/// Dispatches on the kinetic deficiency.
Parametrization parametrize(const Gcrn& net, const ParametrizeOptions& options = {});

struct AcrEntry {
  SpeciesIndex species = 0;
  bool robust = false;
  std::optional<RationalFunction> value;
};

struct AcrReport {
  std::vector<AcrEntry> entries;
  std::vector<SpeciesIndex> robust_species() const;
};

AcrReport detect_acr(const Parametrization& p);

enum class EmitFormat { Json, Latex, Text };

std::string emit(const Parametrization& p, EmitFormat format);

/// Numeric value of a component; values are indexed by symbol id of p.symbols.
double evaluate_component(const ParamComponent& component, std::span<const double> values,
                          const std::vector<SymbolId>& tau_symbols);
std::vector<double> evaluate(const Parametrization& p, std::span<const double> values);

/// coefficient * tau^(row of B) as one rational function; nullopt when radicals
/// or fractional tau exponents are involved.
std::optional<RationalFunction> component_expression(const Parametrization& p, std::size_t species);

}  // namespace crnt
