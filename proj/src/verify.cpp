#include "crnt/verify.hpp"

#include "crnt/tree_constants.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace crnt {

namespace {

double monomial(const Vertex& v, std::span<const double> x) {
  double out = 1;
  for (const auto& [s, e] : v.kinetic->coefficients()) out *= std::pow(x[s], to_double(e));
  return out;
}

struct Context {
  explicit Context(const Gcrn& n) : net(n) {
    if (!linkage_structure(net).weakly_reversible) return;
    forest = choose_forest(net);
    k = tree_constants_cofactor(net);
    m = build_m(net, forest);
    linear = true;
  }

  const Gcrn& net;
  bool linear = false;
  SpanningForest forest;
  TreeConstants k;
  RationalMatrix m;

  double log_linear(std::span<const double> values, std::span<const double> x) const {
    if (!linear) return 0;
    double worst = 0;
    for (std::size_t e = 0; e < forest.edges.size(); ++e) {
      const auto [i, j] = forest.edges[e];
      double lhs = 0;
      for (Eigen::Index s = 0; s < m.rows(); ++s) {
        const Rational& c = m(s, static_cast<Eigen::Index>(e));
        if (c != 0) lhs += to_double(c) * std::log(x[static_cast<std::size_t>(s)]);
      }
      const double rhs = std::log(k.at(j).evaluate(values)) - std::log(k.at(i).evaluate(values));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
  }
};

}  // namespace

double ode_residual(const Gcrn& net, std::span<const double> values, std::span<const double> x) {
  std::vector<double> f(net.species_count(), 0.0);
  double scale = 0;
  for (const auto& e : net.edges()) {
    if (e.kind == EdgeKind::Phantom) continue;
    const auto& src = net.vertex(e.source);
    const double rate = values[e.label] * monomial(src, x);
    const Complex delta = net.vertex(e.target).stoich - src.stoich;
    for (const auto& [s, c] : delta.coefficients()) {
      const double term = rate * to_double(c);
      f[s] += term;
      scale = std::max(scale, std::abs(term));
    }
  }
  if (scale == 0) return 0;
  double worst = 0;
  for (double v : f) worst = std::max(worst, std::abs(v));
  return worst / scale;
}

double complex_balance_residual(const Gcrn& net, std::span<const double> values, std::span<const double> x) {
  std::map<VertexId, double> balance;
  double scale = 0;
  for (const auto& e : net.edges()) {
    const double flux = values[e.label] * monomial(net.vertex(e.source), x);
    balance[e.target] += flux;
    balance[e.source] -= flux;
    scale = std::max(scale, std::abs(flux));
  }
  if (scale == 0) return 0;
  double worst = 0;
  for (const auto& [v, b] : balance) worst = std::max(worst, std::abs(b));
  return worst / scale;
}

double log_linear_residual(const Gcrn& net, std::span<const double> values, std::span<const double> x) {
  return Context(net).log_linear(values, x);
}

VerifyReport numeric_verify(const Gcrn& net, std::size_t tau_count,
                            const std::map<SymbolId, RationalFunction>& solved_phantoms, const ConcentrationMap& map,
                            const VerifyOptions& options) {
  const Context ctx(net);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> exponent(std::log(options.low), std::log(options.high));
  VerifyReport report;
  const std::size_t symbol_count = net.symbols().size();
  for (std::size_t i = 0; i < options.samples; ++i) {
    std::vector<double> values(symbol_count);
    for (auto& v : values) v = std::exp(exponent(rng));
    std::vector<double> tau(tau_count);
    for (auto& t : tau) t = std::exp(exponent(rng));
    for (const auto& [phantom, h] : solved_phantoms) values[phantom] = h.evaluate(values);

    SampleResult r;
    r.index = i;
    const std::vector<double> x = map(values, tau);
    const bool positive = x.size() == net.species_count() &&
                          std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v) && v > 0; });
    if (positive) {
      r.ode = ode_residual(net, values, x);
      r.complex_balance = complex_balance_residual(net, values, x);
      r.log_linear = ctx.log_linear(values, x);
      r.passed = r.ode <= options.tol && r.complex_balance <= options.tol && r.log_linear <= options.log_tol;
    } else {
      r.ode = r.complex_balance = r.log_linear = INFINITY;
    }
    report.max_ode = std::max(report.max_ode, r.ode);
    report.max_complex_balance = std::max(report.max_complex_balance, r.complex_balance);
    report.max_log_linear = std::max(report.max_log_linear, r.log_linear);
    if (!r.passed) ++report.failures;
    report.samples.push_back(r);
  }
  return report;
}

VerifyReport numeric_verify(const Gcrn& net, const Parametrization& p, const VerifyOptions& options) {
  auto map = [&](std::span<const double> values, std::span<const double> tau) {
    std::vector<double> all(values.begin(), values.end());
    all.resize(p.symbols.size(), 1.0);
    for (std::size_t t = 0; t < tau.size(); ++t) all[p.tau_symbols[t]] = tau[t];
    return evaluate(p, all);
  };
  return numeric_verify(net, p.tau_count(), p.solved_phantoms, map, options);
}

}  // namespace crnt
