#include "crnt/parametrization.hpp"

#include "crnt/linalg.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace crnt {

RationalMatrix build_m(const Gcrn& net, const SpanningForest& forest) {
  const auto n = static_cast<Eigen::Index>(net.species_count());
  RationalMatrix m = RationalMatrix::Zero(n, static_cast<Eigen::Index>(forest.edges.size()));
  for (std::size_t e = 0; e < forest.edges.size(); ++e) {
    const auto [i, j] = forest.edges[e];
    const auto& vi = net.vertex(i);
    const auto& vj = net.vertex(j);
    if (!vi.kinetic || !vj.kinetic) {
      throw AnalysisError("v" + std::to_string(vi.kinetic ? j : i) + " has no kinetic-order complex");
    }
    m.col(static_cast<Eigen::Index>(e)) = vj.kinetic->dense(net.species_count()) - vi.kinetic->dense(net.species_count());
  }
  return m;
}

bool theorem_main_verdict(const Gcrn& net, const VertexSet& vstar) {
  return structure_report(net).effective_deficiency == 0 && is_v_star_directed(net, vstar);
}

std::vector<SymbolId> phantom_symbols(const Gcrn& net) {
  std::set<SymbolId> out;
  for (const auto& e : net.edges()) {
    if (e.kind == EdgeKind::Phantom) out.insert(e.label);
  }
  return {out.begin(), out.end()};
}

namespace {

// Solves one condition for the lowest free phantom that occurs in exactly one
// irreducible-looking factor of num - den, with degree one.
std::optional<std::pair<SymbolId, RationalFunction>> solve_condition(const Factorization& condition,
                                                                     const std::vector<SymbolId>& free) {
  const Polynomial g = condition.numerator() - condition.denominator();
  if (g.is_zero()) return std::nullopt;
  const Factorization parts = factor(g);
  for (SymbolId p : free) {
    const Polynomial* hit = nullptr;
    int count = 0;
    for (const auto& [f, e] : parts.factors()) {
      if (!f.contains(p)) continue;
      ++count;
      if (e == 1 && f.degree_in(p) == 1) hit = &f;
    }
    if (count != 1 || hit == nullptr) continue;
    const Polynomial a = hit->coefficient_of(p, 1);
    const Polynomial b = hit->coefficient_of(p, 0);
    if (b.is_zero()) continue;  // p = 0 is not a positive solution
    return std::make_pair(p, RationalFunction(-b, a));
  }
  return std::nullopt;
}

Factorization condition_of(const std::map<VertexId, Factorization>& kf, const SpanningForest& forest,
                           const RationalMatrix& c, Eigen::Index col) {
  Factorization out;
  for (std::size_t e = 0; e < forest.edges.size(); ++e) {
    const Rational& x = c(static_cast<Eigen::Index>(e), col);
    if (x == 0) continue;
    const int power = static_cast<int>(numerator_of(x));
    const auto [i, j] = forest.edges[e];
    out *= (kf.at(j) * kf.at(i).pow(-1)).pow(power);
  }
  return out;
}

enum class Mode { Zero, Positive, Any };

Parametrization build(const Gcrn& net, const ParametrizeOptions& options, Mode mode) {
  require_weakly_reversible(net);
  Parametrization p;
  p.species = net.species();
  p.symbols = net.symbols();
  p.forest = choose_forest(net);
  p.tree_constants = tree_constants_cofactor(net);
  p.m = build_m(net, p.forest);

  const auto mt = RationalMatrix(p.m.transpose());
  const auto rank_m = static_cast<std::size_t>(exact_rank(p.m));
  p.kinetic_deficiency = p.forest.edges.size() - rank_m;
  if (mode == Mode::Zero && p.kinetic_deficiency != 0) {
    throw AnalysisError("kinetic deficiency is " + std::to_string(p.kinetic_deficiency) + ", not zero");
  }
  if (mode == Mode::Positive && p.kinetic_deficiency == 0) throw AnalysisError("kinetic deficiency is zero");

  p.c = p.forest.edges.empty() ? RationalMatrix(0, 0) : kernel_basis(p.m);
  std::map<VertexId, Factorization> kf;
  for (const auto& [v, k] : p.tree_constants) kf.emplace(v, factor(k));

  p.free_phantoms = phantom_symbols(net);
  if (p.kinetic_deficiency > 0) {
    for (Eigen::Index t = 0; t < p.c.cols(); ++t) p.conditions.push_back(condition_of(kf, p.forest, p.c, t).expand());
    if (p.free_phantoms.size() < p.kinetic_deficiency) {
      throw ConditionNotSolvable("kinetic deficiency " + std::to_string(p.kinetic_deficiency) + " exceeds the " +
                                     std::to_string(p.free_phantoms.size()) + " phantom parameters",
                                 p.conditions);
    }
    for (Eigen::Index t = 0; t < p.c.cols(); ++t) {
      const Factorization cond = condition_of(kf, p.forest, p.c, t);
      if (rf_equal(cond.expand(), RationalFunction(1))) continue;
      const auto solved = solve_condition(cond, p.free_phantoms);
      if (!solved) {
        throw ConditionNotSolvable("condition " + std::to_string(t + 1) + " is not linear in a single phantom parameter",
                                   p.conditions);
      }
      const auto& [phantom, h] = *solved;
      for (auto& [v, f] : kf) f = factor(f.expand().substitute(phantom, h));
      for (auto& [q, value] : p.solved_phantoms) value = value.substitute(phantom, h);
      p.solved_phantoms.emplace(phantom, h);
      std::erase(p.free_phantoms, phantom);
    }
  }

  p.h = options.h ? *options.h : generalized_inverse(mt);
  if (p.h.rows() != p.m.rows() || p.h.cols() != p.m.cols() || RationalMatrix(mt * p.h * mt) != mt) {
    throw std::invalid_argument("H is not a generalized inverse of M^T");
  }
  p.b = kernel_basis(mt);
  for (Eigen::Index t = 0; t < p.b.cols(); ++t) {
    p.tau_symbols.push_back(p.symbols.add_fresh("tau" + std::to_string(t + 1), SymbolRole::TauParameter));
  }

  for (std::size_t s = 0; s < net.species_count(); ++s) {
    const auto row = static_cast<Eigen::Index>(s);
    std::map<VertexId, Rational> vertex_power;
    for (std::size_t e = 0; e < p.forest.edges.size(); ++e) {
      const Rational& x = p.h(row, static_cast<Eigen::Index>(e));
      if (x == 0) continue;
      vertex_power[p.forest.edges[e].second] += x;
      vertex_power[p.forest.edges[e].first] -= x;
    }
    std::map<Polynomial, Rational, PolynomialLess> bases;
    for (const auto& [v, q] : vertex_power) {
      if (q == 0) continue;
      const auto& f = kf.at(v);
      if (f.constant() != 1) bases[Polynomial(f.constant())] += q;
      for (const auto& [poly, e] : f.factors()) bases[poly] += q * e;
    }
    ParamComponent comp;
    comp.species = s;
    comp.coefficient = RationalFunction(1);
    for (const auto& [base, q] : bases) {
      if (q == 0) continue;
      if (is_integer(q)) {
        comp.coefficient = comp.coefficient * RationalFunction(base).pow(static_cast<int>(numerator_of(q)));
      } else {
        comp.radicals.push_back({RationalFunction(base), q});
      }
    }
    for (Eigen::Index t = 0; t < p.b.cols(); ++t) comp.tau_exponents.push_back(p.b(row, t));
    p.components.push_back(std::move(comp));
  }

  p.x_equals_zbar = theorem_main_verdict(net, options.vstar ? *options.vstar : default_vstar(net));
  return p;
}

}  // namespace

Parametrization parametrize_zero(const Gcrn& net, const ParametrizeOptions& options) { return build(net, options, Mode::Zero); }

Parametrization parametrize_positive_deficiency(const Gcrn& net, const ParametrizeOptions& options) {
  return build(net, options, Mode::Positive);
}

Parametrization parametrize(const Gcrn& net, const ParametrizeOptions& options) { return build(net, options, Mode::Any); }

std::optional<RationalFunction> component_expression(const Parametrization& p, std::size_t species) {
  const auto& c = p.components.at(species);
  if (!c.radicals.empty()) return std::nullopt;
  RationalFunction out = c.coefficient;
  for (std::size_t t = 0; t < c.tau_exponents.size(); ++t) {
    const Rational& e = c.tau_exponents[t];
    if (e == 0) continue;
    if (!is_integer(e)) return std::nullopt;
    out = out * RationalFunction(Polynomial::variable(p.tau_symbols[t])).pow(static_cast<int>(numerator_of(e)));
  }
  return out;
}

std::vector<SpeciesIndex> AcrReport::robust_species() const {
  std::vector<SpeciesIndex> out;
  for (const auto& e : entries) {
    if (e.robust) out.push_back(e.species);
  }
  return out;
}

AcrReport detect_acr(const Parametrization& p) {
  AcrReport report;
  for (const auto& c : p.components) {
    AcrEntry entry;
    entry.species = c.species;
    bool robust = std::all_of(c.tau_exponents.begin(), c.tau_exponents.end(), [](const Rational& e) { return e == 0; });
    for (SymbolId phi : p.free_phantoms) {
      robust = robust && !c.coefficient.contains(phi);
      for (const auto& r : c.radicals) robust = robust && !r.base.contains(phi);
    }
    entry.robust = robust;
    if (robust && c.radicals.empty()) entry.value = c.coefficient;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

double evaluate_component(const ParamComponent& component, std::span<const double> values,
                          const std::vector<SymbolId>& tau_symbols) {
  double x = component.coefficient.evaluate(values);
  for (const auto& r : component.radicals) x *= std::pow(r.base.evaluate(values), to_double(r.exponent));
  for (std::size_t t = 0; t < component.tau_exponents.size(); ++t) {
    const Rational& e = component.tau_exponents[t];
    if (e != 0) x *= std::pow(values[tau_symbols[t]], to_double(e));
  }
  return x;
}

std::vector<double> evaluate(const Parametrization& p, std::span<const double> values) {
  std::vector<double> x;
  for (const auto& c : p.components) x.push_back(evaluate_component(c, values, p.tau_symbols));
  return x;
}

namespace {

std::string latex_polynomial(const Polynomial& poly, const SymbolNamer& name) {
  std::string s = poly.to_string(name);
  std::string out;
  for (char ch : s) {
    if (ch == '*') {
      out += ' ';
    } else {
      out += ch;
    }
  }
  return out;
}

std::string latex_name(const std::string& raw) {
  // k12 -> k_{12}, tau1 -> \tau_{1}, phi -> \phi
  std::size_t cut = raw.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(raw[cut - 1]))) --cut;
  std::string head = raw.substr(0, cut);
  if (head == "tau" || head == "phi" || head == "kappa") head = "\\" + head;
  return cut == raw.size() ? head : head + "_{" + raw.substr(cut) + "}";
}

std::string text_component(const Parametrization& p, const ParamComponent& c, const SymbolNamer& name) {
  std::vector<std::string> factors;
  const std::string coefficient = c.coefficient.to_string(name);
  if (coefficient != "1") factors.push_back(coefficient);
  for (const auto& r : c.radicals) factors.push_back("(" + r.base.to_string(name) + ")^(" + to_string(r.exponent) + ")");
  for (std::size_t t = 0; t < c.tau_exponents.size(); ++t) {
    const Rational& e = c.tau_exponents[t];
    if (e == 0) continue;
    std::string f = name(p.tau_symbols[t]);
    if (e != 1) f += "^" + (e < 0 || !is_integer(e) ? "(" + to_string(e) + ")" : to_string(e));
    factors.push_back(f);
  }
  if (factors.empty()) return "1";
  std::string out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out += " * " + factors[i];
  return out;
}

std::string latex_component(const Parametrization& p, const ParamComponent& c, const SymbolNamer& name) {
  std::ostringstream out;
  const SymbolNamer tex = [&](SymbolId id) { return latex_name(name(id)); };
  if (c.coefficient.is_polynomial()) {
    const Rational d = c.coefficient.den().constant_value();
    if (d == 1) {
      out << latex_polynomial(c.coefficient.num(), tex);
    } else {
      out << "\\frac{" << latex_polynomial(c.coefficient.num(), tex) << "}{" << to_string(d) << "}";
    }
  } else {
    out << "\\frac{" << latex_polynomial(c.coefficient.num(), tex) << "}{" << latex_polynomial(c.coefficient.den(), tex)
        << "}";
  }
  for (const auto& r : c.radicals) {
    out << " \\left(\\frac{" << latex_polynomial(r.base.num(), tex) << "}{" << latex_polynomial(r.base.den(), tex)
        << "}\\right)^{" << to_string(r.exponent) << "}";
  }
  for (std::size_t t = 0; t < c.tau_exponents.size(); ++t) {
    const Rational& e = c.tau_exponents[t];
    if (e == 0) continue;
    out << " " << tex(p.tau_symbols[t]);
    if (e != 1) out << "^{" << to_string(e) << "}";
  }
  return out.str();
}

nlohmann::ordered_json json_matrix(const RationalMatrix& a) {
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(to_string(a(i, j)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string emit(const Parametrization& p, EmitFormat format) {
  const SymbolNamer name = p.symbols.namer();
  if (format == EmitFormat::Json) {
    nlohmann::ordered_json doc;
    doc["x_equals_zbar"] = p.x_equals_zbar;
    doc["kinetic_deficiency"] = p.kinetic_deficiency;
    auto taus = nlohmann::ordered_json::array();
    for (SymbolId t : p.tau_symbols) taus.push_back(name(t));
    doc["tau"] = taus;
    auto free = nlohmann::ordered_json::array();
    for (SymbolId f : p.free_phantoms) free.push_back(name(f));
    doc["free_phantoms"] = free;
    auto solved = nlohmann::ordered_json::object();
    for (const auto& [s, h] : p.solved_phantoms) solved[name(s)] = h.to_string(name);
    doc["solved_phantoms"] = solved;
    auto conditions = nlohmann::ordered_json::array();
    for (const auto& c : p.conditions) conditions.push_back(c.to_string(name));
    doc["conditions"] = conditions;
    auto forest = nlohmann::ordered_json::array();
    for (const auto& [i, j] : p.forest.edges) forest.push_back({i, j});
    doc["forest"] = forest;
    auto k = nlohmann::ordered_json::object();
    for (const auto& [v, poly] : p.tree_constants) k["K" + std::to_string(v)] = poly.to_string(name);
    doc["tree_constants"] = k;
    doc["M"] = json_matrix(p.m);
    doc["H"] = json_matrix(p.h);
    doc["B"] = json_matrix(p.b);
    doc["C"] = json_matrix(p.c);
    auto comps = nlohmann::ordered_json::array();
    for (const auto& c : p.components) {
      nlohmann::ordered_json item;
      item["species"] = p.species[c.species];
      item["coefficient"] = c.coefficient.to_string(name);
      auto rad = nlohmann::ordered_json::array();
      for (const auto& r : c.radicals) rad.push_back({{"base", r.base.to_string(name)}, {"exponent", to_string(r.exponent)}});
      item["radicals"] = rad;
      auto te = nlohmann::ordered_json::array();
      for (const auto& e : c.tau_exponents) te.push_back(to_string(e));
      item["tau_exponents"] = te;
      item["expression"] = text_component(p, c, name);
      comps.push_back(item);
    }
    doc["components"] = comps;
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  if (format == EmitFormat::Latex) {
    out << "\\begin{align*}\n";
    for (std::size_t i = 0; i < p.components.size(); ++i) {
      const auto& c = p.components[i];
      out << latex_name(p.species[c.species]) << " &= " << latex_component(p, c, name);
      out << (i + 1 < p.components.size() || !p.solved_phantoms.empty() ? " \\\\\n" : "\n");
    }
    std::size_t left = p.solved_phantoms.size();
    for (const auto& [s, h] : p.solved_phantoms) {
      out << latex_name(name(s)) << " &= \\frac{" << latex_polynomial(h.num(), [&](SymbolId id) {
        return latex_name(name(id));
      }) << "}{" << latex_polynomial(h.den(), [&](SymbolId id) { return latex_name(name(id)); }) << "}";
      out << (--left > 0 ? " \\\\\n" : "\n");
    }
    out << "\\end{align*}\n";
    return out.str();
  }
  for (const auto& [s, h] : p.solved_phantoms) out << name(s) << " = " << h.to_string(name) << "\n";
  for (const auto& c : p.components) out << p.species[c.species] << " = " << text_component(p, c, name) << "\n";
  return out.str();
}

}  // namespace crnt
