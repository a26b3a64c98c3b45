// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "crnt/io.hpp"
#include "crnt/linalg.hpp"
#include "crnt/parametrization.hpp"
#include "crnt/translation.hpp"
#include "crnt/tree_constants.hpp"
#include "crnt/verify.hpp"

#include "fixtures.hpp"
#include "random_models.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace crnt;
using namespace crnt::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

int failures = 0;

void run(int id, const std::string& title, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0) out.require(seconds < limit_seconds, "took longer than " + std::to_string(limit_seconds) + " s");
  if (!out.ok) ++failures;
  std::printf("%s criterion %d: %s (%.3f s)%s%s\n", out.ok ? "PASS" : "FAIL", id, title.c_str(), seconds,
              out.detail.empty() ? "" : " -- ", out.detail.c_str());
  std::fflush(stdout);
}

RationalFunction expr(const SymbolTable& symbols, const std::string& text) {
  return parse_expression(text, [&](const std::string& n) { return symbols.find(n).value(); });
}

Gcrn pipeline(const std::string& stem) {
  const auto net = translated(stem).network;
  return redirect(net, default_vstar(net)).network;
}

std::vector<Gcrn> fixture_networks() {
  std::vector<Gcrn> out;
  for (const auto& stem : {"histidine", "envz", "wnt", "example"}) out.push_back(gcrn_fixture(stem));
  for (const auto& stem : {"histidine", "envz", "wnt"}) out.push_back(pipeline(stem));
  return out;
}

// A reference WNT parametrization in its own vertex numbering: x_s is a
// quotient of tree constants times a monomial in three taus.
struct ReferenceComponent {
  std::vector<VertexId> num, den;
  std::array<int, 3> tau;
};

const std::vector<ReferenceComponent>& reference_wnt() {
  static const std::vector<ReferenceComponent> rows = {
      {{3, 10, 19}, {1, 8, 18}, {1, 0, 1}},
      {{3, 10, 19}, {2, 8, 18}, {1, 0, 1}},
      {{10, 19}, {8, 18}, {1, 0, 1}},
      {{17}, {16}, {0, 0, 0}},
      {{5, 10}, {4, 11}, {1, 0, 0}},
      {{18}, {19}, {0, 0, 0}},
      {{10}, {11}, {1, 0, 0}},
      {{3, 4, 11, 12, 17, 19}, {2, 5, 8, 15, 18, 16}, {0, 0, 1}},
      {{}, {}, {0, 0, 1}},
      {{21}, {17}, {0, 0, 0}},
      {{21}, {18}, {0, 0, 0}},
      {{7, 18}, {6, 21}, {0, 1, 0}},
      {{}, {}, {0, 1, 0}},
      {{3, 10, 12, 17, 19}, {2, 8, 13, 18, 16}, {1, 0, 1}},
      {{10}, {9}, {1, 0, 1}},
      {{3, 10, 12, 17, 19}, {2, 8, 14, 18, 16}, {1, 0, 1}},
      {{}, {}, {1, 0, 1}},
      {{21}, {20}, {0, 0, 0}},
      {{21}, {22}, {0, 0, 0}},
  };
  return rows;
}

RationalMatrix reference_wnt_b() {
  RationalMatrix b = RationalMatrix::Zero(19, 3);
  const auto& rows = reference_wnt();
  for (Eigen::Index s = 0; s < 19; ++s) {
    for (Eigen::Index t = 0; t < 3; ++t) b(s, t) = rows[static_cast<std::size_t>(s)].tau[static_cast<std::size_t>(t)];
  }
  return b;
}

}  // namespace

int main() {
  run(1, "histidine kinase end to end", 1.0, [](Outcome& o) {
    const auto parsed = read_network_file(data_path("histidine.mas"));
    const auto scheme = resolve_scheme(read_scheme_file(data_path("histidine.scheme")), parsed);
    const auto t = translate(parsed.network, scheme);
    const auto net = redirect(t.network, default_vstar(t.network)).network;
    const auto p = parametrize(net);
    o.require(p.tau_count() == 1, "one tau");
    const std::string tau = p.symbols[p.tau_symbols.at(0)].name;
    const std::vector<std::string> expected = {"k4/phi", "k1*(k3+phi)*k4/(k2*phi^2*" + tau + ")", tau, "k1/phi"};
    for (std::size_t s = 0; s < expected.size(); ++s) {
      const auto got = component_expression(p, s);
      o.require(got && rf_equal(*got, expr(p.symbols, expected[s])), p.species[s] + " differs");
    }
  });

  run(2, "histidine kinase structure", 0, [](Outcome& o) {
    const auto net = translated("histidine").network;
    const auto r = structure_report(net);
    o.require(r.deficiency == 1, "delta");
    o.require(r.kinetic_deficiency && *r.kinetic_deficiency == 0, "kinetic deficiency");
    o.require(r.effective_deficiency == 0, "effective deficiency");
    o.require(r.weakly_reversible, "weak reversibility");
    o.require(theorem_main_verdict(net, {1, 2, 3}), "verdict");
  });

  run(3, "EnvZ-OmpR tree constants, phantom solution and ACR", 5.0, [](Outcome& o) {
    const auto net = pipeline("envz");
    const auto k = tree_constants_cofactor(net);
    const std::string c = "(((k9 + phi)*k14 + k9*k13)*k11 + phi*k14*k10)";
    const std::vector<std::string> table = {
        "(k4 + k5)*" + c + "*k2*k6*k8*k12",   "(k4 + k5)*" + c + "*k1*k6*k8*k12",
        "k6*" + c + "*k12*k1*k8*k3",          "(k7 + k8)*" + c + "*k5*k1*k3*k12",
        "k5*" + c + "*k12*k1*k6*k3",          "(k10 + k11)*k12*(k13 + k14)*k1*k3*k5*k6*k8",
        "k1*k12*k3*k5*k6*k8*k9*(k13 + k14)",  "(k13 + k14)*k1*k3*k5*k6*k8*phi*(k10 + k11)",
        "k1*k3*k5*k6*k8*phi*(k10 + k11)*k12",
    };
    for (std::size_t v = 0; v < table.size(); ++v) {
      const auto id = static_cast<VertexId>(v + 1);
      o.require(rf_equal(RationalFunction(k.at(id)), expr(net.symbols(), table[v])), "K" + std::to_string(id));
    }
    const auto p = parametrize(net);
    const SymbolId phi = net.symbols().find("phi").value();
    o.require(p.kinetic_deficiency == 1, "kinetic deficiency");
    o.require(p.solved_phantoms.count(phi) &&
                  rf_equal(p.solved_phantoms.at(phi), expr(net.symbols(), "k1*k3*k12/(k2*(k4+k5))")),
              "phi");
    const auto robust = detect_acr(p).robust_species();
    o.require(robust.size() == 1 && p.species[robust[0]] == "Yp", "ACR set");
  });

  run(4, "shuttled WNT structure and parametrization", 30.0, [](Outcome& o) {
    const auto net = pipeline("wnt");
    const auto r = structure_report(net);
    o.require(r.deficiency == 2, "delta");
    o.require(r.effective_deficiency == 0, "effective deficiency");
    o.require(r.kinetic_deficiency && *r.kinetic_deficiency == 0, "kinetic deficiency");
    const auto p = parametrize(net);
    o.require(p.kinetic_deficiency == 0, "kinetic deficiency of M");
    o.require(exact_rank(p.m) == 16, "rank M");
    const RationalMatrix kernel = kernel_basis(RationalMatrix(p.m.transpose()));
    o.require(kernel.cols() == 3, "dim ker M^T");
    o.require(same_column_space(kernel, reference_wnt_b()), "span of B");
    VerifyOptions v;
    v.samples = 100;
    v.tol = 1e-8;
    const auto ours = numeric_verify(net, p, v);
    o.require(ours.passed(), "emitted parametrization residuals");

    const auto fixture_net = gcrn_fixture("wnt");
    const auto k = tree_constants_cofactor(fixture_net);
    const auto reference = [&](std::span<const double> values, std::span<const double> tau) {
      std::vector<double> x;
      for (const auto& row : reference_wnt()) {
        double value = 1;
        for (VertexId i : row.num) value *= k.at(i).evaluate(values);
        for (VertexId i : row.den) value /= k.at(i).evaluate(values);
        for (std::size_t t = 0; t < 3; ++t) value *= std::pow(tau[t], row.tau[t]);
        x.push_back(value);
      }
      return x;
    };
    const auto theirs = numeric_verify(fixture_net, 3, {}, reference, v);
    std::ostringstream what;
    what << "reference parametrization residuals (ode " << theirs.max_ode << ", log-linear " << theirs.max_log_linear
         << ")";
    o.require(theirs.passed(), what.str());
  });

  run(5, "tree constants: cofactor equals enumeration", 60.0, [](Outcome& o) {
    for (const auto& net : fixture_networks()) {
      o.require(tree_constants_cofactor(net) == tree_constants_enumerate(net), "fixture");
    }
    std::mt19937 rng(2024);
    for (int i = 0; i < 200; ++i) {
      const auto net = random_strongly_connected(rng, 6);
      o.require(tree_constants_cofactor(net) == tree_constants_enumerate(net), "random digraph " + std::to_string(i));
    }
  });

  run(6, "generalized inverse identity", 0, [](Outcome& o) {
    for (const auto& net : fixture_networks()) {
      const RationalMatrix mt = build_m(net, choose_forest(net)).transpose();
      o.require(RationalMatrix(mt * generalized_inverse(mt) * mt) == mt, "fixture");
    }
    std::mt19937 rng(99);
    for (int i = 0; i < 50; ++i) {
      const int rows = 1 + static_cast<int>(rng() % 8);
      const int cols = 1 + static_cast<int>(rng() % 12);
      const RationalMatrix a = random_rational_matrix(rng, rows, cols);
      o.require(RationalMatrix(a * generalized_inverse(a) * a) == a, "random matrix " + std::to_string(i));
    }
  });

  run(7, "translation and redirection preserve the ODE", 0, [](Outcome& o) {
    for (const auto& stem : {"histidine", "envz", "wnt"}) {
      const auto parsed = read_network_file(data_path(std::string(stem) + ".mas"));
      o.require(ode_rhs(translated(stem).network) == ode_rhs(parsed.network), std::string("translate ") + stem);
    }
    for (const auto& net : fixture_networks()) {
      const auto r = redirect(net, default_vstar(net));
      o.require(ode_rhs(r.network).substitute(r.substitution) == ode_rhs(net), "redirect fixture");
    }
    std::mt19937 rng(31);
    for (int i = 0; i < 100; ++i) {
      const auto crn = random_classical(rng, 6, 8);
      const auto t = translate(crn, random_scheme(rng, crn));
      o.require(ode_rhs(t.network) == ode_rhs(crn), "random translation " + std::to_string(i));
    }
    int checked = 0;
    for (int attempt = 0; checked < 100 && attempt < 10000; ++attempt) {
      const auto net = random_generalized(rng, 6, 8);
      Redirection r;
      try {
        r = redirect(net, default_vstar(net));
      } catch (const NetworkError&) {
        continue;
      }
      ++checked;
      o.require(ode_rhs(r.network).substitute(r.substitution) == ode_rhs(net), "random redirection");
    }
    o.require(checked == 100, "100 random redirections");
  });

  run(8, "residual suite with a perturbed control", 0, [](Outcome& o) {
    VerifyOptions v;
    v.samples = 100;
    v.tol = 1e-8;
    for (const auto& net : fixture_networks()) {
      const auto p = parametrize(net);
      const auto report = numeric_verify(net, p, v);
      o.require(report.passed() && report.max_ode <= 1e-8 && report.max_complex_balance <= 1e-8 &&
                    report.max_log_linear <= 1e-8,
                "fixture residuals");
      auto perturbed = p;
      perturbed.components[0].coefficient = perturbed.components[0].coefficient * RationalFunction(Rational(101, 100));
      o.require(!numeric_verify(net, perturbed, v).passed(), "perturbed control passed");
    }
  });

  run(9, "deficiency by formula equals deficiency by intersection", 0, [](Outcome& o) {
    std::mt19937 rng(77);
    for (int i = 0; i < 100; ++i) {
      const auto net = random_classical(rng, 6, 8);
      const auto r = structure_report(net);
      const std::size_t formula = r.vertex_count - r.linkage_count - r.stoichiometric_rank;
      o.require(formula == r.deficiency, "report");
      o.require(formula == deficiency_by_intersection(net.stoichiometric_matrix(), net.incidence_matrix()),
                "random network " + std::to_string(i));
    }
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
