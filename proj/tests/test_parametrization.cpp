#include "crnt/io.hpp"
#include "crnt/linalg.hpp"
#include "crnt/parametrization.hpp"
#include "crnt/verify.hpp"

#include "fixtures.hpp"
#include "random_models.hpp"

#include <doctest.h>

using namespace crnt;
using namespace crnt::testing;

namespace {

RationalFunction expr(const Gcrn& net, const std::string& text, const Parametrization* p = nullptr) {
  return parse_expression(text, [&](const std::string& n) {
    if (p) return p->symbols.find(n).value();
    return symbol(net, n);
  });
}

Gcrn redirected(const Gcrn& net) { return redirect(net, default_vstar(net)).network; }

}  // namespace

TEST_CASE("histidine parametrization") {
  const auto net = redirected(translated("histidine").network);
  const auto p = parametrize(net);
  CHECK(p.kinetic_deficiency == 0);
  CHECK(p.x_equals_zbar);
  CHECK(p.m == int_matrix({{-1, 0, -1}, {1, 0, 0}, {1, 0, 0}, {0, 1, 1}}));
  CHECK(p.h == int_matrix({{0, 1, -1}, {1, 1, -1}, {0, 0, 0}, {0, 1, 0}}));
  CHECK(p.b == int_matrix({{0}, {-1}, {1}, {0}}));
  REQUIRE(p.tau_count() == 1);
  CHECK(p.free_phantoms == std::vector<SymbolId>{symbol(net, "phi")});
  CHECK(p.solved_phantoms.empty());

  const auto tau = p.symbols[p.tau_symbols[0]].name;
  const std::vector<std::string> expected = {"k4/phi", "k1*(k3+phi)*k4/(k2*phi^2*" + tau + ")", tau, "k1/phi"};
  for (std::size_t s = 0; s < 4; ++s) {
    CAPTURE(s);
    const auto got = component_expression(p, s);
    REQUIRE(got);
    CHECK(rf_equal(*got, expr(net, expected[s], &p)));
  }
  CHECK(detect_acr(p).robust_species().empty());
}

TEST_CASE("single reversible reaction") {
  const auto net = parse_network("@mas\nA <-> B ; k1, k2\n").network;
  const auto p = parametrize(net);
  REQUIRE(p.tau_count() == 1);
  const auto a = component_expression(p, 0);
  const auto b = component_expression(p, 1);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(rf_equal(*b / *a, expr(net, "k1/k2")));
}

TEST_CASE("inflow and outflow give a robust species") {
  const auto net = parse_network("@mas\n0 <-> A ; k1, k2\n").network;
  const auto p = parametrize(net);
  CHECK(p.tau_count() == 0);
  const auto acr = detect_acr(p);
  REQUIRE(acr.robust_species() == std::vector<SpeciesIndex>{0});
  REQUIRE(acr.entries[0].value);
  CHECK(rf_equal(*acr.entries[0].value, expr(net, "k1/k2")));
}

TEST_CASE("EnvZ solves its kinetic-deficiency condition") {
  const auto net = redirected(translated("envz").network);
  const auto p = parametrize(net);
  CHECK(p.kinetic_deficiency == 1);
  CHECK(p.x_equals_zbar);
  REQUIRE(p.conditions.size() == 1);
  const bool expected = rf_equal(p.conditions[0], expr(net, "k2*(k4+k5)*phi/(k1*k3*k12)")) ||
                         rf_equal(p.conditions[0], expr(net, "k1*k3*k12/(k2*(k4+k5)*phi)"));
  CHECK(expected);
  REQUIRE(p.solved_phantoms.size() == 1);
  CHECK(p.free_phantoms.empty());
  CHECK(rf_equal(p.solved_phantoms.at(symbol(net, "phi")), expr(net, "k1*k3*k12/(k2*(k4+k5))")));
  CHECK(p.tau_count() == 2);
  const auto robust = detect_acr(p).robust_species();
  REQUIRE(robust.size() == 1);
  CHECK(p.species[robust[0]] == "Yp");
  CHECK(numeric_verify(net, p).passed());
}

TEST_CASE("WNT parametrization") {
  const auto net = redirected(translated("wnt").network);
  const auto r = structure_report(net);
  CHECK(r.deficiency == 2);
  CHECK(r.effective_deficiency == 0);
  const auto p = parametrize(net);
  CHECK(p.kinetic_deficiency == 0);
  CHECK(p.x_equals_zbar);
  CHECK(exact_rank(p.m) == 16);
  CHECK(p.b.cols() == 3);
  CHECK(p.free_phantoms.size() == 2);
  CHECK(numeric_verify(net, p).passed());
}

TEST_CASE("structural identities of M, H, B and C") {
  for (const auto& stem : {"histidine", "envz", "wnt", "example"}) {
    CAPTURE(stem);
    const auto p = parametrize(gcrn_fixture(stem));
    const RationalMatrix mt = p.m.transpose();
    CHECK(RationalMatrix(mt * p.h * mt) == mt);
    CHECK(RationalMatrix(mt * p.b).isZero());
    if (p.c.cols() > 0) CHECK(RationalMatrix(p.m * p.c).isZero());
    CHECK(static_cast<std::size_t>(p.b.cols()) == p.species.size() - static_cast<std::size_t>(exact_rank(p.m)));
  }
}

TEST_CASE("another generalized inverse gives the same equilibria") {
  std::mt19937 rng(17);
  int changed = 0;
  for (const auto& stem : {"histidine", "wnt", "example"}) {
    CAPTURE(stem);
    const auto net = gcrn_fixture(stem);
    const auto p = parametrize(net);
    const RationalMatrix mt = p.m.transpose();
    // sparse +-1 entries keep the exponents, and so the expanded coefficients, small
    RationalMatrix w = RationalMatrix::Zero(p.h.rows(), p.h.cols());
    for (int t = 0; t < 3; ++t) w(rng() % w.rows(), rng() % w.cols()) = rng() % 2 ? 1 : -1;
    const RationalMatrix id = RationalMatrix::Identity(p.h.rows(), p.h.rows());
    ParametrizeOptions options;
    options.h = RationalMatrix(p.h + (id - p.h * mt) * w);
    CHECK(RationalMatrix(mt * *options.h * mt) == mt);
    if (*options.h == p.h) continue;
    ++changed;
    const auto q = parametrize(net, options);
    VerifyOptions v;
    v.samples = 20;
    CHECK(numeric_verify(net, q, v).passed());
  }
  CHECK(changed > 0);
}

TEST_CASE("refusals") {
  const auto classical = read_network_file(data_path("histidine.mas")).network;
  CHECK_THROWS_AS(parametrize(classical), AnalysisError);
  CHECK_THROWS_AS(parametrize_zero(redirected(translated("envz").network)), AnalysisError);
  CHECK_THROWS_AS(parametrize_positive_deficiency(gcrn_fixture("histidine")), AnalysisError);

  // Deficiency one, weakly reversible, no phantom edges to absorb the condition.
  const auto triangle = parse_network("@mas\n2A <-> A + B ; k1, k2\nA + B <-> 2B ; k3, k4\n2B -> 2A ; k5\n").network;
  try {
    parametrize(triangle);
    FAIL("expected ConditionNotSolvable");
  } catch (const ConditionNotSolvable& e) {
    CHECK(e.conditions().size() == 1);
  }
}

TEST_CASE("emitters") {
  const auto net = redirected(translated("envz").network);
  const auto p = parametrize(net);
  const auto json = emit(p, EmitFormat::Json);
  CHECK(json == emit(parametrize(net), EmitFormat::Json));
  CHECK(json.find("\"solved_phantoms\"") != std::string::npos);
  CHECK(json.find("\"phi\": \"") != std::string::npos);
  const auto latex = emit(p, EmitFormat::Latex);
  CHECK(latex.find("\\frac") != std::string::npos);
  CHECK(latex.find("\\phi") != std::string::npos);
  CHECK(emit(p, EmitFormat::Text).find("phi = ") == 0);

  const auto empty = parametrize(Gcrn());
  CHECK(empty.components.empty());
  CHECK(emit(empty, EmitFormat::Json).find("\"components\": []") != std::string::npos);
}

TEST_CASE("fractional exponents become radicals") {
  // 2A <-> 0: M = [-2], H = [-1/2].
  const auto net = parse_network("@mas\n2A <-> 0 ; k1, k2\n").network;
  const auto p = parametrize(net);
  REQUIRE(p.components.size() == 1);
  CHECK_FALSE(p.components[0].radicals.empty());
  CHECK_FALSE(component_expression(p, 0));
  CHECK(numeric_verify(net, p).passed());
}
