#include "crnt/io.hpp"

#include "fixtures.hpp"
#include "random_models.hpp"

#include <doctest.h>

using namespace crnt;
using namespace crnt::testing;

namespace {

bool isomorphic(const Gcrn& a, const Gcrn& b) {
  if (a.species() != b.species() || a.vertex_count() != b.vertex_count() || a.edges().size() != b.edges().size()) {
    return false;
  }
  for (const auto& v : a.vertices()) {
    if (!b.has_vertex(v.id) || b.vertex(v.id).stoich != v.stoich || b.vertex(v.id).kinetic != v.kinetic) return false;
  }
  for (std::size_t i = 0; i < a.edges().size(); ++i) {
    const auto& x = a.edges()[i];
    const auto& y = b.edges()[i];
    if (x.source != y.source || x.target != y.target || x.kind != y.kind ||
        a.symbols()[x.label].name != b.symbols()[y.label].name) {
      return false;
    }
  }
  return true;
}

ParseError parse_failure(const std::string& text) {
  try {
    parse_network(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError(0, 0, "");
}

}  // namespace

TEST_CASE("classical files") {
  const auto p = read_network_file(data_path("envz.mas"));
  CHECK(p.classical);
  CHECK(p.network.species_count() == 9);
  CHECK(p.network.edges().size() == 14);
  CHECK(p.network.is_classical());
  CHECK(p.line_edges.size() == 9);

  const auto single = parse_network("@mas\nX -> 0 ; k1\n");
  CHECK(single.network.edges().size() == 1);
  CHECK(single.network.vertex(2).stoich.is_zero());
}

TEST_CASE("round trip through the renderer") {
  for (const auto& stem : {"histidine", "envz", "wnt", "example"}) {
    CAPTURE(stem);
    const auto net = gcrn_fixture(stem);
    CHECK(isomorphic(parse_network(render_network(net)).network, net));
  }
  for (const auto& stem : {"histidine", "envz", "wnt"}) {
    const auto net = translated(stem).network;
    CHECK(isomorphic(parse_network(render_network(net)).network, net));
  }
  std::mt19937 rng(13);
  for (int i = 0; i < 50; ++i) {
    const auto net = random_generalized(rng);
    CHECK(isomorphic(parse_network(render_network(net)).network, net));
  }
}

TEST_CASE("parse errors carry positions") {
  const auto empty = parse_failure("@mas\nX -> ; k1\n");
  CHECK(empty.line() == 2);
  CHECK(empty.column() == 6);

  CHECK(parse_failure("@mas\nX -> Y\n").line() == 2);
  CHECK(parse_failure("@species A\n@mas\nA -> B ; k1\n").line() == 3);
  CHECK(parse_failure("@mas\nX -> Y ; k1\n@gcrn\n").line() == 3);
  CHECK(parse_failure("@gcrn\nv1:[X | X] -> v2:[Y | Y] ; k1\nv1:[Y | Y] -> v2 ; k2\n").line() == 3);
  CHECK(parse_failure("@gcrn\nv1:[X | X] -> v2:[Y | Y] ; phantom p\n").line() == 2);
  CHECK(parse_failure("X -> Y ; k1\n").line() == 1);
}

TEST_CASE("CRLF input") {
  const auto p = parse_network("@mas\r\nX <-> Y ; k1, k2\r\n");
  CHECK(p.network.edges().size() == 2);
}

TEST_CASE("values section") {
  const auto p = parse_network("@mas\nX -> Y ; k1\n@values k1=0.5\n");
  CHECK(p.values.at("k1") == doctest::Approx(0.5));
}

TEST_CASE("scheme files") {
  const auto parsed = read_network_file(data_path("histidine.mas"));
  const auto file = read_scheme_file(data_path("histidine.scheme"));
  CHECK(file.entries.size() == 3);
  REQUIRE(file.phantoms.size() == 1);
  CHECK(file.phantoms[0].source == 3);
  const auto scheme = resolve_scheme(file, parsed);
  REQUIRE(scheme.added.size() == 4);
  CHECK(scheme.added[1].is_zero());

  // A reaction without an entry is reported by id.
  try {
    resolve_scheme(parse_scheme("r1: + Y\n"), parsed);
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("r2") != std::string::npos);
  }
  CHECK_THROWS_AS(resolve_scheme(parse_scheme("r9: + Y\nl1: + 0\nl2: + 0\nl3: + 0\n"), parsed), std::invalid_argument);
  CHECK_THROWS_AS(resolve_scheme(parse_scheme("l1: + Q\nl2: + 0\nl3: + 0\n"), parsed), std::invalid_argument);
  CHECK_THROWS_AS(parse_scheme("r1: + +\n"), ParseError);
}

TEST_CASE("expressions") {
  std::map<std::string, SymbolId> ids{{"a", 0}, {"b", 1}, {"c", 2}};
  auto lookup = [&](const std::string& n) { return ids.at(n); };
  const auto a = Polynomial::variable(0);
  const auto b = Polynomial::variable(1);
  CHECK(rf_equal(parse_expression("a*(b+c)/(2*a)", lookup), RationalFunction(b + Polynomial::variable(2), 2)));
  CHECK(rf_equal(parse_expression("a^2 - b^-1", lookup), RationalFunction(a * a * b - 1, b)));
  CHECK(rf_equal(parse_expression("0.25*a", lookup), RationalFunction(a * Rational(1, 4))));
  CHECK(rf_equal(parse_expression("010*a", lookup), RationalFunction(a * 10)));
  CHECK(rf_equal(parse_expression("-(a)^(-1)", lookup), RationalFunction(-1, a)));
  CHECK_THROWS_AS(parse_expression("a +", lookup), ParseError);
  CHECK_THROWS_AS(parse_expression("a / 0", lookup), std::exception);
}
