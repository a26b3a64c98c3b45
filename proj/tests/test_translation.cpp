#include "crnt/io.hpp"
#include "crnt/translation.hpp"

#include "fixtures.hpp"
#include "random_models.hpp"

#include <doctest.h>

using namespace crnt;
using namespace crnt::testing;

TEST_CASE("histidine translation reproduces the generalized fixture") {
  const auto parsed = read_network_file(data_path("histidine.mas"));
  const auto t = translated("histidine");
  const auto expected = gcrn_fixture("histidine");
  REQUIRE(t.network.vertex_count() == expected.vertex_count());
  for (const auto& v : expected.vertices()) {
    CAPTURE(v.id);
    CHECK(t.network.vertex(v.id).stoich == v.stoich);
    CHECK(t.network.vertex(v.id).kinetic == v.kinetic);
  }
  const auto cert = certify(parsed.network, t.network, t.edge_map);
  CHECK(cert.reaction_vectors_preserved);
  CHECK(cert.source_complexes_related);
  CHECK(cert.difference.is_zero());
  CHECK(cert.valid());
}

TEST_CASE("EnvZ and WNT translations are certified") {
  for (const auto& stem : {"envz", "wnt"}) {
    CAPTURE(stem);
    const auto parsed = read_network_file(data_path(std::string(stem) + ".mas"));
    const auto t = translated(stem);
    CHECK(certify(parsed.network, t.network, t.edge_map).valid());
    CHECK(ode_rhs(t.network) == ode_rhs(parsed.network));
  }
}

TEST_CASE("EnvZ keeps vertices with equal stoichiometric but different kinetic complexes apart") {
  const auto net = translated("envz").network;
  CHECK(net.vertex_count() == 9);
  CHECK(net.vertex(6).stoich == net.vertex(8).stoich);
  CHECK_FALSE(net.vertex(6).kinetic == net.vertex(8).kinetic);
}

TEST_CASE("zero scheme reproduces the classical network") {
  const auto parsed = read_network_file(data_path("envz.mas"));
  TranslationScheme scheme;
  scheme.added.assign(parsed.network.edges().size(), Complex());
  const auto t = translate(parsed.network, scheme);
  CHECK(t.network.is_classical());
  CHECK(t.network.vertex_count() == parsed.network.vertex_count());
  CHECK(ode_rhs(t.network) == ode_rhs(parsed.network));
}

TEST_CASE("corrupted translations fail certification") {
  const auto parsed = read_network_file(data_path("histidine.mas"));
  const auto t = translated("histidine");
  auto map = t.edge_map;
  std::swap(map[0], map[1]);
  const auto cert = certify(parsed.network, t.network, map);
  CHECK_FALSE(cert.reaction_vectors_preserved);
  CHECK_FALSE(cert.valid());
}

TEST_CASE("bad schemes are rejected") {
  const auto parsed = read_network_file(data_path("histidine.mas"));
  TranslationScheme short_scheme;
  short_scheme.added.assign(2, Complex());
  CHECK_THROWS_AS(translate(parsed.network, short_scheme), std::invalid_argument);

  TranslationScheme bad_phantom;
  bad_phantom.added.assign(parsed.network.edges().size(), Complex());
  bad_phantom.phantoms.push_back({1, 2, std::string("phi")});
  CHECK_THROWS_AS(translate(parsed.network, bad_phantom), std::invalid_argument);
}

TEST_CASE("translation preserves the right-hand side on random networks") {
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto crn = random_classical(rng);
    const auto t = translate(crn, random_scheme(rng, crn));
    CHECK(ode_rhs(t.network) == ode_rhs(crn));
    CHECK(certify(crn, t.network, t.edge_map).valid());
  }
}
