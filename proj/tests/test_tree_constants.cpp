#include "crnt/io.hpp"
#include "crnt/tree_constants.hpp"

#include "fixtures.hpp"
#include "random_models.hpp"

#include <doctest.h>

using namespace crnt;
using namespace crnt::testing;

namespace {

Polynomial expr(const Gcrn& net, const std::string& text) {
  const auto f = parse_expression(text, [&](const std::string& n) { return symbol(net, n); });
  REQUIRE(f.is_polynomial());
  return f.num() * (Rational(1) / f.den().constant_value());
}

}  // namespace

TEST_CASE("histidine tree constants") {
  const auto net = gcrn_fixture("histidine");
  const auto k = tree_constants_cofactor(net);
  CHECK(k.at(1) == expr(net, "k2*k4*phi"));
  CHECK(k.at(2) == expr(net, "k1*(k3+phi)*k4"));
  CHECK(k.at(3) == expr(net, "k1*k2*k4"));
  CHECK(k.at(4) == expr(net, "k1*k2*phi"));
  CHECK(k == tree_constants_enumerate(net));
}

TEST_CASE("EnvZ tree constants match the reference table") {
  const auto net = gcrn_fixture("envz");
  const auto k = tree_constants_cofactor(net);
  const std::string common = "(((k9 + phi)*k14 + k9*k13)*k11 + phi*k14*k10)";
  CHECK(k.at(1) == expr(net, "(k4 + k5)*" + common + "*k2*k6*k8*k12"));
  CHECK(k.at(2) == expr(net, "(k4 + k5)*" + common + "*k1*k6*k8*k12"));
  CHECK(k.at(3) == expr(net, "k6*" + common + "*k12*k1*k8*k3"));
  CHECK(k.at(4) == expr(net, "(k7 + k8)*" + common + "*k5*k1*k3*k12"));
  CHECK(k.at(5) == expr(net, "k5*" + common + "*k12*k1*k6*k3"));
  CHECK(k.at(6) == expr(net, "(k10 + k11)*k12*(k13 + k14)*k1*k3*k5*k6*k8"));
  CHECK(k.at(7) == expr(net, "k1*k12*k3*k5*k6*k8*k9*(k13 + k14)"));
  CHECK(k.at(8) == expr(net, "(k13 + k14)*k1*k3*k5*k6*k8*phi*(k10 + k11)"));
  CHECK(k.at(9) == expr(net, "k1*k3*k5*k6*k8*phi*(k10 + k11)*k12"));
}

TEST_CASE("WNT tree constants match the reference table") {
  const auto net = gcrn_fixture("wnt");
  const auto k = tree_constants_cofactor(net);
  const std::map<VertexId, std::string> table = {
      {1, "k2*k4"},
      {2, "k1*k4"},
      {3, "k1*k3"},
      {4, "k6"},
      {5, "k5"},
      {6, "k8"},
      {7, "k7"},
      {8, "(k10+k11)*k12*k14"},
      {9, "k9*k12*k14"},
      {10, "k9*k11*(k13+k14)"},
      {11, "k9*k11*k12"},
      {12, "(k16+k17)*k18*k20"},
      {13, "k15*k18*k20"},
      {14, "k15*k17*(k19+k20)"},
      {15, "k15*k17*k18"},
      {16, "(k22+k23)*k24*k30*((k28+phi2+k31)*k26+k25*(k28+k31))*phi1"},
      {17, "k21*(k22+k23)*k24*k30*((k28+phi2+k31)*k26+k25*(k28+k31))"},
      {18, "k21*(k22+k23)*k24*(k25+k26)*k27*k30"},
      {19, "k21*(k22+k23)*(k25+k26)*k27*k30*phi2"},
      {20, "k21*k24*k30*((k28+phi2+k31)*k26+k25*(k28+k31))*phi1"},
      {21, "((((k28+phi2+k31)*k29+(phi1+k27)*k31+phi2*k27+phi1*(phi2+k28))*k26+k25*((k28+k31)*k29+(phi1+k27)*k31+"
           "phi1*k28))*k23+k22*(((k28+phi2+k31)*k29+k27*(k31+phi2))*k26+k25*((k28+k31)*k29+k31*k27)))*k24*k21"},
      {22, "k21*(k22+k23)*k24*k27*k30*phi2"},
  };
  for (const auto& [v, text] : table) {
    CAPTURE(v);
    CHECK(k.at(v) == expr(net, text));
  }
}

TEST_CASE("cofactor and enumeration agree on the fixtures") {
  for (const auto& stem : {"histidine", "envz", "wnt", "example"}) {
    CAPTURE(stem);
    const auto net = gcrn_fixture(stem);
    CHECK(tree_constants_cofactor(net) == tree_constants_enumerate(net));
  }
}

TEST_CASE("cofactor and enumeration agree on random strongly connected digraphs") {
  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto net = random_strongly_connected(rng);
    const auto k = tree_constants_cofactor(net);
    CHECK(k == tree_constants_enumerate(net));
    for (const auto& [v, p] : k) {
      CHECK(p.has_positive_coefficients());
      CHECK(p.is_multilinear());
      CHECK(p.total_degree() == net.vertex_count() - 1);
    }
  }
}

TEST_CASE("tree constants refuse networks that are not weakly reversible") {
  const auto net = read_network_file(data_path("histidine.mas")).network;
  CHECK_THROWS_AS(tree_constants_cofactor(net), AnalysisError);
  CHECK_THROWS_AS(tree_constants_enumerate(net), AnalysisError);
}

TEST_CASE("kappa quotients along the star forest") {
  const auto net = gcrn_fixture("histidine");
  const auto k = tree_constants_cofactor(net);
  const auto forest = choose_forest(net);
  REQUIRE(forest.edges.size() == 3);
  const auto q = kappa(k, forest);
  const auto f = kappa_factored(k, forest);
  for (std::size_t e = 0; e < q.size(); ++e) CHECK(rf_equal(q[e], f[e].expand()));
  CHECK(rf_equal(q[0], RationalFunction(k.at(2), k.at(1))));
}
