#include "crnt/parametrization.hpp"
#include "crnt/verify.hpp"

#include "fixtures.hpp"

#include <doctest.h>

using namespace crnt;
using namespace crnt::testing;

TEST_CASE("fixtures pass all three residuals") {
  for (const auto& stem : {"histidine", "envz", "wnt", "example"}) {
    CAPTURE(stem);
    const auto net = gcrn_fixture(stem);
    const auto report = numeric_verify(net, parametrize(net));
    CHECK(report.samples.size() == 100);
    CHECK(report.passed());
    CHECK(report.max_ode <= 1e-8);
    CHECK(report.max_complex_balance <= 1e-8);
    CHECK(report.max_log_linear <= 1e-9);
  }
}

TEST_CASE("a perturbed coefficient fails") {
  const auto net = gcrn_fixture("histidine");
  auto p = parametrize(net);
  p.components[0].coefficient = p.components[0].coefficient * RationalFunction(Rational(101, 100));
  const auto report = numeric_verify(net, p);
  CHECK_FALSE(report.passed());
  CHECK(report.failures == 100);
}

TEST_CASE("a wrong tau exponent fails") {
  const auto net = gcrn_fixture("histidine");
  auto p = parametrize(net);
  p.components[2].tau_exponents[0] = 2;
  CHECK_FALSE(numeric_verify(net, p).passed());
}

TEST_CASE("zero samples pass trivially") {
  const auto net = gcrn_fixture("histidine");
  VerifyOptions o;
  o.samples = 0;
  const auto report = numeric_verify(net, parametrize(net), o);
  CHECK(report.samples.empty());
  CHECK(report.passed());
}

TEST_CASE("sampling is deterministic in the seed") {
  const auto net = gcrn_fixture("envz");
  const auto p = parametrize(net);
  VerifyOptions o;
  o.samples = 10;
  const auto a = numeric_verify(net, p, o);
  const auto b = numeric_verify(net, p, o);
  CHECK(a.max_ode == b.max_ode);
  o.seed = 43;
  const auto c = numeric_verify(net, p, o);
  CHECK(c.passed());
}
