#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "w2n/wgen.hpp"

using namespace w2n;

TEST_CASE("the full coefficient table of the n = 3 algebra") {
  auto checks = bp_table_check();
  CHECK(checks.size() >= 14);
  for (const auto& c : checks) {
    INFO(c.id << ": " << c.witness);
    CHECK(c.pass);
  }
}

TEST_CASE("the n = 4 appendix tables") {
  RootData rd = RootData::build(4, 0);
  auto checks = w4_report(rd);
  int seen_literal = 0;
  for (const auto& c : checks) {
    INFO(c.id << ": " << c.witness);
    if (c.id == "w4-z-leading") {
      // The tabulated H-term coefficient 2/(3k+8) is inconsistent with the
      // verified W, Lambda and H normalizations; the unique decomposition
      // forces 20/(3k+8). Pin the documented outcome.
      ++seen_literal;
      CHECK_FALSE(c.pass);
      CHECK(c.witness.find("20/(3k+8)") != std::string::npos);
      continue;
    }
    CHECK(c.pass);
  }
  CHECK(seen_literal == 1);
}

TEST_CASE("w4 data is realization independent") {
  // The same table checks hold when the generators are built in the 4[1]
  // realization; spot-check the E F poles and the W normalization.
  RootData rd = RootData::build(4, 1);
  GeneratorSet g = generators_recursive(rd);
  LaurentOPE ef = ope(g.E, g.F, 0, rd);
  RatK want = RatK::k_plus(2) * (RatK(2) * RatK::k() + RatK(5)) * (RatK(3) * RatK::k() + RatK(8));
  CHECK(ef.coeff_at_pole(4, rd).poly == WickPoly::scalar(want));
  VertexField w = w3_current(rd, g);
  RatK ww6 = bracket(w, w, 6, rd).poly.coeff(DiffMono::unit());
  RatK want6 = RatK(2) * RatK::k_plus(4) * (RatK(2) * RatK::k() + RatK(5)) *
               (RatK(3) * RatK::k() + RatK(7)) * (RatK(5) * RatK::k() + RatK(16)) /
               (RatK(3) * RatK::k() + RatK(8));
  CHECK(ww6 == want6);
}
