#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "w2n/wgen.hpp"

using namespace w2n;

TEST_CASE("screening sets per realization") {
  RootData rd30 = RootData::build(3, 0);
  auto s30 = build_first_screenings(rd30);
  REQUIRE(s30.size() == 3);
  CHECK(s30[0].name == "E2");
  CHECK(s30[1].name == "E1");
  CHECK(s30[2].name == "Psi");
  CHECK(s30[2].type == Screening::kind::fermionic);

  RootData rd42 = RootData::build(4, 2);
  auto s42 = build_first_screenings(rd42);
  REQUIRE(s42.size() == 4);
  CHECK(s42[0].name == "E1");
  CHECK(s42[1].name == "Psi+");
  CHECK(s42[2].name == "Psi-");
  CHECK(s42[3].name == "E-1");

  RootData rd21 = RootData::build(2, 1);
  auto s21 = build_first_screenings(rd21);
  REQUIRE(s21.size() == 2);
  CHECK(s21[0].name == "Psi+");
  CHECK(s21[1].name == "Psi-");
}

TEST_CASE("second screenings") {
  RootData rd40 = RootData::build(4, 0);
  auto ss = build_second_screenings(rd40, RatK::one(), RatK(-1));
  REQUIRE(ss.size() == 3);
  CHECK(ss[0].name == "S4,3");
  CHECK(ss[2].name == "S4,1");

  RootData rd31 = RootData::build(3, 1);
  auto s31 = build_second_screenings(rd31, RatK::one(), RatK(-1));
  REQUIRE(s31.size() == 2);
  CHECK(s31.back().name == "S3,0");
  CHECK(s31.back().type == Screening::kind::dressed);
  CHECK_THROWS_AS(build_second_screenings(rd31, RatK::one(), RatK::one()), const error&);
}

TEST_CASE("bosonic screenings annihilate the xi exponential") {
  RootData rd = RootData::build(3, 0);
  auto ss = build_first_screenings(rd);
  VertexField exi = field_exponential(rd, distinguished_momenta(rd).xi);
  for (const auto& s : ss) {
    if (s.type != Screening::kind::bosonic) continue;
    auto res = commutes(s, exi, rd, commute_mode::strict_pole);
    CHECK(res.commutes);
    CHECK(res.condition == "first-order pole");
  }
}

TEST_CASE("first screenings commute with the generators (strict pole statements)") {
  for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 0}, {2, 1}, {3, 0}, {3, 1}}) {
    RootData rd = RootData::build(n, m);
    GeneratorSet g = generators_recursive(rd);
    auto ss = build_first_screenings(rd);
    for (const auto& s : ss) {
      for (const auto* f : {&g.E, &g.H, &g.F, &g.T}) {
        auto strict = commutes(s, *f, rd, commute_mode::strict_pole);
        INFO("n=" << n << " m=" << m << " " << s.name << " vs field; condition "
                  << strict.condition << "; witness " << render_text(rd, strict.witness));
        CHECK(strict.commutes);
        auto td = commutes(s, *f, rd, commute_mode::total_derivative);
        CHECK(td.commutes);
      }
    }
  }
}

TEST_CASE("individual pole conditions behind the recursion") {
  // Psi- against F_{3[1]} carries the second-order-pole condition.
  RootData rd = RootData::build(3, 1);
  GeneratorSet g = generators_recursive(rd);
  auto ss = build_first_screenings(rd);
  for (const auto& s : ss) {
    auto res = commutes(s, g.F, rd, commute_mode::strict_pole);
    CHECK(res.commutes);
    if (s.name == "Psi-") CHECK(res.condition == "second-order pole");
    if (s.name == "Psi+") CHECK(res.condition == "normal-ordered term");
    if (s.name == "E1") CHECK(res.condition == "first-order pole");
  }
}

TEST_CASE("weight-1 and weight-2 commutants") {
  RootData rd = RootData::build(3, 0);
  auto ss = build_first_screenings(rd);

  auto w1 = commutant_at_weight(ss, 1, rd);
  REQUIRE(w1.size() == 1);
  // spanned by H up to scale: proportional coefficient vectors
  VertexField h = h_current(rd);
  RatK ratio;
  bool first = true, proportional = true;
  for (const auto& [mono, c] : h.poly.terms()) {
    RatK other = w1[0].poly.coeff(mono);
    if (first) {
      ratio = other / c;
      first = false;
    } else if (other != ratio * c) {
      proportional = false;
    }
  }
  CHECK(proportional);
  CHECK(w1[0].poly.terms().size() == h.poly.terms().size());

  auto w2 = commutant_at_weight(ss, 2, rd);
  CHECK(w2.size() == 3);

  // empty screening set: all currents commute
  auto all = commutant_at_weight({}, 1, rd);
  CHECK(all.size() == 4);
}

TEST_CASE("dressed screening coefficients") {
  RootData rd = RootData::build(2, 1);
  auto [a, b] = solve_dressed_coefficients(rd);
  CHECK(a == RatK::one());
  GeneratorSet g = generators_recursive(rd);
  auto ss = build_second_screenings(rd, a, b);
  for (const auto& s : ss)
    for (const auto* f : {&g.E, &g.H, &g.F}) {
      auto res = commutes(s, *f, rd, commute_mode::total_derivative);
      INFO(s.name << " witness " << render_text(rd, res.witness));
      CHECK(res.commutes);
    }
}

TEST_CASE("second screenings commute at (3,0) and (3,1)") {
  {
    RootData rd = RootData::build(3, 0);
    GeneratorSet g = generators_recursive(rd);
    for (const auto& s : build_second_screenings(rd, RatK::one(), RatK(-1)))
      for (const auto* f : {&g.E, &g.H, &g.F}) {
        auto res = commutes(s, *f, rd, commute_mode::total_derivative);
        INFO(s.name << " witness " << render_text(rd, res.witness));
        CHECK(res.commutes);
      }
  }
  {
    RootData rd = RootData::build(3, 1);
    GeneratorSet g = generators_recursive(rd);
    auto [a, b] = solve_dressed_coefficients(rd);
    for (const auto& s : build_second_screenings(rd, a, b))
      for (const auto* f : {&g.E, &g.H, &g.F}) {
        auto res = commutes(s, *f, rd, commute_mode::total_derivative);
        INFO(s.name << " witness " << render_text(rd, res.witness));
        CHECK(res.commutes);
      }
  }
}
