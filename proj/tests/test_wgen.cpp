#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "w2n/wgen.hpp"

using namespace w2n;

#include "frozen_polys.hpp"

using namespace w2n::frozen;


TEST_CASE("recursion exactness: P_2, P_3, P_4") {
  RootData rd = RootData::build(5, 0);  // plenty of positive labels
  CHECK(p_poly(rd, 1, 0) == WickPoly::current(rd.index_q_plus()));
  CHECK(p_poly(rd, 2, 0) == expected_p2(rd, 0));
  CHECK(p_poly(rd, 2, 1) == expected_p2(rd, 1));
  CHECK(p_poly(rd, 3, 0) == expected_p3(rd, 0));
  CHECK(p_poly(rd, 4, 0) == expected_p4(rd));
  // leading derivative coefficient of P_4 is (k+3)^3
  RootData rd4 = RootData::build(4, 0);
  WickPoly p4 = p_poly(rd4, 4, 0);
  RatK c = RatK::k_plus(3);
  CHECK(p4.coeff(DiffMono::current(rd4.index_q_plus(), 3)) == c * c * c);
}

TEST_CASE("generator displays for the low-rank realizations") {
  // sl2 symmetric: E = Q- e^{Xi}, F = Q+ e^{-Xi}
  RootData rd21 = RootData::build(2, 1);
  GeneratorSet g21 = generators_recursive(rd21);
  CHECK(g21.E.poly == WickPoly::current(rd21.index_q_minus()));
  CHECK(g21.F.poly == WickPoly::current(rd21.index_q_plus()));

  // sl2 asymmetric: F = -(A_1 Q + Q Q + (k+1) dQ) e^{-Xi}
  RootData rd20 = RootData::build(2, 0);
  GeneratorSet g20 = generators_recursive(rd20);
  CHECK(g20.E.poly == WickPoly::unit());
  CHECK(g20.F.poly == expected_p2(rd20, 0).scaled(RatK(-1)));

  // BP asymmetric: F = -P_3 e^{-Xi}
  RootData rd30 = RootData::build(3, 0);
  GeneratorSet g30 = generators_recursive(rd30);
  CHECK(g30.F.poly == expected_p3(rd30, 0).scaled(RatK(-1)));

  // H_{3[0]} = (2k+3)/3 Y + (2/3) A1 + (1/3) A2 + Q
  WickPoly h = WickPoly::current(rd30.index_y(), 0, constants::ell(3)) +
               WickPoly::current(rd30.index_a(1), 0, RatK::ratio(2, 3)) +
               WickPoly::current(rd30.index_a(2), 0, RatK::ratio(1, 3)) +
               WickPoly::current(rd30.index_q_plus());
  CHECK(g30.H.poly == h);
}

TEST_CASE("factored form equals the recursion") {
  for (int n = 2; n <= 4; ++n)
    for (int m = 0; m <= n; ++m) {
      RootData rd = RootData::build(n, m);
      GeneratorSet a = generators_recursive(rd);
      GeneratorSet b = generators_factored(rd);
      INFO("n=" << n << " m=" << m);
      CHECK(a.E == b.E);
      CHECK(a.F == b.F);
    }
}

TEST_CASE("R currents satisfy the free-field OPE table") {
  RootData rd = RootData::build(4, 2);
  RCurrents rc = build_r_currents(rd);
  RatK one = RatK::one();
  RatK minus_kn1 = -RatK::k_plus(3);  // -k-n+1 at n=4
  auto field = [&](const WickPoly& p) { return VertexField{momentum_zero(rd), p}; };
  for (size_t i = 0; i < rc.r_plus.size(); ++i)
    for (size_t j = 0; j < rc.r_plus.size(); ++j) {
      RatK want = i == j ? one : minus_kn1 + RatK::zero();
      if (i != j) want = -RatK::k_plus(4) + RatK::one();
      CHECK(bracket(field(rc.r_plus[i]), field(rc.r_plus[j]), 2, rd).poly ==
            WickPoly::scalar(want));
    }
  for (size_t i = 0; i < rc.r_minus.size(); ++i)
    for (size_t j = 0; j < rc.r_plus.size(); ++j)
      CHECK(bracket(field(rc.r_minus[i]), field(rc.r_plus[j]), 2, rd).poly ==
            WickPoly::scalar(RatK::k_plus(4) - RatK::one()));
  // R+- against Y and Y Y = 0
  VertexField y = field_current(rd, rd.index_y());
  CHECK(bracket(field(rc.r_plus[0]), y, 2, rd).poly == WickPoly::scalar(one));
  CHECK(bracket(field(rc.r_minus[0]), y, 2, rd).poly == WickPoly::scalar(-one));
  CHECK(bracket(y, y, 2, rd).is_zero());
}

TEST_CASE("energy-momentum routes agree for m = 0") {
  for (int n = 3; n <= 4; ++n) {
    RootData rd = RootData::build(n, 0);
    GeneratorSet g = generators_recursive(rd);
    VertexField lemma = t_lemma_formula(rd);
    // reconstruct via the pole extraction used for general m
    RatK lam = constants::lambda(n, n - 3);
    VertexField pole = bracket(g.E, g.F, n - 2, rd);
    WickPoly hh = g.H.poly * g.H.poly;
    RatK alpha = RatK(n * (n - 1)) * RatK::ratio(1, 2);
    RatK beta = RatK(n) * (RatK(n - 2) * RatK::k_plus(n - 1) - RatK::one()) * RatK::ratio(1, 2);
    WickPoly t = (hh.scaled(alpha) + g.H.poly.derivative().scaled(beta) -
                  pole.poly.scaled(lam.inverse()))
                     .scaled(RatK::k_plus(n).inverse());
    INFO("n=" << n);
    CHECK(lemma.poly == t);
  }
}

TEST_CASE("ope structure for n = 2 and n = 3") {
  for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 0}, {2, 1}, {3, 0}, {3, 1}}) {
    RootData rd = RootData::build(n, m);
    auto checks = ope_structure_check(rd);
    for (const auto& c : checks) {
      INFO(c.id << ": " << c.witness);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("U currents of the low realizations") {
  // U_0 = lambda_{n-1}, U_1 = n lambda_{n-2} H
  RootData rd30 = RootData::build(3, 0);
  auto us30 = extract_u_currents(rd30);
  CHECK(us30[0].poly == WickPoly::scalar(RatK::k_plus(1) * (RatK(2) * RatK::k() + RatK(3))));
  CHECK(us30[1].poly == h_current(rd30).poly.scaled(RatK(3) * RatK::k_plus(1)));

  RootData rd21 = RootData::build(2, 1);
  auto us21 = extract_u_currents(rd21);
  CHECK(us21[0].poly == WickPoly::scalar(RatK::k()));
  CHECK(us21[1].poly == h_current(rd21).poly.scaled(RatK(2)));

  // U_1 = 4(k+2)(2k+5) H at n = 4
  RootData rd40 = RootData::build(4, 0);
  auto us40 = extract_u_currents(rd40);
  CHECK(us40[1].poly ==
        h_current(rd40).poly.scaled(RatK(4) * RatK::k_plus(2) * (RatK(2) * RatK::k() + RatK(5))));
}

TEST_CASE("identity suite") {
  auto checks = identity_suite(5);
  for (const auto& c : checks) {
    INFO(c.id << ": " << c.witness);
    CHECK(c.pass);
  }
}

TEST_CASE("primary vertices at small rank") {
  for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 0}, {2, 1}, {3, 0}, {3, 1}}) {
    RootData rd = RootData::build(n, m);
    auto checks = primary_vertices_check(rd);
    for (const auto& c : checks) {
      INFO(c.id << ": " << c.witness);
      if (c.optional_check)
        WARN(c.pass);
      else
        CHECK(c.pass);
    }
  }
}
