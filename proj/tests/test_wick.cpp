#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "w2n/wick.hpp"

using namespace w2n;

namespace {

VertexField q_minus_exp_xi(const RootData& rd) {
  auto dm = distinguished_momenta(rd);
  return field_exponential(rd, dm.xi, WickPoly::current(rd.index_q_minus()));
}

VertexField q_plus_exp_minus_xi(const RootData& rd) {
  auto dm = distinguished_momenta(rd);
  return field_exponential(rd, momentum_scale(RatK(-1), dm.xi), WickPoly::current(rd.index_q_plus()));
}

VertexField random_field(const RootData& rd, std::mt19937& rng, int max_weight, const Momentum& p) {
  std::uniform_int_distribution<int> coef(-3, 3), wt(0, max_weight), pick(0, 100);
  WickPoly poly;
  auto monos2 = monomials_of_weight(rd, 2);
  auto monos1 = monomials_of_weight(rd, 1);
  for (const auto& m : monos1)
    if (pick(rng) < 25) poly.add_term(m, RatK(coef(rng)));
  if (max_weight >= 2)
    for (const auto& m : monos2)
      if (pick(rng) < 12) poly.add_term(m, RatK(coef(rng)));
  if (poly.is_zero()) poly = WickPoly::unit();
  return field_exponential(rd, p, poly);
}

} // namespace

TEST_CASE("Y has vanishing OPE with itself") {
  RootData rd = RootData::build(3, 0);
  VertexField y = field_current(rd, rd.index_y());
  LaurentOPE o = ope(y, y, 2, rd);
  for (const auto& [j, c] : o.coeffs)
    if (j > 0) CHECK(c.is_zero());  // no singular part

  VertexField y2 = bracket(y, y, 2, rd);
  CHECK(y2.is_zero());
}

TEST_CASE("sl2 symmetric realization: E F OPE") {
  // E = Q- e^{Xi}, F = Q+ e^{-Xi}:
  // E(z) F(w) = k/(z-w)^2 + (Q+ - Q- + kY)/(z-w)
  RootData rd = RootData::build(2, 1);
  VertexField e = q_minus_exp_xi(rd);
  VertexField f = q_plus_exp_minus_xi(rd);

  LaurentOPE o = ope(e, f, 1, rd);
  CHECK(o.offset == RatK::zero());

  VertexField pole2 = o.coeff_at_pole(2, rd);
  CHECK(pole2.poly == WickPoly::scalar(RatK::k()));

  WickPoly want = WickPoly::current(rd.index_q_plus()) +
                  WickPoly::current(rd.index_q_minus(), 0, RatK(-1)) +
                  WickPoly::current(rd.index_y(), 0, RatK::k());
  CHECK(o.coeff_at_pole(1, rd).poly == want);
  CHECK(o.coeff_at_pole(3, rd).is_zero());
}

TEST_CASE("H H OPE carries ell_n") {
  // H_{3[0]} = ell_3 Y + (2/3)A1 + (1/3)A2 + Q
  RootData rd = RootData::build(3, 0);
  WickPoly h = WickPoly::current(rd.index_y(), 0, constants::ell(3)) +
               WickPoly::current(rd.index_a(1), 0, RatK::ratio(2, 3)) +
               WickPoly::current(rd.index_a(2), 0, RatK::ratio(1, 3)) +
               WickPoly::current(rd.index_q_plus());
  VertexField hf{momentum_zero(rd), h};
  LaurentOPE o = ope(hf, hf, 0, rd);
  CHECK(o.coeff_at_pole(2, rd).poly == WickPoly::scalar(constants::ell(3)));
  CHECK(o.coeff_at_pole(1, rd).is_zero());
}

TEST_CASE("derivative of exponentials and dressed fields") {
  RootData rd = RootData::build(3, 0);
  auto dm = distinguished_momenta(rd);
  VertexField exi = field_exponential(rd, dm.xi);

  // d e^{Xi} = Y e^{Xi}
  VertexField d = derivative(exi, rd);
  CHECK(d.poly == WickPoly::current(rd.index_y()));

  // d identity = 0
  CHECK(derivative(field_identity(rd), rd).is_zero());

  // d(Q e^{-Xi}) = (dQ - QY) e^{-Xi}
  VertexField qe = field_exponential(rd, momentum_scale(RatK(-1), dm.xi), WickPoly::current(rd.index_q_plus()));
  VertexField dq = derivative(qe, rd);
  WickPoly want = WickPoly::current(rd.index_q_plus(), 1);
  want.add_term(DiffMono::current(rd.index_q_plus()).times(DiffMono::current(rd.index_y())), RatK(-1));
  CHECK(dq.poly == want);
}

TEST_CASE("normal products") {
  RootData rd = RootData::build(3, 0);
  auto dm = distinguished_momenta(rd);
  VertexField exi = field_exponential(rd, dm.xi);
  VertexField emxi = field_exponential(rd, momentum_scale(RatK(-1), dm.xi));

  // :e^{Xi} e^{-Xi}: has weight-0 part 1
  VertexField np = normal_product(exi, emxi, rd);
  CHECK(np.poly.weight_component(0) == WickPoly::unit());

  // :identity F: = F
  VertexField f = field_exponential(rd, momentum_scale(RatK(-1), dm.xi), WickPoly::current(rd.index_a(1)));
  CHECK(normal_product(field_identity(rd), f, rd) == f);

  // footnote mechanism: :e^{(psi,phi)} Q: = 0
  Momentum psi = momentum_basis(rd, rd.index_q_plus());
  VertexField epsi = field_exponential(rd, psi);
  VertexField q = field_current(rd, rd.index_q_plus());
  CHECK(normal_product(epsi, q, rd).is_zero());
}

TEST_CASE("momentum conservation and weight grading") {
  RootData rd = RootData::build(3, 1);
  std::mt19937 rng(2024);
  auto dm = distinguished_momenta(rd);
  for (int trial = 0; trial < 8; ++trial) {
    VertexField f = random_field(rd, rng, 2, dm.xi);
    VertexField g = random_field(rd, rng, 2, momentum_scale(RatK(-1), dm.xi));
    LaurentOPE o = ope(f, g, 1, rd);
    Momentum total = momentum_add(f.momentum, g.momentum);
    int wf = f.poly.max_weight(), wg = g.poly.max_weight();
    for (const auto& [j, c] : o.coeffs) {
      CHECK(c.momentum == total);
      // offset is 0 here, so relative order = actual order
      CHECK(c.poly.max_weight() <= wf + wg - j);
    }
  }
}

TEST_CASE("derivative compatibility: ope(df, g) is the formal derivative") {
  RootData rd = RootData::build(3, 1);
  std::mt19937 rng(555);
  auto dm = distinguished_momenta(rd);
  for (int trial = 0; trial < 5; ++trial) {
    VertexField f = random_field(rd, rng, 2, dm.xi);
    VertexField g = random_field(rd, rng, 1, momentum_scale(RatK(-1), dm.xi));
    LaurentOPE lhs = ope(derivative(f, rd), g, 1, rd);
    LaurentOPE rhs = ope(f, g, 2, rd);
    // d_z[ c_j (z-w)^{-j} ] contributes -j c_j (z-w)^{-j-1}; at fixed order j:
    // lhs_j = -(j-1) rhs_{j-1}
    for (int j = -1; j <= lhs.max_rel_order(); ++j) {
      VertexField want = field_scale(RatK(-(j - 1)), rhs.coeff_rel(j - 1, rd));
      CHECK(lhs.coeff_rel(j, rd).poly == want.poly);
    }
  }
}

TEST_CASE("locality: ope(g,f) re-expanded reproduces ope(f,g)") {
  // For mutually local fields, f(z)g(w) = sum_j c_j(w) t^{-j} and
  // g(w)f(z) = sum_j c'_j(z) (-t)^{-j}; re-expanding c'_j(z) about w must
  // reproduce the c_j. Equivalently c_j = sum_{u>=0} (-1)^{j+u} d^u c'_{j+u} / u!.
  RootData rd = RootData::build(2, 1);
  VertexField e = q_minus_exp_xi(rd);
  VertexField f = q_plus_exp_minus_xi(rd);
  LaurentOPE ef = ope(e, f, 3, rd);
  LaurentOPE fe = ope(f, e, 3, rd);
  for (int j = 0; j <= ef.max_rel_order(); ++j) {
    VertexField want{ef.total_momentum, WickPoly()};
    RatK ufac = RatK::one();
    for (int u = 0; j + u <= fe.max_rel_order() + 3; ++u) {
      if (u > 0) ufac = ufac * RatK(u).inverse();
      VertexField term = fe.coeff_rel(j + u, rd);
      for (int d = 0; d < u; ++d) term = derivative(term, rd);
      int sign = ((j + u) % 2 == 0) ? 1 : -1;
      want.poly += term.poly.scaled(RatK(sign) * ufac);
    }
    CHECK(ef.coeff_rel(j, rd).poly == want.poly);
  }
}

TEST_CASE("bracket identities from the recursion proofs") {
  // [V, dP]_2 = [V, P]_1 + d[V, P]_2 for randomized V, P over (4,1)
  RootData rd = RootData::build(4, 1);
  std::mt19937 rng(31337);
  auto dm = distinguished_momenta(rd);
  for (int trial = 0; trial < 4; ++trial) {
    VertexField v = random_field(rd, rng, 1, momentum_basis(rd, rd.index_q_minus()));
    VertexField p = random_field(rd, rng, 2, momentum_zero(rd));
    VertexField dp = derivative(p, rd);
    VertexField lhs = bracket(v, dp, 2, rd);
    VertexField rhs = field_add(bracket(v, p, 1, rd), derivative(bracket(v, p, 2, rd), rd));
    CHECK(lhs.poly == rhs.poly);
  }
}

TEST_CASE("total derivative solver") {
  RootData rd = RootData::build(3, 0);
  auto dm = distinguished_momenta(rd);
  VertexField exi = field_exponential(rd, dm.xi);

  // r = Y e^{Xi} -> S = e^{Xi}
  VertexField r = field_exponential(rd, dm.xi, WickPoly::current(rd.index_y()));
  auto s = total_derivative_solve(r, rd);
  REQUIRE(s.has_value());
  CHECK(*s == exi);

  // inverse of the derivative example
  VertexField qe = field_exponential(rd, momentum_scale(RatK(-1), dm.xi), WickPoly::current(rd.index_q_plus()));
  auto s2 = total_derivative_solve(derivative(qe, rd), rd);
  REQUIRE(s2.has_value());
  CHECK(*s2 == qe);

  // e^{Xi} itself is not a total derivative (weight-0 obstruction)
  CHECK_FALSE(total_derivative_solve(exi, rd).has_value());
}

TEST_CASE("specialize_k") {
  RootData rd = RootData::build(3, 0);
  RatK lam2 = constants::lambda(3, 2);
  CHECK(specialize_k(lam2, BigRat(1), rd) == RatK(10));

  // ell_3 vanishes at the excluded value k = -3/2 = -n(n-2)/(n-1); the raw
  // evaluation sees the zero, the realization-aware guard refuses the value.
  RatK ell = constants::ell(3);
  CHECK(ell.eval(bigrat_of(-3, 2)) == BigRat(0));
  CHECK_THROWS_AS(specialize_k(ell, bigrat_of(-3, 2), rd), const error&);
  CHECK_THROWS_AS(specialize_k(ell, BigRat(-3), rd), const error&);  // excluded k = -n

  VertexField f = field_exponential(rd, distinguished_momenta(rd).v_nm);
  CHECK_THROWS_AS(specialize_k(f, BigRat(-3), rd), const error&);
}

TEST_CASE("canonical text rendering") {
  RootData rd = RootData::build(3, 0);
  auto dm = distinguished_momenta(rd);
  WickPoly p2 = WickPoly::current(rd.index_a(1)) * WickPoly::current(rd.index_q_plus());
  CHECK(render_text(rd, p2.terms().begin()->first) == "A1 Q");

  VertexField f = field_exponential(rd, dm.xi, WickPoly::current(rd.index_q_plus(), 2));
  CHECK(render_text(rd, f) == "d^2(Q) exp(+Xi)");
}

TEST_CASE("nonlocal products are rejected") {
  RootData rd = RootData::build(3, 0);
  auto dm = distinguished_momenta(rd);
  VertexField v = field_exponential(rd, dm.v_nm);
  // (v, v) = (n-1)/(n(k+n)) is not an integer constant
  CHECK_THROWS_AS(normal_product(v, v, rd), const error&);
  CHECK_THROWS_AS(bracket(v, v, 1, rd), const error&);
}
