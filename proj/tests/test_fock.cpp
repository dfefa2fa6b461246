#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "w2n/fock.hpp"
#include "w2n/wgen.hpp"

using namespace w2n;

TEST_CASE("elementary mode actions") {
  RootData rd = RootData::build(3, 0);
  auto dm = distinguished_momenta(rd);

  // annihilation kills the highest-weight vector
  FockState vac = fock_vacuum(rd, dm.xi, 4);
  CHECK(apply_current_mode(vac, rd.index_a(1), 1, rd).is_zero());

  // zero mode of Q in sector xi reads the pairing (psi, xi) = 1
  FockState z = apply_current_mode(vac, rd.index_q_plus(), 0, rd);
  CHECK(z == vac);

  // [a_1, a_{-1}] on the vacuum: contraction through the commutator
  FockState vac0 = fock_vacuum(rd, momentum_zero(rd), 4);
  FockState created = apply_current_mode(vac0, rd.index_a(1), -1, rd);
  FockState back = apply_current_mode(created, rd.index_a(2), 1, rd);
  // 1 * (a_2, a_1) * vacuum = -(k+3) vacuum
  CHECK(back == vac0.scaled(-RatK::k_plus(3)));
}

TEST_CASE("jacobi identity on sampled mode triples") {
  RootData rd = RootData::build(3, 1);
  for (const auto& c : mode_jacobi_check(rd, 25, 99)) {
    INFO(c.id);
    CHECK(c.pass);
  }
}

TEST_CASE("vertex action basics") {
  RootData rd = RootData::build(3, 0);
  auto dm = distinguished_momenta(rd);
  VertexField exi = field_exponential(rd, dm.xi);

  // lowest term of e^{Xi} acting on the vacuum is the shifted vacuum
  FockState vac0 = fock_vacuum(rd, momentum_zero(rd), 4);
  auto pm = apply_vertex(vac0, exi, 0, 2, rd);
  REQUIRE(pm.count(0) == 1);
  CHECK(pm.at(0) == fock_vacuum(rd, dm.xi, pm.at(0).cutoff));

  // d e^{Xi} = :Y e^{Xi}: as states
  VertexField dexi = derivative(exi, rd);
  FockState lhs = state_of_field(rd, dexi, 6);
  FockState want{dm.xi, {}, 6};
  want.add(CreationMono{CreationOp{rd.index_y(), -1}}, RatK::one());
  CHECK(lhs == want);

  // H_0 eigenvalue of |V_{n,m}> is 1/n at (3,1)
  RootData rd31 = RootData::build(3, 1);
  auto dm31 = distinguished_momenta(rd31);
  FockState v = fock_vacuum(rd31, dm31.v_nm, 4);
  VertexField h = h_current(rd31);
  FockState hv = apply_mode(v, h, 0, rd31);
  CHECK(hv == v.scaled(RatK::ratio(1, 3)));
}

TEST_CASE("oracle agrees with the engine on generator pairs at (2,1)") {
  RootData rd = RootData::build(2, 1);
  GeneratorSet g = generators_recursive(rd);
  OracleOptions opt;
  opt.cutoff = 3;
  opt.samples = 4;
  for (const auto& c : oracle_ope_check(g.E, g.F, opt, rd, "ef")) {
    INFO(c.id << " " << c.witness);
    CHECK(c.pass);
  }
  for (const auto& c : oracle_ope_check(g.H, g.H, opt, rd, "hh")) {
    INFO(c.id << " " << c.witness);
    CHECK(c.pass);
  }
}

TEST_CASE("oracle agrees on randomized low-weight fields at (3,1)") {
  RootData rd = RootData::build(3, 1);
  auto dm = distinguished_momenta(rd);
  std::mt19937 rng(4321);
  std::uniform_int_distribution<int> coef(-2, 2), pick(0, 100);
  auto monos1 = monomials_of_weight(rd, 1);
  auto monos2 = monomials_of_weight(rd, 2);
  OracleOptions opt;
  opt.cutoff = 3;
  opt.samples = 2;
  opt.depth = 1;
  int ran = 0;
  for (int trial = 0; trial < 40 && ran < 6; ++trial) {
    WickPoly a, b;
    for (const auto& m : monos1)
      if (pick(rng) < 30) a.add_term(m, RatK(coef(rng)));
    for (const auto& m : monos2)
      if (pick(rng) < 10) b.add_term(m, RatK(coef(rng)));
    if (a.is_zero() || b.is_zero()) continue;
    ++ran;
    VertexField f = field_exponential(rd, dm.xi, a);
    VertexField g = field_exponential(rd, momentum_scale(RatK(-1), dm.xi), b);
    for (const auto& c : oracle_ope_check(f, g, opt, rd, "rand" + std::to_string(trial))) {
      INFO(c.id << " " << c.witness);
      CHECK(c.pass);
    }
  }
  CHECK(ran >= 4);
}
