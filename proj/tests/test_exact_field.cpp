#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "w2n/matk.hpp"
#include "w2n/ratk.hpp"

using namespace w2n;

namespace {

RatK random_ratk(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-4, 4), deg(0, 2);
  auto poly = [&](bool nonzero) {
    PolyK p;
    do {
      p = PolyK();
      int d = deg(rng);
      PolyK kp = PolyK::one();
      for (int i = 0; i <= d; ++i) {
        p += kp.scaled(BigRat(coef(rng)));
        kp = kp * PolyK::k();
      }
    } while (nonzero && p.is_zero());
    return p;
  };
  return RatK(poly(false), poly(true));
}

} // namespace

TEST_CASE("ratk arithmetic and canonicalization") {
  RatK k = RatK::k();
  RatK a = RatK::k_plus(1) / RatK::k_plus(2);

  CHECK(ratk_arith(a, RatK::k_plus(2), ratk_op::mul) == RatK::k_plus(1));

  // (1(k+2)-1)(2(k+2)-1) = (k+1)(2k+3)
  RatK lam = (RatK(1) * RatK::k_plus(2) - RatK(1)) * (RatK(2) * RatK::k_plus(2) - RatK(1));
  RatK expanded = RatK(2) * k * k + RatK(5) * k + RatK(3);
  CHECK(lam == expanded);

  // 1/(k+n) + 1/(k'+n) = 1 with k' = 1/(k+n-1) - n + 1, at n = 3
  RatK kp = RatK::k_plus(2).inverse() - RatK(2);
  RatK lhs = RatK::k_plus(3).inverse() + (kp + RatK(3)).inverse();
  CHECK(lhs == RatK::one());

  CHECK_THROWS_AS(ratk_arith(a, RatK::zero(), ratk_op::div), const error&);

  // canonical form: monic denominator, reduced
  RatK r(PolyK{BigRat(2), BigRat(2)}, PolyK{BigRat(4), BigRat(4), BigRat(0)});
  CHECK(r == RatK(PolyK{BigRat(1)}, PolyK{BigRat(2)}));
  CHECK(r.str() == "1/2");
}

TEST_CASE("ratk field axioms hold exactly on random samples") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    RatK a = random_ratk(rng), b = random_ratk(rng), c = random_ratk(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    if (!a.is_zero()) CHECK(a * a.inverse() == RatK::one());
  }
}

TEST_CASE("ratk normalization is idempotent") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 40; ++trial) {
    RatK a = random_ratk(rng);
    RatK renorm(a.num(), a.den());
    CHECK(renorm == a);
  }
}

TEST_CASE("substitution homomorphism") {
  // lambda_2(3,k) at k = 1 equals 10
  RatK lam = (RatK::k_plus(2) - RatK(1)) * (RatK(2) * RatK::k_plus(2) - RatK(1));
  CHECK(lam.eval(BigRat(1)) == BigRat(10));
  // substituting the dual level twice is the identity (n = 4)
  RatK dual = RatK::k_plus(3).inverse() - RatK(3);
  CHECK(dual.substitute(dual) == RatK::k());
}

TEST_CASE("determinants") {
  CHECK(mat_det(MatK::identity(4)) == RatK::one());

  MatK m(2, 2);
  m.at(0, 0) = RatK::k_plus(1);
  m.at(0, 1) = RatK(1);
  m.at(1, 0) = RatK(2);
  m.at(1, 1) = RatK::k_plus(-1);
  CHECK(mat_det(m) == RatK::k() * RatK::k() - RatK(3));

  MatK ns(2, 3);
  CHECK_THROWS_AS(mat_det(ns), const error&);
}

TEST_CASE("inverse and round trips") {
  CHECK(mat_inverse(MatK::identity(3)) == MatK::identity(3));

  std::mt19937 rng(99);
  MatK m(5, 5);
  RatK det;
  do {
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) m.at(i, j) = random_ratk(rng);
    det = mat_det(m);
  } while (det.is_zero());
  CHECK(m * mat_inverse(m) == MatK::identity(5));

  MatK z(2, 2);
  CHECK_THROWS_AS(mat_inverse(z), const error&);
}

TEST_CASE("linear solve variants") {
  // identity
  MatK id = MatK::identity(3);
  std::vector<RatK> v{RatK(1), RatK::k(), RatK::k_plus(5)};
  auto sol = linear_solve(id, v);
  REQUIRE(sol.tag == LinearSolution::kind::unique);
  CHECK(sol.x == v);

  // random nonsingular round trip
  std::mt19937 rng(4242);
  MatK m(5, 5);
  do {
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) m.at(i, j) = random_ratk(rng);
  } while (mat_det(m).is_zero());
  std::vector<RatK> rhs;
  for (int i = 0; i < 5; ++i) rhs.push_back(random_ratk(rng));
  auto s2 = linear_solve(m, rhs);
  REQUIRE(s2.tag == LinearSolution::kind::unique);
  CHECK(m.apply(s2.x) == rhs);

  // inconsistent: zero row, nonzero rhs
  MatK zr(2, 2);
  zr.at(0, 0) = RatK(1);
  std::vector<RatK> bad{RatK(1), RatK(1)};
  CHECK(linear_solve(zr, bad).tag == LinearSolution::kind::none);

  // underdetermined
  MatK ud(1, 2);
  ud.at(0, 0) = RatK(1);
  ud.at(0, 1) = RatK(1);
  auto s3 = linear_solve(ud, {RatK(3)});
  REQUIRE(s3.tag == LinearSolution::kind::underdetermined);
  CHECK(s3.nullspace.size() == 1);
}
