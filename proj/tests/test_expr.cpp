#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "w2n/expr.hpp"
#include "w2n/report.hpp"

using namespace w2n;

TEST_CASE("parsing the documented forms") {
  FieldExpr e = parse_expression("E(3,0)");
  CHECK(e.k == FieldExpr::kind::generator);
  CHECK(e.gen == 'E');
  CHECK(e.n == 3);
  CHECK(e.m == 0);

  FieldExpr p = parse_expression("prod(A1, d^1(Q+))");
  REQUIRE(p.k == FieldExpr::kind::normal_product);
  REQUIRE(p.args.size() == 2);
  CHECK(p.args[0].k == FieldExpr::kind::current);
  CHECK(p.args[0].label == "A1");
  CHECK(p.args[1].k == FieldExpr::kind::derivative);

  FieldExpr s = parse_expression("(k+1) d^1(Q)");
  REQUIRE(s.k == FieldExpr::kind::scalar_mul);
  CHECK(s.scalar == RatK::k_plus(1));
  CHECK(s.args[0].k == FieldExpr::kind::derivative);

  CHECK_THROWS_AS(parse_expression("E(3,0"), const error&);
  CHECK_THROWS_AS(parse_expression("nonsense(1)"), const error&);
}

TEST_CASE("round trip through the expression renderer") {
  for (const char* text : {
           "E(3,0)",
           "prod(A1, d^1(Q+))",
           "V(3,1)",
           "Vstar(4,2)",
           "H(2,1) + T(2,1)",
           "(k+1) d^1(Q)",
           "prod(H(3,0), prod(H(3,0), H(3,0)))",
           "Lambda(4,0)",
       }) {
    FieldExpr e = parse_expression(text);
    FieldExpr back = parse_expression(render_expression(e));
    INFO(text << " -> " << render_expression(e));
    CHECK(back == e);
  }
}

TEST_CASE("resolution against a realization") {
  // P_2's third term: (k+1) d^1(Q) at (2,0)
  auto r = resolve_expression(parse_expression("(k+1) d^1(Q)"), {{2, 0}});
  RootData& rd = r.rd;
  CHECK(r.field.poly == WickPoly::current(rd.index_q_plus(), 1, RatK::k_plus(1)));

  // generator reference carries its own realization
  auto g = resolve_expression(parse_expression("E(2,1)"), std::nullopt);
  CHECK(g.rd.n() == 2);
  CHECK(g.rd.m() == 1);
  CHECK(g.field.poly == WickPoly::current(g.rd.index_q_minus()));

  // sum of generators, conflict detection
  CHECK_THROWS_AS(resolve_expression(parse_expression("E(2,1) + E(3,0)"), std::nullopt), const error&);
  CHECK_THROWS_AS(resolve_expression(parse_expression("A1"), std::nullopt), const error&);

  // full BP polynomial through the parser: F(3,0) equals -P_3 e^{-Xi}
  auto f = resolve_expression(parse_expression("F(3,0)"), std::nullopt);
  auto gen = generators_recursive(f.rd);
  CHECK(f.field == gen.F);

  // juxtaposition builds Wick monomials
  auto m = resolve_expression(parse_expression("A1 A1 Q"), {{3, 0}});
  WickPoly want;
  want.add_term(DiffMono::current(m.rd.index_a(1))
                    .times(DiffMono::current(m.rd.index_a(1)))
                    .times(DiffMono::current(m.rd.index_q_plus())),
                RatK::one());
  CHECK(m.field.poly == want);
}

TEST_CASE("latex rendering of the degree-2 polynomial") {
  auto r = resolve_expression(parse_expression("prod(A1, Q) + prod(Q, Q) + (k+1) d^1(Q)"), {{2, 0}});
  std::string tex = render_latex(r.rd, r.field);
  CHECK(tex.find("A_{1} Q") != std::string::npos);
  CHECK(tex.find("Q Q") != std::string::npos);
  CHECK(tex.find("(k+1)\\,\\partial Q") != std::string::npos);
}
