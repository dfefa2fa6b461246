#include "w2n/wgen.hpp"

#include <functional>

namespace w2n {

namespace {

RatK ply(std::initializer_list<long> ascending) {
  PolyK p;
  PolyK kp = PolyK::one();
  for (long c : ascending) {
    p += kp.scaled(BigRat(c));
    kp = kp * PolyK::k();
  }
  return RatK(p, PolyK::one());
}

RatK frac(std::initializer_list<long> num, std::initializer_list<long> den) {
  return ply(num) / ply(den);
}

IdentityCheck field_eq(const RootData& rd, const std::string& id, const std::string& detail,
                       const VertexField& got, const VertexField& want) {
  IdentityCheck c{id, detail, got.poly == want.poly, {}};
  if (!c.pass) c.witness = "got " + render_text(rd, got) + "; want " + render_text(rd, want);
  return c;
}

IdentityCheck is_zero(const RootData& rd, const std::string& id, const std::string& detail,
                      const VertexField& got) {
  IdentityCheck c{id, detail, got.is_zero(), {}};
  if (!c.pass) c.witness = "got " + render_text(rd, got);
  return c;
}

bool singular_part_vanishes(const LaurentOPE& o, const RootData& rd, int from_pole) {
  for (int j = from_pole; j <= o.max_rel_order() + 2; ++j)
    if (!o.coeff_at_pole(j, rd).is_zero()) return false;
  return true;
}

} // namespace

VertexField w4_lambda(const RootData& rd, const GeneratorSet& g, const VertexField& w) {
  if (rd.n() != 4) fail(errc::invalid_argument, "Lambda is defined for n = 4");
  RatK K4 = RatK::k_plus(4);
  RatK half = RatK::ratio(1, 2);
  RatK q = ply({102, 93, 20});
  VertexField hh{momentum_zero(rd), g.H.poly * g.H.poly};
  VertexField dh = derivative(g.H, rd);
  VertexField d2h = derivative(dh, rd);
  VertexField tperp = field_add(g.T, field_scale(-frac({2}, {8, 3}), hh));

  WickPoly acc = np(g.E, g.F, rd).poly;
  acc -= derivative(w, rd).poly.scaled(ply({2, 1}) * half);
  acc -= np(w, g.H, rd).poly.scaled(RatK(4) * ply({2, 1}) / ply({8, 3}));
  acc += derivative(derivative(tperp, rd), rd)
             .poly.scaled(RatK(3) * ply({2, 1}) * ply({2, 1}) * K4 * ply({46, 33, 6}) /
                          (RatK(2) * ply({8, 3}) * q));
  acc -= np(tperp, tperp, rd).poly.scaled(ply({2, 1}) * K4 * K4 * ply({26, 11}) /
                                          (RatK(2) * ply({8, 3}) * q));
  acc += derivative(np(tperp, g.H, rd), rd).poly.scaled(RatK(2) * ply({2, 1}) * K4 / ply({8, 3}));
  acc += np(tperp, hh, rd).poly.scaled(RatK(8) * ply({2, 1}) * K4 / (ply({8, 3}) * ply({8, 3})));
  acc -= np(d2h, g.H, rd).poly.scaled(RatK(8) * ply({2, 1}) * ply({5, 2}) / (RatK(3) * ply({8, 3})));
  acc -= np(dh, dh, rd).poly.scaled(RatK(2) * ply({2, 1}) * ply({5, 2}) / ply({8, 3}));
  acc -= np(dh, hh, rd).poly.scaled(RatK(16) * ply({2, 1}) * ply({5, 2}) /
                                    (ply({8, 3}) * ply({8, 3})));
  acc -= (g.H.poly * g.H.poly * g.H.poly * g.H.poly)
             .scaled(RatK(32) * ply({2, 1}) * ply({5, 2}) /
                     (RatK(3) * ply({8, 3}) * ply({8, 3}) * ply({8, 3})));
  acc -= derivative(d2h, rd).poly.scaled(ply({2, 1}) * ply({5, 2}) * RatK::ratio(1, 6));
  return VertexField{momentum_zero(rd), acc.scaled((ply({2, 1}) * ply({2, 1})).inverse())};
}

VertexField w4_z(const RootData& rd, const GeneratorSet& g, const VertexField& w,
                 const VertexField& lambda) {
  if (rd.n() != 4) fail(errc::invalid_argument, "Z is defined for n = 4");
  RatK K4 = RatK::k_plus(4);
  RatK q = ply({102, 93, 20}), q2 = ply({262, 349, 84});
  VertexField hh{momentum_zero(rd), g.H.poly * g.H.poly};
  VertexField tperp = field_add(g.T, field_scale(-frac({2}, {8, 3}), hh));
  LaurentOPE wl = ope(w, lambda, 0, rd);
  VertexField pole2 = field_scale(RatK(-1), wl.coeff_at_pole(2, rd));
  RatK c_wt = RatK(312) * K4 * ply({5, 3}) * ply({10, 3}) * ply({11, 4}) /
              (ply({2, 1}) * ply({8, 3}) * q * q2);
  RatK c_d2w = RatK(18) * ply({5, 3}) * ply({10, 3}) * ply({11, 4}) * ply({62, 29, 4}) /
               (ply({2, 1}) * ply({8, 3}) * q * q2);
  WickPoly z = pole2.poly.scaled(K4.inverse()) - np(w, tperp, rd).poly.scaled(c_wt) +
               derivative(derivative(w, rd), rd).poly.scaled(c_d2w);
  return VertexField{momentum_zero(rd), z.scaled(K4.inverse())};
}

std::vector<IdentityCheck> bp_table_check() {
  std::vector<IdentityCheck> out;
  RootData rd = RootData::build(3, 0);
  GeneratorSet g = generators_recursive(rd);

  LaurentOPE ef = ope(g.E, g.F, 0, rd);
  out.push_back(field_eq(rd, "bp-ef-3", "E F pole 3: (k+1)(2k+3)", ef.coeff_at_pole(3, rd),
                         {momentum_zero(rd), WickPoly::scalar(ply({3, 5, 2}))}));
  out.push_back(field_eq(rd, "bp-ef-2", "E F pole 2: 3(k+1) H", ef.coeff_at_pole(2, rd),
                         field_scale(ply({3, 3}), g.H)));
  {
    WickPoly want = (g.H.poly * g.H.poly).scaled(RatK(3)) - g.T.poly.scaled(RatK::k_plus(3)) +
                    g.H.poly.derivative().scaled(ply({3, 3}) * RatK::ratio(1, 2));
    out.push_back(field_eq(rd, "bp-ef-1", "E F pole 1: 3HH - (k+3)T + (3/2)(k+1) dH",
                           ef.coeff_at_pole(1, rd), {momentum_zero(rd), want}));
  }

  auto xpm = [&](const VertexField& x, const RatK& sign, const std::string& nm) {
    LaurentOPE hx = ope(g.H, x, 0, rd);
    out.push_back(field_eq(rd, "bp-h" + nm, "H X = +-X/(z-w)", hx.coeff_at_pole(1, rd),
                           field_scale(sign, x)));
    out.push_back(is_zero(rd, "bp-h" + nm + "-2", "no double pole", hx.coeff_at_pole(2, rd)));
    LaurentOPE tx = ope(g.T, x, 0, rd);
    IdentityCheck c{"bp-t" + nm, "T X = (3/2)X/(z-w)^2 + dX/(z-w)", false, {}};
    c.pass = singular_part_vanishes(tx, rd, 3) &&
             tx.coeff_at_pole(2, rd).poly == x.poly.scaled(RatK::ratio(3, 2)) &&
             tx.coeff_at_pole(1, rd).poly == derivative(x, rd).poly;
    out.push_back(c);
  };
  xpm(g.E, RatK::one(), "e");
  xpm(g.F, RatK(-1), "f");

  LaurentOPE th = ope(g.T, g.H, 0, rd);
  {
    IdentityCheck c{"bp-th", "T H = H/(z-w)^2 + dH/(z-w)", false, {}};
    c.pass = singular_part_vanishes(th, rd, 3) && th.coeff_at_pole(2, rd).poly == g.H.poly &&
             th.coeff_at_pole(1, rd).poly == derivative(g.H, rd).poly;
    out.push_back(c);
  }
  LaurentOPE tt = ope(g.T, g.T, 0, rd);
  {
    RatK c3 = -ply({3, 2}) * ply({1, 3}) / RatK::k_plus(3);
    IdentityCheck c{"bp-tt", "T T: central c_3 = -(2k+3)(3k+1)/(k+3), 2T, dT", false, {}};
    c.pass = tt.coeff_at_pole(4, rd).poly == WickPoly::scalar(c3 * RatK::ratio(1, 2)) &&
             tt.coeff_at_pole(3, rd).is_zero() &&
             tt.coeff_at_pole(2, rd).poly == g.T.poly.scaled(RatK(2)) &&
             tt.coeff_at_pole(1, rd).poly == derivative(g.T, rd).poly;
    out.push_back(c);
  }
  LaurentOPE hh = ope(g.H, g.H, 0, rd);
  out.push_back(field_eq(rd, "bp-hh", "H H = (1/3)(2k+3)/(z-w)^2", hh.coeff_at_pole(2, rd),
                         {momentum_zero(rd), WickPoly::scalar(frac({3, 2}, {3}))}));

  // Realization displays: F_{3[1]} = P_2^{(k+1)}(A_1, Q+) e^{-Xi}, E_{3[1]} = Q- e^{Xi}.
  {
    RootData rd31 = RootData::build(3, 1);
    GeneratorSet g31 = generators_recursive(rd31);
    WickPoly p2;
    p2.add_term(DiffMono::current(rd31.index_a(1)).times(DiffMono::current(rd31.index_q_plus())),
                RatK::one());
    p2.add_term(DiffMono::current(rd31.index_q_plus()).times(DiffMono::current(rd31.index_q_plus())),
                RatK::one());
    p2.add_term(DiffMono::current(rd31.index_q_plus(), 1), RatK::k_plus(2));
    out.push_back({"bp-f31", "F_{3[1]} = P_2^{(k+1)}(A_1, Q+) e^{-Xi}", g31.F.poly == p2, {}});
    out.push_back({"bp-e31", "E_{3[1]} = Q- e^{Xi}",
                   g31.E.poly == WickPoly::current(rd31.index_q_minus()), {}});
  }
  return out;
}

std::vector<IdentityCheck> w4_report(const RootData& rd) {
  if (rd.n() != 4) fail(errc::invalid_argument, "the table applies to n = 4");
  std::vector<IdentityCheck> out;
  GeneratorSet g = generators_recursive(rd);
  RatK K4 = RatK::k_plus(4);
  RatK half = RatK::ratio(1, 2);

  VertexField hh{momentum_zero(rd), g.H.poly * g.H.poly};
  VertexField dh = derivative(g.H, rd);
  VertexField d2h = derivative(dh, rd);
  VertexField tperp = field_add(g.T, field_scale(-frac({2}, {8, 3}), hh));

  LaurentOPE ef = ope(g.E, g.F, 0, rd);
  out.push_back(field_eq(rd, "w4-ef-4", "E F pole 4: (k+2)(2k+5)(3k+8)", ef.coeff_at_pole(4, rd),
                         {momentum_zero(rd), WickPoly::scalar(ply({2, 1}) * ply({5, 2}) * ply({8, 3}))}));
  out.push_back(field_eq(rd, "w4-ef-3", "E F pole 3: 4(k+2)(2k+5) H", ef.coeff_at_pole(3, rd),
                         field_scale(RatK(4) * ply({2, 1}) * ply({5, 2}), g.H)));
  {
    WickPoly want = g.T.poly.scaled(-K4) + hh.poly.scaled(RatK(6)) +
                    dh.poly.scaled(RatK(2) * ply({5, 2}));
    out.push_back(field_eq(rd, "w4-ef-2", "E F pole 2: (k+2)(-(k+4)T + 6HH + 2(2k+5) dH)",
                           ef.coeff_at_pole(2, rd),
                           {momentum_zero(rd), want.scaled(ply({2, 1}))}));
  }

  // W from the first-order pole of E F.
  VertexField w;
  {
    VertexField pole1 = ef.coeff_at_pole(1, rd);
    VertexField th = np(g.T, g.H, rd);
    VertexField dh_h{momentum_zero(rd), dh.poly * g.H.poly};
    VertexField hhh{momentum_zero(rd), g.H.poly * g.H.poly * g.H.poly};
    WickPoly tail = derivative(g.T, rd).poly.scaled(-half * K4) - th.poly.scaled(RatK(4) * K4 / ply({8, 3})) +
                    hhh.poly.scaled(RatK(8) * ply({32, 11}) / (RatK(3) * ply({8, 3}) * ply({8, 3}))) +
                    dh_h.poly.scaled(RatK(6)) +
                    d2h.poly.scaled(RatK(4) * ply({26, 17, 3}) / (RatK(3) * ply({8, 3})));
    w = VertexField{momentum_zero(rd), pole1.poly.scaled(ply({2, 1}).inverse()) - tail};

    // The generic pole n-3 expansion defines the same current.
    out.push_back(field_eq(rd, "w4-w-consistent", "W from the E F table equals the generic extraction",
                           w3_current(rd, g), w));
  }

  // W X^{+-}
  for (int s = 0; s < 2; ++s) {
    VertexField x = s == 0 ? g.E : g.F;
    RatK sg = s == 0 ? RatK::one() : RatK(-1);
    std::string nm = s == 0 ? "w4-wx+" : "w4-wx-";
    LaurentOPE wx = ope(w, x, 0, rd);
    out.push_back(field_eq(rd, nm + "-3", "W X pole 3", wx.coeff_at_pole(3, rd),
                           field_scale(sg * RatK(2) * K4 * ply({7, 3}) * ply({16, 5}) /
                                           (ply({8, 3}) * ply({8, 3})),
                                       x)));
    {
      WickPoly want = derivative(x, rd).poly.scaled(sg * RatK(3) * K4 * ply({16, 5}) /
                                                    (RatK(2) * ply({8, 3})));
      want -= np(g.H, x, rd).poly.scaled(RatK(6) * K4 * ply({16, 5}) / (ply({8, 3}) * ply({8, 3})));
      out.push_back(field_eq(rd, nm + "-2", "W X pole 2", wx.coeff_at_pole(2, rd),
                             {momentum_zero(rd), want}));
    }
    {
      VertexField dx = derivative(x, rd);
      WickPoly inner = np(g.H, dx, rd).poly.scaled(RatK(8) * ply({3, 1}) / ply({8, 3}));
      inner += np(dh, x, rd).poly.scaled(RatK(4) * ply({16, 15, 3}) / (ply({8, 3}) * ply({8, 3})));
      inner -= derivative(dx, rd).poly.scaled(sg * ply({3, 1}));
      inner += np(g.T, x, rd).poly.scaled(sg * RatK(2) * K4 / ply({8, 3}));
      inner -= np(g.H, np(g.H, x, rd), rd).poly.scaled(sg * RatK(4) * ply({16, 5}) /
                                                       (ply({8, 3}) * ply({8, 3})));
      WickPoly want = inner.scaled(-K4 / ply({2, 1}));
      out.push_back(field_eq(rd, nm + "-1", "W X pole 1", wx.coeff_at_pole(1, rd),
                             {momentum_zero(rd), want}));
    }
  }

  // Lambda from its closed formula.
  VertexField lambda = w4_lambda(rd, g, w);
  {
    LaurentOPE tl = ope(g.T, lambda, 0, rd);
    IdentityCheck c{"w4-lambda-primary", "Lambda is a weight-4 Virasoro primary", false, {}};
    c.pass = singular_part_vanishes(tl, rd, 3) &&
             tl.coeff_at_pole(2, rd).poly == lambda.poly.scaled(RatK(4)) &&
             tl.coeff_at_pole(1, rd).poly == derivative(lambda, rd).poly;
    out.push_back(c);
  }

  // W W table.
  LaurentOPE ww = ope(w, w, 0, rd);
  RatK q = ply({102, 93, 20});
  out.push_back(field_eq(rd, "w4-ww-6", "W W pole 6", ww.coeff_at_pole(6, rd),
                         {momentum_zero(rd),
                          WickPoly::scalar(RatK(2) * K4 * ply({5, 2}) * ply({7, 3}) * ply({16, 5}) /
                                           ply({8, 3}))}));
  out.push_back(is_zero(rd, "w4-ww-5", "W W pole 5 vanishes", ww.coeff_at_pole(5, rd)));
  out.push_back(field_eq(rd, "w4-ww-4", "W W pole 4", ww.coeff_at_pole(4, rd),
                         field_scale(-RatK(3) * K4 * K4 * ply({16, 5}) / ply({8, 3}), tperp)));
  out.push_back(field_eq(rd, "w4-ww-3", "W W pole 3", ww.coeff_at_pole(3, rd),
                         field_scale(-RatK(3) * K4 * K4 * ply({16, 5}) / (RatK(2) * ply({8, 3})),
                                     derivative(tperp, rd))));
  {
    WickPoly want = derivative(derivative(tperp, rd), rd)
                        .poly.scaled(-RatK(3) * K4 * K4 * ply({16, 5}) * ply({74, 59, 12}) /
                                     (RatK(4) * ply({8, 3}) * q));
    want += np(tperp, tperp, rd).poly.scaled(RatK(8) * K4 * K4 * K4 * ply({16, 5}) /
                                             (ply({8, 3}) * q));
    want += lambda.poly.scaled(RatK(4) * K4);
    out.push_back(field_eq(rd, "w4-ww-2", "W W pole 2 contains 4(k+4) Lambda",
                           ww.coeff_at_pole(2, rd), {momentum_zero(rd), want}));
  }
  {
    WickPoly want = derivative(derivative(derivative(tperp, rd), rd), rd)
                        .poly.scaled(-K4 * K4 * ply({16, 5}) * ply({74, 59, 12}) /
                                     (RatK(6) * ply({8, 3}) * q));
    want += np(derivative(tperp, rd), tperp, rd)
                .poly.scaled(RatK(8) * K4 * K4 * K4 * ply({16, 5}) / (ply({8, 3}) * q));
    want += derivative(lambda, rd).poly.scaled(RatK(2) * K4);
    out.push_back(field_eq(rd, "w4-ww-1", "W W pole 1", ww.coeff_at_pole(1, rd),
                           {momentum_zero(rd), want}));
  }

  // W Lambda: the coefficient table holds for the product with the overall
  // sign reversed relative to the W and Lambda normalizations pinned by the
  // E F, W X and W W tables above; the comparison is done on -(W Lambda).
  LaurentOPE wl = ope(w, lambda, 0, rd);
  RatK q2 = ply({262, 349, 84});
  auto wl_pole = [&](int j) { return field_scale(RatK(-1), wl.coeff_at_pole(j, rd)); };
  out.push_back(field_eq(rd, "w4-wl-4", "-(W Lambda) pole 4: -12(k+4)(3k+5)(3k+10)(4k+11)/(...) W",
                         wl_pole(4),
                         field_scale(-RatK(12) * K4 * ply({5, 3}) * ply({10, 3}) * ply({11, 4}) /
                                         (ply({2, 1}) * ply({8, 3}) * q),
                                     w)));
  out.push_back(field_eq(rd, "w4-wl-3", "-(W Lambda) pole 3: -4(k+4)(36k^3+...)/(...) dW",
                         wl_pole(3),
                         field_scale(-RatK(4) * K4 * ply({550, 695, 279, 36}) /
                                         (ply({2, 1}) * ply({8, 3}) * q),
                                     derivative(w, rd))));

  VertexField zc;
  {
    VertexField pole2 = wl_pole(2);
    RatK c_wt = RatK(312) * K4 * ply({5, 3}) * ply({10, 3}) * ply({11, 4}) /
                (ply({2, 1}) * ply({8, 3}) * q * q2);
    RatK c_d2w = RatK(18) * ply({5, 3}) * ply({10, 3}) * ply({11, 4}) * ply({62, 29, 4}) /
                 (ply({2, 1}) * ply({8, 3}) * q * q2);
    WickPoly z = pole2.poly.scaled(K4.inverse()) - np(w, tperp, rd).poly.scaled(c_wt) +
                 derivative(derivative(w, rd), rd).poly.scaled(c_d2w);
    zc = VertexField{momentum_zero(rd), z.scaled(K4.inverse())};

    LaurentOPE tz = ope(g.T, zc, 0, rd);
    IdentityCheck c{"w4-z-primary", "Z is a weight-5 Virasoro primary", false, {}};
    c.pass = singular_part_vanishes(tz, rd, 3) &&
             tz.coeff_at_pole(2, rd).poly == zc.poly.scaled(RatK(5)) &&
             tz.coeff_at_pole(1, rd).poly == derivative(zc, rd).poly;
    out.push_back(c);
  }
  {
    // Decompose (k+2)^3 Z over the two-generator sector {X+dX-, dX+X-, HX+X-}
    // plus every right-nested weight-5 composite of {H, Tperp, W}. The
    // decomposition is unique in the generator sector, so the leading
    // coefficients of Z are pinned exactly.
    std::vector<VertexField> gens{g.H, tperp, w};
    std::vector<int> wts{1, 2, 3};
    std::vector<VertexField> span;
    std::vector<std::pair<int, int>> seq;
    std::function<void(int)> gen_span = [&](int left) {
      if (left == 0) {
        if (seq.empty()) return;
        VertexField acc;
        bool first = true;
        for (int i = static_cast<int>(seq.size()) - 1; i >= 0; --i) {
          VertexField f = gens[seq[i].first];
          for (int d = 0; d < seq[i].second; ++d) f = derivative(f, rd);
          acc = first ? f : np(f, acc, rd);
          first = false;
        }
        span.push_back(acc);
        return;
      }
      for (int gi = 0; gi < 3; ++gi)
        for (int d = 0; wts[gi] + d <= left; ++d) {
          seq.push_back({gi, d});
          gen_span(left - wts[gi] - d);
          seq.pop_back();
        }
    };
    gen_span(5);

    VertexField de = derivative(g.E, rd), df = derivative(g.F, rd);
    std::vector<VertexField> xsector{np(g.E, df, rd), np(de, g.F, rd),
                                     np(g.H, np(g.E, g.F, rd), rd)};

    std::map<DiffMono, int> rows;
    auto row = [&](const DiffMono& m) {
      auto [it, ins] = rows.emplace(m, static_cast<int>(rows.size()));
      return it->second;
    };
    for (const auto& b : span)
      for (const auto& [m, c] : b.poly.terms()) row(m);
    for (const auto& b : xsector)
      for (const auto& [m, c] : b.poly.terms()) row(m);
    WickPoly target = zc.poly.scaled(ply({2, 1}) * ply({2, 1}) * ply({2, 1}));
    for (const auto& [m, c] : target.terms()) row(m);
    MatK mat(static_cast<int>(rows.size()), static_cast<int>(xsector.size() + span.size()));
    for (size_t bi = 0; bi < xsector.size(); ++bi)
      for (const auto& [m, c] : xsector[bi].poly.terms()) mat.at(rows.at(m), static_cast<int>(bi)) += c;
    for (size_t bi = 0; bi < span.size(); ++bi)
      for (const auto& [m, c] : span[bi].poly.terms())
        mat.at(rows.at(m), static_cast<int>(bi + xsector.size())) += c;
    std::vector<RatK> rhs(rows.size());
    for (const auto& [m, c] : target.terms()) rhs[rows.at(m)] = c;
    LinearSolution sol = linear_solve(mat, rhs);

    bool solvable = sol.tag != LinearSolution::kind::none;
    bool xsector_unique = solvable;
    if (sol.tag == LinearSolution::kind::underdetermined)
      for (const auto& v : sol.nullspace)
        if (!v[0].is_zero() || !v[1].is_zero() || !v[2].is_zero()) xsector_unique = false;
    RatK c1 = solvable ? sol.x[0] : RatK::zero();
    RatK c2 = solvable ? sol.x[1] : RatK::zero();
    RatK c3 = solvable ? sol.x[2] : RatK::zero();

    IdentityCheck lit{"w4-z-leading",
                      "(k+2)^3 Z = (5/2) X+dX- - (5/2) dX+X- + (2/(3k+8)) HX+X- + composites",
                      false,
                      {}};
    lit.pass = solvable && xsector_unique && c1 == RatK::ratio(5, 2) && c2 == RatK::ratio(-5, 2) &&
               c3 == RatK(2) / ply({8, 3});
    if (!lit.pass)
      lit.witness = "unique decomposition gives " + c1.str() + ", " + c2.str() + ", " + c3.str() +
                    "; the first two tabulated coefficients match exactly, the H-term "
                    "coefficient is forced to 20/(3k+8) = 5/ell_4 by the verified W, Lambda and H "
                    "normalizations (the tabulated 2/(3k+8) = 1/(2 ell_4) is inconsistent with them)";
    out.push_back(lit);

    IdentityCheck forced{"w4-z-leading-forced",
                         "unique decomposition: c(X+dX-) = 5/2, c(dX+X-) = -5/2, c(HX+X-) = 20/(3k+8)",
                         solvable && xsector_unique && c1 == RatK::ratio(5, 2) &&
                             c2 == RatK::ratio(-5, 2) && c3 == RatK(20) / ply({8, 3}),
                         {}};
    out.push_back(forced);
  }
  {
    // First-order pole of -(W Lambda): (k+4)((2/5)(k+4) dZ + ...)
    WickPoly want = derivative(zc, rd).poly.scaled(RatK::ratio(2, 5) * K4);
    want += np(w, derivative(tperp, rd), rd)
                .poly.scaled(RatK(30) * K4 * ply({5, 3}) * ply({10, 3}) /
                             (ply({2, 1}) * ply({2, 1}) * ply({8, 3}) * q2));
    want -= derivative(derivative(derivative(w, rd), rd), rd)
                .poly.scaled(ply({5, 3}) * ply({10, 3}) *
                             ply({18384, 22746, 9647, 1652, 96}) /
                             (RatK(2) * ply({2, 1}) * ply({2, 1}) * ply({8, 3}) * q * q2));
    want += np(derivative(w, rd), tperp, rd)
                .poly.scaled(RatK(4) * K4 * ply({5, 3}) * ply({10, 3}) * ply({634, 523, 108}) /
                             (ply({2, 1}) * ply({2, 1}) * ply({8, 3}) * q * q2));
    out.push_back(field_eq(rd, "w4-wl-1", "-(W Lambda) pole 1", wl_pole(1),
                           {momentum_zero(rd), want.scaled(K4)}));
  }
  {
    // T_perp normalization: 1/(2 ell_4) = 2/(3k+8)
    IdentityCheck c{"w4-tperp", "1/(2 ell_4) = 2/(3k+8)",
                    (RatK(2) * constants::ell(4)).inverse() == frac({2}, {8, 3}), {}};
    out.push_back(c);
  }
  return out;
}

std::vector<IdentityCheck> primary_vertices_check(const RootData& rd) {
  std::vector<IdentityCheck> out;
  int n = rd.n(), m = rd.m();
  std::string tag = std::to_string(n) + "[" + std::to_string(m) + "]";
  GeneratorSet g = generators_recursive(rd);
  auto dm = distinguished_momenta(rd);

  if (dm.has_v) {
    VertexField v = field_exponential(rd, dm.v_nm);
    LaurentOPE ev = ope(g.E, v, 0, rd);
    out.push_back({"v-ev-" + tag, "E V has no singular part", singular_part_vanishes(ev, rd, 1), {}});
    LaurentOPE fv = ope(g.F, v, 0, rd);
    out.push_back({"v-fv-" + tag, "F V has only a first-order pole",
                   singular_part_vanishes(fv, rd, 2), {}});
    out.push_back(field_eq(rd, "v-h0-" + tag, "H_0 eigenvalue 1/n", bracket(g.H, v, 1, rd),
                           field_scale(RatK::ratio(1, n), v)));
    RatK delta = RatK::one() - RatK::ratio(n, 2) +
                 RatK(n * n - 1) / (RatK(2 * n) * RatK::k_plus(n));
    out.push_back(field_eq(rd, "v-l0-" + tag, "L_0 eigenvalue 1 - n/2 + (n^2-1)/(2n(k+n))",
                           bracket(g.T, v, 2, rd), field_scale(delta, v)));
    out.push_back(field_eq(rd, "v-l1-" + tag, "T V first-order pole is dV", bracket(g.T, v, 1, rd),
                           derivative(v, rd)));
    out.push_back({"v-norm-" + tag, "(v,v) = (n-1)/(n(k+n))",
                   rd.pairing(dm.v_nm, dm.v_nm) ==
                       RatK(n - 1) / (RatK(n) * RatK::k_plus(n)),
                   {}});

    // Optional identification of the first-order pole of F V with
    // :F' V: for the next-smaller algebra at level k+1.
    if (m <= n - 2) {
      RatK sign = (m % 2 == 0) ? RatK(-1) : RatK::one();
      VertexField fprev = field_exponential(rd, momentum_scale(RatK(-1), dm.xi),
                                            p_poly(rd, n - 1 - m, m + 1).scaled(sign));
      IdentityCheck c{"v-ftilde-" + tag, "F V residue = :F' V: of the preceding algebra",
                      bracket(g.F, v, 1, rd).poly == normal_product(fprev, v, rd).poly, {}};
      c.optional_check = true;
      out.push_back(c);
    }
  }
  if (dm.has_v_star) {
    VertexField vs = field_exponential(rd, dm.v_star_nm);
    LaurentOPE fvs = ope(g.F, vs, 0, rd);
    out.push_back({"vstar-fv-" + tag, "F V* has no singular part",
                   singular_part_vanishes(fvs, rd, 1), {}});
    LaurentOPE evs = ope(g.E, vs, 0, rd);
    out.push_back({"vstar-ev-" + tag, "E V* has only a first-order pole",
                   singular_part_vanishes(evs, rd, 2), {}});
    out.push_back({"vstar-norm-" + tag, "(v*,v*) = (n-1)/(n(k+n))",
                   rd.pairing(dm.v_star_nm, dm.v_star_nm) ==
                       RatK(n - 1) / (RatK(n) * RatK::k_plus(n)),
                   {}});
  }
  return out;
}

std::vector<IdentityCheck> identity_suite(int n_max) {
  std::vector<IdentityCheck> out;

  for (int n = 3; n <= std::max(3, n_max); ++n) {
    // n H_{n[0]}^{(k)} - (n-1) H_{(n-1)[0]}^{(k+1)} = (k+n-1)Y + sum A_i + Q
    RootData rd = RootData::build(n, 0);
    VertexField hn = h_current(rd);
    WickPoly hprev = WickPoly::current(rd.index_y(), 0, constants::ell(n - 1, RatK::k_plus(1)));
    for (int i = 1; i <= n - 2; ++i)
      hprev += WickPoly::current(rd.index_a(i), 0, RatK::ratio(n - 1 - i, n - 1));
    hprev += WickPoly::current(rd.index_q_plus());
    WickPoly lhs = hn.poly.scaled(RatK(n)) - hprev.scaled(RatK(n - 1));
    WickPoly rhs = WickPoly::current(rd.index_y(), 0, RatK::k_plus(n - 1));
    for (int i = 1; i <= n - 1; ++i) rhs += WickPoly::current(rd.index_a(i));
    rhs += WickPoly::current(rd.index_q_plus());
    out.push_back({"h-recursion-" + std::to_string(n),
                   "n H_n - (n-1) H_{n-1}^{(k+1)} = (k+n-1)Y + sum A_i + Q", lhs == rhs, {}});
  }

  for (int n = 2; n <= std::max(6, n_max); ++n) {
    RatK kp = constants::dual_level(n);
    bool mult = RatK::k_plus(n - 1) * (kp + RatK(n - 1)) == RatK::one();
    bool add = RatK::k_plus(n).inverse() + (kp + RatK(n)).inverse() == RatK::one();
    out.push_back({"dual-" + std::to_string(n),
                   "(k+n-1)(k'+n-1) = 1 and 1/(k+n) + 1/(k'+n) = 1", mult && add, {}});
    out.push_back({"dual-involution-" + std::to_string(n), "dual level is an involution",
                   kp.substitute(kp) == RatK::k(), {}});

    RatK delta_dual = RatK(n * n - 1) / (RatK(2 * n) * (kp + RatK(n)));
    RatK delta_n = RatK::one() - RatK::ratio(n, 2) +
                   RatK(n * n - 1) / (RatK(2 * n) * RatK::k_plus(n));
    out.push_back({"delta-sum-" + std::to_string(n), "Delta' + Delta_n = 1 - 1/(2n)",
                   delta_dual + delta_n == RatK::one() - RatK::ratio(1, 2 * n), {}});
    RatK len = RatK(n - 1) / (RatK(n) * RatK::k_plus(n));
    RatK len_dual = RatK(n - 1) / (RatK(n) * (kp + RatK(n)));
    out.push_back({"length-sum-" + std::to_string(n), "|v|^2 + |v'|^2 = 1 - 1/n",
                   len + len_dual == RatK::one() - RatK::ratio(1, n), {}});
  }

  for (int n = 2; n <= std::min(4, n_max); ++n)
    for (long m = 2; m <= 6; ++m) {
      // c_n(k) - 1 = c_{m+1, m+n}(m) at k = 1 - n + (m+1)/(n-1)
      BigRat kstar = BigRat(1 - n) + bigrat_of(m + 1, n - 1);
      BigRat lhs = constants::central_charge(n).eval(kstar) - 1;
      BigRat rhs = constants::minimal_model_charge(BigRat(m + 1), BigRat(m + n), m);
      out.push_back({"rank-level-" + std::to_string(n) + "-" + std::to_string(m),
                     "c_n(k)-1 = c_{m+1,m+n}(m) at the minimal-model point", lhs == rhs, {}});
    }

  auto gram = verify_gram_identities(n_max);
  out.insert(out.end(), gram.begin(), gram.end());
  return out;
}

} // namespace w2n
