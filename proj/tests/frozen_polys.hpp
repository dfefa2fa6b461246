#pragma once

// Frozen expected polynomials for the low-degree recursion, used as oracles
// by the unit tests and the acceptance suite.

#include "w2n/wgen.hpp"

namespace w2n::frozen {


// Expected polynomials frozen from the worked low-rank cases.
WickPoly expected_p2(const RootData& rd, long shift) {
  int a1 = rd.index_a(1), q = rd.index_q_plus();
  WickPoly p;
  p.add_term(DiffMono::current(a1).times(DiffMono::current(q)), RatK::one());
  p.add_term(DiffMono::current(q).times(DiffMono::current(q)), RatK::one());
  p.add_term(DiffMono::current(q, 1), RatK::k_plus(1 + shift));
  return p;
}

WickPoly expected_p3(const RootData& rd, long shift) {
  int a1 = rd.index_a(1), a2 = rd.index_a(2), q = rd.index_q_plus();
  auto mono = [&](std::initializer_list<std::pair<int, int>> fs) {
    DiffMono m;
    for (auto [lab, d] : fs) m = m.with_factor(CurrentKey{lab, d});
    return m;
  };
  RatK c2 = RatK::k_plus(2 + shift);
  WickPoly p;
  p.add_term(mono({{a1, 0}, {a1, 0}, {q, 0}}), RatK::one());
  p.add_term(mono({{a1, 0}, {a2, 0}, {q, 0}}), RatK::one());
  p.add_term(mono({{a1, 0}, {q, 0}, {q, 0}}), RatK(2));
  p.add_term(mono({{a2, 0}, {q, 0}, {q, 0}}), RatK::one());
  p.add_term(mono({{q, 0}, {q, 0}, {q, 0}}), RatK::one());
  p.add_term(mono({{a1, 0}, {q, 1}}), RatK(2) * c2);
  p.add_term(mono({{a2, 0}, {q, 1}}), c2);
  p.add_term(mono({{a1, 1}, {q, 0}}), c2);
  p.add_term(mono({{q, 1}, {q, 0}}), RatK(3) * c2);
  p.add_term(mono({{q, 2}}), c2 * c2);
  return p;
}

// The degree-4 polynomial of the appendix, term by term.
WickPoly expected_p4(const RootData& rd) {
  int a1 = rd.index_a(1), a2 = rd.index_a(2), a3 = rd.index_a(3), q = rd.index_q_plus();
  auto mono = [&](std::initializer_list<std::pair<int, int>> fs) {
    DiffMono m;
    for (auto [lab, d] : fs) m = m.with_factor(CurrentKey{lab, d});
    return m;
  };
  RatK c = RatK::k_plus(3);
  WickPoly p;
  // degree-0 in (k+3)
  p.add_term(mono({{a1, 0}, {a1, 0}, {a1, 0}, {q, 0}}), RatK(1));
  p.add_term(mono({{a1, 0}, {a1, 0}, {a2, 0}, {q, 0}}), RatK(2));
  p.add_term(mono({{a1, 0}, {a1, 0}, {a3, 0}, {q, 0}}), RatK(1));
  p.add_term(mono({{a1, 0}, {a1, 0}, {q, 0}, {q, 0}}), RatK(3));
  p.add_term(mono({{a1, 0}, {a2, 0}, {a2, 0}, {q, 0}}), RatK(1));
  p.add_term(mono({{a1, 0}, {a2, 0}, {a3, 0}, {q, 0}}), RatK(1));
  p.add_term(mono({{a1, 0}, {a2, 0}, {q, 0}, {q, 0}}), RatK(4));
  p.add_term(mono({{a1, 0}, {a3, 0}, {q, 0}, {q, 0}}), RatK(2));
  p.add_term(mono({{a1, 0}, {q, 0}, {q, 0}, {q, 0}}), RatK(3));
  p.add_term(mono({{a2, 0}, {a2, 0}, {q, 0}, {q, 0}}), RatK(1));
  p.add_term(mono({{a2, 0}, {a3, 0}, {q, 0}, {q, 0}}), RatK(1));
  p.add_term(mono({{a2, 0}, {q, 0}, {q, 0}, {q, 0}}), RatK(2));
  p.add_term(mono({{a3, 0}, {q, 0}, {q, 0}, {q, 0}}), RatK(1));
  p.add_term(mono({{q, 0}, {q, 0}, {q, 0}, {q, 0}}), RatK(1));
  // (k+3)
  p.add_term(mono({{a1, 0}, {a1, 0}, {q, 1}}), RatK(3) * c);
  p.add_term(mono({{a1, 0}, {a2, 0}, {q, 1}}), RatK(4) * c);
  p.add_term(mono({{a1, 0}, {a3, 0}, {q, 1}}), RatK(2) * c);
  p.add_term(mono({{a1, 0}, {a2, 1}, {q, 0}}), c);
  p.add_term(mono({{a1, 0}, {q, 1}, {q, 0}}), RatK(9) * c);
  p.add_term(mono({{a2, 0}, {a2, 0}, {q, 1}}), c);
  p.add_term(mono({{a2, 0}, {a3, 0}, {q, 1}}), c);
  p.add_term(mono({{a2, 0}, {q, 1}, {q, 0}}), RatK(6) * c);
  p.add_term(mono({{a3, 0}, {q, 1}, {q, 0}}), RatK(3) * c);
  p.add_term(mono({{a1, 1}, {a1, 0}, {q, 0}}), RatK(3) * c);
  p.add_term(mono({{a1, 1}, {a2, 0}, {q, 0}}), RatK(2) * c);
  p.add_term(mono({{a1, 1}, {a3, 0}, {q, 0}}), c);
  p.add_term(mono({{a1, 1}, {q, 0}, {q, 0}}), RatK(3) * c);
  p.add_term(mono({{a2, 1}, {q, 0}, {q, 0}}), c);
  p.add_term(mono({{q, 1}, {q, 0}, {q, 0}}), RatK(6) * c);
  // (k+3)^2
  p.add_term(mono({{q, 1}, {q, 1}}), RatK(3) * c * c);
  p.add_term(mono({{a2, 1}, {q, 1}}), c * c);
  p.add_term(mono({{a1, 2}, {q, 0}}), c * c);
  p.add_term(mono({{a1, 1}, {q, 1}}), RatK(3) * c * c);
  p.add_term(mono({{a3, 0}, {q, 2}}), c * c);
  p.add_term(mono({{a2, 0}, {q, 2}}), RatK(2) * c * c);
  p.add_term(mono({{q, 2}, {q, 0}}), RatK(4) * c * c);
  p.add_term(mono({{a1, 0}, {q, 2}}), RatK(3) * c * c);
  // (k+3)^3
  p.add_term(mono({{q, 3}}), c * c * c);
  return p;
}

} // namespace w2n::frozen
