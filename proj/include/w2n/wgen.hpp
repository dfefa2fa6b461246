#pragma once

#include <string>
#include <vector>

#include "w2n/screenings.hpp"
#include "w2n/wick.hpp"

namespace w2n {

struct GeneratorSet {
  int n = 0, m = 0;
  VertexField E, H, F, T;
};

// R^+_i = Q+ + A_1 + ... + A_i and R^-_i = Q- + A_{-1} + ... + A_{-i}.
struct RCurrents {
  std::vector<WickPoly> r_plus;
  std::vector<WickPoly> r_minus;
};

// P_d^{(k+shift)} over A_{d-1}, ..., A_1, Q+, built by the recursion
//   P_d = ((k+d-1+shift) d + Q + sum_i A_i) P_{d-1}^{(k+1+shift)},  P_1 = Q.
// P_0 = 1 by convention.
WickPoly p_poly(const RootData& rd, int degree, int shift);
// Mirror image over A_{-1}, ..., A_{-deg+1}, Q-.
WickPoly p_poly_dagger(const RootData& rd, int degree, int shift);

RCurrents build_r_currents(const RootData& rd);

GeneratorSet generators_recursive(const RootData& rd);
GeneratorSet generators_factored(const RootData& rd);

VertexField h_current(const RootData& rd);
// Energy-momentum tensor: the explicit Gram-inverse formula for m = 0, the
// E F pole extraction for n >= 3, the normalized weight-2 commutant for (2,1).
VertexField energy_momentum(const RootData& rd);
VertexField t_lemma_formula(const RootData& rd);  // m = 0 only

// U_i = coefficient of the pole of order n-i in E(z)F(w).
std::vector<VertexField> extract_u_currents(const RootData& rd);

// Right-nested normal-ordered composites :a (:b c:):, the convention used in
// all tabulated composite operators.
VertexField np(const VertexField& a, const VertexField& b, const RootData& rd);
VertexField np(const VertexField& a, const VertexField& b, const VertexField& c, const RootData& rd);

// The weight-3 current of the pole of order n-3 (n >= 4), defined by
// subtraction per the generic E F expansion.
VertexField w3_current(const RootData& rd, const GeneratorSet& g);

// n = 4 derived currents: the weight-4 primary from its closed formula and
// the weight-5 primary extracted from the second-order pole of W Lambda.
VertexField w4_lambda(const RootData& rd, const GeneratorSet& g, const VertexField& w);
VertexField w4_z(const RootData& rd, const GeneratorSet& g, const VertexField& w,
                 const VertexField& lambda);

std::vector<IdentityCheck> ope_structure_check(const RootData& rd);
std::vector<IdentityCheck> bp_table_check();                 // n = 3 coefficient table
std::vector<IdentityCheck> w4_report(const RootData& rd);    // n = 4 appendix tables
std::vector<IdentityCheck> primary_vertices_check(const RootData& rd);
std::vector<IdentityCheck> identity_suite(int n_max);
std::vector<IdentityCheck> realization_independence_check(int n);

} // namespace w2n
