#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "w2n/lattice.hpp"

namespace w2n {

// One factor of a Wick monomial: d-th derivative of the dimension-1 current
// attached to a basis vector. Packed for cheap multiset comparisons.
struct CurrentKey {
  int label = 0;
  int deriv = 0;
  friend bool operator==(const CurrentKey& a, const CurrentKey& b) {
    return a.label == b.label && a.deriv == b.deriv;
  }
  friend bool operator<(const CurrentKey& a, const CurrentKey& b) {
    return a.label != b.label ? a.label < b.label : a.deriv < b.deriv;
  }
};

// Commutative monomial in the basis currents; factors kept sorted.
class DiffMono {
public:
  DiffMono() = default;
  explicit DiffMono(std::vector<CurrentKey> factors);
  static DiffMono unit() { return DiffMono(); }
  static DiffMono current(int label, int deriv = 0) { return DiffMono({CurrentKey{label, deriv}}); }

  const std::vector<CurrentKey>& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }
  int size() const { return static_cast<int>(factors_.size()); }
  int weight() const;
  DiffMono times(const DiffMono& o) const;
  DiffMono with_factor(CurrentKey f) const;

  friend bool operator==(const DiffMono& a, const DiffMono& b) { return a.factors_ == b.factors_; }
  friend bool operator<(const DiffMono& a, const DiffMono& b);

private:
  std::vector<CurrentKey> factors_;
};

// Wick-ordered differential polynomial: map monomial -> coefficient in Q(k).
// Zero coefficients are never stored. For currents whose mutual products are
// purely central double poles, right-nested normal products coincide with
// these commutative monomials, and the generator recursion only ever forms
// such products; left-nested products differ by derivative counterterms and
// are never used as monomials.
class WickPoly {
public:
  WickPoly() = default;
  static WickPoly unit() { return scalar(RatK::one()); }
  static WickPoly scalar(const RatK& c);
  static WickPoly current(int label, int deriv = 0, const RatK& c = RatK::one());

  bool is_zero() const { return terms_.empty(); }
  const std::map<DiffMono, RatK>& terms() const { return terms_; }
  RatK coeff(const DiffMono& m) const;
  int max_weight() const;

  void add_term(const DiffMono& m, const RatK& c);
  WickPoly& operator+=(const WickPoly& o);
  WickPoly& operator-=(const WickPoly& o);
  friend WickPoly operator+(WickPoly a, const WickPoly& b) { return a += b; }
  friend WickPoly operator-(WickPoly a, const WickPoly& b) { return a -= b; }
  friend WickPoly operator*(const WickPoly& a, const WickPoly& b);
  WickPoly scaled(const RatK& c) const;
  WickPoly derivative() const;  // Leibniz; raises the weight by one
  WickPoly weight_component(int w) const;

  friend bool operator==(const WickPoly& a, const WickPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const WickPoly& a, const WickPoly& b) { return !(a == b); }

private:
  std::map<DiffMono, RatK> terms_;
};

// Momentum plus Wick polynomial: P(currents) e^{(p, phi)}.
struct VertexField {
  Momentum momentum;
  WickPoly poly;

  bool is_zero() const { return poly.is_zero(); }
  friend bool operator==(const VertexField& a, const VertexField& b) {
    return a.momentum == b.momentum && a.poly == b.poly;
  }
  friend bool operator!=(const VertexField& a, const VertexField& b) { return !(a == b); }
};

VertexField field_zero(const RootData& rd);
VertexField field_identity(const RootData& rd);
VertexField field_current(const RootData& rd, int label, int deriv = 0);
VertexField field_exponential(const RootData& rd, const Momentum& p, WickPoly poly = WickPoly::unit());
VertexField field_add(const VertexField& a, const VertexField& b);  // requires equal momenta
VertexField field_scale(const RatK& c, const VertexField& f);

// The grading label: poly weight + (p,p)/2. A bookkeeping grade, not the
// conformal weight (which includes the background charge).
RatK grading_label(const RootData& rd, const VertexField& f);

// Exact Laurent expansion of f(z) g(w) about w:
//   f(z) g(w) = sum_j coeff[j](w) (z-w)^{offset - j},
// offset = pairing(p_f, p_g). Pole orders are read relative to the offset;
// all singular terms plus regular orders down to exponent offset+depth are kept.
struct LaurentOPE {
  RatK offset;
  std::map<int, VertexField> coeffs;  // relative order j -> field (momentum p_f + p_g)
  int depth = 0;
  Momentum total_momentum;

  bool offset_is_integer() const { return offset.is_integer_constant(); }
  VertexField coeff_rel(int j, const RootData& rd) const;
  // Coefficient of the actual pole (z-w)^{-order}; requires integer offset.
  VertexField coeff_at_pole(int order, const RootData& rd) const;
  int max_rel_order() const;
};

LaurentOPE ope(const VertexField& f, const VertexField& g, int depth, const RootData& rd);

// j-th order pole coefficient (actual order); throws errc::nonlocal_product
// when the offset is not an integer constant.
VertexField bracket(const VertexField& f, const VertexField& g, int order, const RootData& rd);

// Coefficient of (z-w)^0, i.e. the normal-ordered product.
VertexField normal_product(const VertexField& f, const VertexField& g, const RootData& rd);

// d(P e^{p phi}) = (dP + X_p P) e^{p phi} with X_p the current of p.
VertexField derivative(const VertexField& f, const RootData& rd);

// Solve derivative(S) = r; returns nullopt when r is not a total derivative.
std::optional<VertexField> total_derivative_solve(const VertexField& r, const RootData& rd);

// Exact substitution k -> value. Throws errc::domain on excluded values and on
// poles, naming the offending coefficient.
RatK specialize_k(const RatK& c, const BigRat& value, const RootData& rd);
VertexField specialize_k(const VertexField& f, const BigRat& value, const RootData& rd);

// All monomials of the given weight over the realization's currents.
std::vector<DiffMono> monomials_of_weight(const RootData& rd, int weight);

// Canonical text rendering: "A1 A1 Q", "d^2(Q)", "exp(+Xi)".
std::string render_text(const RootData& rd, const DiffMono& m);
std::string render_text(const RootData& rd, const VertexField& f);
std::string render_text(const RootData& rd, const LaurentOPE& o);

} // namespace w2n
