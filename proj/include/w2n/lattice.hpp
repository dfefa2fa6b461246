#pragma once

#include <string>
#include <vector>

#include "w2n/matk.hpp"
#include "w2n/ratk.hpp"

namespace w2n {

// Basis vector of a realization n[m]: the bosonic roots a_i (i != 0, negative
// indices for the right tail of the Dynkin chain), the odd roots psi+/psi-,
// and the isotropic vector xi (whose current is Y).
struct Label {
  enum class kind { a, q_plus, q_minus, y };
  kind k = kind::y;
  int index = 0;  // only for kind::a

  static Label a(int i) { return {kind::a, i}; }
  static Label q_plus() { return {kind::q_plus, 0}; }
  static Label q_minus() { return {kind::q_minus, 0}; }
  static Label y() { return {kind::y, 0}; }

  friend bool operator==(const Label& x, const Label& y) { return x.k == y.k && x.index == y.index; }
};

class RootData;

// A momentum is a formal linear combination of the basis vectors, stored
// densely in the RootData label order.
using Momentum = std::vector<RatK>;

Momentum momentum_zero(const RootData& rd);
Momentum momentum_basis(const RootData& rd, int label_index);
Momentum momentum_add(const Momentum& p, const Momentum& q);
Momentum momentum_sub(const Momentum& p, const Momentum& q);
Momentum momentum_scale(const RatK& c, const Momentum& p);
bool momentum_is_zero(const Momentum& p);

// Root-system data of the realization n[m]: label order
//   A_{n-m-1}, ..., A_1, Q+, Q-, A_{-1}, ..., A_{-m+1}, Y
// with Q- and the negative A's absent for m = 0 and Q+ absent for m = n.
class RootData {
public:
  static RootData build(int n, int m);
  // Same data with the level specialized to a numeric value (guards the
  // excluded set).
  static RootData build_at(int n, int m, const BigRat& k_value);

  int n() const { return n_; }
  int m() const { return m_; }
  int dim() const { return static_cast<int>(labels_.size()); }  // n + 1
  const std::vector<Label>& labels() const { return labels_; }
  const Label& label_at(int i) const { return labels_[i]; }
  std::string label_name(int i) const;
  int index_of(const Label& l) const;      // -1 when absent
  int index_of_name(const std::string& name) const;

  bool has_q_plus() const { return m_ < n_; }
  bool has_q_minus() const { return m_ > 0; }
  int index_a(int i) const { return index_of(Label::a(i)); }
  int index_q_plus() const { return index_of(Label::q_plus()); }
  int index_q_minus() const { return index_of(Label::q_minus()); }
  int index_y() const { return index_of(Label::y()); }

  const MatK& gram() const { return gram_; }
  RatK pairing(const Momentum& p, const Momentum& q) const;
  std::vector<RatK> pairings_with(const Momentum& p) const;  // gram * p

  // k values the free-field construction excludes: -n and -n(n-2)/(n-1).
  const std::vector<BigRat>& excluded_k() const { return excluded_; }

private:
  RootData() = default;
  int n_ = 0, m_ = 0;
  std::vector<Label> labels_;
  MatK gram_;
  std::vector<BigRat> excluded_;
};

// Closed-form constants of the algebra, as exact rational functions of k.
namespace constants {

RatK ell(int n);                            // ((n-1)/n) k + n - 2
RatK ell(int n, const RatK& k_expr);
RatK lambda(int n, int m);                  // prod_{i=1..m} (i(k+n-1) - 1); lambda(0) = 1
RatK lambda(int n, int m, const RatK& k_expr);
RatK central_charge(int n);
RatK central_charge(int n, const RatK& k_expr);
RatK dual_level(int n);                     // k' with (k+n-1)(k'+n-1) = 1
BigRat minimal_model_charge(const BigRat& p, const BigRat& pp, long m);

} // namespace constants

struct DistinguishedMomenta {
  Momentum xi;
  // The highest-weight vertex momentum exists for m <= n-1 and the dual one
  // for m >= 1; at the boundary realizations the missing vertex is the image
  // of the opposite boundary under the chain-reversing automorphism.
  Momentum v_nm;
  Momentum v_star_nm;
  bool has_v = false;
  bool has_v_star = false;
  std::vector<std::pair<std::string, Momentum>> first_screenings;   // E_i, Psi(+/-)
  std::vector<std::pair<std::string, Momentum>> second_screenings;  // S_{n,i}, i != 0
  Momentum s0_exponential;  // -(psi+ + psi-)/(k+n); valid for 1 <= m <= n-1
  bool has_s0 = false;
};

DistinguishedMomenta distinguished_momenta(const RootData& rd);

struct IdentityCheck {
  std::string id;
  std::string detail;
  bool pass = false;
  std::string witness;
  bool optional_check = false;  // a failure downgrades to a warning
  bool skipped = false;         // not applicable for these parameters
};

// Determinant, explicit inverse and xi-vector identities for 2 <= n <= n_max.
std::vector<IdentityCheck> verify_gram_identities(int n_max);

} // namespace w2n
