#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "w2n/error.hpp"

namespace w2n {

// Arbitrary-precision rational. mpq_class keeps gcd(num, den) = 1 and den > 0.
using BigRat = mpq_class;

BigRat bigrat_of(long num, long den = 1);
BigRat bigrat_parse(const std::string& text);
std::string to_string(const BigRat& r);

// Dense polynomial in the formal level parameter k over BigRat.
// Invariant: coeffs.empty() for the zero polynomial, otherwise coeffs.back() != 0.
class PolyK {
public:
  PolyK() = default;
  explicit PolyK(BigRat c);
  PolyK(std::initializer_list<BigRat> ascending);

  static PolyK zero() { return PolyK(); }
  static PolyK one() { return PolyK(BigRat(1)); }
  static PolyK k();                 // the variable itself
  static PolyK k_plus(long c);      // k + c

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  const BigRat& coeff(int d) const;
  const BigRat& leading() const;
  const std::vector<BigRat>& coeffs() const { return coeffs_; }

  PolyK operator-() const;
  PolyK& operator+=(const PolyK& o);
  PolyK& operator-=(const PolyK& o);
  friend PolyK operator+(PolyK a, const PolyK& b) { return a += b; }
  friend PolyK operator-(PolyK a, const PolyK& b) { return a -= b; }
  friend PolyK operator*(const PolyK& a, const PolyK& b);
  PolyK& operator*=(const PolyK& o) { return *this = *this * o; }

  friend bool operator==(const PolyK& a, const PolyK& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const PolyK& a, const PolyK& b) { return !(a == b); }

  PolyK scaled(const BigRat& c) const;
  PolyK monic() const;

  // Quotient/remainder with respect to a nonzero divisor.
  static void divmod(const PolyK& a, const PolyK& b, PolyK& q, PolyK& r);
  static PolyK gcd(PolyK a, PolyK b);  // monic gcd; gcd(0, 0) = 0

  BigRat eval(const BigRat& x) const;

  std::string str() const;  // expanded form, e.g. "2*k^2+5*k+3"

private:
  void trim();
  std::vector<BigRat> coeffs_;  // coeffs_[d] multiplies k^d
};

// Rational function in k, kept in canonical form:
// gcd(num, den) = 1, den monic, zero is 0/1.
class RatK {
public:
  RatK() : num_(), den_(PolyK::one()) {}
  RatK(long v) : RatK(PolyK(BigRat(v)), PolyK::one()) {}
  RatK(BigRat v) : RatK(PolyK(std::move(v)), PolyK::one()) {}
  RatK(PolyK num, PolyK den);

  static RatK zero() { return RatK(); }
  static RatK one() { return RatK(1); }
  static RatK k() { return RatK(PolyK::k(), PolyK::one()); }
  static RatK k_plus(long c) { return RatK(PolyK::k_plus(c), PolyK::one()); }
  static RatK ratio(long num, long den) { return RatK(bigrat_of(num, den)); }

  const PolyK& num() const { return num_; }
  const PolyK& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  bool is_integer_constant() const;
  long as_integer() const;  // requires is_integer_constant()

  RatK operator-() const;
  friend RatK operator+(const RatK& a, const RatK& b);
  friend RatK operator-(const RatK& a, const RatK& b);
  friend RatK operator*(const RatK& a, const RatK& b);
  friend RatK operator/(const RatK& a, const RatK& b);  // throws on b == 0
  RatK& operator+=(const RatK& o) { return *this = *this + o; }
  RatK& operator-=(const RatK& o) { return *this = *this - o; }
  RatK& operator*=(const RatK& o) { return *this = *this * o; }
  RatK& operator/=(const RatK& o) { return *this = *this / o; }

  friend bool operator==(const RatK& a, const RatK& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatK& a, const RatK& b) { return !(a == b); }

  RatK inverse() const;

  // Exact substitution k -> x; throws errc::domain when x is a pole.
  BigRat eval(const BigRat& x) const;
  bool has_pole_at(const BigRat& x) const;

  // Substitution homomorphism k -> g(k).
  RatK substitute(const RatK& g) const;

  // Canonical rendering "num/den" with integral primitive parts, e.g. "(2*k+3)/3".
  std::string str() const;

private:
  void normalize();
  PolyK num_, den_;
};

enum class ratk_op { add, sub, mul, div };
RatK ratk_arith(const RatK& a, const RatK& b, ratk_op op);

} // namespace w2n
