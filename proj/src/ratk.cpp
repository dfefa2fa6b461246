#include "w2n/ratk.hpp"

#include <algorithm>
#include <sstream>

namespace w2n {

BigRat bigrat_of(long num, long den) {
  if (den == 0) fail(errc::division_by_zero, "rational with zero denominator");
  BigRat r(num, den);
  r.canonicalize();
  return r;
}

BigRat bigrat_parse(const std::string& text) {
  try {
    BigRat r(text);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    fail(errc::parse, "not a rational number: '" + text + "'");
  }
}

std::string to_string(const BigRat& r) { return r.get_str(); }

PolyK::PolyK(BigRat c) {
  if (c != 0) coeffs_.push_back(std::move(c));
}

PolyK::PolyK(std::initializer_list<BigRat> ascending) : coeffs_(ascending) { trim(); }

PolyK PolyK::k() { return PolyK{BigRat(0), BigRat(1)}; }

PolyK PolyK::k_plus(long c) { return PolyK{BigRat(c), BigRat(1)}; }

void PolyK::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const BigRat& PolyK::coeff(int d) const {
  static const BigRat zero(0);
  if (d < 0 || d >= static_cast<int>(coeffs_.size())) return zero;
  return coeffs_[d];
}

const BigRat& PolyK::leading() const {
  if (is_zero()) fail(errc::invalid_argument, "leading coefficient of zero polynomial");
  return coeffs_.back();
}

PolyK PolyK::operator-() const {
  PolyK r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

PolyK& PolyK::operator+=(const PolyK& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), BigRat(0));
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

PolyK& PolyK::operator-=(const PolyK& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), BigRat(0));
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

PolyK operator*(const PolyK& a, const PolyK& b) {
  if (a.is_zero() || b.is_zero()) return PolyK();
  PolyK r;
  r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, BigRat(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  r.trim();
  return r;
}

PolyK PolyK::scaled(const BigRat& c) const {
  if (c == 0) return PolyK();
  PolyK r = *this;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

PolyK PolyK::monic() const {
  if (is_zero()) return *this;
  return scaled(BigRat(1) / leading());
}

void PolyK::divmod(const PolyK& a, const PolyK& b, PolyK& q, PolyK& r) {
  if (b.is_zero()) fail(errc::division_by_zero, "polynomial division by zero");
  q = PolyK();
  r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int d = r.degree() - b.degree();
    BigRat c = r.leading() / b.leading();
    PolyK term;
    term.coeffs_.assign(d + 1, BigRat(0));
    term.coeffs_[d] = c;
    q += term;
    r -= term * b;
  }
}

PolyK PolyK::gcd(PolyK a, PolyK b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.degree() == 0 || b.degree() == 0) return PolyK::one();
  // Monic Euclidean algorithm; keeping remainders monic controls coefficient growth.
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    PolyK q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = r.monic();
  }
  return a;
}

BigRat PolyK::eval(const BigRat& x) const {
  BigRat acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

namespace {

std::string rat_coeff_str(const BigRat& c, bool leading_term) {
  std::string s = c.get_str();
  if (!leading_term && !s.empty() && s[0] != '-') s = "+" + s;
  return s;
}

} // namespace

std::string PolyK::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int d = degree(); d >= 0; --d) {
    const BigRat& c = coeff(d);
    if (c == 0) continue;
    if (d == 0) {
      os << rat_coeff_str(c, first);
    } else {
      if (c == 1)
        os << (first ? "" : "+");
      else if (c == -1)
        os << "-";
      else
        os << rat_coeff_str(c, first) << "*";
      os << "k";
      if (d > 1) os << "^" << d;
    }
    first = false;
  }
  return os.str();
}

RatK::RatK(PolyK num, PolyK den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(errc::division_by_zero, "rational function with zero denominator");
  normalize();
}

void RatK::normalize() {
  if (num_.is_zero()) {
    den_ = PolyK::one();
    return;
  }
  if (den_.degree() == 0) {
    // Constant denominator: just rescale.
    BigRat lead = den_.coeff(0);
    if (lead != 1) {
      num_ = num_.scaled(BigRat(1) / lead);
      den_ = PolyK::one();
    }
    return;
  }
  PolyK g = PolyK::gcd(num_, den_);
  if (g.degree() > 0) {
    PolyK q, r;
    PolyK::divmod(num_, g, q, r);
    num_ = q;
    PolyK::divmod(den_, g, q, r);
    den_ = q;
  }
  BigRat lead = den_.leading();
  if (lead != 1) {
    BigRat inv = BigRat(1) / lead;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

bool RatK::is_integer_constant() const {
  if (!is_constant()) return false;
  if (num_.is_zero()) return true;
  return num_.coeff(0).get_den() == 1;
}

long RatK::as_integer() const {
  if (!is_integer_constant()) fail(errc::invalid_argument, "not an integer constant: " + str());
  if (num_.is_zero()) return 0;
  return static_cast<long>(num_.coeff(0).get_num().get_si());
}

RatK RatK::operator-() const {
  RatK r = *this;
  r.num_ = -r.num_;
  return r;
}

namespace {

PolyK divexact(const PolyK& a, const PolyK& g) {
  if (g.degree() == 0) return g.coeff(0) == 1 ? a : a.scaled(BigRat(1) / g.coeff(0));
  PolyK q, r;
  PolyK::divmod(a, g, q, r);
  return q;
}

} // namespace

RatK operator+(const RatK& a, const RatK& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatK(a.num_ + b.num_, a.den_);
  return RatK(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatK operator-(const RatK& a, const RatK& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a.den_ == b.den_) return RatK(a.num_ - b.num_, a.den_);
  return RatK(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatK operator*(const RatK& a, const RatK& b) {
  if (a.is_zero() || b.is_zero()) return RatK();
  // Cross-reduction keeps the factors coprime, so the product needs no gcd.
  PolyK g1 = PolyK::gcd(a.num_, b.den_);
  PolyK g2 = PolyK::gcd(b.num_, a.den_);
  RatK r;
  r.num_ = divexact(a.num_, g1) * divexact(b.num_, g2);
  r.den_ = divexact(a.den_, g2) * divexact(b.den_, g1);
  BigRat lead = r.den_.leading();
  if (lead != 1) {
    BigRat inv = BigRat(1) / lead;
    r.num_ = r.num_.scaled(inv);
    r.den_ = r.den_.scaled(inv);
  }
  return r;
}

RatK operator/(const RatK& a, const RatK& b) {
  if (b.is_zero()) fail(errc::division_by_zero, "division by zero rational function");
  if (a.is_zero()) return RatK();
  return RatK(a.num_ * b.den_, a.den_ * b.num_);
}

RatK RatK::inverse() const {
  if (is_zero()) fail(errc::division_by_zero, "inverse of zero");
  return RatK(den_, num_);
}

bool RatK::has_pole_at(const BigRat& x) const { return den_.eval(x) == 0; }

BigRat RatK::eval(const BigRat& x) const {
  BigRat d = den_.eval(x);
  if (d == 0) fail(errc::domain, "pole of " + str() + " at k = " + to_string(x));
  return num_.eval(x) / d;
}

RatK RatK::substitute(const RatK& g) const {
  // Horner over RatK on numerator and denominator separately.
  auto eval_poly = [&](const PolyK& p) {
    RatK acc;
    for (int d = p.degree(); d >= 0; --d) acc = acc * g + RatK(p.coeff(d));
    return acc;
  };
  RatK den = eval_poly(den_);
  if (den.is_zero()) fail(errc::domain, "substitution maps into a pole of " + str());
  return eval_poly(num_) / den;
}

namespace {

// Integer-primitive rendering: scale so both parts have integer coprime coefficients.
void primitive_parts(const PolyK& num, const PolyK& den, PolyK& pnum, PolyK& pden) {
  mpz_class lcm_den(1), gcd_num(0);
  auto absorb = [&](const PolyK& p) {
    for (const auto& c : p.coeffs()) {
      if (c == 0) continue;
      mpz_class d = c.get_den();
      mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
    }
  };
  absorb(num);
  absorb(den);
  auto gcd_of = [&](const PolyK& p) {
    for (const auto& c : p.coeffs()) {
      if (c == 0) continue;
      mpz_class n = c.get_num() * (lcm_den / c.get_den());
      mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), n.get_mpz_t());
    }
  };
  gcd_of(num);
  gcd_of(den);
  if (gcd_num == 0) gcd_num = 1;
  BigRat scale(lcm_den, gcd_num);
  scale.canonicalize();
  pnum = num.scaled(scale);
  pden = den.scaled(scale);
}

} // namespace

std::string RatK::str() const {
  if (is_zero()) return "0";
  PolyK pnum, pden;
  primitive_parts(num_, den_, pnum, pden);
  if (pden.leading() < 0) {
    pnum = -pnum;
    pden = -pden;
  }
  std::string ns = pnum.str();
  if (pden.degree() == 0 && pden.coeff(0) == 1) return ns;
  std::string ds = pden.str();
  auto wrap = [](const std::string& s) {
    bool atomic = s.find_first_of("+*^") == std::string::npos && s.find('-', 1) == std::string::npos;
    return atomic ? s : "(" + s + ")";
  };
  return wrap(ns) + "/" + wrap(ds);
}

RatK ratk_arith(const RatK& a, const RatK& b, ratk_op op) {
  switch (op) {
    case ratk_op::add: return a + b;
    case ratk_op::sub: return a - b;
    case ratk_op::mul: return a * b;
    case ratk_op::div: return a / b;
  }
  fail(errc::internal, "unknown ratk_op");
}

} // namespace w2n
