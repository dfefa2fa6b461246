#include "w2n/lattice.hpp"

#include <sstream>

namespace w2n {

Momentum momentum_zero(const RootData& rd) { return Momentum(rd.dim()); }

Momentum momentum_basis(const RootData& rd, int label_index) {
  Momentum p(rd.dim());
  if (label_index < 0 || label_index >= rd.dim()) fail(errc::invalid_argument, "label index out of range");
  p[label_index] = RatK::one();
  return p;
}

Momentum momentum_add(const Momentum& p, const Momentum& q) {
  Momentum r = p;
  for (size_t i = 0; i < r.size(); ++i) r[i] += q[i];
  return r;
}

Momentum momentum_sub(const Momentum& p, const Momentum& q) {
  Momentum r = p;
  for (size_t i = 0; i < r.size(); ++i) r[i] -= q[i];
  return r;
}

Momentum momentum_scale(const RatK& c, const Momentum& p) {
  Momentum r = p;
  for (auto& x : r) x *= c;
  return r;
}

bool momentum_is_zero(const Momentum& p) {
  for (const auto& x : p)
    if (!x.is_zero()) return false;
  return true;
}

RootData RootData::build(int n, int m) {
  if (n < 2) fail(errc::invalid_argument, "realization requires n >= 2");
  if (m < 0 || m > n) fail(errc::domain, "realization index m out of range [0, n]");
  RootData rd;
  rd.n_ = n;
  rd.m_ = m;
  for (int i = n - m - 1; i >= 1; --i) rd.labels_.push_back(Label::a(i));
  if (m < n) rd.labels_.push_back(Label::q_plus());
  if (m > 0) rd.labels_.push_back(Label::q_minus());
  for (int i = -1; i >= -m + 1; --i) rd.labels_.push_back(Label::a(i));
  rd.labels_.push_back(Label::y());

  int d = static_cast<int>(rd.labels_.size());
  rd.gram_ = MatK(d, d);
  RatK K = RatK::k_plus(n);

  // Diagonal and Y pairings.
  for (int i = 0; i < d; ++i) {
    switch (rd.labels_[i].k) {
      case Label::kind::a: rd.gram_.at(i, i) = RatK(2) * K; break;
      case Label::kind::q_plus:
      case Label::kind::q_minus: rd.gram_.at(i, i) = RatK::one(); break;
      case Label::kind::y: rd.gram_.at(i, i) = RatK::zero(); break;
    }
  }
  int y = d - 1;
  if (rd.has_q_plus()) rd.gram_.at(rd.index_q_plus(), y) = rd.gram_.at(y, rd.index_q_plus()) = RatK::one();
  if (rd.has_q_minus()) rd.gram_.at(rd.index_q_minus(), y) = rd.gram_.at(y, rd.index_q_minus()) = RatK(-1);

  // The Dynkin chain: consecutive labels in list order (Y excluded).
  for (int i = 0; i + 1 < d - 1; ++i) {
    bool odd_pair = rd.labels_[i].k == Label::kind::q_plus && rd.labels_[i + 1].k == Label::kind::q_minus;
    RatK v = odd_pair ? K - RatK::one() : -K;
    rd.gram_.at(i, i + 1) = rd.gram_.at(i + 1, i) = v;
  }

  rd.excluded_.push_back(BigRat(-n));
  rd.excluded_.push_back(bigrat_of(-static_cast<long>(n) * (n - 2), n - 1));
  return rd;
}

RootData RootData::build_at(int n, int m, const BigRat& k_value) {
  RootData rd = build(n, m);
  for (const auto& ex : rd.excluded_)
    if (k_value == ex) fail(errc::domain, "k = " + to_string(k_value) + " is excluded for this realization");
  for (int r = 0; r < rd.dim(); ++r)
    for (int c = 0; c < rd.dim(); ++c) rd.gram_.at(r, c) = RatK(rd.gram_.at(r, c).eval(k_value));
  return rd;
}

std::string RootData::label_name(int i) const {
  const Label& l = labels_[i];
  switch (l.k) {
    case Label::kind::a: return "A" + std::to_string(l.index);
    case Label::kind::q_plus: return m_ == 0 ? "Q" : "Q+";
    case Label::kind::q_minus: return m_ == n_ ? "Q" : "Q-";
    case Label::kind::y: return "Y";
  }
  return "?";
}

int RootData::index_of(const Label& l) const {
  for (int i = 0; i < dim(); ++i)
    if (labels_[i] == l) return i;
  return -1;
}

int RootData::index_of_name(const std::string& name) const {
  if (name == "Y") return index_y();
  if (name == "Q+" || (name == "Q" && m_ < n_)) return index_q_plus();
  if (name == "Q-" || (name == "Q" && m_ == n_)) return index_q_minus();
  if (name.size() >= 2 && name[0] == 'A') {
    try {
      return index_a(std::stoi(name.substr(1)));
    } catch (...) {
      return -1;
    }
  }
  return -1;
}

RatK RootData::pairing(const Momentum& p, const Momentum& q) const {
  if (static_cast<int>(p.size()) != dim() || static_cast<int>(q.size()) != dim())
    fail(errc::invalid_argument, "momentum not supported on this realization");
  RatK acc;
  for (int i = 0; i < dim(); ++i) {
    if (p[i].is_zero()) continue;
    for (int j = 0; j < dim(); ++j) {
      if (q[j].is_zero()) continue;
      acc += p[i] * gram_.at(i, j) * q[j];
    }
  }
  return acc;
}

std::vector<RatK> RootData::pairings_with(const Momentum& p) const { return gram_.apply(p); }

namespace constants {

RatK ell(int n) {
  return RatK(PolyK{BigRat(n * (n - 2)), BigRat(n - 1)}, PolyK(BigRat(n)));
}

RatK ell(int n, const RatK& k_expr) { return ell(n).substitute(k_expr); }

RatK lambda(int n, int m) {
  if (m < 0) fail(errc::invalid_argument, "lambda index must be >= 0");
  RatK r = RatK::one();
  for (int i = 1; i <= m; ++i) r *= RatK(i) * RatK::k_plus(n - 1) - RatK::one();
  return r;
}

RatK lambda(int n, int m, const RatK& k_expr) { return lambda(n, m).substitute(k_expr); }

RatK central_charge(int n) {
  RatK K = RatK::k_plus(n);
  RatK num = (K * RatK(n - 1) - RatK(n)) * (K * RatK((n - 2) * n) - RatK(n * n - 1));
  return -num / K;
}

RatK central_charge(int n, const RatK& k_expr) { return central_charge(n).substitute(k_expr); }

RatK dual_level(int n) {
  // (k+n-1)(k'+n-1) = 1  =>  k' = 1/(k+n-1) - (n-1)
  return RatK::k_plus(n - 1).inverse() - RatK(n - 1);
}

BigRat minimal_model_charge(const BigRat& p, const BigRat& pp, long m) {
  if (p == 0 || pp == 0) fail(errc::invalid_argument, "minimal model labels must be nonzero");
  BigRat f((m - 1) * m * (m + 1));
  return BigRat(2 * m * m * m - m - 1) - f * pp / p - f * p / pp;
}

} // namespace constants

DistinguishedMomenta distinguished_momenta(const RootData& rd) {
  int n = rd.n(), m = rd.m();
  DistinguishedMomenta out;
  out.xi = momentum_basis(rd, rd.index_y());

  RatK inv_nK = (RatK(n) * RatK::k_plus(n)).inverse();
  out.has_v = m <= n - 1;
  if (out.has_v) {
    out.v_nm = momentum_zero(rd);
    for (int j = -m + 1; j <= n - m - 1; ++j) {
      if (j == 0) continue;
      out.v_nm[rd.index_a(j)] = RatK(m + j) * inv_nK;
    }
    out.v_nm[rd.index_q_plus()] = RatK(m) * inv_nK;
    if (rd.has_q_minus()) out.v_nm[rd.index_q_minus()] = RatK(m) * inv_nK;
    out.v_nm[rd.index_y()] = RatK::ratio(1, n);
  }
  out.has_v_star = m >= 1;
  if (out.has_v_star) {
    out.v_star_nm = momentum_zero(rd);
    for (int j = 1; j <= n - 1; ++j) {
      if (j == n - m) continue;
      out.v_star_nm[rd.index_a(n - m - j)] = RatK(j) * inv_nK;
    }
    if (rd.has_q_plus()) out.v_star_nm[rd.index_q_plus()] = RatK(n - m) * inv_nK;
    out.v_star_nm[rd.index_q_minus()] = RatK(n - m) * inv_nK;
    out.v_star_nm[rd.index_y()] = RatK::ratio(-1, n);
  }

  for (int i = n - m - 1; i >= 1; --i)
    out.first_screenings.emplace_back("E" + std::to_string(i), momentum_basis(rd, rd.index_a(i)));
  if (rd.has_q_plus())
    out.first_screenings.emplace_back(m == 0 ? "Psi" : "Psi+", momentum_basis(rd, rd.index_q_plus()));
  if (rd.has_q_minus())
    out.first_screenings.emplace_back(m == n ? "Psi" : "Psi-", momentum_basis(rd, rd.index_q_minus()));
  for (int i = -1; i >= -m + 1; --i)
    out.first_screenings.emplace_back("E" + std::to_string(i), momentum_basis(rd, rd.index_a(i)));

  RatK minus_inv_K = -RatK::k_plus(n).inverse();
  for (int i = n - m - 1; i >= -m + 1; --i) {
    if (i == 0) continue;
    out.second_screenings.emplace_back(
        "S" + std::to_string(n) + "," + std::to_string(i),
        momentum_scale(minus_inv_K, momentum_basis(rd, rd.index_a(i))));
  }
  if (m >= 1 && m <= n - 1) {
    out.has_s0 = true;
    out.s0_exponential = momentum_scale(
        minus_inv_K,
        momentum_add(momentum_basis(rd, rd.index_q_plus()), momentum_basis(rd, rd.index_q_minus())));
  }
  return out;
}

namespace {

RatK pow_ratk(const RatK& b, int e) {
  RatK r = RatK::one();
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

IdentityCheck check_eq(const std::string& id, const std::string& detail, const RatK& got, const RatK& want) {
  IdentityCheck c{id, detail, got == want, {}};
  if (!c.pass) c.witness = "got " + got.str() + ", want " + want.str();
  return c;
}

} // namespace

std::vector<IdentityCheck> verify_gram_identities(int n_max) {
  if (n_max < 2) fail(errc::invalid_argument, "n_max must be >= 2");
  std::vector<IdentityCheck> out;
  for (int n = 2; n <= n_max; ++n) {
    RatK K = RatK::k_plus(n);
    RatK want_det = RatK(-n) * pow_ratk(K, n - 1);
    for (int m = 0; m <= n; ++m) {
      RootData rd = RootData::build(n, m);
      out.push_back(check_eq("gram-det-" + std::to_string(n) + "[" + std::to_string(m) + "]",
                             "det Gram(n=" + std::to_string(n) + ",m=" + std::to_string(m) +
                                 ") = -n(k+n)^(n-1)",
                             mat_det(rd.gram()), want_det));
    }

    // Explicit inverse for the maximally asymmetric realization.
    RootData rd0 = RootData::build(n, 0);
    MatK inv = mat_inverse(rd0.gram());
    MatK want(n + 1, n + 1);
    RatK inv_n = RatK::ratio(1, n);
    for (int r = 0; r < n - 1; ++r)
      for (int c = 0; c < n - 1; ++c) {
        int i = r + 1, j = c + 1;
        int lo = std::min(i, j), hi = std::max(i, j);
        want.at(r, c) = RatK((n - hi) * lo) * inv_n / K;
      }
    for (int r = 0; r < n - 1; ++r) {
      want.at(r, n - 1) = RatK::zero();
      want.at(n - 1, r) = RatK::zero();
      want.at(r, n) = RatK(r + 1) * inv_n;
      want.at(n, r) = RatK(r + 1) * inv_n;
    }
    want.at(n - 1, n - 1) = RatK::zero();
    want.at(n - 1, n) = RatK::one();
    want.at(n, n - 1) = RatK::one();
    want.at(n, n) = constants::ell(n);
    {
      IdentityCheck c{"gram-inverse-" + std::to_string(n), "explicit inverse of the (n+1)-dim Gram, m = 0",
                      inv == want, {}};
      if (!c.pass) c.witness = "inverse mismatch at n = " + std::to_string(n);
      out.push_back(c);
    }

    // The n-dimensional xi vector, reconstructed from its defining pairings.
    for (int m : {0, 1}) {
      if (m == 1 && n < 2) continue;
      RootData rd = RootData::build(n, m);
      int d = rd.dim() - 1;  // drop Y
      MatK sub(d, d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) sub.at(r, c) = rd.gram().at(r, c);

      RatK ell = constants::ell(n);
      RatK coef = -(RatK(n) * ell).inverse();
      std::vector<RatK> bs_xi(d);
      if (m == 0) {
        // -(1/(n ell_n)) (a_{n-1} + 2 a_{n-2} + ... + (n-1) a_1 + n psi)
        for (int j = 1; j <= n - 1; ++j) bs_xi[rd.index_a(j)] = RatK(n - j) * coef;
        bs_xi[rd.index_q_plus()] = RatK(n) * coef;
      } else {
        // -(1/(n ell_n)) (a_{n-2} + ... + (n-2) a_1 + (n-1) psi+ - psi-)
        for (int j = 1; j <= n - 2; ++j) bs_xi[rd.index_a(j)] = RatK(n - 1 - j) * coef;
        bs_xi[rd.index_q_plus()] = RatK(n - 1) * coef;
        bs_xi[rd.index_q_minus()] = -coef;
      }
      auto dot = [&](const std::vector<RatK>& x, const std::vector<RatK>& y) {
        RatK acc;
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c) acc += x[r] * sub.at(r, c) * y[c];
        return acc;
      };
      bool ok = true;
      std::string witness;
      std::vector<RatK> pair = sub.apply(bs_xi);
      for (int r = 0; r < d; ++r) {
        RatK want_pair;
        if (rd.label_at(r).k == Label::kind::q_plus) want_pair = RatK::one();
        if (rd.label_at(r).k == Label::kind::q_minus) want_pair = RatK(-1);
        if (pair[r] != want_pair) {
          ok = false;
          witness = "pairing of bs-xi with " + rd.label_name(r) + " = " + pair[r].str();
          break;
        }
      }
      RatK norm = dot(bs_xi, bs_xi);
      if (ok && norm != -ell.inverse()) {
        ok = false;
        witness = "bs-xi . bs-xi = " + norm.str();
      }
      out.push_back({"xi-vector-" + std::to_string(n) + "[" + std::to_string(m) + "]",
                     "n-dim xi has the defining pairings and norm -1/ell_n", ok, witness});
      if (m == 0) {
        out.push_back(check_eq("cartan-det-" + std::to_string(n),
                               "det of the n-dim dressed Cartan matrix = -(k+n)^(n-1) n ell_n",
                               mat_det(sub), -pow_ratk(K, n - 1) * RatK(n) * ell));
      }
    }
  }
  return out;
}

} // namespace w2n
