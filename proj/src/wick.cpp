#include "w2n/wick.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace w2n {

DiffMono::DiffMono(std::vector<CurrentKey> factors) : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end());
}

int DiffMono::weight() const {
  int w = 0;
  for (const auto& f : factors_) w += 1 + f.deriv;
  return w;
}

DiffMono DiffMono::times(const DiffMono& o) const {
  std::vector<CurrentKey> out;
  out.reserve(factors_.size() + o.factors_.size());
  std::merge(factors_.begin(), factors_.end(), o.factors_.begin(), o.factors_.end(), std::back_inserter(out));
  DiffMono m;
  m.factors_ = std::move(out);
  return m;
}

DiffMono DiffMono::with_factor(CurrentKey f) const {
  DiffMono m = *this;
  m.factors_.insert(std::upper_bound(m.factors_.begin(), m.factors_.end(), f), f);
  return m;
}

bool operator<(const DiffMono& a, const DiffMono& b) {
  // Graded order: weight first, then lexicographic on the packed factors.
  int wa = a.weight(), wb = b.weight();
  if (wa != wb) return wa < wb;
  return a.factors_ < b.factors_;
}

WickPoly WickPoly::scalar(const RatK& c) {
  WickPoly p;
  p.add_term(DiffMono::unit(), c);
  return p;
}

WickPoly WickPoly::current(int label, int deriv, const RatK& c) {
  WickPoly p;
  p.add_term(DiffMono::current(label, deriv), c);
  return p;
}

RatK WickPoly::coeff(const DiffMono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? RatK::zero() : it->second;
}

int WickPoly::max_weight() const {
  int w = 0;
  for (const auto& [m, c] : terms_) w = std::max(w, m.weight());
  return w;
}

void WickPoly::add_term(const DiffMono& m, const RatK& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

WickPoly& WickPoly::operator+=(const WickPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

WickPoly& WickPoly::operator-=(const WickPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

WickPoly operator*(const WickPoly& a, const WickPoly& b) {
  WickPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma.times(mb), ca * cb);
  return r;
}

WickPoly WickPoly::scaled(const RatK& c) const {
  WickPoly r;
  if (c.is_zero()) return r;
  for (const auto& [m, x] : terms_) r.terms_.emplace(m, x * c);
  return r;
}

WickPoly WickPoly::derivative() const {
  WickPoly r;
  for (const auto& [m, c] : terms_) {
    const auto& fs = m.factors();
    for (size_t i = 0; i < fs.size(); ++i) {
      std::vector<CurrentKey> nf = fs;
      nf[i].deriv += 1;
      r.add_term(DiffMono(std::move(nf)), c);
    }
  }
  return r;
}

WickPoly WickPoly::weight_component(int w) const {
  WickPoly r;
  for (const auto& [m, c] : terms_)
    if (m.weight() == w) r.terms_.emplace(m, c);
  return r;
}

VertexField field_zero(const RootData& rd) { return {momentum_zero(rd), WickPoly()}; }

VertexField field_identity(const RootData& rd) { return {momentum_zero(rd), WickPoly::unit()}; }

VertexField field_current(const RootData& rd, int label, int deriv) {
  if (label < 0 || label >= rd.dim()) fail(errc::invalid_argument, "unknown current label");
  return {momentum_zero(rd), WickPoly::current(label, deriv)};
}

VertexField field_exponential(const RootData& rd, const Momentum& p, WickPoly poly) {
  if (static_cast<int>(p.size()) != rd.dim()) fail(errc::invalid_argument, "momentum shape mismatch");
  return {p, std::move(poly)};
}

VertexField field_add(const VertexField& a, const VertexField& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (!(a.momentum == b.momentum)) fail(errc::invalid_argument, "adding fields with different momenta");
  return {a.momentum, a.poly + b.poly};
}

VertexField field_scale(const RatK& c, const VertexField& f) { return {f.momentum, f.poly.scaled(c)}; }

RatK grading_label(const RootData& rd, const VertexField& f) {
  return RatK(f.poly.max_weight()) + rd.pairing(f.momentum, f.momentum) * RatK::ratio(1, 2);
}

namespace {

RatK factorial(int n) {
  BigRat r(1);
  for (int i = 2; i <= n; ++i) r *= i;
  return RatK(r);
}

// Laurent polynomial in t = z - w with WickPoly coefficients; exponents above
// hi_limit are discarded on insertion.
struct Series {
  int hi_limit = 0;
  std::map<int, WickPoly> c;

  void add(int e, WickPoly p) {
    if (e > hi_limit || p.is_zero()) return;
    auto it = c.find(e);
    if (it == c.end()) {
      c.emplace(e, std::move(p));
    } else {
      it->second += p;
      if (it->second.is_zero()) c.erase(it);
    }
  }
};

Series series_mul(const Series& a, const Series& b) {
  Series r{a.hi_limit, {}};
  for (const auto& [ea, pa] : a.c)
    for (const auto& [eb, pb] : b.c) {
      if (ea + eb > r.hi_limit) continue;
      r.add(ea + eb, pa * pb);
    }
  return r;
}

// Taylor factor of the z-side exponential about w:
//   exp( sum_{u>=1} (t^u/u!) (p, d^u phi(w)) ),
// truncated at t^budget. (p, d^u phi) is the current sum_a p_a (J_a, u-1).
std::vector<WickPoly> exp_taylor(const RootData& rd, const Momentum& p, int budget) {
  std::vector<WickPoly> xp(budget + 1);
  for (int u = 1; u <= budget; ++u) {
    WickPoly cur;
    for (int a = 0; a < rd.dim(); ++a)
      if (!p[a].is_zero()) cur += WickPoly::current(a, u - 1, p[a] / factorial(u));
    xp[u] = std::move(cur);
  }
  std::vector<WickPoly> out(budget + 1);
  out[0] = WickPoly::unit();
  // E_r = (1/r) sum_{u=1..r} u * xp[u] * E_{r-u}
  for (int r = 1; r <= budget; ++r) {
    WickPoly acc;
    for (int u = 1; u <= r; ++u) {
      if (xp[u].is_zero() || out[r - u].is_zero()) continue;
      acc += (xp[u] * out[r - u]).scaled(RatK(u));
    }
    out[r] = acc.scaled(RatK::ratio(1, r));
  }
  return out;
}

// Least common denominator of the coefficients; scaling by it makes the
// polynomial part denominator-free, which keeps the expansion inside cheap
// polynomial arithmetic.
std::pair<WickPoly, RatK> factor_denominators(const WickPoly& p) {
  PolyK lcm = PolyK::one();
  for (const auto& [m, c] : p.terms()) {
    const PolyK& d = c.den();
    if (d.degree() == 0) continue;
    PolyK g = PolyK::gcd(lcm, d);
    PolyK q, r;
    PolyK::divmod(d, g, q, r);
    lcm = lcm * q;
  }
  if (lcm.degree() == 0) return {p, RatK::one()};
  RatK scale(lcm, PolyK::one());
  return {p.scaled(scale), scale.inverse()};
}

struct Assignment {
  RatK scalar;             // product of contraction coefficients
  int pole;                // total pole order from the current-current pairs
  std::vector<char> z_free;
  unsigned w_used;
};

// Enumerate matchings of z-factors onto distinct w-factors; unmatched factors
// stay free. Branches with vanishing pairings are pruned as they appear.
void collect_assignments(const std::vector<CurrentKey>& zf, const std::vector<CurrentKey>& wf,
                         const std::vector<std::vector<RatK>>& pj, size_t zi, unsigned used_mask, int pole,
                         const RatK& scalar, std::vector<char>& z_free, std::vector<Assignment>& out) {
  if (zi == zf.size()) {
    out.push_back({scalar, pole, z_free, used_mask});
    return;
  }
  z_free[zi] = 1;
  collect_assignments(zf, wf, pj, zi + 1, used_mask, pole, scalar, z_free, out);
  z_free[zi] = 0;
  const auto& f = zf[zi];
  for (size_t j = 0; j < wf.size(); ++j) {
    if (used_mask & (1u << j)) continue;
    const RatK& g = pj[zi][j];
    if (g.is_zero()) continue;
    const auto& h = wf[j];
    // <d^a J(z) d^b K(w)> = (j,k) (-1)^a (a+b+1)! t^(-2-a-b)
    RatK c = g * factorial(f.deriv + h.deriv + 1);
    if (f.deriv % 2) c = -c;
    collect_assignments(zf, wf, pj, zi + 1, used_mask | (1u << j), pole + 2 + f.deriv + h.deriv, scalar * c,
                        z_free, out);
  }
  z_free[zi] = 1;
}

} // namespace

LaurentOPE ope(const VertexField& f, const VertexField& g, int depth, const RootData& rd) {
  LaurentOPE result;
  result.offset = rd.pairing(f.momentum, g.momentum);
  result.depth = depth;
  result.total_momentum = momentum_add(f.momentum, g.momentum);
  if (f.is_zero() || g.is_zero()) return result;

  std::vector<RatK> gram_with_g = rd.pairings_with(g.momentum);  // (J_a, p_g)
  std::vector<RatK> gram_with_f = rd.pairings_with(f.momentum);  // (p_f, J_a)

  // Taylor budget bound: the deepest pole is at most sum over z-factors of
  // (2 + d) against w-factors plus exponential contractions.
  int zmax = 0, wmax = 0;
  for (const auto& [m, c] : f.poly.terms()) {
    int acc = 0;
    for (const auto& x : m.factors()) acc += 2 + x.deriv;
    zmax = std::max(zmax, acc);
  }
  for (const auto& [m, c] : g.poly.terms()) {
    int acc = 0;
    for (const auto& x : m.factors()) acc += 1 + x.deriv;
    wmax = std::max(wmax, acc);
  }
  std::vector<WickPoly> etaylor = exp_taylor(rd, f.momentum, std::max(0, zmax + wmax + depth));

  auto [fpoly, fscale] = factor_denominators(f.poly);
  auto [gpoly, gscale] = factor_denominators(g.poly);
  RatK unscale = fscale * gscale;

  std::map<int, WickPoly> coeffs;  // relative order -> poly

  for (const auto& [mf, cf] : fpoly.terms()) {
    const std::vector<CurrentKey>& zf = mf.factors();
    for (const auto& [mg, cg] : gpoly.terms()) {
      const std::vector<CurrentKey>& wf = mg.factors();
      RatK base_coeff = cf * cg;

      std::vector<std::vector<RatK>> pj(zf.size(), std::vector<RatK>(wf.size()));
      for (size_t i = 0; i < zf.size(); ++i)
        for (size_t j = 0; j < wf.size(); ++j) pj[i][j] = rd.gram().at(zf[i].label, wf[j].label);

      std::vector<Assignment> assigns;
      std::vector<char> z_free(zf.size(), 1);
      collect_assignments(zf, wf, pj, 0, 0u, 0, RatK::one(), z_free, assigns);

      for (const auto& as : assigns) {
        // Deepest pole the free factors can still contribute.
        int extra_pole = 0;
        for (size_t i = 0; i < zf.size(); ++i)
          if (as.z_free[i] && !gram_with_g[zf[i].label].is_zero()) extra_pole += 1 + zf[i].deriv;
        for (size_t j = 0; j < wf.size(); ++j)
          if (!(as.w_used & (1u << j)) && !gram_with_f[wf[j].label].is_zero()) extra_pole += 1 + wf[j].deriv;
        int budget = as.pole + extra_pole + depth;
        if (budget < 0) continue;

        // Series exponents are relative: actual t-exponent = e - (pole + extra_pole).
        int base = -(as.pole + extra_pole);
        Series acc{budget, {}};
        acc.add(0, WickPoly::scalar(as.scalar * base_coeff));

        // Free w-factors: either stay, or contract the z-exponential with
        // <e^{p phi(z)} d^b K(w)> = -(p,k) b! t^(-1-b).
        for (size_t j = 0; j < wf.size(); ++j) {
          if (as.w_used & (1u << j)) continue;
          const auto& h = wf[j];
          const RatK& pk = gram_with_f[h.label];
          Series fac{budget, {}};
          if (pk.is_zero()) {
            fac.add(0, WickPoly::current(h.label, h.deriv));
          } else {
            fac.add(1 + h.deriv, WickPoly::current(h.label, h.deriv));
            fac.add(0, WickPoly::scalar(-pk * factorial(h.deriv)));
          }
          acc = series_mul(acc, fac);
        }
        // Free z-factors: contract the w-exponential with
        // <d^a J(z) e^{q phi(w)}> = (j,q) (-1)^a a! t^(-1-a), or stay and
        // Taylor-expand about w.
        for (size_t i = 0; i < zf.size(); ++i) {
          if (!as.z_free[i]) continue;
          const auto& x = zf[i];
          const RatK& jq = gram_with_g[x.label];
          Series fac{budget, {}};
          int off = 0;
          if (!jq.is_zero()) {
            off = 1 + x.deriv;
            RatK c = jq * factorial(x.deriv);
            if (x.deriv % 2) c = -c;
            fac.add(0, WickPoly::scalar(c));
          }
          for (int u = 0; off + u <= budget; ++u)
            fac.add(off + u, WickPoly::current(x.label, x.deriv + u, factorial(u).inverse()));
          acc = series_mul(acc, fac);
        }
        // Taylor factor of the z-exponential.
        {
          Series fac{budget, {}};
          for (int u = 0; u <= budget && u < static_cast<int>(etaylor.size()); ++u)
            if (!etaylor[u].is_zero()) fac.add(u, etaylor[u]);
          acc = series_mul(acc, fac);
        }

        for (const auto& [e, p] : acc.c) {
          int actual = base + e;
          if (actual > depth) continue;
          auto [it, inserted] = coeffs.emplace(-actual, p);
          if (!inserted) it->second += p;
        }
      }
    }
  }

  for (auto& [j, p] : coeffs) {
    if (p.is_zero()) continue;
    WickPoly scaled = unscale.is_one() ? std::move(p) : p.scaled(unscale);
    if (scaled.is_zero()) continue;
    result.coeffs.emplace(j, VertexField{result.total_momentum, std::move(scaled)});
  }
  return result;
}

VertexField LaurentOPE::coeff_rel(int j, const RootData& rd) const {
  (void)rd;
  auto it = coeffs.find(j);
  if (it != coeffs.end()) return it->second;
  return VertexField{total_momentum, WickPoly()};
}

VertexField LaurentOPE::coeff_at_pole(int order, const RootData& rd) const {
  if (!offset_is_integer())
    fail(errc::nonlocal_product, "pole orders undefined for non-integer offset " + offset.str());
  return coeff_rel(order + static_cast<int>(offset.as_integer()), rd);
}

int LaurentOPE::max_rel_order() const {
  int m = 0;
  for (const auto& [j, c] : coeffs)
    if (!c.is_zero()) m = std::max(m, j);
  return m;
}

VertexField bracket(const VertexField& f, const VertexField& g, int order, const RootData& rd) {
  RatK off = rd.pairing(f.momentum, g.momentum);
  if (!off.is_integer_constant())
    fail(errc::nonlocal_product, "bracket of mutually nonlocal fields (offset " + off.str() + ")");
  int rel = order + static_cast<int>(off.as_integer());
  LaurentOPE o = ope(f, g, std::max(0, -rel) + 1, rd);
  return o.coeff_rel(rel, rd);
}

VertexField normal_product(const VertexField& f, const VertexField& g, const RootData& rd) {
  return bracket(f, g, 0, rd);
}

VertexField derivative(const VertexField& f, const RootData& rd) {
  WickPoly xp;
  for (int a = 0; a < rd.dim(); ++a)
    if (!f.momentum[a].is_zero()) xp += WickPoly::current(a, 0, f.momentum[a]);
  return {f.momentum, f.poly.derivative() + xp * f.poly};
}

std::vector<DiffMono> monomials_of_weight(const RootData& rd, int weight) {
  std::vector<DiffMono> out;
  std::vector<CurrentKey> cur;
  std::function<void(int, int, int)> rec = [&](int min_label, int min_deriv, int left) {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int lab = min_label; lab < rd.dim(); ++lab) {
      int d0 = (lab == min_label) ? min_deriv : 0;
      for (int d = d0; d + 1 <= left; ++d) {
        cur.push_back({lab, d});
        rec(lab, d, left - d - 1);
        cur.pop_back();
      }
    }
  };
  if (weight >= 0) rec(0, 0, weight);
  return out;
}

std::optional<VertexField> total_derivative_solve(const VertexField& r, const RootData& rd) {
  if (r.is_zero()) return VertexField{r.momentum, WickPoly()};

  // d is weight-homogeneous of degree +1 on the polynomial part.
  WickPoly solution;
  int maxw = r.poly.max_weight();
  for (int w = 0; w <= maxw; ++w) {
    WickPoly target = r.poly.weight_component(w);
    if (target.is_zero()) continue;
    if (w == 0) return std::nullopt;  // the image of d has no weight-0 part

    std::vector<DiffMono> basis = monomials_of_weight(rd, w - 1);
    if (basis.empty()) return std::nullopt;
    std::vector<WickPoly> images(basis.size());
    std::map<DiffMono, int> row_of;
    auto row = [&](const DiffMono& m) {
      auto [it, inserted] = row_of.emplace(m, static_cast<int>(row_of.size()));
      return it->second;
    };
    for (size_t i = 0; i < basis.size(); ++i) {
      WickPoly p;
      p.add_term(basis[i], RatK::one());
      images[i] = derivative(VertexField{r.momentum, p}, rd).poly;
      for (const auto& [m, c] : images[i].terms()) row(m);
    }
    for (const auto& [m, c] : target.terms()) row(m);

    MatK mat(static_cast<int>(row_of.size()), static_cast<int>(basis.size()));
    for (size_t i = 0; i < basis.size(); ++i)
      for (const auto& [m, c] : images[i].terms()) mat.at(row_of.at(m), static_cast<int>(i)) = c;
    std::vector<RatK> rhs(row_of.size());
    for (const auto& [m, c] : target.terms()) rhs[row_of.at(m)] = c;

    LinearSolution sol = linear_solve(mat, rhs);
    if (sol.tag == LinearSolution::kind::none) return std::nullopt;
    for (size_t i = 0; i < basis.size(); ++i) solution.add_term(basis[i], sol.x[i]);
  }
  return VertexField{r.momentum, solution};
}

RatK specialize_k(const RatK& c, const BigRat& value, const RootData& rd) {
  for (const auto& ex : rd.excluded_k())
    if (value == ex) fail(errc::domain, "k = " + to_string(value) + " is excluded for this realization");
  if (c.has_pole_at(value))
    fail(errc::domain, "coefficient " + c.str() + " has a pole at k = " + to_string(value));
  return RatK(c.eval(value));
}

VertexField specialize_k(const VertexField& f, const BigRat& value, const RootData& rd) {
  VertexField out;
  out.momentum.reserve(f.momentum.size());
  for (const auto& c : f.momentum) out.momentum.push_back(specialize_k(c, value, rd));
  for (const auto& [m, c] : f.poly.terms()) out.poly.add_term(m, specialize_k(c, value, rd));
  return out;
}

namespace {

std::string render_factor(const RootData& rd, const CurrentKey& f) {
  std::string name = rd.label_name(f.label);
  if (f.deriv == 0) return name;
  return "d^" + std::to_string(f.deriv) + "(" + name + ")";
}

std::string base_vector_name(const RootData& rd, int i) {
  const Label& l = rd.label_at(i);
  switch (l.k) {
    case Label::kind::a: return "a" + std::to_string(l.index);
    case Label::kind::q_plus: return "psi+";
    case Label::kind::q_minus: return "psi-";
    case Label::kind::y: return "xi";
  }
  return "?";
}

std::string render_momentum(const RootData& rd, const Momentum& p) {
  int y = rd.index_y();
  bool only_y = true;
  for (int i = 0; i < rd.dim(); ++i)
    if (i != y && !p[i].is_zero()) only_y = false;
  if (only_y) {
    if (p[y].is_one()) return "exp(+Xi)";
    if (p[y] == RatK(-1)) return "exp(-Xi)";
  }
  std::ostringstream os;
  os << "exp(";
  bool first = true;
  for (int i = 0; i < rd.dim(); ++i) {
    if (p[i].is_zero()) continue;
    if (!first) os << " + ";
    os << "[" << p[i].str() << "]" << base_vector_name(rd, i);
    first = false;
  }
  os << ")";
  return os.str();
}

} // namespace

std::string render_text(const RootData& rd, const DiffMono& m) {
  if (m.is_unit()) return "1";
  std::string s;
  for (size_t i = 0; i < m.factors().size(); ++i) {
    if (i) s += " ";
    s += render_factor(rd, m.factors()[i]);
  }
  return s;
}

std::string render_text(const RootData& rd, const VertexField& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : f.poly.terms()) {
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-' && cs.find_first_of("+", 1) == std::string::npos &&
               cs.find('(') == std::string::npos;
    if (neg) cs = cs.substr(1);
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    bool atomic = cs.find_first_of("+/") == std::string::npos || (cs.front() == '(' && cs.back() == ')');
    if (!atomic) cs = "(" + cs + ")";
    if (m.is_unit()) {
      os << cs;
    } else if (cs == "1") {
      os << render_text(rd, m);
    } else {
      os << cs << " " << render_text(rd, m);
    }
    first = false;
  }
  std::string body = os.str();
  if (momentum_is_zero(f.momentum)) return body;
  bool single = f.poly.terms().size() == 1;
  std::string head = single ? body : "(" + body + ")";
  return head + " " + render_momentum(rd, f.momentum);
}

std::string render_text(const RootData& rd, const LaurentOPE& o) {
  std::ostringstream os;
  bool first = true;
  for (auto it = o.coeffs.rbegin(); it != o.coeffs.rend(); ++it) {
    if (it->second.is_zero()) continue;
    if (!first) os << "\n";
    RatK expo = o.offset - RatK(it->first);
    os << "(z-w)^[" << expo.str() << "] : " << render_text(rd, it->second);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

} // namespace w2n
