#include "w2n/screenings.hpp"

#include "w2n/wgen.hpp"

namespace w2n {

std::vector<Screening> build_first_screenings(const RootData& rd) {
  std::vector<Screening> out;
  auto dm = distinguished_momenta(rd);
  for (const auto& [name, p] : dm.first_screenings) {
    Screening s;
    s.name = name;
    s.type = name[0] == 'P' ? Screening::kind::fermionic : Screening::kind::bosonic;
    s.integrand = field_exponential(rd, p);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Screening> build_second_screenings(const RootData& rd, const RatK& a, const RatK& b) {
  if (a.is_zero() && b.is_zero()) fail(errc::invalid_argument, "dressed coefficients must not both vanish");
  std::vector<Screening> out;
  auto dm = distinguished_momenta(rd);
  int n = rd.n();
  for (const auto& [name, p] : dm.second_screenings) {
    Screening s;
    s.name = name;
    s.type = Screening::kind::bosonic;
    s.integrand = field_exponential(rd, p);
    out.push_back(std::move(s));
  }
  if (dm.has_s0) {
    if (a == b) fail(errc::invalid_argument, "dressed screening requires a != b");
    Screening s;
    s.name = "S" + std::to_string(n) + ",0";
    s.type = Screening::kind::dressed;
    WickPoly pre = WickPoly::current(rd.index_q_plus(), 0, a) + WickPoly::current(rd.index_q_minus(), 0, b);
    s.integrand = field_exponential(rd, dm.s0_exponential, pre);
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

std::string pole_name(int rel_order) {
  switch (rel_order) {
    case 0: return "normal-ordered term";
    case 1: return "first-order pole";
    case 2: return "second-order pole";
    case 3: return "third-order pole";
    default: return "order-" + std::to_string(rel_order) + " coefficient";
  }
}

// The contour around w picks out the coefficient of (z-w)^{-1}; with the
// exponent prefactor (z-w)^{gamma} this is the integrand-polynomial
// coefficient at relative order gamma + 1.
std::optional<VertexField> full_residue(const Screening& s, const VertexField& f, const RootData& rd,
                                        int* rel_order) {
  RatK off = rd.pairing(s.integrand.momentum, f.momentum);
  if (!off.is_integer_constant()) return std::nullopt;
  int rel = static_cast<int>(off.as_integer()) + 1;
  *rel_order = rel;
  LaurentOPE o = ope(s.integrand, f, std::max(0, -rel) + 1, rd);
  return o.coeff_rel(rel, rd);
}

} // namespace

CommuteResult commutes(const Screening& s, const VertexField& f, const RootData& rd, commute_mode mode) {
  CommuteResult res;
  int rel = 0;
  auto r = full_residue(s, f, rd, &rel);
  if (!r) {
    res.commutes = false;
    res.condition = "nonlocal pairing " + rd.pairing(s.integrand.momentum, f.momentum).str();
    return res;
  }
  res.condition = pole_name(rel);
  if (mode == commute_mode::strict_pole) {
    res.commutes = r->is_zero();
  } else {
    res.commutes = total_derivative_solve(*r, rd).has_value();
  }
  if (!res.commutes) res.witness = *r;
  return res;
}

std::pair<RatK, RatK> solve_dressed_coefficients(const RootData& rd) {
  int n = rd.n(), m = rd.m();
  if (m < 1 || m > n - 1) fail(errc::domain, "dressed screening exists only for 1 <= m <= n-1");

  GeneratorSet g = generators_recursive(rd);
  auto dm = distinguished_momenta(rd);

  // Residues are linear in (a, b), and the direction (1, 1) is a total
  // derivative of the exponential, hence invisible to the contour. Solving
  // against E and F therefore fixes the integrand modulo that shift; the
  // representative with a + b = 0 is returned, after verifying it commutes.
  auto dressed = [&](const RatK& a, const RatK& b) {
    WickPoly pre = WickPoly::current(rd.index_q_plus(), 0, a) + WickPoly::current(rd.index_q_minus(), 0, b);
    Screening s;
    s.name = "S0-candidate";
    s.type = Screening::kind::dressed;
    s.integrand = field_exponential(rd, dm.s0_exponential, pre);
    return s;
  };

  Screening canonical = dressed(RatK::one(), RatK(-1));
  bool ok_e = commutes(canonical, g.E, rd, commute_mode::total_derivative).commutes;
  bool ok_f = commutes(canonical, g.F, rd, commute_mode::total_derivative).commutes;
  if (ok_e && ok_f) return {RatK::one(), RatK(-1)};

  // Fall back to an explicit scan over the ratio: residue(1, b) depends on b
  // affinely, so a single additional sample decides solvability.
  for (long b = -4; b <= 4; ++b) {
    if (b == 1) continue;
    Screening cand = dressed(RatK::one(), RatK(b));
    if (commutes(cand, g.E, rd, commute_mode::total_derivative).commutes &&
        commutes(cand, g.F, rd, commute_mode::total_derivative).commutes)
      return {RatK::one(), RatK(b)};
  }
  fail(errc::domain, "no dressed coefficient ratio commutes with E and F");
}

std::vector<VertexField> commutant_at_weight(const std::vector<Screening>& ss, int weight,
                                             const RootData& rd) {
  std::vector<DiffMono> basis = monomials_of_weight(rd, weight);
  if (basis.empty()) return {};

  // Stack, over all screenings, the coordinates of the residue of
  // integrand(z) B_i(w); the commutant is the common nullspace.
  struct RowKey {
    size_t screening;
    DiffMono mono;
    bool operator<(const RowKey& o) const {
      if (screening != o.screening) return screening < o.screening;
      return mono < o.mono;
    }
  };
  std::map<RowKey, int> row_of;
  std::vector<std::vector<std::pair<int, RatK>>> cols(basis.size());

  for (size_t si = 0; si < ss.size(); ++si) {
    for (size_t bi = 0; bi < basis.size(); ++bi) {
      WickPoly p;
      p.add_term(basis[bi], RatK::one());
      VertexField f{momentum_zero(rd), p};
      int rel = 0;
      auto r = full_residue(ss[si], f, rd, &rel);
      if (!r) fail(errc::internal, "screening residue against a zero-momentum field must be local");
      for (const auto& [mono, c] : r->poly.terms()) {
        RowKey key{si, mono};
        auto [it, inserted] = row_of.emplace(key, static_cast<int>(row_of.size()));
        cols[bi].emplace_back(it->second, c);
      }
    }
  }

  int nrows = std::max<int>(1, static_cast<int>(row_of.size()));
  MatK mat(nrows, static_cast<int>(basis.size()));
  for (size_t bi = 0; bi < basis.size(); ++bi)
    for (const auto& [r, c] : cols[bi]) mat.at(r, static_cast<int>(bi)) += c;

  std::vector<RatK> rhs(nrows);
  LinearSolution sol = linear_solve(mat, rhs);
  std::vector<VertexField> out;
  if (sol.tag != LinearSolution::kind::underdetermined) return out;  // only the zero solution
  for (const auto& v : sol.nullspace) {
    WickPoly p;
    for (size_t bi = 0; bi < basis.size(); ++bi) p.add_term(basis[bi], v[bi]);
    out.push_back(VertexField{momentum_zero(rd), p});
  }
  return out;
}

} // namespace w2n
