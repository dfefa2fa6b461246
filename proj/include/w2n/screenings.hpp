#pragma once

#include <optional>
#include <string>
#include <vector>

#include "w2n/wick.hpp"

namespace w2n {

// A contour-integrated vertex field. Bosonic/fermionic integrands are pure
// exponentials; the dressed one carries a weight-1 current prefactor.
struct Screening {
  std::string name;
  enum class kind { bosonic, fermionic, dressed } type = kind::bosonic;
  VertexField integrand;
};

// Defining screening set of the realization: E_i = e^{(a_i, phi)} plus the
// fermionic Psi(+/-) = e^{(psi+-, phi)}.
std::vector<Screening> build_first_screenings(const RootData& rd);

// The second quantum group: S_{n,i} = e^{-(a_i,phi)/(k+n)} for i != 0 and the
// dressed S_{n,0} = (a Q+ + b Q-) e^{-(psi+ + psi-, phi)/(k+n)}.
std::vector<Screening> build_second_screenings(const RootData& rd, const RatK& a, const RatK& b);

enum class commute_mode { total_derivative, strict_pole };

struct CommuteResult {
  bool commutes = false;
  // Which Laurent coefficient carried the condition, in the bookkeeping of
  // the integrand-polynomial product ("first-order pole", "normal-ordered
  // term", "second-order pole", ...).
  std::string condition;
  VertexField witness;  // the offending residue when commutes is false
};

// The contour commutes with f iff the residue of integrand(z) f(w) is a total
// derivative; strict mode instead requires the residue to vanish identically
// and reports which coefficient that is.
CommuteResult commutes(const Screening& s, const VertexField& f, const RootData& rd, commute_mode mode);

// The (a, b) pair for the dressed S_{n,0}, normalized a = 1. Commutation with
// E and F fixes the integrand modulo total derivatives and scale; the
// canonical representative has a + b = 0. Throws when no pair commutes.
std::pair<RatK, RatK> solve_dressed_coefficients(const RootData& rd);

// Momentum-zero differential polynomials of the given weight whose residue
// against every screening vanishes identically, as a basis over Q(k).
std::vector<VertexField> commutant_at_weight(const std::vector<Screening>& ss, int weight,
                                             const RootData& rd);

} // namespace w2n
