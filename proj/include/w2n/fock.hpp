#pragma once

#include <map>
#include <vector>

#include "w2n/wick.hpp"

namespace w2n {

// One creation operator a^{label}_{mode}, mode < 0.
struct CreationOp {
  int label = 0;
  int mode = -1;
  friend bool operator==(const CreationOp& a, const CreationOp& b) {
    return a.label == b.label && a.mode == b.mode;
  }
  friend bool operator<(const CreationOp& a, const CreationOp& b) {
    return a.label != b.label ? a.label < b.label : a.mode < b.mode;
  }
};

using CreationMono = std::vector<CreationOp>;  // kept sorted
int creation_level(const CreationMono& m);

// Element of the free-boson Fock module over the momentum sector, truncated
// at the given level. The mode algebra is [a^u_p, a^v_q] = p (u,v) delta_{p+q}.
struct FockState {
  Momentum sector;
  std::map<CreationMono, RatK> terms;
  int cutoff = 8;

  bool is_zero() const { return terms.empty(); }
  void add(const CreationMono& m, const RatK& c);
  FockState& operator+=(const FockState& o);
  FockState scaled(const RatK& c) const;
  friend bool operator==(const FockState& a, const FockState& b) {
    return a.sector == b.sector && a.terms == b.terms;
  }
};

FockState fock_vacuum(const RootData& rd, const Momentum& sector, int cutoff);

// Action of the mode a^{label}_p: creation multiplies, annihilation contracts
// through the commutator, the zero mode reads the sector pairing.
FockState apply_current_mode(const FockState& s, int label, int p, const RootData& rd);

// The state |f> = f(0)|0>_p of a vertex field.
FockState state_of_field(const RootData& rd, const VertexField& f, int cutoff);

// f(z)|s> = sum over integer offsets e of z^e (result[e]); requires the
// pairing (p_f, sector) to be an integer. Exact within the level cutoff.
std::map<int, FockState> apply_vertex(const FockState& s, const VertexField& f, int lo, int hi,
                                      const RootData& rd);

// The single Borcherds mode f_{(q)}|s>, the coefficient of z^{-q-1}.
FockState apply_mode(const FockState& s, const VertexField& f, int q, const RootData& rd);

struct OracleOptions {
  int depth = 1;     // regular orders included in the engine comparison
  int cutoff = 4;    // Fock level cutoff
  int samples = 8;   // sampled states for the mode-sum comparison
  unsigned seed = 2024;
};

// Recompute every OPE coefficient of f(z)g(w) by direct mode manipulation and
// compare with the engine, both through states and through the mode-sum
// formula on sampled states.
std::vector<IdentityCheck> oracle_ope_check(const VertexField& f, const VertexField& g,
                                            const OracleOptions& opt, const RootData& rd,
                                            const std::string& tag);

// Mode-algebra Jacobi identity on sampled triples.
std::vector<IdentityCheck> mode_jacobi_check(const RootData& rd, int trials, unsigned seed);

} // namespace w2n
