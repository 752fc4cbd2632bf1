#pragma once

#include <map>
#include <vector>

#include "rootdual/rational.hpp"
#include "rootdual/root_datum.hpp"
#include "rootdual/weyl.hpp"

namespace rootdual {

class ChevalleyAlgebra;

// Torsion point of a torus, as a Q/Z coordinate vector. OnXv means coordinates
// in the basis of Xv (a point of T); OnAdjoint means coordinates in the
// fundamental-coweight basis indexed by Delta (a point of T^ad).
struct TorusPoint {
  enum class Basis { OnXv, OnAdjoint };
  Basis basis = Basis::OnAdjoint;
  std::vector<QmodZ> coords;

  static TorusPoint zero(Basis b, Eigen::Index n);
  bool is_zero() const;
  friend bool operator==(const TorusPoint& a, const TorusPoint& b) {
    return a.basis == b.basis && a.coords == b.coords;
  }
  TorusPoint operator+(const TorusPoint& o) const;
  TorusPoint operator-(const TorusPoint& o) const;
};

// <beta, t> in Q/Z for a root index.
QmodZ eval_root(const BasedRootDatum& brd, Eigen::Index root_id, const TorusPoint& t);

// The element of T^ad acting by -1 on every simple root space.
TorusPoint iota_minus(const BasedRootDatum& brd);

// Monomial automorphism of the algebra: permutes root lines, scales each by a
// root of unity, and acts integrally on X. This is how every automorphism in
// the library is stored.
struct MonomialMap {
  std::vector<int> perm;       // on root indices
  std::vector<QmodZ> scalar;   // X_beta -> e(scalar[beta]) * X_{perm[beta]}
  IMat on_X;
  IMat on_Xv;

  static MonomialMap identity(const BasedRootDatum& brd);
  bool is_identity() const;
  bool is_torus_conjugation() const;  // trivial permutation and lattice action
  friend bool operator==(const MonomialMap& a, const MonomialMap& b) {
    return a.perm == b.perm && a.scalar == b.scalar && a.on_X == b.on_X;
  }
};

MonomialMap compose(const MonomialMap& f, const MonomialMap& g);  // f after g
MonomialMap inverse(const MonomialMap& f);
MonomialMap power(const MonomialMap& f, Int k);

class ChevalleyAlgebra {
 public:
  explicit ChevalleyAlgebra(const BasedRootDatum& brd);

  const BasedRootDatum& datum() const { return brd_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(brd_.ss_rank() + brd_.num_roots()); }
  Eigen::Index cartan_dim() const { return brd_.ss_rank(); }

  // N_{beta,gamma} for root indices with beta+gamma a root.
  Int structure_constant(int r, int s) const;
  // Largest p with gamma - p*beta a root.
  Int string_down(int r, int s) const;

  using Element = std::vector<Rat>;  // dense over {H_i} u {X_beta}
  Element basis_H(Eigen::Index i) const;
  Element basis_X(Eigen::Index root_id) const;
  Element bracket(const Element& a, const Element& b) const;

  // Ad of the Tits representative n_w = prod n_{s_i} over the word.
  MonomialMap weyl_representative(const std::vector<int>& word) const;
  const MonomialMap& simple_representative(Eigen::Index i) const;

  // Unique pinned extension of a Cartan-matrix automorphism of Delta.
  MonomialMap pinned_automorphism(const std::vector<int>& perm) const;

  MonomialMap torus_conjugation(const TorusPoint& t) const;

  // Does the map preserve every bracket? Exhaustive over basis pairs.
  bool is_algebra_automorphism(const MonomialMap& f, std::string* why = nullptr) const;

  // Pinned map of the Levi subalgebra for S: the subsystem's Chevalley
  // involution c_M (diagram map -w_S on S, torus action t -> w_S(t^{-1})).
  struct LeviMap {
    std::vector<int> root_ids;     // Phi_S, ascending
    std::vector<int> perm;         // image root index per entry of root_ids
    std::vector<QmodZ> scalar;
    IMat on_X;
    IMat on_Xv;
  };
  LeviMap levi_chevalley_involution(const std::vector<int>& S) const;
  LeviMap restrict_to_levi(const MonomialMap& f, const std::vector<int>& S) const;

  std::vector<int> levi_root_ids(const std::vector<int>& S) const;

  // Structure-constant sanity: |N| = p+1, antisymmetry, Jacobi (sampled when
  // the dimension is large).
  void validate() const;

 private:
  struct ExtraspecialPair { int eps; int eta; };

  Int n_lookup(int r, int s) const;
  Int n_compute(int r, int s) const;
  Int norm(int r) const { return norms_[static_cast<size_t>(r)]; }
  Element exp_ad_(int root_id, const Rat& coeff, const Element& v) const;

  // pinned extension over a closed symmetric subsystem
  void pinned_extension(const std::vector<int>& subset_ids, const IMat& on_X,
                        std::vector<int>& perm_out, std::vector<QmodZ>& scalar_out) const;

  BasedRootDatum brd_;
  std::vector<Int> norms_;
  std::map<int, ExtraspecialPair> extraspecial_;      // positive root id -> pair
  mutable std::map<std::pair<int, int>, Int> ntab_;
  std::vector<MonomialMap> simple_reps_;
};

}  // namespace rootdual
