#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rootdual/quotient.hpp"
#include "rootdual/rational.hpp"

namespace rootdual {

// Small finite group with an explicit multiplication table. Element 0 is the
// identity. Supported shapes: cyclic C_n and S3.
struct FiniteGroupTable {
  int n = 1;
  std::vector<std::vector<int>> mul;
  std::vector<int> inv;
  std::vector<int> gens;
  std::string name;

  static FiniteGroupTable cyclic(int k);
  static FiniteGroupTable s3();

  int order() const { return n; }
  bool is_cyclic() const;
  // a generator when cyclic (the single listed generator)
  int cyclic_generator() const;
  void validate() const;
};

// Finitely generated abelian group with a Gamma-action: coordinates Z/m_i,
// m_i = 0 meaning a free Z coordinate, and one integer matrix per group element.
struct GModule {
  std::vector<Int> moduli;
  std::vector<IMat> act;  // size = group order; act[0] = identity

  Eigen::Index dim() const { return static_cast<Eigen::Index>(moduli.size()); }
  bool is_lattice() const;
  bool is_finite() const;
  IMat moduli_rel() const { return moduli_relations(moduli); }

  static GModule lattice(const std::vector<IMat>& action_per_element);
  static GModule trivial_lattice(const FiniteGroupTable& g, Eigen::Index rank);

  void validate(const FiniteGroupTable& g) const;
};

// Pontryagin dual of a finite module: same moduli, action transported through
// the evaluation pairing <e_i, f_j> = delta_ij / m_i. sign = -1 applies the
// extra inversion carried by roots of unity under complex conjugation.
GModule dual_module(const FiniteGroupTable& g, const GModule& m, int sign);

// Cohomology of the bar complex in degree n (n = 0, 1, 2), with representative
// cocycles available through the subquotient. Cochains in degree n are flat
// vectors indexed by (g_1..g_n, coordinate).
struct CohomologyGroup {
  int degree = 0;
  Eigen::Index module_dim = 0;
  int group_order = 1;
  Subquotient sq;

  const std::vector<Int>& invariant_factors() const { return sq.invariant_factors(); }
  Eigen::Index free_rank() const { return sq.free_rank(); }
  bool is_trivial() const { return invariant_factors().empty() && free_rank() == 0; }
  std::string factors_str() const;

  Eigen::Index cochain_len() const;
  // flat index of coordinate c at group tuple (g) resp. (g,h)
  Eigen::Index at(int g, Eigen::Index c) const;
  Eigen::Index at(int g, int h, Eigen::Index c) const;
};

CohomologyGroup h_n(const FiniteGroupTable& g, const GModule& m, int n);

// Independent Tate computation for cyclic groups: ker(N)/im(s-1) in odd degree,
// ker(s-1)/im(N) in even degree.
Subquotient cyclic_tate(const FiniteGroupTable& g, const GModule& m, bool odd_degree);

// H^1(Gal(C/R), T) for a real torus with cocharacter involution theta, via the
// lattice formula ker(1+theta)/(1-theta)L.
Subquotient h1_real_torus(const IMat& theta);

struct C2Decomposition {
  Eigen::Index trivial = 0;  // a
  Eigen::Index sign = 0;     // b
  Eigen::Index regular = 0;  // c
};
// Z[C2]-lattice decomposition into trivial/sign/regular summands (counts only).
C2Decomposition decompose_c2_lattice(const IMat& theta);

// --- torsion cocycles into torus cohomology -------------------------------
//
// A 1-cocycle with values in the N-torsion of a torus T = L (x) C^x is stored
// as one rational vector per group element (the exponential coordinates).
// Its class in H^1(Gamma, T(C)) ~ H^2(Gamma, L) is the class of the coboundary
// of the chosen lift, which is integral. `twist_sign` = -1 selects the real
// antiholomorphic action (lifted action -theta), +1 the algebraic one.
struct RatVec {
  std::vector<Rat> v;
  Eigen::Index size() const { return static_cast<Eigen::Index>(v.size()); }
};

struct TorusCocycleClass {
  CohomologyGroup h2;   // H^2(Gamma, L_twisted)
  IVec coords;          // class coordinates of the given cocycle
  bool zero = false;
};

GModule twisted_lattice_module(const FiniteGroupTable& g, const std::vector<IMat>& act,
                               int twist_sign);

TorusCocycleClass torus_class_of_cocycle(const FiniteGroupTable& g,
                                         const std::vector<IMat>& act_on_L, int twist_sign,
                                         const std::vector<RatVec>& cocycle,
                                         const CohomologyGroup* precomputed_h2 = nullptr);

// Cup product H^1(C2, A) x H^1(C2, A^dual) -> (1/2)Z/Z for finite C2-modules
// with a perfect pairing into Q/Z(1) (conjugation negates values). Cocycles are
// given by their value at the nontrivial element, in module coordinates.
QmodZ cup_pairing_real(const FiniteGroupTable& c2, const GModule& a, const GModule& b,
                       const std::vector<std::vector<QmodZ>>& pairing, const IVec& a_sigma,
                       const IVec& b_sigma);

// H^1(Q_p, mu_d) = Q_p^x / (Q_p^x)^d by the unit structure of Q_p^x:
// invariant factors of the quotient, in Smith order.
std::vector<Int> padic_mu_h1_factors(Int p, Int d);

bool is_prime(Int p);

}  // namespace rootdual
