#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rootdual/intmat.hpp"
#include "rootdual/quotient.hpp"

namespace rootdual {

struct FiniteAbelianGroup {
  std::vector<Int> invariant_factors;  // d_1 | d_2 | ..., each >= 2
  Eigen::Index free_rank = 0;

  bool is_trivial() const { return invariant_factors.empty() && free_rank == 0; }
  std::string str() const;
  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.invariant_factors == b.invariant_factors && a.free_rank == b.free_rank;
  }
};

struct SimpleFactor {
  char letter;  // 'A'..'G'
  int rank;
};

// A type specification: simple factors plus a central torus rank,
// e.g. "A2", "A1xA1", "B3+T1".
struct CartanTypeSpec {
  std::vector<SimpleFactor> factors;
  int torus_rank = 0;

  static CartanTypeSpec parse(const std::string& s);
  std::string str() const;
  int semisimple_rank() const;
};

enum class Isogeny { SimplyConnected, Adjoint, Sublattice };

// Based root datum (X, Phi, Xv, Phiv, Delta) in coordinates where the pairing
// between X and Xv is the standard dot product.
struct BasedRootDatum {
  Eigen::Index rank = 0;
  std::vector<IVec> roots;    // X-coordinates, positives first (by height, then coords)
  std::vector<IVec> coroots;  // Xv-coordinates, aligned with roots
  std::vector<int> simples;   // indices into roots; Delta in the input order
  std::string type_label;
  std::string isogeny_label;  // "sc", "ad", "iso", or a classical name

  // Derived tables, filled by finalize().
  std::vector<IVec> root_in_simple;    // coordinates in the simple-root basis
  std::vector<IVec> coroot_in_simple;  // coordinates in the simple-coroot basis
  std::vector<Int> height;             // sum of simple coordinates
  std::vector<char> positive;
  std::vector<int> neg_index;
  IMat cartan;  // cartan(i,j) = <alpha_i, alpha_j^vee>

  Eigen::Index ss_rank() const { return static_cast<Eigen::Index>(simples.size()); }
  Eigen::Index num_roots() const { return static_cast<Eigen::Index>(roots.size()); }
  Eigen::Index num_positive() const { return num_roots() / 2; }
  bool is_semisimple() const { return ss_rank() == rank; }

  const IVec& simple_root(Eigen::Index i) const { return roots[static_cast<size_t>(simples[static_cast<size_t>(i)])]; }
  const IVec& simple_coroot(Eigen::Index i) const { return coroots[static_cast<size_t>(simples[static_cast<size_t>(i)])]; }

  int root_index(const IVec& v) const;            // -1 if not a root
  Int pair(const IVec& x, const IVec& yv) const { return x.dot(yv); }

  // Matrix of the simple reflection s_i acting on X (columns convention).
  IMat simple_reflection_X(Eigen::Index i) const;
  IMat simple_reflection_Xv(Eigen::Index i) const;

  // Root permutation induced by a lattice automorphism of X; nullopt if the
  // matrix does not permute the root set.
  std::optional<std::vector<int>> root_permutation_of(const IMat& on_X) const;

  // Matrix whose columns are the simple roots / coroots.
  IMat simple_root_matrix() const;
  IMat simple_coroot_matrix() const;

  void finalize();  // builds derived tables, validates all type invariants

 private:
  std::map<std::vector<Int>, int> index_;
};

// Reflection-closure construction from explicit simple (co)roots.
BasedRootDatum make_datum(Eigen::Index rank, const std::vector<IVec>& simple_roots,
                          const std::vector<IVec>& simple_coroots,
                          const std::string& type_label, const std::string& isogeny_label);

IMat cartan_matrix(const CartanTypeSpec& spec);
IMat cartan_matrix(char letter, int rank);

// Generic builder. For Sublattice, basis rows are coordinates in the
// simply-connected basis (fundamental weights, then torus coordinates).
BasedRootDatum build(const CartanTypeSpec& spec, Isogeny isogeny,
                     const IMat* sublattice_basis = nullptr);
BasedRootDatum build(const std::string& type_spec, Isogeny isogeny,
                     const IMat* sublattice_basis = nullptr);

// Classical groups in their standard coordinates (X = Z^n).
BasedRootDatum datum_gl(int n);
BasedRootDatum datum_sp(int n);        // Sp_{2n}, type C_n simply connected
BasedRootDatum datum_so_odd(int n);    // SO_{2n+1}, type B_n adjoint
BasedRootDatum datum_so_even(int n);   // SO_{2n}, intermediate D_n lattice

BasedRootDatum dual(const BasedRootDatum& brd);
FiniteAbelianGroup center(const BasedRootDatum& brd);
FiniteAbelianGroup pi1_of_dual(const BasedRootDatum& brd);

// Sum of positive coroots; asserts <alpha_i, 2 rho^vee> = 2 for all simples.
IVec two_rho_check(const BasedRootDatum& brd);

// Number of roots of each simple type (test oracle helper).
Int classical_root_count(char letter, int rank);

}  // namespace rootdual
