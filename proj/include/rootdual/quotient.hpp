#pragma once

#include <string>
#include <vector>

#include "rootdual/intmat.hpp"

namespace rootdual {

// Structure of Z^n / colspan(rel), computed once via Smith normal form.
// Coordinates y = U x carry moduli: m_i > 1 torsion, m_i = 1 dead, m_i = 0 free.
class AbelianQuotient {
 public:
  AbelianQuotient() = default;
  AbelianQuotient(Eigen::Index ambient_rank, const IMat& rel);

  Eigen::Index ambient_rank() const { return n_; }
  const std::vector<Int>& invariant_factors() const { return inv_; }
  Eigen::Index free_rank() const { return free_rank_; }
  bool is_trivial() const { return inv_.empty() && free_rank_ == 0; }
  Int order() const;  // 0 when infinite

  // Coordinates of [x] in the invariant-factor decomposition:
  // first the torsion coordinates (mod their factors), then the free ones.
  IVec classify(const IVec& x) const;
  bool is_zero_class(const IVec& x) const;

  // An ambient representative of the class with the given coordinates.
  IVec representative(const IVec& coords) const;

  // Exponent-divides test: k * G == 0.
  bool killed_by(Int k) const;

  std::string factors_str() const;  // e.g. "Z/2+Z/4+Z" for reports

  // Transform access: class coordinates live in y = U x.
  const IMat& transform() const { return U_; }
  const IMat& transform_inv() const { return Uinv_; }
  const std::vector<Int>& all_moduli() const { return moduli_; }
  const std::vector<Eigen::Index>& live_coords() const { return live_; }

 private:
  Eigen::Index n_ = 0;
  IMat U_;                  // y = U x
  IMat Uinv_;
  std::vector<Int> moduli_; // per y-coordinate
  std::vector<Eigen::Index> live_;  // y-coordinates with modulus != 1
  std::vector<Int> inv_;
  Eigen::Index free_rank_ = 0;
};

// Subquotient {x in Z^n : phi x in colspan(target_rel)} / (colspan(self_rel) + colspan(denoms)).
// All cohomology groups in the library are computed through this.
class Subquotient {
 public:
  Subquotient() = default;
  Subquotient(const IMat& phi, const IMat& target_rel, const IMat& denoms,
              const IMat& self_rel);

  const AbelianQuotient& group() const { return q_; }
  const std::vector<Int>& invariant_factors() const { return q_.invariant_factors(); }
  Eigen::Index free_rank() const { return q_.free_rank(); }

  // Class coordinates of a numerator element (throws if x is not in the numerator).
  IVec classify(const IVec& x) const;
  bool is_zero_class(const IVec& x) const;
  // Ambient representative of the k-th generator of the class group.
  IVec generator_rep(Eigen::Index k) const;
  Eigen::Index num_generators() const;

 private:
  IMat K_;  // columns generate the numerator lattice
  AbelianQuotient q_;
};

IMat hstack(const IMat& A, const IMat& B);

// diag(moduli) as relation columns, skipping free (0) coordinates.
IMat moduli_relations(const std::vector<Int>& moduli);

}  // namespace rootdual
