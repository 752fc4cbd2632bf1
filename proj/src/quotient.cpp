#include "rootdual/quotient.hpp"

#include <numeric>
#include <stdexcept>

namespace rootdual {

IMat hstack(const IMat& A, const IMat& B) {
  if (A.cols() == 0) return B;
  if (B.cols() == 0) return A;
  if (A.rows() != B.rows()) throw std::invalid_argument("hstack: row mismatch");
  IMat C(A.rows(), A.cols() + B.cols());
  C << A, B;
  return C;
}

IMat moduli_relations(const std::vector<Int>& moduli) {
  const Eigen::Index n = static_cast<Eigen::Index>(moduli.size());
  std::vector<Eigen::Index> torsion;
  for (Eigen::Index i = 0; i < n; ++i)
    if (moduli[i] != 0) torsion.push_back(i);
  IMat R = IMat::Zero(n, static_cast<Eigen::Index>(torsion.size()));
  for (Eigen::Index k = 0; k < R.cols(); ++k) R(torsion[k], k) = moduli[torsion[k]];
  return R;
}

AbelianQuotient::AbelianQuotient(Eigen::Index ambient_rank, const IMat& rel) : n_(ambient_rank) {
  IMat R = rel;
  if (R.rows() == 0 && n_ > 0) R = IMat::Zero(n_, 0);
  if (R.rows() != n_) throw std::invalid_argument("AbelianQuotient: relation row mismatch");
  SmithForm f = smith_form(R);
  U_ = f.U;
  Uinv_ = inverse_unimodular(U_);
  moduli_.assign(static_cast<size_t>(n_), 0);
  const Eigen::Index r = std::min(R.rows(), R.cols());
  for (Eigen::Index i = 0; i < r; ++i) moduli_[static_cast<size_t>(i)] = f.D(i, i);
  for (Eigen::Index i = 0; i < n_; ++i) {
    Int m = moduli_[static_cast<size_t>(i)];
    if (m == 1) continue;
    live_.push_back(i);
    if (m == 0)
      ++free_rank_;
    else
      inv_.push_back(m);
  }
}

Int AbelianQuotient::order() const {
  if (free_rank_ > 0) return 0;
  Int o = 1;
  for (Int d : inv_) o *= d;
  return o;
}

IVec AbelianQuotient::classify(const IVec& x) const {
  if (x.size() != n_) throw std::invalid_argument("classify: size mismatch");
  IVec y = U_ * x;
  IVec c(static_cast<Eigen::Index>(live_.size()));
  for (size_t k = 0; k < live_.size(); ++k) {
    Int m = moduli_[static_cast<size_t>(live_[k])];
    Int v = y(live_[k]);
    if (m != 0) {
      v %= m;
      if (v < 0) v += m;
    }
    c(static_cast<Eigen::Index>(k)) = v;
  }
  return c;
}

bool AbelianQuotient::is_zero_class(const IVec& x) const {
  IVec c = classify(x);
  return c.isZero();
}

IVec AbelianQuotient::representative(const IVec& coords) const {
  if (coords.size() != static_cast<Eigen::Index>(live_.size()))
    throw std::invalid_argument("representative: coordinate count mismatch");
  IVec y = IVec::Zero(n_);
  for (size_t k = 0; k < live_.size(); ++k) y(live_[k]) = coords(static_cast<Eigen::Index>(k));
  return Uinv_ * y;
}

bool AbelianQuotient::killed_by(Int k) const {
  if (free_rank_ > 0) return false;
  for (Int d : inv_)
    if (k % d != 0) return false;
  return true;
}

std::string AbelianQuotient::factors_str() const {
  std::string s;
  for (Int d : inv_) {
    if (!s.empty()) s += "+";
    s += "Z/" + std::to_string(d);
  }
  for (Eigen::Index i = 0; i < free_rank_; ++i) {
    if (!s.empty()) s += "+";
    s += "Z";
  }
  if (s.empty()) s = "0";
  return s;
}

Subquotient::Subquotient(const IMat& phi, const IMat& target_rel, const IMat& denoms,
                         const IMat& self_rel) {
  const Eigen::Index n = phi.cols();
  IMat big = hstack(phi, target_rel);
  IMat ker = kernel_basis(big);
  K_ = ker.topRows(n);

  IMat dens = hstack(self_rel, denoms);
  IMat W;
  if (dens.cols() == 0) {
    W = IMat::Zero(K_.cols(), 0);
  } else {
    auto sol = solve_integer_cols(K_, dens);
    if (!sol)
      throw std::logic_error("Subquotient: denominator is not inside the numerator lattice");
    W = *sol;
  }
  IMat rels = hstack(kernel_basis(K_), W);
  q_ = AbelianQuotient(K_.cols(), rels);
}

IVec Subquotient::classify(const IVec& x) const {
  auto w = solve_integer(K_, x);
  if (!w) throw std::logic_error("Subquotient::classify: element outside the numerator");
  return q_.classify(*w);
}

bool Subquotient::is_zero_class(const IVec& x) const { return classify(x).isZero(); }

Eigen::Index Subquotient::num_generators() const {
  return static_cast<Eigen::Index>(q_.invariant_factors().size()) + q_.free_rank();
}

IVec Subquotient::generator_rep(Eigen::Index k) const {
  IVec c = IVec::Zero(num_generators());
  c(k) = 1;
  return K_ * q_.representative(c);
}

}  // namespace rootdual
