#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "rootdual/rational.hpp"

namespace rootdual {

using IMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

// Smith normal form U * A * V = D with U, V unimodular and D diagonal,
// d_1 | d_2 | ... | d_r, d_i >= 0.
struct SmithForm {
  IMat U;  // rows(A) x rows(A)
  IMat V;  // cols(A) x cols(A)
  IMat D;  // rows(A) x cols(A)
  std::vector<Int> diag() const;
};

SmithForm smith_form(const IMat& A);

// Basis of the integer kernel {x : A x = 0}, returned as matrix columns.
IMat kernel_basis(const IMat& A);

// One integer solution of A x = b, if any.
std::optional<IVec> solve_integer(const IMat& A, const IVec& b);

// Columnwise solve; fails if any column has no integer solution.
std::optional<IMat> solve_integer_cols(const IMat& A, const IMat& B);

Int det_int(const IMat& A);

// Inverse of a unimodular matrix (det = +-1), exact.
IMat inverse_unimodular(const IMat& A);

bool is_identity(const IMat& A);

// Saturation-free lattice membership: is b in the column span of A over Z?
bool in_column_span(const IMat& A, const IVec& b);

}  // namespace rootdual
