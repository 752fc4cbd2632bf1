#include "rootdual/intmat.hpp"

#include <cstdlib>
#include <stdexcept>

namespace rootdual {

namespace {

constexpr Int kGuard = Int(1) << 58;

void guard(Int v) {
  if (v > kGuard || v < -kGuard)
    throw std::overflow_error("integer matrix entry overflow guard tripped");
}

void row_axpy(IMat& M, Eigen::Index dst, Eigen::Index src, Int c) {
  if (c == 0) return;
  M.row(dst) += c * M.row(src);
  for (Eigen::Index j = 0; j < M.cols(); ++j) guard(M(dst, j));
}

void col_axpy(IMat& M, Eigen::Index dst, Eigen::Index src, Int c) {
  if (c == 0) return;
  M.col(dst) += c * M.col(src);
  for (Eigen::Index i = 0; i < M.rows(); ++i) guard(M(i, dst));
}

}  // namespace

std::vector<Int> SmithForm::diag() const {
  std::vector<Int> d;
  Eigen::Index n = std::min(D.rows(), D.cols());
  for (Eigen::Index i = 0; i < n; ++i) d.push_back(D(i, i));
  return d;
}

SmithForm smith_form(const IMat& A) {
  const Eigen::Index m = A.rows(), n = A.cols();
  SmithForm f;
  f.D = A;
  f.U = IMat::Identity(m, m);
  f.V = IMat::Identity(n, n);
  IMat& D = f.D;

  Eigen::Index t = 0;
  const Eigen::Index r = std::min(m, n);
  while (t < r) {
    // locate a pivot of minimal nonzero magnitude in D(t:, t:)
    Eigen::Index pi = -1, pj = -1;
    Int best = 0;
    for (Eigen::Index i = t; i < m; ++i)
      for (Eigen::Index j = t; j < n; ++j) {
        Int a = std::abs(D(i, j));
        if (a != 0 && (best == 0 || a < best)) { best = a; pi = i; pj = j; }
      }
    if (pi < 0) break;  // all zero from here on

    D.row(t).swap(D.row(pi));
    f.U.row(t).swap(f.U.row(pi));
    D.col(t).swap(D.col(pj));
    f.V.col(t).swap(f.V.col(pj));

    bool clean = true;
    for (Eigen::Index i = t + 1; i < m; ++i) {
      Int q = D(i, t) / D(t, t);
      row_axpy(D, i, t, -q);
      row_axpy(f.U, i, t, -q);
      if (D(i, t) != 0) clean = false;
    }
    for (Eigen::Index j = t + 1; j < n; ++j) {
      Int q = D(t, j) / D(t, t);
      col_axpy(D, j, t, -q);
      col_axpy(f.V, j, t, -q);
      if (D(t, j) != 0) clean = false;
    }
    if (!clean) continue;  // remainders became new smaller pivot candidates

    // enforce divisibility d_t | D(i,j) for the trailing block
    bool divides = true;
    for (Eigen::Index i = t + 1; i < m && divides; ++i)
      for (Eigen::Index j = t + 1; j < n && divides; ++j)
        if (D(i, j) % D(t, t) != 0) {
          row_axpy(D, t, i, 1);
          row_axpy(f.U, t, i, 1);
          divides = false;
        }
    if (!divides) continue;

    if (D(t, t) < 0) {
      D.row(t) = -D.row(t);
      f.U.row(t) = -f.U.row(t);
    }
    ++t;
  }
  return f;
}

IMat kernel_basis(const IMat& A) {
  SmithForm f = smith_form(A);
  const Eigen::Index n = A.cols();
  std::vector<Eigen::Index> free_cols;
  const Eigen::Index r = std::min(A.rows(), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j >= r || f.D(j, j) == 0) free_cols.push_back(j);
  }
  IMat K(n, static_cast<Eigen::Index>(free_cols.size()));
  for (Eigen::Index k = 0; k < K.cols(); ++k) K.col(k) = f.V.col(free_cols[k]);
  return K;
}

std::optional<IVec> solve_integer(const IMat& A, const IVec& b) {
  SmithForm f = smith_form(A);
  IVec c = f.U * b;
  const Eigen::Index n = A.cols();
  IVec y = IVec::Zero(n);
  const Eigen::Index r = std::min(A.rows(), n);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    Int d = (i < r) ? f.D(i, i) : 0;
    if (d == 0) {
      if (c(i) != 0) return std::nullopt;
    } else {
      if (c(i) % d != 0) return std::nullopt;
      y(i) = c(i) / d;
    }
  }
  return f.V * y;
}

std::optional<IMat> solve_integer_cols(const IMat& A, const IMat& B) {
  IMat X(A.cols(), B.cols());
  for (Eigen::Index j = 0; j < B.cols(); ++j) {
    auto x = solve_integer(A, B.col(j));
    if (!x) return std::nullopt;
    X.col(j) = *x;
  }
  return X;
}

Int det_int(const IMat& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("det_int: square matrix required");
  IMat M = A;
  const Eigen::Index n = M.rows();
  Int det = 1;
  for (Eigen::Index t = 0; t < n; ++t) {
    // fraction-free elimination via gcd pivoting on column t
    Eigen::Index p = -1;
    for (Eigen::Index i = t; i < n; ++i)
      if (M(i, t) != 0 && (p < 0 || std::abs(M(i, t)) < std::abs(M(p, t)))) p = i;
    if (p < 0) return 0;
    while (true) {
      p = -1;
      for (Eigen::Index i = t; i < n; ++i)
        if (M(i, t) != 0 && (p < 0 || std::abs(M(i, t)) < std::abs(M(p, t)))) p = i;
      if (p != t) {
        if (p < 0) return 0;
        M.row(t).swap(M.row(p));
        det = -det;
      }
      bool reduced = true;
      for (Eigen::Index i = t + 1; i < n; ++i) {
        if (M(i, t) != 0) {
          Int q = M(i, t) / M(t, t);
          row_axpy(M, i, t, -q);
          if (M(i, t) != 0) reduced = false;
        }
      }
      if (reduced) break;
    }
    det *= M(t, t);
    guard(det);
  }
  return det;
}

IMat inverse_unimodular(const IMat& A) {
  SmithForm f = smith_form(A);
  const Eigen::Index n = A.rows();
  if (A.cols() != n) throw std::invalid_argument("inverse_unimodular: square required");
  for (Eigen::Index i = 0; i < n; ++i)
    if (f.D(i, i) != 1)
      throw std::invalid_argument("inverse_unimodular: matrix is not unimodular");
  // U A V = I  =>  A^{-1} = V U
  return f.V * f.U;
}

bool is_identity(const IMat& A) {
  return A.rows() == A.cols() && A == IMat::Identity(A.rows(), A.cols());
}

bool in_column_span(const IMat& A, const IVec& b) {
  return solve_integer(A, b).has_value();
}

}  // namespace rootdual
