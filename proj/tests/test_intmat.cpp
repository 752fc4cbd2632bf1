#include "rootdual/intmat.hpp"

#include <doctest.h>

#include "rootdual/quotient.hpp"

using namespace rootdual;

TEST_CASE("smith form of the A2 Cartan matrix") {
  IMat C(2, 2);
  C << 2, -1, -1, 2;
  SmithForm f = smith_form(C);
  CHECK(f.U * C * f.V == f.D);
  auto d = f.diag();
  CHECK(d == std::vector<Int>{1, 3});
}

TEST_CASE("smith form invariants on a rectangular matrix") {
  IMat A(2, 3);
  A << 2, 4, 4, -6, 6, 12;
  SmithForm f = smith_form(A);
  CHECK(f.U * A * f.V == f.D);
  auto d = f.diag();
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 2);
  CHECK(d[1] % d[0] == 0);
  CHECK(std::abs(det_int(f.U)) == 1);
  CHECK(std::abs(det_int(f.V)) == 1);
}

TEST_CASE("kernel and integer solve") {
  IMat A(2, 3);
  A << 1, 2, 3, 2, 4, 6;
  IMat K = kernel_basis(A);
  CHECK(K.cols() == 2);
  CHECK((A * K).isZero());

  IVec b(2);
  b << 3, 6;
  auto x = solve_integer(A, b);
  REQUIRE(x.has_value());
  CHECK(A * *x == b);

  IVec c(2);
  c << 1, 1;
  CHECK(!solve_integer(A, c).has_value());
}

TEST_CASE("unimodular inverse") {
  IMat A(2, 2);
  A << 2, 1, 1, 1;
  IMat Ai = inverse_unimodular(A);
  CHECK(is_identity(IMat(A * Ai)));
}

TEST_CASE("abelian quotient structure and classification") {
  // Z^2 / <(2,0),(0,4)> = Z/2 + Z/4
  IMat R(2, 2);
  R << 2, 0, 0, 4;
  AbelianQuotient q(2, R);
  CHECK(q.invariant_factors() == std::vector<Int>{2, 4});
  CHECK(q.free_rank() == 0);
  CHECK(q.order() == 8);
  IVec x(2);
  x << 1, 2;
  CHECK(!q.is_zero_class(x));
  IVec y(2);
  y << 2, 4;
  CHECK(q.is_zero_class(y));
  // representative round-trip
  IVec c = q.classify(x);
  CHECK(q.classify(q.representative(c)) == c);
}

TEST_CASE("subquotient: kernel mod image") {
  // H^1-like: ker(N)/im(s-1) for C2 acting by -1 on Z: N = 0, s-1 = -2
  IMat N = IMat::Zero(1, 1);
  IMat shift(1, 1);
  shift << -2;
  Subquotient sq(N, IMat::Zero(1, 0), shift, IMat::Zero(1, 0));
  CHECK(sq.invariant_factors() == std::vector<Int>{2});
  CHECK(sq.free_rank() == 0);
  IVec one(1);
  one << 1;
  CHECK(!sq.is_zero_class(one));
  IVec two(1);
  two << 2;
  CHECK(sq.is_zero_class(two));
}
