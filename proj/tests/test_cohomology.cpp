#include "rootdual/cohomology.hpp"

#include <doctest.h>

#include <random>

using namespace rootdual;

namespace {

GModule lattice_c2(const IMat& theta) {
  return GModule::lattice({IMat::Identity(theta.rows(), theta.rows()), theta});
}

}  // namespace

TEST_CASE("H^1(C2, Z with sign action) = Z/2") {
  FiniteGroupTable c2 = FiniteGroupTable::cyclic(2);
  IMat theta(1, 1);
  theta << -1;
  CohomologyGroup h = h_n(c2, lattice_c2(theta), 1);
  CHECK(h.invariant_factors() == std::vector<Int>{2});
  CHECK(h.free_rank() == 0);
}

TEST_CASE("H^1(C2, Z trivial) = 0 and H^0 = Z") {
  FiniteGroupTable c2 = FiniteGroupTable::cyclic(2);
  GModule m = GModule::trivial_lattice(c2, 1);
  CHECK(h_n(c2, m, 1).is_trivial());
  CohomologyGroup h0 = h_n(c2, m, 0);
  CHECK(h0.free_rank() == 1);
}

TEST_CASE("H^1(C3, (Z/2)^2 with cyclic action) = 0 (coprime orders)") {
  FiniteGroupTable c3 = FiniteGroupTable::cyclic(3);
  GModule m;
  m.moduli = {2, 2};
  IMat rot(2, 2);
  rot << 0, 1, 1, 1;  // order 3 mod 2: permutes the three nonzero vectors
  IMat rot2 = rot * rot;
  for (auto* p : {&rot2}) {
    for (Eigen::Index i = 0; i < 2; ++i)
      for (Eigen::Index j = 0; j < 2; ++j) (*p)(i, j) = ((*p)(i, j) % 2 + 2) % 2;
  }
  m.act = {IMat::Identity(2, 2), rot, rot2};
  CHECK(h_n(c3, m, 1).is_trivial());
  CHECK(h_n(c3, m, 2).is_trivial());
}

TEST_CASE("bar resolution agrees with the cyclic Tate computation") {
  std::mt19937 rng(20240811);
  auto rnd = [&](Int lo, Int hi) {
    return std::uniform_int_distribution<Int>(lo, hi)(rng);
  };
  int done = 0;
  while (done < 30) {
    int ord = (done % 3 == 0) ? 2 : (done % 3 == 1 ? 3 : 4);
    FiniteGroupTable g = FiniteGroupTable::cyclic(ord);
    Eigen::Index r = 1 + (done % 4);
    // random unimodular conjugation of a permutation-with-signs of order | ord
    IMat base = IMat::Identity(r, r);
    if (ord == 2 && r >= 2) {
      base(0, 0) = 0; base(0, 1) = 1; base(1, 0) = 1; base(1, 1) = 0;
      if (r >= 3) base(2, 2) = -1;
    } else if (ord == 2) {
      base(0, 0) = -1;
    } else if (ord == 3 && r >= 2) {
      base.setZero();
      base(0, 1) = -1; base(1, 0) = 1; base(1, 1) = -1;  // order 3 in GL2
      for (Eigen::Index i = 2; i < r; ++i) base(i, i) = 1;
    } else if (ord == 4 && r >= 2) {
      base.setZero();
      base(0, 1) = -1; base(1, 0) = 1;
      for (Eigen::Index i = 2; i < r; ++i) base(i, i) = (i % 2) ? 1 : -1;
    }
    IMat P = IMat::Identity(r, r);
    P(0, r - 1) += rnd(-2, 2);
    if (r >= 2) P(r - 1, 0) += rnd(-1, 1) * 0;  // keep unimodular
    IMat Pi = inverse_unimodular(P);
    IMat theta = P * base * Pi;
    // build the module over C_ord
    std::vector<IMat> acts(static_cast<size_t>(ord), IMat::Identity(r, r));
    for (int k = 1; k < ord; ++k) acts[static_cast<size_t>(k)] = theta * acts[static_cast<size_t>(k - 1)];
    if (!is_identity(IMat(theta * acts[static_cast<size_t>(ord - 1)]))) continue;  // order must divide
    GModule m = GModule::lattice(acts);
    CohomologyGroup h1 = h_n(g, m, 1);
    Subquotient tate = cyclic_tate(g, m, true);
    CHECK(h1.invariant_factors() == tate.invariant_factors());
    CHECK(h1.free_rank() == tate.free_rank());
    CohomologyGroup h2 = h_n(g, m, 2);
    Subquotient tate0 = cyclic_tate(g, m, false);
    CHECK(h2.invariant_factors() == tate0.invariant_factors());
    CHECK(h2.free_rank() == tate0.free_rank());
    ++done;
  }
}

TEST_CASE("real torus H^1: split, circle, Weil restriction") {
  IMat split(1, 1);
  split << 1;
  CHECK(h1_real_torus(split).invariant_factors().empty());

  IMat circle(1, 1);
  circle << -1;
  CHECK(h1_real_torus(circle).invariant_factors() == std::vector<Int>{2});

  IMat weil(2, 2);
  weil << 0, 1, 1, 0;
  CHECK(h1_real_torus(weil).invariant_factors().empty());
  CHECK(h1_real_torus(weil).free_rank() == 0);
}

TEST_CASE("C2-lattice decomposition: stock examples") {
  IMat id3 = IMat::Identity(3, 3);
  C2Decomposition d = decompose_c2_lattice(id3);
  CHECK(d.trivial == 3);
  CHECK(d.sign == 0);
  CHECK(d.regular == 0);

  IMat neg2 = -IMat::Identity(2, 2);
  d = decompose_c2_lattice(neg2);
  CHECK(d.sign == 2);

  IMat sw(2, 2);
  sw << 0, 1, 1, 0;
  d = decompose_c2_lattice(sw);
  CHECK(d.regular == 1);
  CHECK(d.trivial == 0);
  CHECK(d.sign == 0);
}

TEST_CASE("h1_real_torus matches the decomposition prediction on random involutions") {
  std::mt19937 rng(987654);
  auto rnd = [&](Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); };
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Index r = 1 + (trial % 6);
    IMat base = IMat::Zero(r, r);
    Eigen::Index i = 0;
    while (i < r) {
      int kind = static_cast<int>(rnd(0, 2));
      if (kind == 2 && i + 1 < r) {
        base(i, i + 1) = 1;
        base(i + 1, i) = 1;
        i += 2;
      } else {
        base(i, i) = (kind == 0) ? 1 : -1;
        ++i;
      }
    }
    IMat P = IMat::Identity(r, r);
    for (int t = 0; t < 3; ++t) {
      Eigen::Index a = rnd(0, r - 1), b = rnd(0, r - 1);
      if (a != b) P(a, b) += rnd(-2, 2);
    }
    IMat theta = P * base * inverse_unimodular(P);
    C2Decomposition dec = decompose_c2_lattice(theta);
    Subquotient h1 = h1_real_torus(theta);
    CHECK(h1.free_rank() == 0);
    CHECK(static_cast<Eigen::Index>(h1.invariant_factors().size()) == dec.sign);
    for (Int d : h1.invariant_factors()) CHECK(d == 2);
  }
}

TEST_CASE("real torus H^1 agrees with bar H^2 of the sign-flipped lattice") {
  FiniteGroupTable c2 = FiniteGroupTable::cyclic(2);
  std::vector<IMat> thetas;
  IMat a(1, 1); a << 1; thetas.push_back(a);
  IMat b(1, 1); b << -1; thetas.push_back(b);
  IMat c(2, 2); c << 0, 1, 1, 0; thetas.push_back(c);
  IMat d(3, 3); d << 1, 2, 0, 0, -1, 0, 0, 0, -1; thetas.push_back(d);
  for (const auto& th : thetas) {
    GModule m = twisted_lattice_module(c2, {IMat::Identity(th.rows(), th.rows()), th}, -1);
    CohomologyGroup h2 = h_n(c2, m, 2);
    Subquotient direct = h1_real_torus(th);
    CHECK(h2.invariant_factors() == direct.invariant_factors());
    CHECK(h2.free_rank() == direct.free_rank());
  }
}

TEST_CASE("torus cocycle classes: circle torus detects the sign cocycle") {
  FiniteGroupTable c2 = FiniteGroupTable::cyclic(2);
  IMat theta(1, 1);
  theta << -1;
  // cocycle sigma -> exp(2 pi i * 1/2): nontrivial in H^1(R, S^1)
  std::vector<RatVec> coc(2);
  coc[0].v = {Rat(0)};
  coc[1].v = {Rat(1, 2)};
  TorusCocycleClass cls = torus_class_of_cocycle(c2, {IMat::Identity(1, 1), theta}, -1, coc);
  CHECK(!cls.zero);
  // the trivial cocycle is zero
  coc[1].v = {Rat(0)};
  CHECK(torus_class_of_cocycle(c2, {IMat::Identity(1, 1), theta}, -1, coc).zero);
  // -1/2 and 1/2 are the same point of S^1[2]; both give the nontrivial class
  coc[1].v = {Rat(-1, 2)};
  TorusCocycleClass cob = torus_class_of_cocycle(c2, {IMat::Identity(1, 1), theta}, -1, coc);
  CHECK(!cob.zero);  // -1/2 = 1/2 in Q/Z: still the nontrivial class
}

TEST_CASE("algebraic torus cohomology over C3 via H^2 of the lattice") {
  FiniteGroupTable c3 = FiniteGroupTable::cyclic(3);
  IMat rot(2, 2);
  rot << 0, -1, 1, -1;  // order 3
  std::vector<IMat> acts = {IMat::Identity(2, 2), rot, IMat(rot * rot)};
  GModule m = GModule::lattice(acts);
  CohomologyGroup h2 = h_n(c3, m, 2);
  Subquotient tate = cyclic_tate(c3, m, false);
  CHECK(h2.invariant_factors() == tate.invariant_factors());
  // ker(s-1) = 0 for this action, so H^1(C3, T) = H^2(C3, L) = L^G / N L = 0
  CHECK(h2.is_trivial());
}

TEST_CASE("finite module duality and the real sign twist") {
  FiniteGroupTable c2 = FiniteGroupTable::cyclic(2);
  GModule m;
  m.moduli = {4};
  IMat inv1(1, 1);
  inv1 << 3;  // inversion mod 4
  m.act = {IMat::Identity(1, 1), inv1};
  GModule d = dual_module(c2, m, +1);
  CHECK(d.moduli == std::vector<Int>{4});
  // dual of inversion is inversion
  CHECK(d.act[1](0, 0) == 3);
  GModule dr = dual_module(c2, m, -1);
  CHECK(dr.act[1](0, 0) == 1);  // conjugation cancels the inversion
}

TEST_CASE("cup pairing: mu2 with trivial action is the nondegenerate pairing") {
  FiniteGroupTable c2 = FiniteGroupTable::cyclic(2);
  GModule a;
  a.moduli = {2};
  a.act = {IMat::Identity(1, 1), IMat::Identity(1, 1)};
  std::vector<std::vector<QmodZ>> pairing = {{QmodZ(1, 2)}};
  IVec zero1 = IVec::Zero(1), one1 = IVec::Ones(1);
  CHECK(cup_pairing_real(c2, a, a, pairing, one1, one1) == half());
  CHECK(cup_pairing_real(c2, a, a, pairing, zero1, one1).is_zero());
  CHECK(cup_pairing_real(c2, a, a, pairing, one1, zero1).is_zero());
}

TEST_CASE("cup pairing: mu4 with inversion pairs nondegenerately") {
  FiniteGroupTable c2 = FiniteGroupTable::cyclic(2);
  GModule a;
  a.moduli = {4};
  IMat inv1(1, 1);
  inv1 << 3;
  a.act = {IMat::Identity(1, 1), inv1};
  // the dual twisted pairing: <x, y> = xy/4, equivariance: <3x, 3y> = 9xy/4 = xy/4;
  // Q/Z(1) needs <sx, sy> = -<x,y>, so pair against the (+1)-action partner
  GModule b = dual_module(c2, a, -1);  // trivial action after the conjugation twist
  std::vector<std::vector<QmodZ>> pairing = {{QmodZ(1, 4)}};
  // cocycles of (mu4, inversion): (1+s)a = a + 3a = 4a = 0: all of Z/4
  // cocycles of b (trivial action under the twist...): handled by the checker
  IVec two = IVec::Ones(1) * 2;
  IVec one = IVec::Ones(1);
  QmodZ v = cup_pairing_real(c2, a, b, pairing, one, two);
  CHECK(v == half());
}

TEST_CASE("padic unit structure factors") {
  // Q_p^x/(Q_p^x)^2 has order 4 for odd p, 8 for p = 2
  auto f3 = padic_mu_h1_factors(3, 2);
  CHECK(f3 == std::vector<Int>{2, 2});
  auto f2 = padic_mu_h1_factors(2, 2);
  CHECK(f2 == std::vector<Int>{2, 2, 2});
  // mu_3 over Q_7: 7 = 1 mod 3: Z/3 + Z/3
  auto f7 = padic_mu_h1_factors(7, 3);
  CHECK(f7 == std::vector<Int>{3, 3});
  // mu_3 over Q_5: 5 != 1 mod 3: only the valuation Z/3 survives
  auto f5 = padic_mu_h1_factors(5, 3);
  CHECK(f5 == std::vector<Int>{3});
}
