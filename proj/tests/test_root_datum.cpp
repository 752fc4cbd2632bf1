#include "rootdual/root_datum.hpp"

#include <doctest.h>

using namespace rootdual;

TEST_CASE("A1 simply connected is the forced rank-1 datum") {
  BasedRootDatum d = build("A1", Isogeny::SimplyConnected);
  CHECK(d.rank == 1);
  CHECK(d.num_roots() == 2);
  CHECK(d.cartan(0, 0) == 2);
  // X is the weight lattice: alpha = 2*omega
  CHECK(d.simple_root(0)(0) == 2);
  CHECK(d.simple_coroot(0)(0) == 1);
}

TEST_CASE("root counts match the classical tables via reflection closure") {
  struct Row { const char* label; char letter; int rank; };
  const Row rows[] = {{"A4", 'A', 4}, {"B3", 'B', 3}, {"C4", 'C', 4}, {"D5", 'D', 5},
                      {"E6", 'E', 6}, {"E7", 'E', 7}, {"E8", 'E', 8}, {"F4", 'F', 4},
                      {"G2", 'G', 2}};
  for (const auto& r : rows) {
    BasedRootDatum d = build(r.label, Isogeny::Adjoint);
    CHECK(d.num_roots() == classical_root_count(r.letter, r.rank));
  }
}

TEST_CASE("G2 adjoint: 12 roots and the stated Cartan matrix") {
  BasedRootDatum d = build("G2", Isogeny::Adjoint);
  CHECK(d.num_roots() == 12);
  IMat C(2, 2);
  C << 2, -1, -3, 2;
  CHECK(d.cartan == C);
}

TEST_CASE("product type A1xA1 adjoint") {
  BasedRootDatum d = build("A1xA1", Isogeny::Adjoint);
  CHECK(d.num_roots() == 4);
  CHECK(d.cartan == IMat(IMat::Identity(2, 2) * 2));
}

TEST_CASE("duality swaps long and short roots of B2/C-type data") {
  BasedRootDatum b = build("B2", Isogeny::SimplyConnected);
  BasedRootDatum c = dual(b);
  // root lengths exchange: pairing profile of simples against coroots flips
  CHECK(c.cartan == b.cartan.transpose());
  BasedRootDatum b3 = build("B3", Isogeny::SimplyConnected);
  CHECK(dual(b3).type_label == "C3");
}

TEST_CASE("dual is an exact involution") {
  for (const char* t : {"A3", "B3", "G2", "E6"}) {
    BasedRootDatum d = build(t, Isogeny::Adjoint);
    BasedRootDatum dd = dual(dual(d));
    CHECK(dd.roots == d.roots);
    CHECK(dd.coroots == d.coroots);
    CHECK(dd.simples == d.simples);
  }
}

TEST_CASE("centers by Smith normal form") {
  CHECK(center(build("A2", Isogeny::SimplyConnected)).str() == "Z/3");
  CHECK(center(build("A2", Isogeny::Adjoint)).str() == "1");
  CHECK(center(build("D4", Isogeny::SimplyConnected)).str() == "Z/2+Z/2");
  CHECK(center(build("A3", Isogeny::SimplyConnected)).str() == "Z/4");
  CHECK(center(build("E8", Isogeny::SimplyConnected)).str() == "1");
  CHECK(center(build("D5", Isogeny::SimplyConnected)).str() == "Z/4");
}

TEST_CASE("pi1 of the dual group equals the center, torsion included") {
  for (const char* t : {"A1", "A2", "A3", "B3", "C3", "D4", "D5", "E6", "G2"}) {
    for (Isogeny iso : {Isogeny::SimplyConnected, Isogeny::Adjoint}) {
      BasedRootDatum d = build(t, iso);
      FiniteAbelianGroup z = center(d);
      FiniteAbelianGroup p = pi1_of_dual(d);
      CHECK(z.invariant_factors == p.invariant_factors);
    }
  }
}

TEST_CASE("GL-like datum: free center, trivial torsion") {
  BasedRootDatum gl = datum_gl(2);
  CHECK(gl.rank == 2);
  CHECK(gl.num_roots() == 2);
  FiniteAbelianGroup z = center(gl);
  CHECK(z.invariant_factors.empty());
  CHECK(z.free_rank == 1);
  FiniteAbelianGroup p = pi1_of_dual(gl);
  CHECK(p.free_rank == 1);
}

TEST_CASE("classical data validate and have the expected centers") {
  CHECK(center(datum_sp(3)).str() == "Z/2");       // Sp6
  CHECK(center(datum_so_odd(3)).str() == "1");     // SO7
  CHECK(center(datum_so_even(4)).str() == "Z/2");  // SO8
  CHECK(datum_so_even(4).num_roots() == 24);
  CHECK(datum_sp(3).num_roots() == 18);
}

TEST_CASE("two_rho_check: G2 coordinates and E8 pairings") {
  BasedRootDatum g2 = build("G2", Isogeny::SimplyConnected);
  IVec r = two_rho_check(g2);
  // in simple-coroot coordinates: 10 alpha1^vee + 6 alpha2^vee
  auto c = solve_integer(g2.simple_coroot_matrix(), r);
  REQUIRE(c.has_value());
  CHECK((*c)(0) == 10);
  CHECK((*c)(1) == 6);

  BasedRootDatum e8 = build("E8", Isogeny::SimplyConnected);
  IVec r8 = two_rho_check(e8);  // throws on any bad pairing
  for (Eigen::Index i = 0; i < 8; ++i) CHECK(e8.simple_root(i).dot(r8) == 2);
}

TEST_CASE("sublattice isogeny: SO6 lattice inside A3 weights") {
  // index-2 sublattice of the A3 weight lattice containing the root lattice
  IMat B(3, 3);
  B << -1, 0, -1, 0, 1, 0, 0, 0, 2;
  BasedRootDatum d = build("A3", Isogeny::Sublattice, &B);
  CHECK(center(d).str() == "Z/2");
  CHECK(d.num_roots() == 12);
}

TEST_CASE("invalid sublattice is rejected") {
  IMat B(2, 2);
  B << 2, 0, 0, 2;  // does not contain the A2 root lattice
  CHECK_THROWS(build("A2", Isogeny::Sublattice, &B));
}

TEST_CASE("C2 canonicalizes to B2") {
  CHECK(CartanTypeSpec::parse("C2").str() == "B2");
  CHECK_THROWS(CartanTypeSpec::parse("C1"));
  CHECK_THROWS(CartanTypeSpec::parse("H3"));
}
