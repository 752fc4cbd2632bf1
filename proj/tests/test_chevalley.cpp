#include "rootdual/chevalley.hpp"

#include <doctest.h>

using namespace rootdual;

namespace {

ChevalleyAlgebra make(const std::string& t) {
  return ChevalleyAlgebra(build(t, Isogeny::SimplyConnected));
}

}  // namespace

TEST_CASE("A1: sl2 relations in the Chevalley basis") {
  ChevalleyAlgebra L = make("A1");
  const auto& d = L.datum();
  int pos = d.simples[0];
  int neg = d.neg_index[static_cast<size_t>(pos)];
  // [X, X^-] = H
  auto h = L.bracket(L.basis_X(pos), L.basis_X(neg));
  CHECK(h == L.basis_H(0));
  // [H, X] = 2X
  auto two_x = L.bracket(L.basis_H(0), L.basis_X(pos));
  auto expect = L.basis_X(pos);
  for (auto& c : expect) c *= Rat(2);
  CHECK(two_x == expect);
  L.validate();
}

TEST_CASE("A2: N is +-1 on the extraspecial pair, antisymmetric") {
  ChevalleyAlgebra L = make("A2");
  const auto& d = L.datum();
  int a1 = d.simples[0], a2 = d.simples[1];
  Int n = L.structure_constant(a1, a2);
  CHECK(std::abs(n) == 1);
  CHECK(L.structure_constant(a2, a1) == -n);
  L.validate();
}

TEST_CASE("G2: the maximal |N| is 3, and the table is consistent") {
  ChevalleyAlgebra L = make("G2");
  const auto& d = L.datum();
  Int maxn = 0;
  for (int r = 0; r < d.num_roots(); ++r)
    for (int s = 0; s < d.num_roots(); ++s) {
      if (s == r || s == d.neg_index[static_cast<size_t>(r)]) continue;
      if (d.root_index(IVec(d.roots[static_cast<size_t>(r)] + d.roots[static_cast<size_t>(s)])) < 0) continue;
      maxn = std::max(maxn, std::abs(L.structure_constant(r, s)));
    }
  CHECK(maxn == 3);
  L.validate();
}

TEST_CASE("full Jacobi for the small algebras, sampled for B3/D4") {
  make("A2").validate();
  make("B2").validate();
  make("B3").validate();
  make("D4").validate();
}

TEST_CASE("E6 structure constants stay consistent (sampled Jacobi)") {
  make("E6").validate();
}

TEST_CASE("A1: Ad(n) swaps the root vectors with signs and negates H") {
  ChevalleyAlgebra L = make("A1");
  const auto& d = L.datum();
  MonomialMap m = L.simple_representative(0);
  int pos = d.simples[0];
  int neg = d.neg_index[static_cast<size_t>(pos)];
  CHECK(m.perm[static_cast<size_t>(pos)] == neg);
  CHECK(m.perm[static_cast<size_t>(neg)] == pos);
  CHECK(m.scalar[static_cast<size_t>(pos)] == half());   // X -> -X^-
  CHECK(m.scalar[static_cast<size_t>(neg)] == half());   // X^- -> -X
  CHECK(m.on_X(0, 0) == -1);
}

TEST_CASE("Ad(n_i)^4 = 1 for every simple reflection, small ranks") {
  for (const char* t : {"A2", "B2", "G2", "A3", "B3", "C3", "D4"}) {
    ChevalleyAlgebra L = make(t);
    for (Eigen::Index i = 0; i < L.datum().ss_rank(); ++i) {
      MonomialMap m = L.simple_representative(i);
      CHECK(power(m, 4).is_identity());
      CHECK(power(m, 2).is_torus_conjugation());  // n_i^2 = alpha_i^vee(-1)
    }
  }
}

TEST_CASE("braid relation for representatives in A2 and B2") {
  {
    ChevalleyAlgebra L = make("A2");
    CHECK(L.weyl_representative({0, 1, 0}) == L.weyl_representative({1, 0, 1}));
  }
  {
    ChevalleyAlgebra L = make("B2");
    CHECK(L.weyl_representative({0, 1, 0, 1}) == L.weyl_representative({1, 0, 1, 0}));
  }
}

TEST_CASE("representatives are algebra automorphisms") {
  ChevalleyAlgebra L = make("G2");
  WeylElement w0 = longest_element(L.datum());
  MonomialMap m = L.weyl_representative(w0.word);
  std::string why;
  CHECK(L.is_algebra_automorphism(m, &why));
  CHECK(m.on_X == w0.on_X);
}

TEST_CASE("pinned automorphism: identity permutation on B2 is the identity map") {
  ChevalleyAlgebra L = make("B2");
  MonomialMap m = L.pinned_automorphism({0, 1});
  CHECK(m.is_identity());
}

TEST_CASE("pinned automorphism: A2 flip squares to the identity") {
  ChevalleyAlgebra L = make("A2");
  MonomialMap m = L.pinned_automorphism({1, 0});
  CHECK(!m.is_identity());
  CHECK(power(m, 2).is_identity());
  // the highest root vector picks up a sign determined by the N-constants
  const auto& d = L.datum();
  IVec high = d.simple_root(0) + d.simple_root(1);
  int hi = d.root_index(high);
  REQUIRE(hi >= 0);
  CHECK(m.perm[static_cast<size_t>(hi)] == hi);
  CHECK(m.scalar[static_cast<size_t>(hi)].is_sign());
}

TEST_CASE("pinned automorphism: D4 triality has order three") {
  ChevalleyAlgebra L = make("D4");
  MonomialMap m = L.pinned_automorphism({2, 1, 3, 0});
  CHECK(!m.is_identity());
  CHECK(!power(m, 2).is_identity());
  CHECK(power(m, 3).is_identity());
}

TEST_CASE("torus conjugation by iota_minus is -1 exactly on odd-height roots") {
  for (const char* t : {"A2", "B2", "G2"}) {
    ChevalleyAlgebra L = make(t);
    const auto& d = L.datum();
    TorusPoint im = iota_minus(d);
    MonomialMap m = L.torus_conjugation(im);
    CHECK(m.is_torus_conjugation());
    for (Eigen::Index k = 0; k < d.num_roots(); ++k) {
      QmodZ expect = (d.height[static_cast<size_t>(k)] % 2 != 0) ? half() : QmodZ();
      CHECK(m.scalar[static_cast<size_t>(k)] == expect);
    }
  }
}

TEST_CASE("2rho_vee tensor 1/4 and iota_minus act identically on all root spaces") {
  for (const char* t : {"A3", "B3", "C3", "D4", "G2", "F4"}) {
    BasedRootDatum d = build(t, Isogeny::SimplyConnected);
    ChevalleyAlgebra L(d);
    IVec tr = two_rho_check(d);
    TorusPoint quarter = TorusPoint::zero(TorusPoint::Basis::OnXv, d.rank);
    for (Eigen::Index i = 0; i < d.rank; ++i) quarter.coords[static_cast<size_t>(i)] = QmodZ(tr(i), 4);
    MonomialMap a = L.torus_conjugation(quarter);
    MonomialMap b = L.torus_conjugation(iota_minus(d));
    CHECK(a.scalar == b.scalar);
  }
}

TEST_CASE("torus conjugation by zero is the identity") {
  ChevalleyAlgebra L = make("A2");
  CHECK(L.torus_conjugation(TorusPoint::zero(TorusPoint::Basis::OnAdjoint, 2)).is_identity());
}

TEST_CASE("Chevalley involution torus law: c t c^{-1} = w0(-t) conjugation") {
  for (const char* t : {"A2", "A3", "D4", "B3"}) {
    BasedRootDatum d = build(t, Isogeny::SimplyConnected);
    ChevalleyAlgebra L(d);
    MonomialMap c = L.pinned_automorphism(minus_w0_diagram(d));
    WeylElement w0 = longest_element(d);
    // torsion point in Xv coordinates
    TorusPoint tp = TorusPoint::zero(TorusPoint::Basis::OnXv, d.rank);
    tp.coords[0] = QmodZ(1, 3);
    if (d.rank > 2) tp.coords[2] = QmodZ(1, 2);
    MonomialMap lhs = compose(c, compose(L.torus_conjugation(tp), inverse(c)));
    // image point: w0(-t) on cocharacters
    TorusPoint img = TorusPoint::zero(TorusPoint::Basis::OnXv, d.rank);
    for (Eigen::Index i = 0; i < d.rank; ++i) {
      QmodZ acc;
      for (Eigen::Index j = 0; j < d.rank; ++j) acc += w0.on_Xv(i, j) * (-tp.coords[static_cast<size_t>(j)]);
      img.coords[static_cast<size_t>(i)] = acc;
    }
    MonomialMap rhs = L.torus_conjugation(img);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("Levi Chevalley involution restricts consistently") {
  BasedRootDatum d = build("A3", Isogeny::SimplyConnected);
  ChevalleyAlgebra L(d);
  std::vector<int> S = {0, 2};
  auto lm = L.levi_chevalley_involution(S);
  // A1 x A1 Levi: -w_S fixes every Levi root, so the pinned map fixes the lines
  CHECK(lm.root_ids.size() == 4);
  for (size_t k = 0; k < lm.root_ids.size(); ++k) {
    CHECK(lm.perm[k] == lm.root_ids[k]);
  }
}
