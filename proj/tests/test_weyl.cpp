#include "rootdual/weyl.hpp"

#include <doctest.h>

using namespace rootdual;

TEST_CASE("A2 longest element: length 3, deterministic word") {
  BasedRootDatum d = build("A2", Isogeny::Adjoint);
  WeylElement w0 = longest_element(d);
  CHECK(length(d, w0) == 3);
  CHECK(w0.word == std::vector<int>{0, 1, 0});
}

TEST_CASE("length of w0 equals the number of positive roots, rank <= 8") {
  for (const char* t : {"A5", "B4", "C5", "D6", "E6", "E7", "E8", "F4", "G2"}) {
    BasedRootDatum d = build(t, Isogeny::Adjoint);
    WeylElement w0 = longest_element(d);
    CHECK(length(d, w0) == d.num_positive());
    CHECK(static_cast<Int>(w0.word.size()) == d.num_positive());
  }
}

TEST_CASE("E8: w0 = -identity, computed greedily without enumerating W") {
  BasedRootDatum d = build("E8", Isogeny::SimplyConnected);
  WeylElement w0 = longest_element(d);
  CHECK(length(d, w0) == 120);
  CHECK(w0.on_X == IMat(-IMat::Identity(8, 8)));
}

TEST_CASE("minus one in W: the classification by type") {
  auto m1 = [](const std::string& t) {
    return minus_one_in_W(build(t, Isogeny::Adjoint));
  };
  CHECK(m1("A1"));
  CHECK(!m1("A2"));
  CHECK(!m1("A3"));
  CHECK(m1("B2"));
  CHECK(m1("C3"));
  CHECK(m1("D4"));
  CHECK(!m1("D5"));
  CHECK(m1("D6"));
  CHECK(!m1("E6"));
  CHECK(m1("E7"));
  CHECK(m1("E8"));
  CHECK(m1("F4"));
  CHECK(m1("G2"));
}

TEST_CASE("minus_w0 diagram automorphisms") {
  BasedRootDatum a3 = build("A3", Isogeny::SimplyConnected);
  CHECK(minus_w0_diagram(a3) == std::vector<int>{2, 1, 0});

  BasedRootDatum e6 = build("E6", Isogeny::Adjoint);
  std::vector<int> p = minus_w0_diagram(e6);
  CHECK(p != std::vector<int>{0, 1, 2, 3, 4, 5});
  // involution and Cartan automorphism
  CHECK(is_cartan_automorphism(e6, p));
  for (size_t i = 0; i < p.size(); ++i) CHECK(p[static_cast<size_t>(p[i])] == static_cast<int>(i));

  BasedRootDatum f4 = build("F4", Isogeny::Adjoint);
  CHECK(minus_w0_diagram(f4) == std::vector<int>{0, 1, 2, 3});

  BasedRootDatum d5 = build("D5", Isogeny::SimplyConnected);
  std::vector<int> q = minus_w0_diagram(d5);
  CHECK(q == std::vector<int>{0, 1, 2, 4, 3});
}

TEST_CASE("parabolic longest elements") {
  BasedRootDatum b2 = build("B2", Isogeny::SimplyConnected);
  WeylElement wM = longest_element(b2, {0});
  CHECK(length(b2, wM) == 1);
  CHECK(wM.word == std::vector<int>{0});

  // w0(Phi_S^+) = -Phi_S^+ for subsets of C3
  BasedRootDatum c3 = build("C3", Isogeny::SimplyConnected);
  std::vector<int> S = {0, 1};
  WeylElement wS = longest_element(c3, S);
  for (Eigen::Index k = 0; k < c3.num_roots(); ++k) {
    if (!c3.positive[static_cast<size_t>(k)]) continue;
    bool in_levi = true;
    for (Eigen::Index i = 0; i < 3; ++i)
      if (c3.root_in_simple[static_cast<size_t>(k)](i) != 0 &&
          std::find(S.begin(), S.end(), static_cast<int>(i)) == S.end())
        in_levi = false;
    int im = c3.root_index(IVec(wS.on_X * c3.roots[static_cast<size_t>(k)]));
    REQUIRE(im >= 0);
    if (in_levi) CHECK(!c3.positive[static_cast<size_t>(im)]);
  }
}

TEST_CASE("the -w0 diagram map preserves the Cartan matrix for all types") {
  for (const char* t : {"A4", "B3", "C4", "D5", "D6", "E6", "E7", "F4", "G2"}) {
    BasedRootDatum d = build(t, Isogeny::Adjoint);
    CHECK(is_cartan_automorphism(d, minus_w0_diagram(d)));
  }
}

TEST_CASE("word evaluation reproduces the matrix") {
  BasedRootDatum d = build("G2", Isogeny::Adjoint);
  WeylElement w0 = longest_element(d);
  WeylElement again = from_word(d, w0.word);
  CHECK(again == w0);
  CHECK(is_identity(IMat(w0.on_X * w0.on_X)));
}
