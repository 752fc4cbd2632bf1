#pragma once

#include <vector>

#include "rootdual/root_datum.hpp"

namespace rootdual {

// Weyl group element as an exact lattice automorphism. on_X acts on character
// coordinates, on_Xv on cocharacter coordinates; the two are contragredient.
struct WeylElement {
  IMat on_X;
  IMat on_Xv;
  std::vector<int> word;  // reduced word in simple indices (deterministic)

  static WeylElement identity(const BasedRootDatum& brd);
  bool is_identity() const { return rootdual::is_identity(on_X); }
  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.on_X == b.on_X;
  }
};

WeylElement simple_reflection(const BasedRootDatum& brd, Eigen::Index i);
WeylElement product(const WeylElement& a, const WeylElement& b);

// Number of positive roots sent negative by w.
Int length(const BasedRootDatum& brd, const WeylElement& w);

// Longest element of the parabolic W_S (S = all of Delta when empty-flagged),
// by the greedy algorithm: right-multiply by the smallest admissible s_i.
WeylElement longest_element(const BasedRootDatum& brd);
WeylElement longest_element(const BasedRootDatum& brd, const std::vector<int>& subset);

bool minus_one_in_W(const BasedRootDatum& brd);

// The permutation i -> j of Delta with -w0(alpha_i) = alpha_j.
std::vector<int> minus_w0_diagram(const BasedRootDatum& brd);
// Same for the parabolic W_S: a permutation of the subset S (indices into Delta).
std::vector<int> minus_wS_diagram(const BasedRootDatum& brd, const std::vector<int>& subset);

// Evaluate a word in simple reflections.
WeylElement from_word(const BasedRootDatum& brd, const std::vector<int>& word);

bool is_cartan_automorphism(const BasedRootDatum& brd, const std::vector<int>& perm);

}  // namespace rootdual
