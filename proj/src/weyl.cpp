#include "rootdual/weyl.hpp"

#include <numeric>
#include <stdexcept>

namespace rootdual {

WeylElement WeylElement::identity(const BasedRootDatum& brd) {
  WeylElement w;
  w.on_X = IMat::Identity(brd.rank, brd.rank);
  w.on_Xv = IMat::Identity(brd.rank, brd.rank);
  return w;
}

WeylElement simple_reflection(const BasedRootDatum& brd, Eigen::Index i) {
  WeylElement w;
  w.on_X = brd.simple_reflection_X(i);
  w.on_Xv = brd.simple_reflection_Xv(i);
  w.word = {static_cast<int>(i)};
  return w;
}

WeylElement product(const WeylElement& a, const WeylElement& b) {
  WeylElement w;
  w.on_X = a.on_X * b.on_X;
  w.on_Xv = a.on_Xv * b.on_Xv;
  w.word = a.word;
  w.word.insert(w.word.end(), b.word.begin(), b.word.end());
  return w;
}

Int length(const BasedRootDatum& brd, const WeylElement& w) {
  Int len = 0;
  for (size_t k = 0; k < brd.roots.size(); ++k) {
    if (!brd.positive[k]) continue;
    int im = brd.root_index(IVec(w.on_X * brd.roots[k]));
    if (im < 0) throw std::logic_error("length: matrix does not permute roots");
    if (!brd.positive[static_cast<size_t>(im)]) ++len;
  }
  return len;
}

WeylElement longest_element(const BasedRootDatum& brd) {
  std::vector<int> all(static_cast<size_t>(brd.ss_rank()));
  std::iota(all.begin(), all.end(), 0);
  return longest_element(brd, all);
}

WeylElement longest_element(const BasedRootDatum& brd, const std::vector<int>& subset) {
  WeylElement w = WeylElement::identity(brd);
  // w(alpha_i) stays a root throughout; stop when every alpha_i, i in S, goes negative
  while (true) {
    int pick = -1;
    for (int i : subset) {
      IVec im = w.on_X * brd.simple_root(i);
      int idx = brd.root_index(im);
      if (idx < 0) throw std::logic_error("longest_element: left the root set");
      if (brd.positive[static_cast<size_t>(idx)]) { pick = i; break; }
    }
    if (pick < 0) break;
    // right multiplication: length goes up by one each step
    w = product(w, simple_reflection(brd, pick));
  }
  return w;
}

bool minus_one_in_W(const BasedRootDatum& brd) {
  WeylElement w0 = longest_element(brd);
  for (Eigen::Index i = 0; i < brd.ss_rank(); ++i)
    if (w0.on_X * brd.simple_root(i) != -brd.simple_root(i)) return false;
  return true;
}

std::vector<int> minus_w0_diagram(const BasedRootDatum& brd) {
  std::vector<int> all(static_cast<size_t>(brd.ss_rank()));
  std::iota(all.begin(), all.end(), 0);
  return minus_wS_diagram(brd, all);
}

std::vector<int> minus_wS_diagram(const BasedRootDatum& brd, const std::vector<int>& subset) {
  WeylElement wS = longest_element(brd, subset);
  std::vector<int> perm(static_cast<size_t>(brd.ss_rank()));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i : subset) {
    IVec im = -(wS.on_X * brd.simple_root(i));
    int target = -1;
    for (int j : subset)
      if (brd.simple_root(j) == im) { target = j; break; }
    if (target < 0)
      throw std::logic_error("minus_wS_diagram: -wS(alpha_i) is not a simple root of S");
    perm[static_cast<size_t>(i)] = target;
  }
  return perm;
}

WeylElement from_word(const BasedRootDatum& brd, const std::vector<int>& word) {
  WeylElement w = WeylElement::identity(brd);
  for (int i : word) w = product(w, simple_reflection(brd, i));
  w.word = word;
  return w;
}

bool is_cartan_automorphism(const BasedRootDatum& brd, const std::vector<int>& perm) {
  const Eigen::Index s = brd.ss_rank();
  if (static_cast<Eigen::Index>(perm.size()) != s) return false;
  std::vector<char> hit(static_cast<size_t>(s), 0);
  for (int p : perm) {
    if (p < 0 || p >= s || hit[static_cast<size_t>(p)]) return false;
    hit[static_cast<size_t>(p)] = 1;
  }
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = 0; j < s; ++j)
      if (brd.cartan(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]) !=
          brd.cartan(i, j))
        return false;
  return true;
}

}  // namespace rootdual
