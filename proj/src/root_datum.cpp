#include "rootdual/root_datum.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rootdual {

namespace {

std::vector<Int> to_key(const IVec& v) {
  return std::vector<Int>(v.data(), v.data() + v.size());
}

// Root ordering: height first, then coordinates with earlier support first.
bool root_less(Int ha, const IVec& a, Int hb, const IVec& b) {
  if (ha != hb) return ha < hb;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return a(i) > b(i);
  return false;
}

}  // namespace

std::string FiniteAbelianGroup::str() const {
  std::string s;
  for (Int d : invariant_factors) {
    if (!s.empty()) s += "+";
    s += "Z/" + std::to_string(d);
  }
  for (Eigen::Index i = 0; i < free_rank; ++i) {
    if (!s.empty()) s += "+";
    s += "Z";
  }
  if (s.empty()) s = "1";
  return s;
}

CartanTypeSpec CartanTypeSpec::parse(const std::string& s) {
  CartanTypeSpec spec;
  size_t i = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("type spec '" + s + "': " + msg + " at position " +
                                std::to_string(i));
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == 'x' || c == '*' || c == '+') { ++i; continue; }
    if (c == 'T') {
      ++i;
      size_t j = i;
      while (j < s.size() && isdigit(s[j])) ++j;
      if (j == i) fail("torus rank expected after T");
      spec.torus_rank += std::stoi(s.substr(i, j - i));
      i = j;
      continue;
    }
    if (c < 'A' || c > 'G') fail("unknown type letter");
    ++i;
    size_t j = i;
    while (j < s.size() && isdigit(s[j])) ++j;
    if (j == i) fail("rank expected");
    int r = std::stoi(s.substr(i, j - i));
    i = j;
    SimpleFactor f{c, r};
    // canonical bounds; C2 is relabeled B2 so catalogs have one entry per type
    switch (c) {
      case 'A': if (r < 1) fail("A_n needs n >= 1"); break;
      case 'B': if (r < 2) fail("B_n needs n >= 2"); break;
      case 'C':
        if (r < 2) fail("C_n needs n >= 2");
        if (r == 2) f.letter = 'B';
        break;
      case 'D': if (r < 3) fail("D_n needs n >= 3"); break;
      case 'E': if (r < 6 || r > 8) fail("E_n needs n in {6,7,8}"); break;
      case 'F': if (r != 4) fail("F_n needs n = 4"); break;
      case 'G': if (r != 2) fail("G_n needs n = 2"); break;
    }
    spec.factors.push_back(f);
  }
  if (spec.factors.empty() && spec.torus_rank == 0) fail("empty specification");
  return spec;
}

std::string CartanTypeSpec::str() const {
  std::string s;
  for (const auto& f : factors) {
    if (!s.empty()) s += "x";
    s += f.letter + std::to_string(f.rank);
  }
  if (torus_rank > 0) {
    if (!s.empty()) s += "+";
    s += "T" + std::to_string(torus_rank);
  }
  return s;
}

int CartanTypeSpec::semisimple_rank() const {
  int r = 0;
  for (const auto& f : factors) r += f.rank;
  return r;
}

IMat cartan_matrix(char letter, int rank) {
  IMat C = IMat::Zero(rank, rank);
  for (int i = 0; i < rank; ++i) C(i, i) = 2;
  auto chain = [&](int a, int b) { C(a, b) = -1; C(b, a) = -1; };
  switch (letter) {
    case 'A':
      for (int i = 0; i + 1 < rank; ++i) chain(i, i + 1);
      break;
    case 'B':
      for (int i = 0; i + 1 < rank; ++i) chain(i, i + 1);
      C(rank - 2, rank - 1) = -2;  // alpha_{n-1} long, alpha_n short
      break;
    case 'C':
      for (int i = 0; i + 1 < rank; ++i) chain(i, i + 1);
      C(rank - 1, rank - 2) = -2;  // alpha_n long
      break;
    case 'D':
      for (int i = 0; i + 2 < rank; ++i) chain(i, i + 1);
      chain(rank - 3, rank - 1);
      break;
    case 'E':
      // Bourbaki: chain 1-3-4-5-6(-7-8), node 2 attached to node 4.
      chain(0, 2);
      chain(2, 3);
      chain(3, 4);
      chain(4, 5);
      if (rank >= 7) chain(5, 6);
      if (rank >= 8) chain(6, 7);
      chain(1, 3);
      break;
    case 'F':
      chain(0, 1);
      chain(2, 3);
      C(1, 2) = -2;
      C(2, 1) = -1;
      break;
    case 'G':
      C(0, 1) = -1;
      C(1, 0) = -3;
      break;
    default:
      throw std::invalid_argument("cartan_matrix: unknown letter");
  }
  return C;
}

IMat cartan_matrix(const CartanTypeSpec& spec) {
  int n = spec.semisimple_rank();
  IMat C = IMat::Zero(n, n);
  int off = 0;
  for (const auto& f : spec.factors) {
    C.block(off, off, f.rank, f.rank) = cartan_matrix(f.letter, f.rank);
    off += f.rank;
  }
  return C;
}

int BasedRootDatum::root_index(const IVec& v) const {
  auto it = index_.find(to_key(v));
  return it == index_.end() ? -1 : it->second;
}

IMat BasedRootDatum::simple_reflection_X(Eigen::Index i) const {
  return IMat::Identity(rank, rank) - simple_root(i) * simple_coroot(i).transpose();
}

IMat BasedRootDatum::simple_reflection_Xv(Eigen::Index i) const {
  return IMat::Identity(rank, rank) - simple_coroot(i) * simple_root(i).transpose();
}

std::optional<std::vector<int>> BasedRootDatum::root_permutation_of(const IMat& on_X) const {
  std::vector<int> perm(roots.size());
  for (size_t k = 0; k < roots.size(); ++k) {
    int idx = root_index(on_X * roots[k]);
    if (idx < 0) return std::nullopt;
    perm[k] = idx;
  }
  return perm;
}

IMat BasedRootDatum::simple_root_matrix() const {
  IMat M(rank, ss_rank());
  for (Eigen::Index i = 0; i < ss_rank(); ++i) M.col(i) = simple_root(i);
  return M;
}

IMat BasedRootDatum::simple_coroot_matrix() const {
  IMat M(rank, ss_rank());
  for (Eigen::Index i = 0; i < ss_rank(); ++i) M.col(i) = simple_coroot(i);
  return M;
}

void BasedRootDatum::finalize() {
  const size_t N = roots.size();
  if (coroots.size() != N) throw std::logic_error("root/coroot count mismatch");
  index_.clear();
  for (size_t k = 0; k < N; ++k) {
    if (!index_.emplace(to_key(roots[k]), static_cast<int>(k)).second)
      throw std::logic_error("duplicate root");
  }

  const Eigen::Index s = ss_rank();
  cartan = IMat(s, s);
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = 0; j < s; ++j) cartan(i, j) = simple_root(i).dot(simple_coroot(j));

  // expansion of roots in the simple basis: solve against the simple-root matrix
  IMat S = simple_root_matrix();
  IMat Sv = simple_coroot_matrix();
  root_in_simple.resize(N);
  coroot_in_simple.resize(N);
  height.resize(N);
  positive.resize(N);
  neg_index.resize(N);
  for (size_t k = 0; k < N; ++k) {
    auto c = solve_integer(S, roots[k]);
    auto cv = solve_integer(Sv, coroots[k]);
    if (!c || !cv) throw std::logic_error("root outside the lattice spanned by simples");
    root_in_simple[k] = *c;
    coroot_in_simple[k] = *cv;
    Int h = c->sum();
    height[k] = h;
    bool pos = true, neg = true;
    for (Eigen::Index i = 0; i < c->size(); ++i) {
      if ((*c)(i) > 0) neg = false;
      if ((*c)(i) < 0) pos = false;
    }
    if (pos == neg) throw std::logic_error("root with mixed simple coordinates");
    positive[k] = pos ? 1 : 0;
    int ni = root_index(IVec(-roots[k]));
    if (ni < 0) throw std::logic_error("root set not symmetric");
    neg_index[k] = ni;
  }

  // type invariants
  for (size_t k = 0; k < N; ++k) {
    if (roots[k].dot(coroots[k]) != 2) throw std::logic_error("<alpha, alpha^vee> != 2");
  }
  for (size_t k = 0; k < N; ++k) {
    for (Eigen::Index i = 0; i < s; ++i) {
      IVec im = roots[k] - roots[k].dot(simple_coroot(i)) * simple_root(i);
      int idx = root_index(im);
      if (idx < 0) throw std::logic_error("simple reflection does not permute roots");
      IVec imv = coroots[k] - simple_root(i).dot(coroots[k]) * simple_coroot(i);
      if (coroots[static_cast<size_t>(idx)] != imv)
        throw std::logic_error("coroot alignment broken under reflection");
    }
  }
}

BasedRootDatum make_datum(Eigen::Index rank, const std::vector<IVec>& simple_roots,
                          const std::vector<IVec>& simple_coroots,
                          const std::string& type_label, const std::string& isogeny_label) {
  const size_t s = simple_roots.size();
  if (simple_coroots.size() != s) throw std::invalid_argument("make_datum: size mismatch");
  for (size_t i = 0; i < s; ++i)
    for (size_t j = 0; j < s; ++j) {
      Int v = simple_roots[i].dot(simple_coroots[j]);
      if (i == j && v != 2) throw std::invalid_argument("make_datum: <alpha_i, alpha_i^vee> != 2");
      if (i != j && v > 0) throw std::invalid_argument("make_datum: positive off-diagonal pairing");
    }

  // reflection closure, tracking (root, coroot) pairs
  struct Entry { IVec root, coroot; };
  std::map<std::vector<Int>, int> seen;
  std::vector<Entry> all;
  std::deque<int> queue;
  for (size_t i = 0; i < s; ++i) {
    Entry e{simple_roots[i], simple_coroots[i]};
    auto key = to_key(e.root);
    if (!seen.count(key)) {
      seen[key] = static_cast<int>(all.size());
      all.push_back(e);
      queue.push_back(static_cast<int>(all.size()) - 1);
    }
  }
  const size_t kMaxRoots = 1000;
  while (!queue.empty()) {
    int k = queue.front();
    queue.pop_front();
    for (size_t i = 0; i < s; ++i) {
      Entry e;
      e.root = all[static_cast<size_t>(k)].root -
               all[static_cast<size_t>(k)].root.dot(simple_coroots[i]) * simple_roots[i];
      e.coroot = all[static_cast<size_t>(k)].coroot -
                 simple_roots[i].dot(all[static_cast<size_t>(k)].coroot) * simple_coroots[i];
      auto key = to_key(e.root);
      if (!seen.count(key)) {
        seen[key] = static_cast<int>(all.size());
        all.push_back(e);
        queue.push_back(static_cast<int>(all.size()) - 1);
        if (all.size() > kMaxRoots)
          throw std::invalid_argument("make_datum: root closure does not terminate (not finite type)");
      }
    }
  }

  // canonical order: positives ascending, then their negatives in matching order
  IMat S(rank, static_cast<Eigen::Index>(s));
  for (size_t i = 0; i < s; ++i) S.col(static_cast<Eigen::Index>(i)) = simple_roots[i];
  struct PosEntry { Int height; IVec simple_coords; int idx; };
  std::vector<PosEntry> pos;
  for (size_t k = 0; k < all.size(); ++k) {
    auto c = solve_integer(S, all[k].root);
    if (!c) throw std::invalid_argument("make_datum: generated root outside simple span");
    Int h = c->sum();
    bool is_pos = true;
    for (Eigen::Index i = 0; i < c->size(); ++i)
      if ((*c)(i) < 0) is_pos = false;
    if (is_pos) pos.push_back({h, *c, static_cast<int>(k)});
  }
  std::sort(pos.begin(), pos.end(), [](const PosEntry& a, const PosEntry& b) {
    return root_less(a.height, a.simple_coords, b.height, b.simple_coords);
  });

  BasedRootDatum brd;
  brd.rank = rank;
  brd.type_label = type_label;
  brd.isogeny_label = isogeny_label;
  const size_t P = pos.size();
  brd.roots.resize(2 * P);
  brd.coroots.resize(2 * P);
  for (size_t k = 0; k < P; ++k) {
    brd.roots[k] = all[static_cast<size_t>(pos[k].idx)].root;
    brd.coroots[k] = all[static_cast<size_t>(pos[k].idx)].coroot;
    brd.roots[P + k] = -brd.roots[k];
    brd.coroots[P + k] = -brd.coroots[k];
  }
  brd.simples.resize(s);
  for (size_t i = 0; i < s; ++i) {
    int found = -1;
    for (size_t k = 0; k < 2 * P; ++k)
      if (brd.roots[k] == simple_roots[i]) { found = static_cast<int>(k); break; }
    if (found < 0) throw std::logic_error("make_datum: simple root lost");
    brd.simples[i] = found;
  }
  brd.finalize();
  return brd;
}

BasedRootDatum build(const CartanTypeSpec& spec, Isogeny isogeny, const IMat* sublattice_basis) {
  const int s = spec.semisimple_rank();
  const Eigen::Index rank = s + spec.torus_rank;
  IMat C = cartan_matrix(spec);

  // simply-connected coordinates: X-basis = fundamental weights + torus basis
  std::vector<IVec> sc_roots(static_cast<size_t>(s)), sc_coroots(static_cast<size_t>(s));
  for (int i = 0; i < s; ++i) {
    IVec r = IVec::Zero(rank);
    for (int j = 0; j < s; ++j) r(j) = C(i, j);
    IVec rv = IVec::Zero(rank);
    rv(i) = 1;
    sc_roots[static_cast<size_t>(i)] = r;
    sc_coroots[static_cast<size_t>(i)] = rv;
  }

  std::string label = spec.str();
  switch (isogeny) {
    case Isogeny::SimplyConnected:
      return make_datum(rank, sc_roots, sc_coroots, label, "sc");
    case Isogeny::Adjoint: {
      std::vector<IVec> roots(static_cast<size_t>(s)), coroots(static_cast<size_t>(s));
      for (int i = 0; i < s; ++i) {
        IVec r = IVec::Zero(rank);
        r(i) = 1;
        IVec rv = IVec::Zero(rank);
        for (int j = 0; j < s; ++j) rv(j) = C(j, i);
        roots[static_cast<size_t>(i)] = r;
        coroots[static_cast<size_t>(i)] = rv;
      }
      return make_datum(rank, roots, coroots, label, "ad");
    }
    case Isogeny::Sublattice: {
      if (!sublattice_basis) throw std::invalid_argument("build: sublattice basis required");
      const IMat& B = *sublattice_basis;
      if (B.rows() != rank || B.cols() != rank)
        throw std::invalid_argument("build: sublattice basis must be rank x rank");
      if (det_int(B) == 0) throw std::invalid_argument("build: singular sublattice basis");
      IMat Bt = B.transpose();
      std::vector<IVec> roots(static_cast<size_t>(s)), coroots(static_cast<size_t>(s));
      for (int i = 0; i < s; ++i) {
        auto r = solve_integer(Bt, sc_roots[static_cast<size_t>(i)]);
        if (!r)
          throw std::invalid_argument(
              "build: sublattice is not between the root and weight lattices");
        roots[static_cast<size_t>(i)] = *r;
        coroots[static_cast<size_t>(i)] = B * sc_coroots[static_cast<size_t>(i)];
      }
      return make_datum(rank, roots, coroots, label, "iso");
    }
  }
  throw std::logic_error("unreachable");
}

BasedRootDatum build(const std::string& type_spec, Isogeny isogeny, const IMat* basis) {
  return build(CartanTypeSpec::parse(type_spec), isogeny, basis);
}

BasedRootDatum datum_gl(int n) {
  if (n < 2) throw std::invalid_argument("datum_gl: n >= 2");
  Eigen::Index rank = n;
  std::vector<IVec> roots, coroots;
  for (int i = 0; i + 1 < n; ++i) {
    IVec r = IVec::Zero(rank);
    r(i) = 1;
    r(i + 1) = -1;
    roots.push_back(r);
    coroots.push_back(r);
  }
  return make_datum(rank, roots, coroots, "A" + std::to_string(n - 1) + "+T1",
                    "GL" + std::to_string(n));
}

BasedRootDatum datum_sp(int n) {
  if (n < 1) throw std::invalid_argument("datum_sp: n >= 1");
  Eigen::Index rank = n;
  std::vector<IVec> roots, coroots;
  for (int i = 0; i + 1 < n; ++i) {
    IVec r = IVec::Zero(rank);
    r(i) = 1;
    r(i + 1) = -1;
    roots.push_back(r);
    coroots.push_back(r);
  }
  IVec r = IVec::Zero(rank);
  r(n - 1) = 2;
  IVec rv = IVec::Zero(rank);
  rv(n - 1) = 1;
  roots.push_back(r);
  coroots.push_back(rv);
  std::string label = n == 1 ? "A1" : (n == 2 ? "B2" : "C" + std::to_string(n));
  return make_datum(rank, roots, coroots, label, "Sp" + std::to_string(2 * n));
}

BasedRootDatum datum_so_odd(int n) {
  if (n < 1) throw std::invalid_argument("datum_so_odd: n >= 1");
  Eigen::Index rank = n;
  std::vector<IVec> roots, coroots;
  for (int i = 0; i + 1 < n; ++i) {
    IVec r = IVec::Zero(rank);
    r(i) = 1;
    r(i + 1) = -1;
    roots.push_back(r);
    coroots.push_back(r);
  }
  IVec r = IVec::Zero(rank);
  r(n - 1) = 1;
  IVec rv = IVec::Zero(rank);
  rv(n - 1) = 2;
  roots.push_back(r);
  coroots.push_back(rv);
  std::string label = n == 1 ? "A1" : "B" + std::to_string(n);
  return make_datum(rank, roots, coroots, label, "SO" + std::to_string(2 * n + 1));
}

BasedRootDatum datum_so_even(int n) {
  if (n < 2) throw std::invalid_argument("datum_so_even: n >= 2");
  Eigen::Index rank = n;
  std::vector<IVec> roots, coroots;
  for (int i = 0; i + 1 < n; ++i) {
    IVec r = IVec::Zero(rank);
    r(i) = 1;
    r(i + 1) = -1;
    roots.push_back(r);
    coroots.push_back(r);
  }
  IVec r = IVec::Zero(rank);
  r(n - 2) = 1;
  r(n - 1) = 1;
  roots.push_back(r);
  coroots.push_back(r);
  std::string label = n == 2 ? "A1xA1" : (n == 3 ? "D3" : "D" + std::to_string(n));
  return make_datum(rank, roots, coroots, label, "SO" + std::to_string(2 * n));
}

BasedRootDatum dual(const BasedRootDatum& brd) {
  BasedRootDatum d;
  d.rank = brd.rank;
  d.roots = brd.coroots;
  d.coroots = brd.roots;
  d.simples = brd.simples;
  // B_n and C_n exchange under duality; every other factor is self-dual
  std::string label = brd.type_label;
  for (size_t i = 0; i < label.size(); ++i) {
    if (label[i] == 'B' || label[i] == 'C') {
      size_t j = i + 1;
      while (j < label.size() && isdigit(label[j])) ++j;
      int r = std::stoi(label.substr(i + 1, j - i - 1));
      if (r > 2) label[i] = label[i] == 'B' ? 'C' : 'B';
    }
  }
  d.type_label = label;
  d.isogeny_label = brd.isogeny_label == "sc" ? "ad"
                   : brd.isogeny_label == "ad" ? "sc"
                                               : "dual(" + brd.isogeny_label + ")";
  d.finalize();
  return d;
}

FiniteAbelianGroup center(const BasedRootDatum& brd) {
  AbelianQuotient q(brd.rank, brd.simple_root_matrix());
  FiniteAbelianGroup g;
  g.invariant_factors = q.invariant_factors();
  g.free_rank = q.free_rank();
  return g;
}

FiniteAbelianGroup pi1_of_dual(const BasedRootDatum& brd) {
  BasedRootDatum d = dual(brd);
  AbelianQuotient q(d.rank, d.simple_coroot_matrix());
  FiniteAbelianGroup g;
  g.invariant_factors = q.invariant_factors();
  g.free_rank = q.free_rank();
  // the identification Z(G)^vee = pi1(dual): torsion invariants must agree
  FiniteAbelianGroup z = center(brd);
  if (z.invariant_factors != g.invariant_factors)
    throw std::logic_error("pi1_of_dual: invariant factors differ from center");
  return g;
}

IVec two_rho_check(const BasedRootDatum& brd) {
  IVec sum = IVec::Zero(brd.rank);
  for (size_t k = 0; k < brd.coroots.size(); ++k)
    if (brd.positive[k]) sum += brd.coroots[k];
  for (Eigen::Index i = 0; i < brd.ss_rank(); ++i)
    if (brd.simple_root(i).dot(sum) != 2)
      throw std::logic_error("two_rho_check: <alpha_i, 2rho^vee> != 2 (root generation bug)");
  return sum;
}

Int classical_root_count(char letter, int rank) {
  switch (letter) {
    case 'A': return Int(rank) * (rank + 1);
    case 'B':
    case 'C': return 2 * Int(rank) * rank;
    case 'D': return 2 * Int(rank) * (rank - 1);
    case 'E': return rank == 6 ? 72 : rank == 7 ? 126 : 240;
    case 'F': return 48;
    case 'G': return 12;
  }
  throw std::invalid_argument("classical_root_count: unknown letter");
}

}  // namespace rootdual
