#include "rootdual/chevalley.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace rootdual {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::logic_error(msg);
}

}  // namespace

TorusPoint TorusPoint::zero(Basis b, Eigen::Index n) {
  TorusPoint t;
  t.basis = b;
  t.coords.assign(static_cast<size_t>(n), QmodZ());
  return t;
}

bool TorusPoint::is_zero() const {
  for (const auto& c : coords)
    if (!c.is_zero()) return false;
  return true;
}

TorusPoint TorusPoint::operator+(const TorusPoint& o) const {
  require(basis == o.basis && coords.size() == o.coords.size(), "TorusPoint: basis mismatch");
  TorusPoint r = *this;
  for (size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
  return r;
}

TorusPoint TorusPoint::operator-(const TorusPoint& o) const {
  require(basis == o.basis && coords.size() == o.coords.size(), "TorusPoint: basis mismatch");
  TorusPoint r = *this;
  for (size_t i = 0; i < coords.size(); ++i) r.coords[i] -= o.coords[i];
  return r;
}

QmodZ eval_root(const BasedRootDatum& brd, Eigen::Index root_id, const TorusPoint& t) {
  QmodZ v;
  if (t.basis == TorusPoint::Basis::OnXv) {
    require(static_cast<Eigen::Index>(t.coords.size()) == brd.rank, "eval_root: size");
    const IVec& r = brd.roots[static_cast<size_t>(root_id)];
    for (Eigen::Index i = 0; i < brd.rank; ++i) v += r(i) * t.coords[static_cast<size_t>(i)];
  } else {
    require(static_cast<Eigen::Index>(t.coords.size()) == brd.ss_rank(), "eval_root: size");
    const IVec& c = brd.root_in_simple[static_cast<size_t>(root_id)];
    for (Eigen::Index i = 0; i < brd.ss_rank(); ++i) v += c(i) * t.coords[static_cast<size_t>(i)];
  }
  return v;
}

TorusPoint iota_minus(const BasedRootDatum& brd) {
  // unique in T^ad since the simple roots span the adjoint character lattice:
  // the adjoint coordinates *are* the simple-root pairings
  TorusPoint t = TorusPoint::zero(TorusPoint::Basis::OnAdjoint, brd.ss_rank());
  for (auto& c : t.coords) c = half();
  for (Eigen::Index i = 0; i < brd.ss_rank(); ++i)
    require(eval_root(brd, brd.simples[static_cast<size_t>(i)], t) == half(),
            "iota_minus: simple pairing is not 1/2");
  return t;
}

MonomialMap MonomialMap::identity(const BasedRootDatum& brd) {
  MonomialMap m;
  m.perm.resize(static_cast<size_t>(brd.num_roots()));
  std::iota(m.perm.begin(), m.perm.end(), 0);
  m.scalar.assign(static_cast<size_t>(brd.num_roots()), QmodZ());
  m.on_X = IMat::Identity(brd.rank, brd.rank);
  m.on_Xv = IMat::Identity(brd.rank, brd.rank);
  return m;
}

bool MonomialMap::is_identity() const {
  if (!is_torus_conjugation()) return false;
  for (const auto& s : scalar)
    if (!s.is_zero()) return false;
  return true;
}

bool MonomialMap::is_torus_conjugation() const {
  for (size_t k = 0; k < perm.size(); ++k)
    if (perm[k] != static_cast<int>(k)) return false;
  return rootdual::is_identity(on_X);
}

MonomialMap compose(const MonomialMap& f, const MonomialMap& g) {
  require(f.perm.size() == g.perm.size(), "compose: size mismatch");
  MonomialMap h;
  h.perm.resize(f.perm.size());
  h.scalar.resize(f.perm.size());
  for (size_t k = 0; k < f.perm.size(); ++k) {
    int mid = g.perm[k];
    h.perm[k] = f.perm[static_cast<size_t>(mid)];
    h.scalar[k] = g.scalar[k] + f.scalar[static_cast<size_t>(mid)];
  }
  h.on_X = f.on_X * g.on_X;
  h.on_Xv = f.on_Xv * g.on_Xv;
  return h;
}

MonomialMap inverse(const MonomialMap& f) {
  MonomialMap h;
  h.perm.resize(f.perm.size());
  h.scalar.resize(f.perm.size());
  for (size_t k = 0; k < f.perm.size(); ++k) {
    h.perm[static_cast<size_t>(f.perm[k])] = static_cast<int>(k);
    h.scalar[static_cast<size_t>(f.perm[k])] = -f.scalar[k];
  }
  h.on_X = inverse_unimodular(f.on_X);
  h.on_Xv = inverse_unimodular(f.on_Xv);
  return h;
}

MonomialMap power(const MonomialMap& f, Int k) {
  require(k >= 0, "power: nonnegative exponent");
  MonomialMap acc;
  acc.perm.resize(f.perm.size());
  std::iota(acc.perm.begin(), acc.perm.end(), 0);
  acc.scalar.assign(f.perm.size(), QmodZ());
  acc.on_X = IMat::Identity(f.on_X.rows(), f.on_X.cols());
  acc.on_Xv = acc.on_X;
  for (Int i = 0; i < k; ++i) acc = compose(acc, f);
  return acc;
}

ChevalleyAlgebra::ChevalleyAlgebra(const BasedRootDatum& brd) : brd_(brd) {
  require(brd_.is_semisimple(), "ChevalleyAlgebra: semisimple datum required");
  const Eigen::Index N = brd_.num_roots();

  norms_.resize(static_cast<size_t>(N));
  for (Eigen::Index k = 0; k < N; ++k) {
    Int s = 0;
    for (Eigen::Index m = 0; m < N; ++m) {
      Int p = brd_.roots[static_cast<size_t>(k)].dot(brd_.coroots[static_cast<size_t>(m)]);
      s += p * p;
    }
    norms_[static_cast<size_t>(k)] = s;
  }

  // extraspecial pair of each decomposable positive root: minimal first member
  const Eigen::Index P = brd_.num_positive();
  for (int xi = 0; xi < P; ++xi) {
    if (brd_.height[static_cast<size_t>(xi)] < 2) continue;
    for (int eps = 0; eps < xi; ++eps) {
      IVec rest = brd_.roots[static_cast<size_t>(xi)] - brd_.roots[static_cast<size_t>(eps)];
      int eta = brd_.root_index(rest);
      if (eta >= 0 && brd_.positive[static_cast<size_t>(eta)] && eps < eta) {
        extraspecial_[xi] = {eps, eta};
        break;
      }
    }
    require(extraspecial_.count(xi) == 1, "extraspecial pair missing");
  }

  // eager table over every bracketing pair
  for (int r = 0; r < N; ++r)
    for (int s = 0; s < N; ++s) {
      if (s == brd_.neg_index[static_cast<size_t>(r)]) continue;
      IVec sum = brd_.roots[static_cast<size_t>(r)] + brd_.roots[static_cast<size_t>(s)];
      if (brd_.root_index(sum) >= 0) n_lookup(r, s);
    }

  for (Eigen::Index i = 0; i < brd_.ss_rank(); ++i)
    simple_reps_.push_back(MonomialMap());  // placeholder, filled below
  for (Eigen::Index i = 0; i < brd_.ss_rank(); ++i) {
    // Ad(n_i), n_i = x_i(1) x_{-i}(-1) x_i(1), computed by exact exponentials
    const int pos = brd_.simples[static_cast<size_t>(i)];
    const int neg = brd_.neg_index[static_cast<size_t>(pos)];
    MonomialMap m;
    m.perm.assign(static_cast<size_t>(N), -1);
    m.scalar.assign(static_cast<size_t>(N), QmodZ());
    const Eigen::Index s = cartan_dim();
    IMat hmat = IMat::Zero(s, s);
    for (Eigen::Index b = 0; b < dim(); ++b) {
      Element v = (b < s) ? basis_H(b) : basis_X(b - s);
      v = exp_ad_(pos, Rat(1), v);
      v = exp_ad_(neg, Rat(-1), v);
      v = exp_ad_(pos, Rat(1), v);
      if (b < s) {
        for (Eigen::Index j = 0; j < dim(); ++j) {
          if (v[static_cast<size_t>(j)].is_zero()) continue;
          require(j < s && v[static_cast<size_t>(j)].is_integer(),
                  "weyl representative: Cartan image left the Cartan");
          hmat(j, b) = v[static_cast<size_t>(j)].num;
        }
      } else {
        int hits = 0, target = -1;
        Rat val;
        for (Eigen::Index j = 0; j < dim(); ++j) {
          if (v[static_cast<size_t>(j)].is_zero()) continue;
          ++hits;
          target = static_cast<int>(j - s);
          val = v[static_cast<size_t>(j)];
        }
        require(hits == 1 && target >= 0, "weyl representative: non-monomial image");
        require(val == Rat(1) || val == Rat(-1), "weyl representative: scalar not a sign");
        m.perm[static_cast<size_t>(b - s)] = target;
        m.scalar[static_cast<size_t>(b - s)] = val == Rat(1) ? QmodZ() : half();
      }
    }
    // Cartan footprint must be s_i in simple-coroot coordinates
    IMat expect = IMat::Identity(s, s);
    for (Eigen::Index j = 0; j < s; ++j) expect(i, j) -= brd_.cartan(i, j);
    require(hmat == expect, "weyl representative: Cartan action is not the reflection");
    m.on_X = brd_.simple_reflection_X(i);
    m.on_Xv = brd_.simple_reflection_Xv(i);
    auto rp = brd_.root_permutation_of(m.on_X);
    require(rp.has_value() && *rp == m.perm,
            "weyl representative: root permutation disagrees with the reflection");
    simple_reps_[static_cast<size_t>(i)] = m;
  }
}

Int ChevalleyAlgebra::string_down(int r, int s) const {
  Int p = 0;
  IVec v = brd_.roots[static_cast<size_t>(s)] - brd_.roots[static_cast<size_t>(r)];
  while (brd_.root_index(v) >= 0) {
    ++p;
    v -= brd_.roots[static_cast<size_t>(r)];
  }
  return p;
}

Int ChevalleyAlgebra::structure_constant(int r, int s) const { return n_lookup(r, s); }

Int ChevalleyAlgebra::n_lookup(int r, int s) const {
  auto it = ntab_.find({r, s});
  if (it != ntab_.end()) return it->second;
  Int v = n_compute(r, s);
  ntab_[{r, s}] = v;
  return v;
}

Int ChevalleyAlgebra::n_compute(int r, int s) const {
  const bool rp = brd_.positive[static_cast<size_t>(r)] != 0;
  const bool sp = brd_.positive[static_cast<size_t>(s)] != 0;
  IVec sum = brd_.roots[static_cast<size_t>(r)] + brd_.roots[static_cast<size_t>(s)];
  const int xi = brd_.root_index(sum);
  require(xi >= 0, "n_compute: sum is not a root");

  if (rp && sp) {
    if (r > s) return -n_lookup(s, r);
    const auto& es = extraspecial_.at(xi);
    if (es.eps == r) {
      require(es.eta == s, "extraspecial bookkeeping broken");
      return string_down(r, s) + 1;
    }
    const int eps = es.eps, eta = es.eta;
    const int nr = brd_.neg_index[static_cast<size_t>(r)];
    const int ns = brd_.neg_index[static_cast<size_t>(s)];
    // Sum-zero quadruple (eps, eta, -r, -s), no two opposite: the three-term
    // relation determines N(-r,-s) from lower-height constants.
    Rat acc(0);
    int i1 = brd_.root_index(IVec(brd_.roots[static_cast<size_t>(eta)] - brd_.roots[static_cast<size_t>(r)]));
    if (i1 >= 0) acc += Rat(n_lookup(eta, nr) * n_lookup(eps, ns), norm(i1));
    int i2 = brd_.root_index(IVec(brd_.roots[static_cast<size_t>(eps)] - brd_.roots[static_cast<size_t>(r)]));
    if (i2 >= 0) acc += Rat(n_lookup(nr, eps) * n_lookup(eta, ns), norm(i2));
    Rat nneg = -(Rat(norm(xi)) * acc) / Rat(n_lookup(eps, eta));
    require(nneg.is_integer(), "n_compute: relation produced a non-integer");
    return -nneg.num;
  }
  if (!rp && !sp)
    return -n_lookup(brd_.neg_index[static_cast<size_t>(r)], brd_.neg_index[static_cast<size_t>(s)]);
  if (!rp && sp) return -n_lookup(s, r);

  // r positive, s negative; close the triangle r + s + t = 0
  const int t = brd_.root_index(IVec(-sum));
  require(t >= 0, "n_compute: negated sum is not a root");
  Rat v;
  if (brd_.positive[static_cast<size_t>(xi)]) {
    v = Rat(norm(t), norm(r)) * Rat(n_lookup(s, t));
  } else {
    v = Rat(norm(t), norm(s)) * Rat(n_lookup(t, r));
  }
  require(v.is_integer(), "n_compute: mixed-sign relation produced a non-integer");
  return v.num;
}

ChevalleyAlgebra::Element ChevalleyAlgebra::basis_H(Eigen::Index i) const {
  Element e(static_cast<size_t>(dim()), Rat(0));
  e[static_cast<size_t>(i)] = Rat(1);
  return e;
}

ChevalleyAlgebra::Element ChevalleyAlgebra::basis_X(Eigen::Index root_id) const {
  Element e(static_cast<size_t>(dim()), Rat(0));
  e[static_cast<size_t>(cartan_dim() + root_id)] = Rat(1);
  return e;
}

ChevalleyAlgebra::Element ChevalleyAlgebra::bracket(const Element& a, const Element& b) const {
  const Eigen::Index s = cartan_dim();
  Element out(static_cast<size_t>(dim()), Rat(0));
  for (Eigen::Index i = 0; i < dim(); ++i) {
    const Rat& ai = a[static_cast<size_t>(i)];
    if (ai.is_zero()) continue;
    for (Eigen::Index j = 0; j < dim(); ++j) {
      const Rat& bj = b[static_cast<size_t>(j)];
      if (bj.is_zero()) continue;
      Rat c = ai * bj;
      if (i < s && j < s) continue;
      if (i < s) {  // [H_i, X_k]
        int k = static_cast<int>(j - s);
        Int pair = brd_.roots[static_cast<size_t>(k)].dot(brd_.simple_coroot(i));
        out[static_cast<size_t>(j)] += c * Rat(pair);
      } else if (j < s) {  // [X_k, H_j] = -[H_j, X_k]
        int k = static_cast<int>(i - s);
        Int pair = brd_.roots[static_cast<size_t>(k)].dot(brd_.simple_coroot(j));
        out[static_cast<size_t>(i)] -= c * Rat(pair);
      } else {
        int k = static_cast<int>(i - s), l = static_cast<int>(j - s);
        if (l == brd_.neg_index[static_cast<size_t>(k)]) {
          // [X_beta, X_{-beta}] = H_beta (sign convention via coroot of beta)
          const IVec& hv = brd_.coroot_in_simple[static_cast<size_t>(k)];
          for (Eigen::Index m = 0; m < s; ++m)
            out[static_cast<size_t>(m)] += c * Rat(hv(m));
        } else {
          IVec sum = brd_.roots[static_cast<size_t>(k)] + brd_.roots[static_cast<size_t>(l)];
          int idx = brd_.root_index(sum);
          if (idx >= 0) out[static_cast<size_t>(s + idx)] += c * Rat(n_lookup(k, l));
        }
      }
    }
  }
  return out;
}

ChevalleyAlgebra::Element ChevalleyAlgebra::exp_ad_(int root_id, const Rat& coeff,
                                                    const Element& v) const {
  Element acc = v;
  Element term = v;
  for (Int k = 1;; ++k) {
    Element ad = bracket(basis_X(root_id), term);
    bool zero = true;
    for (auto& x : ad) {
      x *= coeff / Rat(k);
      if (!x.is_zero()) zero = false;
    }
    if (zero) break;
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += ad[i];
    term = ad;
    require(k < 8, "exp_ad: ad is not nilpotent (algebra bug)");
  }
  return acc;
}

const MonomialMap& ChevalleyAlgebra::simple_representative(Eigen::Index i) const {
  return simple_reps_[static_cast<size_t>(i)];
}

MonomialMap ChevalleyAlgebra::weyl_representative(const std::vector<int>& word) const {
  MonomialMap acc = MonomialMap::identity(brd_);
  for (int i : word) acc = compose(acc, simple_representative(i));
  return acc;
}

void ChevalleyAlgebra::pinned_extension(const std::vector<int>& subset_ids, const IMat& on_X,
                                        std::vector<int>& perm_out,
                                        std::vector<QmodZ>& scalar_out) const {
  std::set<int> inset(subset_ids.begin(), subset_ids.end());
  std::map<int, int> perm;
  for (int id : subset_ids) {
    int tgt = brd_.root_index(IVec(on_X * brd_.roots[static_cast<size_t>(id)]));
    require(tgt >= 0 && inset.count(tgt), "pinned_extension: map leaves the subsystem");
    perm[id] = tgt;
  }
  std::map<int, QmodZ> scal;
  // positives ascending (global index order is height order)
  for (int id : subset_ids) {
    if (!brd_.positive[static_cast<size_t>(id)]) continue;
    // decompose inside the subsystem; indecomposables are the subsystem pinning
    int eps = -1, eta = -1;
    for (int cand : subset_ids) {
      if (cand >= id) break;
      if (!brd_.positive[static_cast<size_t>(cand)]) continue;
      IVec rest = brd_.roots[static_cast<size_t>(id)] - brd_.roots[static_cast<size_t>(cand)];
      int r = brd_.root_index(rest);
      if (r >= 0 && inset.count(r) && brd_.positive[static_cast<size_t>(r)]) {
        eps = cand;
        eta = r;
        break;
      }
    }
    if (eps < 0) {
      scal[id] = QmodZ();  // pinning vector maps to pinning vector
      continue;
    }
    Int n_src = n_lookup(eps, eta);
    Int n_img = n_lookup(perm[eps], perm[eta]);
    require(std::abs(n_src) == std::abs(n_img),
            "pinned_extension: structure-constant magnitude not preserved");
    QmodZ phase = (n_src * n_img < 0) ? half() : QmodZ();
    scal[id] = scal[eps] + scal[eta] + phase;
  }
  for (int id : subset_ids) {
    if (brd_.positive[static_cast<size_t>(id)]) continue;
    scal[id] = -scal[brd_.neg_index[static_cast<size_t>(id)]];
  }
  perm_out.clear();
  scalar_out.clear();
  for (int id : subset_ids) {
    perm_out.push_back(perm[id]);
    scalar_out.push_back(scal[id]);
  }
}

MonomialMap ChevalleyAlgebra::pinned_automorphism(const std::vector<int>& perm) const {
  require(is_cartan_automorphism(brd_, perm), "pinned_automorphism: not a Cartan automorphism");
  const Eigen::Index s = brd_.ss_rank();
  IMat S = brd_.simple_root_matrix();
  IMat Sp(brd_.rank, s);
  for (Eigen::Index i = 0; i < s; ++i) Sp.col(i) = brd_.simple_root(perm[static_cast<size_t>(i)]);
  auto At = solve_integer_cols(IMat(S.transpose()), IMat(Sp.transpose()));
  require(At.has_value(), "pinned_automorphism: permutation does not preserve the lattice");
  IMat A = At->transpose();
  require(std::abs(det_int(A)) == 1, "pinned_automorphism: induced map is not unimodular");

  std::vector<int> all(static_cast<size_t>(brd_.num_roots()));
  std::iota(all.begin(), all.end(), 0);
  MonomialMap m;
  m.on_X = A;
  m.on_Xv = inverse_unimodular(A).transpose();
  pinned_extension(all, A, m.perm, m.scalar);
  std::string why;
  require(is_algebra_automorphism(m, &why), "pinned_automorphism: extension is not an automorphism");
  return m;
}

MonomialMap ChevalleyAlgebra::torus_conjugation(const TorusPoint& t) const {
  MonomialMap m = MonomialMap::identity(brd_);
  for (Eigen::Index k = 0; k < brd_.num_roots(); ++k)
    m.scalar[static_cast<size_t>(k)] = eval_root(brd_, k, t);
  return m;
}

bool ChevalleyAlgebra::is_algebra_automorphism(const MonomialMap& f, std::string* why) const {
  const Eigen::Index N = brd_.num_roots();
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!is_identity(IMat(f.on_X.transpose() * f.on_Xv)))
    return fail("on_Xv is not contragredient to on_X");
  for (Eigen::Index k = 0; k < N; ++k) {
    if (f.on_X * brd_.roots[static_cast<size_t>(k)] !=
        brd_.roots[static_cast<size_t>(f.perm[static_cast<size_t>(k)])])
      return fail("lattice action disagrees with the root permutation");
    if (f.on_Xv * brd_.coroots[static_cast<size_t>(k)] !=
        brd_.coroots[static_cast<size_t>(f.perm[static_cast<size_t>(k)])])
      return fail("coroot action disagrees with the root permutation");
    int nk = brd_.neg_index[static_cast<size_t>(k)];
    if (f.perm[static_cast<size_t>(nk)] !=
        brd_.neg_index[static_cast<size_t>(f.perm[static_cast<size_t>(k)])])
      return fail("permutation does not commute with negation");
    if (!(f.scalar[static_cast<size_t>(k)] + f.scalar[static_cast<size_t>(nk)]).is_zero())
      return fail("scalars on opposite roots do not cancel");
  }
  const bool full = dim() <= 150;
  const Eigen::Index stride = full ? 1 : 7;
  for (Eigen::Index k = 0; k < N; ++k) {
    for (Eigen::Index l = (full ? 0 : k % stride); l < N; l += (full ? 1 : stride)) {
      if (l == brd_.neg_index[static_cast<size_t>(k)] || l == k) continue;
      IVec sum = brd_.roots[static_cast<size_t>(k)] + brd_.roots[static_cast<size_t>(l)];
      int idx = brd_.root_index(sum);
      if (idx < 0) continue;
      Int n_src = n_lookup(static_cast<int>(k), static_cast<int>(l));
      Int n_img = n_lookup(f.perm[static_cast<size_t>(k)], f.perm[static_cast<size_t>(l)]);
      if (std::abs(n_src) != std::abs(n_img)) return fail("bracket magnitude not preserved");
      QmodZ lhs = f.scalar[static_cast<size_t>(idx)] + (n_src < 0 ? half() : QmodZ());
      QmodZ rhs = f.scalar[static_cast<size_t>(k)] + f.scalar[static_cast<size_t>(l)] +
                  (n_img < 0 ? half() : QmodZ());
      if (lhs != rhs) return fail("bracket phase not preserved");
    }
  }
  return true;
}

std::vector<int> ChevalleyAlgebra::levi_root_ids(const std::vector<int>& S) const {
  std::vector<int> ids;
  for (Eigen::Index k = 0; k < brd_.num_roots(); ++k) {
    const IVec& c = brd_.root_in_simple[static_cast<size_t>(k)];
    bool in = true;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      if (c(i) == 0) continue;
      if (std::find(S.begin(), S.end(), static_cast<int>(i)) == S.end()) { in = false; break; }
    }
    if (in) ids.push_back(static_cast<int>(k));
  }
  return ids;
}

ChevalleyAlgebra::LeviMap ChevalleyAlgebra::levi_chevalley_involution(const std::vector<int>& S) const {
  LeviMap lm;
  lm.root_ids = levi_root_ids(S);
  WeylElement wS = longest_element(brd_, S);
  lm.on_X = -wS.on_X;
  lm.on_Xv = -wS.on_Xv;
  pinned_extension(lm.root_ids, lm.on_X, lm.perm, lm.scalar);
  return lm;
}

ChevalleyAlgebra::LeviMap ChevalleyAlgebra::restrict_to_levi(const MonomialMap& f,
                                                             const std::vector<int>& S) const {
  LeviMap lm;
  lm.root_ids = levi_root_ids(S);
  lm.on_X = f.on_X;
  lm.on_Xv = f.on_Xv;
  for (int id : lm.root_ids) {
    lm.perm.push_back(f.perm[static_cast<size_t>(id)]);
    lm.scalar.push_back(f.scalar[static_cast<size_t>(id)]);
  }
  return lm;
}

void ChevalleyAlgebra::validate() const {
  const Eigen::Index N = brd_.num_roots();
  for (int r = 0; r < N; ++r)
    for (int s = 0; s < N; ++s) {
      if (s == r || s == brd_.neg_index[static_cast<size_t>(r)]) continue;
      IVec sum = brd_.roots[static_cast<size_t>(r)] + brd_.roots[static_cast<size_t>(s)];
      if (brd_.root_index(sum) < 0) continue;
      Int n = n_lookup(r, s);
      require(n == -n_lookup(s, r), "validate: antisymmetry fails");
      require(std::abs(n) == string_down(r, s) + 1, "validate: |N| != p+1");
    }
  // Jacobi identity on basis triples (full in small rank, sampled otherwise)
  const Eigen::Index d = dim();
  const bool full = d <= 40;
  const Eigen::Index step = full ? 1 : (d / 9 + 1);
  for (Eigen::Index i = 0; i < d; i += 1)
    for (Eigen::Index j = i + 1; j < d; j += (full ? 1 : step))
      for (Eigen::Index k = j + 1; k < d; k += (full ? 1 : step)) {
        Element a = (i < cartan_dim()) ? basis_H(i) : basis_X(i - cartan_dim());
        Element b = (j < cartan_dim()) ? basis_H(j) : basis_X(j - cartan_dim());
        Element c = (k < cartan_dim()) ? basis_H(k) : basis_X(k - cartan_dim());
        Element s1 = bracket(bracket(a, b), c);
        Element s2 = bracket(bracket(b, c), a);
        Element s3 = bracket(bracket(c, a), b);
        for (size_t m = 0; m < s1.size(); ++m)
          require((s1[m] + s2[m] + s3[m]).is_zero(), "validate: Jacobi identity fails");
      }
}

}  // namespace rootdual
