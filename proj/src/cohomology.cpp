#include "rootdual/cohomology.hpp"

#include <array>
#include <numeric>
#include <stdexcept>

namespace rootdual {

namespace {

void require(bool c, const char* msg) {
  if (!c) throw std::logic_error(msg);
}

std::vector<Int> repeat_moduli(const std::vector<Int>& m, Eigen::Index copies) {
  std::vector<Int> out;
  out.reserve(m.size() * static_cast<size_t>(copies));
  for (Eigen::Index t = 0; t < copies; ++t) out.insert(out.end(), m.begin(), m.end());
  return out;
}

}  // namespace

FiniteGroupTable FiniteGroupTable::cyclic(int k) {
  FiniteGroupTable g;
  g.n = k;
  g.name = "C" + std::to_string(k);
  g.mul.assign(static_cast<size_t>(k), std::vector<int>(static_cast<size_t>(k)));
  g.inv.assign(static_cast<size_t>(k), 0);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) g.mul[static_cast<size_t>(a)][static_cast<size_t>(b)] = (a + b) % k;
    g.inv[static_cast<size_t>(a)] = (k - a) % k;
  }
  if (k > 1) g.gens = {1};
  g.validate();
  return g;
}

FiniteGroupTable FiniteGroupTable::s3() {
  // permutations of {0,1,2}; element 0 is the identity, 1 the 3-cycle, 3 a swap
  std::vector<std::array<int, 3>> perms = {
      {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  auto comp = [&](int a, int b) {
    std::array<int, 3> c{};
    for (int i = 0; i < 3; ++i) c[static_cast<size_t>(i)] =
        perms[static_cast<size_t>(a)][static_cast<size_t>(perms[static_cast<size_t>(b)][static_cast<size_t>(i)])];
    for (size_t k = 0; k < perms.size(); ++k)
      if (perms[k] == c) return static_cast<int>(k);
    throw std::logic_error("s3 table");
  };
  FiniteGroupTable g;
  g.n = 6;
  g.name = "S3";
  g.mul.assign(6, std::vector<int>(6));
  g.inv.assign(6, 0);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      g.mul[static_cast<size_t>(a)][static_cast<size_t>(b)] = comp(a, b);
      if (g.mul[static_cast<size_t>(a)][static_cast<size_t>(b)] == 0) g.inv[static_cast<size_t>(a)] = b;
    }
  g.gens = {1, 3};
  g.validate();
  return g;
}

bool FiniteGroupTable::is_cyclic() const { return gens.size() <= 1; }

int FiniteGroupTable::cyclic_generator() const {
  require(is_cyclic(), "cyclic_generator: group is not cyclic");
  return gens.empty() ? 0 : gens[0];
}

void FiniteGroupTable::validate() const {
  require(n >= 1 && static_cast<int>(mul.size()) == n, "group table size");
  for (int a = 0; a < n; ++a) {
    require(mul[0][static_cast<size_t>(a)] == a && mul[static_cast<size_t>(a)][0] == a,
            "element 0 must be the identity");
    require(mul[static_cast<size_t>(a)][static_cast<size_t>(inv[static_cast<size_t>(a)])] == 0,
            "inverse table broken");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        require(mul[static_cast<size_t>(mul[static_cast<size_t>(a)][static_cast<size_t>(b)])][static_cast<size_t>(c)] ==
                    mul[static_cast<size_t>(a)][static_cast<size_t>(mul[static_cast<size_t>(b)][static_cast<size_t>(c)])],
                "associativity fails");
}

bool GModule::is_lattice() const {
  for (Int m : moduli)
    if (m != 0) return false;
  return true;
}

bool GModule::is_finite() const {
  for (Int m : moduli)
    if (m == 0) return false;
  return true;
}

GModule GModule::lattice(const std::vector<IMat>& action_per_element) {
  GModule m;
  m.act = action_per_element;
  m.moduli.assign(static_cast<size_t>(action_per_element.at(0).rows()), 0);
  return m;
}

GModule GModule::trivial_lattice(const FiniteGroupTable& g, Eigen::Index rank) {
  GModule m;
  m.moduli.assign(static_cast<size_t>(rank), 0);
  m.act.assign(static_cast<size_t>(g.n), IMat::Identity(rank, rank));
  return m;
}

void GModule::validate(const FiniteGroupTable& g) const {
  require(static_cast<int>(act.size()) == g.n, "GModule: one matrix per element");
  const Eigen::Index r = dim();
  require(is_identity(act[0]), "GModule: identity acts trivially");
  auto cong = [&](const IMat& A, const IMat& B) {
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < r; ++j) {
        Int d = A(i, j) - B(i, j);
        Int m = moduli[static_cast<size_t>(i)];
        if (m == 0) {
          if (d != 0) return false;
        } else if (d % m != 0) {
          return false;
        }
      }
    return true;
  };
  // action respects moduli: m_i | a_ij * m_j  (with 0 treated as Z)
  for (int e = 0; e < g.n; ++e) {
    const IMat& A = act[static_cast<size_t>(e)];
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < r; ++j) {
        Int mi = moduli[static_cast<size_t>(i)], mj = moduli[static_cast<size_t>(j)];
        if (mi == 0) {
          if (mj != 0 && A(i, j) * mj != 0) throw std::logic_error("GModule: torsion feeds free");
        } else if (mj != 0 && (A(i, j) * mj) % mi != 0) {
          throw std::logic_error("GModule: action violates moduli");
        }
      }
  }
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) {
      IMat prod = act[static_cast<size_t>(a)] * act[static_cast<size_t>(b)];
      if (!cong(prod, act[static_cast<size_t>(g.mul[static_cast<size_t>(a)][static_cast<size_t>(b)])]))
        throw std::logic_error("GModule: relations do not hold");
    }
}

GModule dual_module(const FiniteGroupTable& g, const GModule& m, int sign) {
  require(m.is_finite(), "dual_module: finite module required");
  const Eigen::Index r = m.dim();
  GModule d;
  d.moduli = m.moduli;
  d.act.resize(m.act.size());
  for (int e = 0; e < g.n; ++e) {
    // (g f)(x) = sign * f(g^{-1} x); matrix entries scaled by m_k / m_j
    const IMat& A = m.act[static_cast<size_t>(g.inv[static_cast<size_t>(e)])];
    IMat B(r, r);
    for (Eigen::Index k = 0; k < r; ++k)
      for (Eigen::Index j = 0; j < r; ++j) {
        Int num = sign * A(j, k) * m.moduli[static_cast<size_t>(k)];
        Int den = m.moduli[static_cast<size_t>(j)];
        require(num % den == 0, "dual_module: action does not dualize integrally");
        Int v = num / den;
        Int mk = m.moduli[static_cast<size_t>(k)];
        v %= mk;
        if (v < 0) v += mk;
        B(k, j) = v;
      }
    d.act[static_cast<size_t>(e)] = B;
  }
  d.validate(g);
  return d;
}

Eigen::Index CohomologyGroup::cochain_len() const {
  Eigen::Index len = module_dim;
  for (int i = 0; i < degree; ++i) len *= group_order;
  return len;
}

Eigen::Index CohomologyGroup::at(int g, Eigen::Index c) const {
  return static_cast<Eigen::Index>(g) * module_dim + c;
}

Eigen::Index CohomologyGroup::at(int g, int h, Eigen::Index c) const {
  return (static_cast<Eigen::Index>(g) * group_order + h) * module_dim + c;
}

std::string CohomologyGroup::factors_str() const {
  AbelianQuotient q;  // reuse formatting
  std::string s;
  for (Int d : invariant_factors()) {
    if (!s.empty()) s += "+";
    s += "Z/" + std::to_string(d);
  }
  for (Eigen::Index i = 0; i < free_rank(); ++i) {
    if (!s.empty()) s += "+";
    s += "Z";
  }
  return s.empty() ? "0" : s;
}

namespace {

// differential matrices of the inhomogeneous bar complex
IMat bar_d(const FiniteGroupTable& g, const GModule& m, int n) {
  const Eigen::Index r = m.dim();
  const int N = g.n;
  auto tuples = [&](int k) {
    Eigen::Index t = 1;
    for (int i = 0; i < k; ++i) t *= N;
    return t;
  };
  IMat D = IMat::Zero(tuples(n + 1) * r, tuples(n) * r);
  auto add_block = [&](Eigen::Index row_tuple, Eigen::Index col_tuple, const IMat& B, Int c) {
    D.block(row_tuple * r, col_tuple * r, r, r) += c * B;
  };
  IMat I = IMat::Identity(r, r);
  if (n == 0) {
    for (int a = 0; a < N; ++a) add_block(a, 0, m.act[static_cast<size_t>(a)] - I, 1);
  } else if (n == 1) {
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        Eigen::Index row = static_cast<Eigen::Index>(a) * N + b;
        add_block(row, b, m.act[static_cast<size_t>(a)], 1);
        add_block(row, g.mul[static_cast<size_t>(a)][static_cast<size_t>(b)], I, -1);
        add_block(row, a, I, 1);
      }
  } else if (n == 2) {
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        for (int c = 0; c < N; ++c) {
          Eigen::Index row = (static_cast<Eigen::Index>(a) * N + b) * N + c;
          add_block(row, static_cast<Eigen::Index>(b) * N + c, m.act[static_cast<size_t>(a)], 1);
          add_block(row, static_cast<Eigen::Index>(g.mul[static_cast<size_t>(a)][static_cast<size_t>(b)]) * N + c, I, -1);
          add_block(row, static_cast<Eigen::Index>(a) * N + g.mul[static_cast<size_t>(b)][static_cast<size_t>(c)], I, 1);
          add_block(row, static_cast<Eigen::Index>(a) * N + b, I, -1);
        }
  } else {
    throw std::invalid_argument("bar_d: degree 0..2 only");
  }
  return D;
}

}  // namespace

CohomologyGroup h_n(const FiniteGroupTable& g, const GModule& m, int n) {
  if (n < 0 || n > 2) throw std::invalid_argument("h_n: n in {0,1,2}");
  m.validate(g);
  const Eigen::Index r = m.dim();
  const int N = g.n;
  Eigen::Index tn = 1;
  for (int i = 0; i < n; ++i) tn *= N;

  IMat phi = bar_d(g, m, n);
  IMat target_rel = moduli_relations(repeat_moduli(m.moduli, tn * N));
  IMat self_rel = moduli_relations(repeat_moduli(m.moduli, tn));
  IMat denoms;
  if (n == 0)
    denoms = IMat::Zero(r, 0);
  else
    denoms = bar_d(g, m, n - 1);

  CohomologyGroup h;
  h.degree = n;
  h.module_dim = r;
  h.group_order = N;
  h.sq = Subquotient(phi, target_rel, denoms, self_rel);
  return h;
}

Subquotient cyclic_tate(const FiniteGroupTable& g, const GModule& m, bool odd_degree) {
  require(g.is_cyclic(), "cyclic_tate: cyclic group required");
  const Eigen::Index r = m.dim();
  IMat norm = IMat::Zero(r, r);
  int e = 0;
  for (int k = 0; k < g.n; ++k) {
    norm += m.act[static_cast<size_t>(e)];
    e = g.mul[static_cast<size_t>(e)][static_cast<size_t>(g.cyclic_generator())];
  }
  IMat shift = m.act[static_cast<size_t>(g.cyclic_generator())] - IMat::Identity(r, r);
  IMat rel = m.moduli_rel();
  if (odd_degree) return Subquotient(norm, rel, shift, rel);
  return Subquotient(shift, rel, norm, rel);
}

Subquotient h1_real_torus(const IMat& theta) {
  const Eigen::Index r = theta.rows();
  require(theta.cols() == r, "h1_real_torus: square matrix");
  require(is_identity(IMat(theta * theta)), "h1_real_torus: theta^2 != 1");
  IMat I = IMat::Identity(r, r);
  IMat none = IMat::Zero(r, 0);
  return Subquotient(I + theta, IMat::Zero(r, 0), I - theta, none);
}

C2Decomposition decompose_c2_lattice(const IMat& theta) {
  const Eigen::Index r = theta.rows();
  require(is_identity(IMat(theta * theta)), "decompose_c2_lattice: non-involutive action");
  IMat I = IMat::Identity(r, r);
  IMat Kp = kernel_basis(IMat(theta - I));
  IMat Km = kernel_basis(IMat(theta + I));
  require(Kp.cols() + Km.cols() == r, "decompose_c2_lattice: eigenlattice ranks off");
  IMat M(r, r);
  M << Kp, Km;
  Int idx = det_int(M);
  idx = idx < 0 ? -idx : idx;
  Eigen::Index c = 0;
  while (idx % 2 == 0) { idx /= 2; ++c; }
  require(idx == 1, "decompose_c2_lattice: index of L+ + L- is not a power of two");
  C2Decomposition d;
  d.regular = c;
  d.trivial = Kp.cols() - c;
  d.sign = Km.cols() - c;
  require(d.trivial >= 0 && d.sign >= 0, "decompose_c2_lattice: negative multiplicity");
  return d;
}

GModule twisted_lattice_module(const FiniteGroupTable& g, const std::vector<IMat>& act,
                               int twist_sign) {
  GModule m = GModule::lattice(act);
  if (twist_sign == -1) {
    require(g.n == 2, "real twist needs Gal(C/R) = C2");
    m.act[1] = -m.act[1];
  } else {
    require(twist_sign == 1, "twist_sign must be +-1");
  }
  m.validate(g);
  return m;
}

TorusCocycleClass torus_class_of_cocycle(const FiniteGroupTable& g,
                                         const std::vector<IMat>& act_on_L, int twist_sign,
                                         const std::vector<RatVec>& cocycle,
                                         const CohomologyGroup* precomputed_h2) {
  const Eigen::Index r = act_on_L.at(0).rows();
  require(static_cast<int>(cocycle.size()) == g.n, "torus cocycle: one value per element");
  GModule m = twisted_lattice_module(g, act_on_L, twist_sign);

  TorusCocycleClass out;
  out.h2 = precomputed_h2 ? *precomputed_h2 : h_n(g, m, 2);

  // identity value must be integral (f(1) = 0 in T)
  for (const auto& x : cocycle[0].v) require(x.is_integer(), "torus cocycle: f(1) not trivial");

  IVec flat = IVec::Zero(out.h2.cochain_len());
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) {
      int ab = g.mul[static_cast<size_t>(a)][static_cast<size_t>(b)];
      for (Eigen::Index i = 0; i < r; ++i) {
        Rat acc(0);
        for (Eigen::Index j = 0; j < r; ++j)
          acc += Rat(m.act[static_cast<size_t>(a)](i, j)) * cocycle[static_cast<size_t>(b)].v[static_cast<size_t>(j)];
        acc -= cocycle[static_cast<size_t>(ab)].v[static_cast<size_t>(i)];
        acc += cocycle[static_cast<size_t>(a)].v[static_cast<size_t>(i)];
        require(acc.is_integer(), "torus cocycle: coboundary of the lift is not integral");
        flat(out.h2.at(a, b, i)) = acc.num;
      }
    }
  out.coords = out.h2.sq.classify(flat);
  out.zero = out.coords.isZero();
  return out;
}

QmodZ cup_pairing_real(const FiniteGroupTable& c2, const GModule& a, const GModule& b,
                       const std::vector<std::vector<QmodZ>>& pairing, const IVec& a_sigma,
                       const IVec& b_sigma) {
  require(c2.n == 2, "cup_pairing_real: C2 required");
  const Eigen::Index ra = a.dim(), rb = b.dim();
  require(a_sigma.size() == ra && b_sigma.size() == rb, "cup_pairing_real: size");

  // pairing must be Gamma-equivariant into Q/Z(1): <s x, s y> = -<x, y>
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < rb; ++j) {
      QmodZ lhs;
      for (Eigen::Index k = 0; k < ra; ++k)
        for (Eigen::Index l = 0; l < rb; ++l)
          lhs += (a.act[1](k, i) * b.act[1](l, j)) * pairing[static_cast<size_t>(k)][static_cast<size_t>(l)];
      if (lhs != -pairing[static_cast<size_t>(i)][static_cast<size_t>(j)])
        throw std::logic_error("cup_pairing_real: pairing is not (-1)-equivariant");
    }

  IVec sb = b.act[1] * b_sigma;
  QmodZ v;
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < rb; ++j)
      v += (a_sigma(i) * sb(j)) * pairing[static_cast<size_t>(i)][static_cast<size_t>(j)];
  require(v.is_sign(), "cup value must land in (1/2)Z/Z");
  return v;
}

std::vector<Int> padic_mu_h1_factors(Int p, Int d) {
  require(is_prime(p), "padic_mu_h1_factors: prime required");
  require(d >= 1, "padic_mu_h1_factors: d >= 1");
  std::vector<Int> raw;
  raw.push_back(d);  // valuation coordinate: Z/d
  if (p == 2) {
    raw.push_back(std::gcd<Int>(d, 2));  // torsion Z/2 of Q_2^x
    Int twopart = 1;
    Int dd = d;
    while (dd % 2 == 0) { dd /= 2; twopart *= 2; }
    raw.push_back(twopart);  // Z_2 / d Z_2
  } else {
    raw.push_back(std::gcd<Int>(d, p - 1));
    Int ppart = 1;
    Int dd = d;
    while (dd % p == 0) { dd /= p; ppart *= p; }
    raw.push_back(ppart);
  }
  // canonical invariant-factor chain via SNF of the diagonal
  IMat D = IMat::Zero(static_cast<Eigen::Index>(raw.size()), static_cast<Eigen::Index>(raw.size()));
  for (size_t i = 0; i < raw.size(); ++i) D(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = raw[i];
  AbelianQuotient q(D.rows(), D);
  return q.invariant_factors();
}

bool is_prime(Int p) {
  if (p < 2) return false;
  for (Int k = 2; k * k <= p; ++k)
    if (p % k == 0) return false;
  return true;
}

}  // namespace rootdual
