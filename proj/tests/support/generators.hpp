#pragma once

// Seeded generators of small Hom-Lie contexts for property tests.  Valid data
// comes from constructions that are valid by design (Yau twists, adjoint and
// trivial modules, sums) or from rejection against the validators.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "hlemb/hlemb.hpp"

namespace hlemb::testgen {

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  int small(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(int percent = 50) { return small(1, 100) <= percent; }
  Rat rat(int lo = -2, int hi = 2) { return Rat(small(lo, hi)); }
  Rat nonzero(int lo = -2, int hi = 2) {
    for (;;)
      if (int v = small(lo, hi)) return Rat(v);
  }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(small(0, static_cast<int>(xs.size()) - 1))];
  }

 private:
  std::mt19937 rng_;
};

inline Multi<Rat> skew_bracket(int n, const std::vector<std::tuple<int, int, int, Rat>>& entries) {
  Multi<Rat> b = Multi<Rat>::uniform(2, n, n);
  for (const auto& [i, j, k, v] : entries) {
    b.at({i, j}, k) += v;
    b.at({j, i}, k) -= v;
  }
  return b;
}

/// bracket' = alpha o bracket for a Lie bracket and an algebra endomorphism alpha.
inline HomLieAlgebra yau_twist(const Multi<Rat>& lie, const Matrix& alpha) { return {alpha, postcompose(alpha, lie)}; }

inline Matrix random_matrix(Gen& g, int r, int c, int lo = -1, int hi = 1) {
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = g.rat(lo, hi);
  return m;
}

inline HomLieAlgebra example_2_2(const Rat& a, const Rat& b) {
  return {Matrix::diagonal({-1, 1, -1, 1}),
          skew_bracket(4, {{0, 1, 2, -a}, {0, 2, 1, b}, {1, 3, 1, -a}, {2, 3, 2, a}})};
}

/// A Hom-Lie algebra of dimension <= maxdim drawn from Yau-twisted families.
inline HomLieAlgebra random_hom_lie(Gen& g, int maxdim = 3) {
  const int n = g.small(1, maxdim);
  if (n == 1) return {Matrix::diagonal({g.rat()}), Multi<Rat>::uniform(2, 1, 1)};
  if (n == 2) {
    if (g.coin(35)) return {random_matrix(g, 2, 2), Multi<Rat>::uniform(2, 2, 2)};
    // aff(1): [e0,e1] = e1; alpha(e0) = e0 + u e1, alpha(e1) = t e1
    Matrix al(2, 2);
    if (!g.coin(15)) {
      al(0, 0) = 1;
      al(1, 0) = g.rat();
      al(1, 1) = g.rat();
    }
    return yau_twist(skew_bracket(2, {{0, 1, 1, Rat(1)}}), al);
  }
  switch (g.small(0, 4)) {
    case 0:
      return {random_matrix(g, 3, 3), Multi<Rat>::uniform(2, 3, 3)};
    case 1: {  // Heisenberg
      Matrix al(3, 3);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 2; ++c) al(r, c) = g.rat();
      al(2, 2) = al(0, 0) * al(1, 1) - al(0, 1) * al(1, 0);
      return yau_twist(skew_bracket(3, {{0, 1, 2, Rat(1)}}), al);
    }
    case 2: {  // r3: [e0,e1] = e1, [e0,e2] = e2
      Matrix al(3, 3);
      al(0, 0) = 1;
      for (int r = 1; r < 3; ++r)
        for (int c = 0; c < 3; ++c) al(r, c) = g.rat(-1, 1);
      return yau_twist(skew_bracket(3, {{0, 1, 1, Rat(1)}, {0, 2, 2, Rat(1)}}), al);
    }
    case 3: {  // sl2 in the basis h, e, f
      Rat t = g.pick(std::vector<Rat>{Rat(1), Rat(2), Rat(-1), Rat(1, 2)});
      return yau_twist(skew_bracket(3, {{0, 1, 1, Rat(2)}, {0, 2, 2, Rat(-2)}, {1, 2, 0, Rat(1)}}),
                       Matrix::diagonal({Rat(1), t, 1 / t}));
    }
    default: {  // so3 with a signed coordinate symmetry
      std::vector<std::vector<Rat>> d{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
      return yau_twist(skew_bracket(3, {{0, 1, 2, Rat(1)}, {1, 2, 0, Rat(1)}, {2, 0, 1, Rat(1)}}),
                       Matrix::diagonal(g.pick(d)));
    }
  }
}

/// Adjoint, trivial, or adjoint (+) trivial.
inline HomLieRep random_rep(Gen& g, const HomLieAlgebra& a, int maxdim = 3) {
  const int kind = g.small(0, 2);
  if (kind == 0) return adjoint_rep(a);
  if (kind == 1) {
    const int m = g.small(1, maxdim);
    return trivial_rep(a, random_matrix(g, m, m));
  }
  if (a.dim() >= maxdim) return adjoint_rep(a);
  const int m = g.small(1, maxdim - a.dim());
  return direct_sum_rep(adjoint_rep(a), trivial_rep(a, random_matrix(g, m, m)));
}

/// Basis of {T : alpha T = T beta}.
inline std::vector<Matrix> compatible_basis(const Matrix& alpha, const Matrix& beta) {
  const int r = alpha.rows(), c = beta.rows();
  Matrix sys(r * c, r * c);
  for (int k = 0; k < r * c; ++k) {
    Matrix e(r, c);
    e(k / c, k % c) = 1;
    Matrix img = alpha * e - e * beta;
    for (int j = 0; j < r * c; ++j) sys(j, k) = img.data()[j];
  }
  std::vector<Matrix> out;
  const Subspace ker = kernel_basis(sys);
  for (const auto& v : ker.basis()) {
    Matrix m(r, c);
    for (int j = 0; j < r * c; ++j) m.data()[j] = v[j];
    out.push_back(m);
  }
  return out;
}

inline Matrix random_compatible(Gen& g, const Matrix& alpha, const Matrix& beta) {
  Matrix t(alpha.rows(), beta.rows());
  for (const auto& b : compatible_basis(alpha, beta)) t = t + g.rat(-1, 1) * b;
  return t;
}

/// Twist-compatible T, valid or not.
inline EmbeddingTensor random_context(Gen& g, int maxdim = 3) {
  HomLieAlgebra a = random_hom_lie(g, maxdim);
  HomLieRep r = random_rep(g, a, maxdim);
  return {r, random_compatible(g, a.alpha, r.beta)};
}

/// A valid embedding tensor on the given representation.
inline EmbeddingTensor valid_tensor(Gen& g, const HomLieRep& r, int tries = 40) {
  const int gd = r.gdim(), vd = r.vdim();
  const int kind = g.small(0, 3);
  if (kind == 0) return {r, Matrix(gd, vd)};
  if (kind == 1 && gd <= vd) {
    // c * (inclusion onto the adjoint summand) when V starts with the adjoint module
    Matrix t(gd, vd);
    for (int i = 0; i < gd; ++i) t(i, i) = 1;
    EmbeddingTensor e{r, g.nonzero() * t};
    if (validate_embedding_tensor(e).ok()) return e;
  }
  for (int i = 0; i < tries; ++i) {
    EmbeddingTensor e{r, random_compatible(g, r.alg.alpha, r.beta)};
    if (!e.T.is_zero() && validate_embedding_tensor(e).ok()) return e;
  }
  return {r, Matrix(gd, vd)};
}

inline EmbeddingTensor random_valid_triple(Gen& g, int maxdim = 3) {
  HomLieAlgebra a = random_hom_lie(g, maxdim);
  return valid_tensor(g, random_rep(g, a, maxdim));
}

/// Representations of a triple: scaled adjoint or trivial.
inline TripleRep random_triple_rep(Gen& g, const EmbeddingTensor& t, int maxdim = 2) {
  if (g.coin()) {
    TripleRep r = adjoint_triple_rep(t);
    r.theta = g.rat() * r.theta;
    r.S = g.rat() * r.S;
    return r;
  }
  const int hd = g.small(1, maxdim), wd = g.small(1, maxdim);
  HomLieRep h = trivial_rep(t.alg(), random_matrix(g, hd, hd));
  HomLieRep w = trivial_rep(t.alg(), random_matrix(g, wd, wd));
  Multi<Rat> theta({t.rep.vdim(), hd}, wd);
  return {t, h, w, random_compatible(g, h.beta, w.beta), theta};
}

/// A random twist-compatible element of a cochain space.
inline Composite random_element(Gen& g, const CochainSpace& sp) {
  Composite c = sp.zero();
  for (const auto& b : sp.basis())
    if (g.coin(40)) c = c + g.rat() * b;
  return c;
}

/// Twist-compatible P : V^{(x) m} -> g, nonzero when the space allows it.
inline Multi<Rat> random_vg_cochain(Gen& g, const EmbeddingTensor& t, int m, int tries = 6) {
  std::vector<std::pair<int, Matrix>> tail(m, {t.rep.vdim(), t.rep.beta});
  CochainSpace sp({make_shape("P", 0, 0, Matrix(), tail, t.rep.gdim(), t.alg().alpha)});
  Composite c = sp.zero();
  for (int i = 0; i < tries && is_zero(c); ++i) c = random_element(g, sp);
  return c[0];
}

// ---------------------------------------------------------------------------
// Truncated graded data: window of width 2, dims <= 2 per degree.

inline Matrix random_twist_block(Gen& g, int n) {
  if (g.coin(60)) return Matrix::identity(n);
  std::vector<Rat> d;
  for (int i = 0; i < n; ++i) d.push_back(g.pick(std::vector<Rat>{Rat(1), Rat(-1), Rat(2)}));
  return Matrix::diagonal(d);
}

inline GradedSpace random_graded_space(Gen& g, int low) {
  std::vector<int> dims{g.small(0, 2), g.small(1, 2)};
  return GradedSpace::blocks(low, dims, {random_twist_block(g, dims[0]), random_twist_block(g, dims[1])});
}

/// Sparse operation of the given arity and degree, graded symmetric in the first
/// `sym` slots and commuting with the twists.
inline Multi<Rat> random_graded_op(Gen& g, const SlotDegrees& in, const std::vector<const Matrix*>& tw,
                                   const std::vector<int>& out_deg, const Matrix& out_tw, int d, int sym,
                                   int density = 25) {
  const int k = static_cast<int>(in.size());
  std::vector<int> dims;
  for (const auto* s : in) dims.push_back(static_cast<int>(s->size()));
  Multi<Rat> f(dims, static_cast<int>(out_deg.size()));
  for (std::size_t i = 0; i < f.in_size(); ++i) {
    std::vector<int> idx = f.decode(i);
    bool sorted = true;
    for (int a = 0; a + 1 < sym; ++a) sorted = sorted && idx[a] <= idx[a + 1];
    if (!sorted) continue;
    int s = d;
    for (int a = 0; a < k; ++a) s += (*in[a])[idx[a]];
    for (int o = 0; o < f.out(); ++o)
      if (out_deg[o] == s && g.coin(density)) f.at(idx, o) = g.nonzero(-1, 1);
  }
  // graded symmetrization over the first `sym` slots
  Multi<Rat> full(dims, f.out());
  std::vector<int> p(k);
  for (int a = 0; a < k; ++a) p[a] = a;
  const SlotDegrees slots = in;
  do {
    accumulate_permuted(full, f, p, Rat(1), [&](const std::vector<int>& idx) {
      std::vector<int> degs;
      for (int a = 0; a < k; ++a) degs.push_back((*slots[a])[idx[a]]);
      return koszul_sign(p, degs);
    });
  } while (std::next_permutation(p.begin(), p.begin() + sym));
  // keep only the twist-commuting part for diagonal twists: drop offending entries
  for (std::size_t i = 0; i < full.in_size(); ++i) {
    std::vector<int> idx = full.decode(i);
    Rat w = 1;
    for (int a = 0; a < k; ++a) w *= (*tw[a])(idx[a], idx[a]);
    for (int o = 0; o < full.out(); ++o)
      if (!(w == out_tw(o, o))) full.at(idx, o) = 0;
  }
  return full;
}

inline std::vector<const Matrix*> twists_of(const std::vector<const GradedSpace*>& sp) {
  std::vector<const Matrix*> t;
  for (const auto* x : sp) t.push_back(&x->twist);
  return t;
}

inline SlotDegrees degrees_of(const std::vector<const GradedSpace*>& sp) {
  SlotDegrees d;
  for (const auto* x : sp) d.push_back(&x->deg);
  return d;
}

/// Sparse random l_1..l_cap on a window [low, low+1], filtered by the HL-infinity identities.
inline HLInfty random_hl_infty(Gen& g, int low, int cap = 3, int tries = 60) {
  for (int t = 0; t < tries; ++t) {
    HLInfty h{random_graded_space(g, low), {1, {}, false}};
    for (int k = 1; k <= cap; ++k) {
      if (!g.coin(k == 2 ? 80 : 50)) continue;
      std::vector<const GradedSpace*> sp(k, &h.space);
      Multi<Rat> f = random_graded_op(g, degrees_of(sp), twists_of(sp), h.space.deg, h.space.twist, 1, k);
      if (!f.is_zero()) h.l.ops.emplace(k, f);
    }
    if (validate_hl_infty(h, cap).ok()) return h;
  }
  return {random_graded_space(g, low), {1, {}, false}};
}

/// Adjoint, or a random module filtered by the representation identities.
inline HLInftyRep random_hl_rep(Gen& g, const HLInfty& h, int cap = 3, int tries = 40) {
  if (g.coin(40)) return adjoint_rep(h);
  const int low = h.space.deg.empty() ? -2 : *std::min_element(h.space.deg.begin(), h.space.deg.end());
  for (int t = 0; t < tries; ++t) {
    HLInftyRep r{h, random_graded_space(g, low), {}};
    if (g.coin(70))
      for (int k = 1; k <= cap; ++k) {
        std::vector<const GradedSpace*> sp(k - 1, &h.space);
        sp.push_back(&r.vspace);
        Multi<Rat> f = random_graded_op(g, degrees_of(sp), twists_of(sp), r.vspace.deg, r.vspace.twist, 1, k - 1);
        if (!f.is_zero()) r.rho.emplace(k, f);
      }
    if (validate_hl_infty_rep(r, cap).ok()) return r;
  }
  return {h, random_graded_space(g, low), {}};
}

/// Candidate Pi: zero, a multiple of the identity on the adjoint module, or sparse random.
inline std::map<int, Multi<Rat>> random_pi(Gen& g, const HLInftyRep& r, int cap = 3) {
  std::map<int, Multi<Rat>> pi;
  const bool adjoint = r.vspace.deg == r.base.space.deg && r.rho == r.base.l.ops;
  const int kind = g.small(0, 3);
  if (kind == 0) return pi;
  if (kind == 1 && adjoint) {
    pi.emplace(1, from_matrix(Matrix(g.nonzero() * Matrix::identity(r.vspace.dim()))));
    return pi;
  }
  for (int k = 1; k <= cap; ++k) {
    std::vector<const GradedSpace*> sp(k, &r.vspace);
    Multi<Rat> f = random_graded_op(g, degrees_of(sp), twists_of(sp), r.base.space.deg, r.base.space.twist, 0, 0,
                                    k == 1 ? 50 : 30);
    if (!f.is_zero()) pi.emplace(k, f);
  }
  return pi;
}

// 2([Tu,Tv] - T(rho(Tu)v)) by explicit loops over basis vectors
inline Multi<Rat> twice_identity_defect(const EmbeddingTensor& t) {
  const int n = t.rep.gdim(), m = t.rep.vdim();
  Multi<Rat> out({m, m}, n);
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v) {
      Vec val(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Rat c = t.T(i, u) * t.T(j, v);
          if (is_zero(c)) continue;
          for (int k = 0; k < n; ++k) val[k] += c * t.alg().bracket.at({i, j}, k);
        }
      Vec act(m);
      for (int i = 0; i < n; ++i) {
        if (is_zero(t.T(i, u))) continue;
        for (int b = 0; b < m; ++b) act[b] += t.T(i, u) * t.rep.rho.at({i, v}, b);
      }
      Vec tact = t.T.apply(act);
      for (int k = 0; k < n; ++k) out.at({u, v}, k) = 2 * (val[k] - tact[k]);
    }
  return out;
}

inline Multi<Rat> mc_of(const EmbeddingTensor& t) {
  Multi<Rat> T = from_matrix(t.T);
  return derived_bracket(t.rep, T, T);
}

}  // namespace hlemb::testgen
