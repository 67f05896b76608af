#pragma once

// Graded cochains on finite degree windows: the graded Balavoine bracket,
// HL-infinity and HLeib-infinity validators, hemi-semidirect products,
// homotopy embedding tensors and the HLeib-infinity structures they induce.
//
// A graded map of degree d sends x_1 (x) .. (x) x_k of degrees |x_i| into
// degree |x_1| + .. + |x_k| + d.  Structure maps (l_k, rho_k, pi_k) have degree
// 1; a homotopy embedding tensor has degree 0.  Tensors are stored in full on
// the flattened carrier, not on orbit representatives.

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hlemb/shuffle.hpp"
#include "hlemb/structures.hpp"
#include "hlemb/tensor.hpp"

namespace hlemb {

struct GradedSpace {
  std::vector<int> deg;  // degree of each basis vector
  Matrix twist;          // preserves degrees

  int dim() const { return static_cast<int>(deg.size()); }

  /// Blocks of the given dims placed in degrees first, first+1, ...
  static GradedSpace blocks(int first, const std::vector<int>& dims, const std::vector<Matrix>& twists) {
    GradedSpace s;
    Matrix t(0, 0);
    for (std::size_t b = 0; b < dims.size(); ++b) {
      for (int i = 0; i < dims[b]; ++i) s.deg.push_back(first + static_cast<int>(b));
      t = direct_sum(t, twists[b]);
    }
    s.twist = t;
    return s;
  }
  static GradedSpace concentrated(int d, const Matrix& twist) { return blocks(d, {twist.rows()}, {twist}); }
};

inline GradedSpace direct_sum(const GradedSpace& a, const GradedSpace& b) {
  GradedSpace s;
  s.deg = a.deg;
  s.deg.insert(s.deg.end(), b.deg.begin(), b.deg.end());
  s.twist = direct_sum(a.twist, b.twist);
  return s;
}

/// Degree lists per slot of a multilinear map.
using SlotDegrees = std::vector<const std::vector<int>*>;

inline SlotDegrees uniform_slots(const GradedSpace& s, int k) { return SlotDegrees(k, &s.deg); }

/// A sum of degree-homogeneous maps on one carrier, indexed by arity.
struct Bundle {
  int degree = 1;
  std::map<int, Multi<Rat>> ops;
  bool truncated = false;  // some arity above the cap was dropped

  bool is_zero() const {
    for (const auto& [k, f] : ops)
      if (!f.is_zero()) return false;
    return true;
  }
  const Multi<Rat>* get(int k) const {
    auto it = ops.find(k);
    return it == ops.end() ? nullptr : &it->second;
  }
  void add(int k, const Multi<Rat>& f) {
    auto it = ops.find(k);
    if (it == ops.end())
      ops.emplace(k, f);
    else
      it->second += f;
  }
  void prune() {
    for (auto it = ops.begin(); it != ops.end();)
      it = it->second.is_zero() ? ops.erase(it) : std::next(it);
  }
};

inline Bundle scaled(const Rat& c, const Bundle& b) {
  Bundle out{b.degree, {}, b.truncated};
  for (const auto& [k, f] : b.ops) out.ops.emplace(k, c * f);
  return out;
}

inline Bundle operator+(Bundle a, const Bundle& b) {
  for (const auto& [k, f] : b.ops) a.add(k, f);
  a.truncated = a.truncated || b.truncated;
  return a;
}

inline bool operator==(const Bundle& a, const Bundle& b) {
  Bundle d = a + scaled(Rat(-1), b);
  return d.is_zero();
}

// ---------------------------------------------------------------------------
// Degree bookkeeping

/// Entries violating |out| = sum |in| + d.
inline std::size_t degree_defects(const Multi<Rat>& f, const SlotDegrees& in, const std::vector<int>& out, int d) {
  std::size_t bad = 0;
  for_each_nonzero(f, [&](const std::vector<int>& idx, int k, const Rat&) {
    int s = d;
    for (std::size_t i = 0; i < idx.size(); ++i) s += (*in[i])[idx[i]];
    if (out[k] != s) ++bad;
  });
  return bad;
}

/// Keeps only the entries of degree d.
inline Multi<Rat> degree_part(Multi<Rat> f, const SlotDegrees& in, const std::vector<int>& out, int d) {
  const std::size_t n = f.in_size();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> idx = f.decode(i);
    int s = d;
    for (std::size_t j = 0; j < idx.size(); ++j) s += (*in[j])[idx[j]];
    for (int k = 0; k < f.out(); ++k)
      if (out[k] != s) f.data()[i * f.out() + k] = 0;
  }
  return f;
}

namespace detail {

inline std::vector<int> degrees_at(const std::vector<int>& idx, const SlotDegrees& slots) {
  std::vector<int> d(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) d[i] = (*slots[i])[idx[i]];
  return d;
}

inline bool odd(int x) { return (x & 1) != 0; }

}  // namespace detail

inline void collect_degree(ValidationReport& rep, const std::string& name, const Multi<Rat>& f, const SlotDegrees& in,
                           const std::vector<int>& out, int d) {
  if (std::size_t bad = degree_defects(f, in, out, d))
    rep.errors.push_back(name + ": " + std::to_string(bad) + " entries outside degree " + std::to_string(d));
}

/// f(.., x_{a+1}, x_a, ..) = (-1)^{|x_a||x_{a+1}|} f(..) for adjacent a < last.
inline Multi<Rat> symmetry_residual(const Multi<Rat>& f, int last, const SlotDegrees& slots) {
  Multi<Rat> res(f.dims(), f.out());
  for (int a = 0; a + 1 < last; ++a) {
    std::vector<int> s(f.arity());
    for (int j = 0; j < f.arity(); ++j) s[j] = j;
    std::swap(s[a], s[a + 1]);
    Multi<Rat> sw(f.dims(), f.out());
    accumulate_permuted(sw, f, s, Rat(1), [&](const std::vector<int>& idx) {
      return detail::odd((*slots[a])[idx[a]]) && detail::odd((*slots[a + 1])[idx[a + 1]]) ? -1 : 1;
    });
    res += sw - f;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Graded Balavoine bracket

/// (p <> q)(x_1..x_m) = sum_i sum_{s in Sh(i-1,l-1)} (-1)^{|q|(|x_s(1)|+..+|x_s(i-1)|)} eps(s)
///   p(t^{l-1} x_s(1), .., q(x_s(i)..x_s(i+l-2), x_{i+l-1}), t^{l-1} x_{i+l}, ..)
/// with eps the Koszul sign; q has arity l and degree dq.
inline Multi<Rat> graded_diamond(const Multi<Rat>& p, const Multi<Rat>& q, int dq, const GradedSpace& h) {
  const int k = p.arity(), l = q.arity(), m = k + l - 1;
  const Matrix tw = power(h.twist, l - 1);
  const bool plain = tw.is_identity();
  const SlotDegrees slots = uniform_slots(h, m);
  Multi<Rat> out = Multi<Rat>::uniform(m, h.dim(), h.dim());
  for (int i = 1; i <= k; ++i) {
    Multi<Rat> pp = p;
    if (!plain)
      for (int s = 0; s < k; ++s)
        if (s != i - 1) pp = precompose(pp, s, tw);
    Multi<Rat> r = insert(pp, i - 1, q);
    for_each_shuffle(i - 1, l - 1, [&](const std::vector<int>& sh, int) {
      std::vector<int> perm = sh;
      for (int t = i + l - 2; t < m; ++t) perm.push_back(t);
      accumulate_permuted(out, r, perm, Rat(1), [&](const std::vector<int>& idx) {
        std::vector<int> d = detail::degrees_at(idx, slots);
        int lead = 0;
        for (int a = 0; a < i - 1; ++a) lead += d[perm[a]];
        int sg = koszul_sign(perm, d);
        return detail::odd(dq) && detail::odd(lead) ? -sg : sg;
      });
    });
  }
  return out;
}

/// [P, Q]_B = sum P_k <> Q_l - (-1)^{|P||Q|} Q_l <> P_k, arities above cap dropped.
inline Bundle graded_balavoine(const Bundle& p, const Bundle& q, const GradedSpace& h, int cap) {
  Bundle out;
  out.degree = p.degree + q.degree;
  const bool flip = detail::odd(p.degree) && detail::odd(q.degree);
  for (const auto& [k, pk] : p.ops)
    for (const auto& [l, ql] : q.ops) {
      if (pk.is_zero() || ql.is_zero()) continue;
      if (k + l - 1 > cap) {
        out.truncated = true;
        continue;
      }
      Multi<Rat> a = graded_diamond(pk, ql, q.degree, h);
      Multi<Rat> b = graded_diamond(ql, pk, p.degree, h);
      if (flip)
        a += b;
      else
        a -= b;
      out.add(k + l - 1, a);
    }
  out.truncated = out.truncated || p.truncated || q.truncated;
  out.prune();
  return out;
}

// ---------------------------------------------------------------------------
// Structures

struct HLInfty {
  GradedSpace space;
  Bundle l;  // degree 1, graded symmetric
};

struct HLInftyRep {
  HLInfty base;
  GradedSpace vspace;
  std::map<int, Multi<Rat>> rho;  // rho_k : G^{k-1} (x) V -> V
};

struct HLeibInfty {
  GradedSpace space;
  Bundle pi;  // degree 1
};

inline SlotDegrees rep_slots(const HLInftyRep& r, int k) {
  SlotDegrees s(k - 1, &r.base.space.deg);
  s.push_back(&r.vspace.deg);
  return s;
}

inline void check_multiplicative(ValidationReport& rep, const std::string& name, const Multi<Rat>& f,
                                 const std::vector<Matrix>& in_twists, const Matrix& out_twist) {
  Multi<Rat> g = f;
  for (int j = 0; j < f.arity(); ++j) g = precompose(g, j, in_twists[j]);
  collect(rep, name, g - postcompose(out_twist, f));
}

inline ValidationReport validate_hleib_infty(const HLeibInfty& h, int cap = 4) {
  ValidationReport rep;
  const auto& H = h.space;
  for (const auto& [k, f] : h.pi.ops) {
    if (f.arity() != k || !Multi<Rat>::uniform(k, H.dim(), H.dim()).same_shape(f)) {
      rep.errors.push_back("shape mismatch: pi_" + std::to_string(k));
      return rep;
    }
    collect_degree(rep, "pi_" + std::to_string(k), f, uniform_slots(H, k), H.deg, 1);
    check_multiplicative(rep, "multiplicativity pi_" + std::to_string(k), f, std::vector<Matrix>(k, H.twist),
                         H.twist);
  }
  if (!rep.errors.empty()) return rep;
  Bundle sq = graded_balavoine(h.pi, h.pi, H, cap);
  for (const auto& [n, f] : sq.ops) collect(rep, "hom-leibniz arity " + std::to_string(n), f);
  return rep;
}

/// The higher Hom-Leibniz identities evaluated directly: sum_{k+l=n+1} pi_k <> pi_l.
inline Bundle hleib_identity_direct(const HLeibInfty& h, int cap = 4) {
  Bundle out;
  out.degree = 2;
  for (const auto& [k, pk] : h.pi.ops)
    for (const auto& [l, pl] : h.pi.ops)
      if (k + l - 1 <= cap) out.add(k + l - 1, graded_diamond(pk, pl, 1, h.space));
  out.prune();
  return out;
}

/// sum_{i+j=n+1} sum_{s in Sh(i,n-i)} eps(s) l_j(l_i(x_s(1..i)), a^{i-1} x_s(i+1..n))
inline Bundle hl_jacobi_residual(const HLInfty& h, int cap = 4) {
  Bundle out;
  out.degree = 2;
  const auto& G = h.space;
  for (int n = 1; n <= cap; ++n) {
    Multi<Rat> acc = Multi<Rat>::uniform(n, G.dim(), G.dim());
    const SlotDegrees slots = uniform_slots(G, n);
    for (int i = 1; i <= n; ++i) {
      const int j = n + 1 - i;
      const Multi<Rat>* li = h.l.get(i);
      const Multi<Rat>* lj = h.l.get(j);
      if (!li || !lj) continue;
      Multi<Rat> r = insert(precompose_range(*lj, 1, j, power(G.twist, i - 1)), 0, *li);
      for_each_shuffle(i, n - i, [&](const std::vector<int>& s, int) {
        accumulate_permuted(acc, r, s, Rat(1),
                            [&](const std::vector<int>& idx) { return koszul_sign(s, detail::degrees_at(idx, slots)); });
      });
    }
    if (!acc.is_zero()) out.ops.emplace(n, acc);
  }
  return out;
}

inline ValidationReport validate_hl_infty(const HLInfty& h, int cap = 4) {
  ValidationReport rep;
  const auto& G = h.space;
  for (const auto& [k, f] : h.l.ops) {
    if (f.arity() != k || !Multi<Rat>::uniform(k, G.dim(), G.dim()).same_shape(f)) {
      rep.errors.push_back("shape mismatch: l_" + std::to_string(k));
      return rep;
    }
    const std::string name = "l_" + std::to_string(k);
    collect_degree(rep, name, f, uniform_slots(G, k), G.deg, 1);
    collect(rep, "graded symmetry " + name, symmetry_residual(f, k, uniform_slots(G, k)));
    check_multiplicative(rep, "multiplicativity " + name, f, std::vector<Matrix>(k, G.twist), G.twist);
  }
  if (!rep.errors.empty()) return rep;
  for (const auto& [n, f] : hl_jacobi_residual(h, cap).ops) collect(rep, "hom-jacobi arity " + std::to_string(n), f);
  return rep;
}

/// (l_k [+] rho_k)((x_1,v_1)..(x_k,v_k)) = (l_k(x_1..x_k), rho_k(x_1..x_{k-1}, v_k)) on G (+) V.
inline HLeibInfty hemi_semidirect_infty(const HLInftyRep& r) {
  const GradedSpace H = direct_sum(r.base.space, r.vspace);
  const int n = r.base.space.dim(), N = H.dim();
  HLeibInfty out{H, {1, {}, false}};
  for (const auto& [k, f] : r.base.l.ops)
    out.pi.add(k, embed(f, std::vector<int>(k, N), std::vector<int>(k, 0), N, 0));
  for (const auto& [k, f] : r.rho) {
    std::vector<int> off(k, 0);
    off[k - 1] = n;
    out.pi.add(k, embed(f, std::vector<int>(k, N), off, N, n));
  }
  return out;
}

/// Graded symmetry in the G-slots, multiplicativity and degree of every rho_k,
/// then the identities through the hemi-semidirect product.
inline ValidationReport validate_hl_infty_rep(const HLInftyRep& r, int cap = 4) {
  ValidationReport rep;
  rep.merge(validate_hl_infty(r.base, cap), "algebra: ");
  if (!rep.errors.empty()) return rep;
  for (const auto& [k, f] : r.rho) {
    std::vector<int> dims(k - 1, r.base.space.dim());
    dims.push_back(r.vspace.dim());
    if (!Multi<Rat>(dims, r.vspace.dim()).same_shape(f)) {
      rep.errors.push_back("shape mismatch: rho_" + std::to_string(k));
      return rep;
    }
    const std::string name = "rho_" + std::to_string(k);
    collect_degree(rep, name, f, rep_slots(r, k), r.vspace.deg, 1);
    collect(rep, "graded symmetry " + name, symmetry_residual(f, k - 1, rep_slots(r, k)));
    std::vector<Matrix> tw(k - 1, r.base.space.twist);
    tw.push_back(r.vspace.twist);
    check_multiplicative(rep, "multiplicativity " + name, f, tw, r.vspace.twist);
  }
  if (!rep.errors.empty()) return rep;
  ValidationReport semi = validate_hleib_infty(hemi_semidirect_infty(r), cap);
  rep.merge(semi, "hemi-semidirect: ");
  return rep;
}

/// The representation identity written out term by term (module slot last;
/// the second sum runs over i < n).  Diagnostic companion of validate_hl_infty_rep.
inline std::map<int, Multi<Rat>> rep_identity_literal(const HLInftyRep& r, int cap = 4) {
  std::map<int, Multi<Rat>> out;
  const auto& G = r.base.space;
  auto rho = [&](int k) -> const Multi<Rat>* {
    auto it = r.rho.find(k);
    return it == r.rho.end() ? nullptr : &it->second;
  };
  for (int n = 1; n <= cap; ++n) {
    std::vector<int> dims(n - 1, G.dim());
    dims.push_back(r.vspace.dim());
    Multi<Rat> acc(dims, r.vspace.dim());
    const SlotDegrees slots = rep_slots(r, n);
    for (int i = 1; i <= n; ++i) {
      const int j = n + 1 - i;
      const Matrix ai = power(G.twist, i - 1);
      // first sum: s(i) = n, the module element sits inside rho_i
      if (const Multi<Rat>* ri = rho(i); ri && rho(j)) {
        Multi<Rat> rj = precompose_range(*rho(j), 0, j - 1, ai);
        Multi<Rat> x = insert(rj, j - 1, *ri);  // slots: x_s(i+1..n), x_s(1..i)
        for_each_shuffle(i, n - i, [&](const std::vector<int>& s, int) {
          if (s[i - 1] != n - 1) return;
          std::vector<int> perm(s.begin() + i, s.end());
          perm.insert(perm.end(), s.begin(), s.begin() + i);
          accumulate_permuted(acc, x, perm, Rat(1), [&](const std::vector<int>& idx) {
            std::vector<int> d = detail::degrees_at(idx, slots);
            int a = i, b = 0;
            for (int t = 0; t < i; ++t) a += d[s[t]];
            for (int t = i; t < n; ++t) b += d[s[t]];
            int sg = koszul_sign(s, d);
            if (detail::odd(j - 1 + a * b)) sg = -sg;
            return sg;
          });
        });
      }
      // second sum: s(n) = n, i < n
      if (i < n) {
        const Multi<Rat>* li = r.base.l.get(i);
        const Multi<Rat>* rj = rho(j);
        if (li && rj) {
          Multi<Rat> y = precompose(precompose_range(*rj, 1, j - 1, ai), j - 1, power(r.vspace.twist, i - 1));
          Multi<Rat> x = insert(y, 0, *li);
          for_each_shuffle(i, n - i, [&](const std::vector<int>& s, int) {
            if (s[n - 1] != n - 1) return;
            accumulate_permuted(acc, x, s, Rat(1), [&](const std::vector<int>& idx) {
              return koszul_sign(s, detail::degrees_at(idx, slots));
            });
          });
        }
      }
    }
    if (!acc.is_zero()) out.emplace(n, acc);
  }
  return out;
}

/// rho_k = l_k.
inline HLInftyRep adjoint_rep(const HLInfty& h) { return {h, h.space, h.l.ops}; }

// ---------------------------------------------------------------------------
// Homotopy embedding tensors

/// Pi_k : V^{(x)k} -> G of degree 0, stored on G (+) V.
inline Bundle lift_pi(const HLInftyRep& r, const std::map<int, Multi<Rat>>& pi) {
  const int n = r.base.space.dim(), N = n + r.vspace.dim();
  Bundle out{0, {}, false};
  for (const auto& [k, f] : pi) out.add(k, embed(f, std::vector<int>(k, N), std::vector<int>(k, n), N, 0));
  return out;
}

/// Projection onto maps with all inputs in V and output in G.
inline Bundle project_a(const Bundle& b, int gdim, int vdim) {
  const int N = gdim + vdim;
  Bundle out{b.degree, {}, b.truncated};
  for (const auto& [k, f] : b.ops) {
    Multi<Rat> blk = restrict_to(f, std::vector<int>(k, vdim), std::vector<int>(k, gdim), gdim, 0);
    if (!blk.is_zero()) out.ops.emplace(k, embed(blk, std::vector<int>(k, N), std::vector<int>(k, gdim), N, 0));
  }
  return out;
}

struct Conjugation {
  std::vector<Bundle> terms;  // X_j = [..[D, Pi]..Pi] / j!  (j nested brackets)
  Bundle sum;
  bool truncated = false;
};

/// e^{[-, Pi]_B} applied to D: X_0 = D, X_{j+1} = [X_j, Pi]_B / (j+1), until an
/// increment vanishes.  Hitting iter_cap is an error.
inline Conjugation conjugate(const Bundle& d, const Bundle& pi, const GradedSpace& h, int cap, int iter_cap) {
  Conjugation c;
  Bundle x = d;
  c.sum = d;
  c.terms.push_back(d);
  for (int j = 0;; ++j) {
    if (j >= iter_cap) throw std::runtime_error("series does not terminate within iteration cap");
    Bundle next = scaled(Rat(1, j + 1), graded_balavoine(x, pi, h, cap));
    c.truncated = c.truncated || next.truncated;
    if (next.is_zero()) break;
    c.terms.push_back(next);
    c.sum = c.sum + next;
    x = std::move(next);
  }
  c.sum.truncated = c.truncated;
  return c;
}

struct HomotopyMcReport {
  ValidationReport report;
  Bundle residual;                 // P(e^{[-,Pi]} D), the normalized sum
  std::vector<Bundle> raw_terms;   // P[..[D,Pi]..Pi] without the 1/k! factors
  bool truncated = false;
};

inline HomotopyMcReport homotopy_mc_check(const HLInftyRep& r, const std::map<int, Multi<Rat>>& pi, int cap = 4,
                                          int iter_cap = 64) {
  HomotopyMcReport out;
  const int n = r.base.space.dim(), m = r.vspace.dim();
  HLeibInfty semi = hemi_semidirect_infty(r);
  for (const auto& [k, f] : pi) {
    SlotDegrees in(k, &r.vspace.deg);
    collect_degree(out.report, "Pi_" + std::to_string(k), f, in, r.base.space.deg, 0);
    std::vector<Matrix> tw(k, r.vspace.twist);
    check_multiplicative(out.report, "multiplicativity Pi_" + std::to_string(k), f, tw, r.base.space.twist);
  }
  if (!out.report.errors.empty()) return out;
  Conjugation c = conjugate(semi.pi, lift_pi(r, pi), semi.space, cap, iter_cap);
  out.residual = project_a(c.sum, n, m);
  Rat fact = 1;
  for (std::size_t j = 0; j < c.terms.size(); ++j) {
    if (j > 0) fact *= static_cast<long>(j);
    out.raw_terms.push_back(project_a(scaled(fact, c.terms[j]), n, m));
  }
  out.truncated = c.truncated;
  for (const auto& [k, f] : out.residual.ops) collect(out.report, "mc arity " + std::to_string(k), f);
  return out;
}

/// pi_k = (e^{[-,Pi]} D) restricted to V-inputs with values in V.
inline HLeibInfty induced_hleib_infty(const HLInftyRep& r, const std::map<int, Multi<Rat>>& pi, int cap = 4,
                                      int iter_cap = 64) {
  HomotopyMcReport mc = homotopy_mc_check(r, pi, cap, iter_cap);
  if (!mc.report.ok()) throw std::invalid_argument("not a homotopy embedding tensor: " + mc.report.summary(3));
  const int n = r.base.space.dim(), m = r.vspace.dim();
  HLeibInfty semi = hemi_semidirect_infty(r);
  Conjugation c = conjugate(semi.pi, lift_pi(r, pi), semi.space, cap, iter_cap);
  HLeibInfty out{r.vspace, {1, {}, c.truncated}};
  for (const auto& [k, f] : c.sum.ops) {
    Multi<Rat> blk = restrict_to(f, std::vector<int>(k, m), std::vector<int>(k, n), m, n);
    if (!blk.is_zero()) out.pi.ops.emplace(k, blk);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ungraded structures placed in degree -1

inline HLInfty encode(const HomLieAlgebra& g) { return {GradedSpace::concentrated(-1, g.alpha), {1, {{2, g.bracket}}, false}}; }

inline HLInftyRep encode(const HomLieRep& r) {
  return {encode(r.alg), GradedSpace::concentrated(-1, r.beta), {{2, r.rho}}};
}

inline HLeibInfty encode(const HomLeibnizAlgebra& h) {
  return {GradedSpace::concentrated(-1, h.alpha), {1, {{2, h.bracket}}, false}};
}

inline std::map<int, Multi<Rat>> encode_pi(const EmbeddingTensor& t) { return {{1, from_matrix(t.T)}}; }

}  // namespace hlemb
