#pragma once

// Higher derived brackets on s^{-1}q (+) a inside the Balavoine algebra of
// g (+) V, the Maurer-Cartan characterization of triples and the twisted
// operations l_k^theta.
//
// Elements are sums of homogeneous cochains on h = g (+) V.  A cochain of
// arity k has degree k - 1 in the Balavoine algebra; its desuspension s^{-1}
// has degree k - 2.  The subalgebra a consists of maps V^{(x)k} -> g and q of
// maps of bidegree (k-1)|0 (wedge^k g -> g plus wedge^{k-1} g (x) V -> V).

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hlemb/brackets.hpp"
#include "hlemb/cohomology.hpp"

namespace hlemb {

struct LElem {
  std::map<int, Multi<Rat>> q;  // arity -> element of q (shown desuspended)
  std::map<int, Multi<Rat>> a;  // arity -> element of a

  bool is_zero() const {
    for (const auto& [k, f] : q)
      if (!f.is_zero()) return false;
    for (const auto& [k, f] : a)
      if (!f.is_zero()) return false;
    return true;
  }
  void add_q(int k, const Multi<Rat>& f) {
    if (auto it = q.find(k); it != q.end())
      it->second += f;
    else
      q.emplace(k, f);
  }
  void add_a(int k, const Multi<Rat>& f) {
    if (auto it = a.find(k); it != a.end())
      it->second += f;
    else
      a.emplace(k, f);
  }
  LElem& operator+=(const LElem& o) {
    for (const auto& [k, f] : o.q) add_q(k, f);
    for (const auto& [k, f] : o.a) add_a(k, f);
    return *this;
  }
  void prune() {
    for (auto it = q.begin(); it != q.end();) it = it->second.is_zero() ? q.erase(it) : std::next(it);
    for (auto it = a.begin(); it != a.end();) it = it->second.is_zero() ? a.erase(it) : std::next(it);
  }
};

inline LElem operator*(const Rat& c, LElem x) {
  for (auto& [k, f] : x.q) f = c * f;
  for (auto& [k, f] : x.a) f = c * f;
  return x;
}
inline LElem operator+(LElem x, const LElem& y) { return x += y; }
inline LElem operator-(LElem x, const LElem& y) { return x += Rat(-1) * y; }
inline bool operator==(const LElem& x, const LElem& y) { return (x - y).is_zero(); }

/// The V-data (l, a, P, Delta) over g (+) V with twist alpha (+) beta.
struct VData {
  int gdim = 0, vdim = 0;
  Matrix twist;                       // alpha (+) beta
  std::map<int, Multi<Rat>> delta;    // degree 1 element of ker P; empty for triples

  int dim() const { return gdim + vdim; }
};

inline VData hllt_vdata(const Matrix& alpha, const Matrix& beta) {
  return {alpha.rows(), beta.rows(), direct_sum(alpha, beta), {}};
}

/// Projection onto a: keep the V^{(x)k} -> g block.
inline Multi<Rat> project_a(const VData& vd, const Multi<Rat>& f) {
  return lift_to_sum(restrict_vg(f, vd.gdim, vd.vdim), vd.gdim, vd.vdim);
}

/// Bidegree (k-1)|0 part of a cochain.
inline Multi<Rat> project_q(const VData& vd, const Multi<Rat>& f) {
  Composite c = split_pair(f, vd.gdim, vd.vdim);
  return lift_pair(vd.gdim, vd.vdim, c[0], c[1]);
}

inline bool in_q(const VData& vd, const Multi<Rat>& f) {
  if (!(project_q(vd, f) == f)) return false;
  Composite c = split_pair(f, vd.gdim, vd.vdim);
  const int k = f.arity();
  for (int i = 0; i + 1 < k; ++i) {
    std::vector<int> s(k);
    for (int j = 0; j < k; ++j) s[j] = j;
    std::swap(s[i], s[i + 1]);
    if (!(c[0] + permute(c[0], s)).is_zero()) return false;
    if (i + 2 < k && !(c[1] + permute(c[1], s)).is_zero()) return false;
  }
  return twist_compatible(f, vd.twist, vd.twist);
}

namespace detail {

struct Piece {
  bool is_q;
  int arity;
  const Multi<Rat>* f;
  int degree() const { return is_q ? arity - 2 : arity - 1; }
};

inline std::vector<Piece> pieces(const LElem& x) {
  std::vector<Piece> p;
  for (const auto& [k, f] : x.q)
    if (!f.is_zero()) p.push_back({true, k, &f});
  for (const auto& [k, f] : x.a)
    if (!f.is_zero()) p.push_back({false, k, &f});
  return p;
}

inline Multi<Rat> bracket(const VData& vd, const Multi<Rat>& x, const Multi<Rat>& y) {
  return balavoine(x, y, vd.twist);
}

/// [..[x, a_1], .., a_r]
inline Multi<Rat> nested(const VData& vd, Multi<Rat> x, const std::vector<const Multi<Rat>*>& as) {
  for (const auto* a : as) {
    if (x.is_zero()) break;
    x = bracket(vd, x, *a);
  }
  return x;
}

/// l_k on homogeneous pieces.
inline LElem lk_pieces(const VData& vd, const std::vector<Piece>& ys) {
  LElem out;
  const int k = static_cast<int>(ys.size());
  int nq = 0, qpos = -1;
  for (int i = 0; i < k; ++i)
    if (ys[i].is_q) {
      ++nq;
      if (qpos < 0) qpos = i;
    }
  if (nq == 0) {
    if (vd.delta.empty()) return out;
    std::vector<const Multi<Rat>*> as;
    for (const auto& y : ys) as.push_back(y.f);
    for (const auto& [r, d] : vd.delta) {
      Multi<Rat> v = project_a(vd, nested(vd, d, as));
      if (!v.is_zero()) out.add_a(v.arity(), v);
    }
    return out;
  }
  if (nq == 1) {
    // move the q piece to the front
    int before = 0;
    for (int i = 0; i < qpos; ++i) before += ys[i].degree();
    const int sg = ((ys[qpos].degree() & 1) && (before & 1)) ? -1 : 1;
    const Multi<Rat>& x = *ys[qpos].f;
    if (k == 1) {
      for (const auto& [r, d] : vd.delta) {
        Multi<Rat> v = bracket(vd, d, x);
        if (!v.is_zero()) out.add_q(v.arity(), Rat(-sg) * v);
      }
      Multi<Rat> p = project_a(vd, x);
      if (!p.is_zero()) out.add_a(p.arity(), Rat(sg) * p);
      return out;
    }
    std::vector<const Multi<Rat>*> as;
    for (int i = 0; i < k; ++i)
      if (i != qpos) as.push_back(ys[i].f);
    Multi<Rat> v = project_a(vd, nested(vd, x, as));
    if (!v.is_zero()) out.add_a(v.arity(), Rat(sg) * v);
    return out;
  }
  if (nq == 2 && k == 2) {
    const Multi<Rat>& x = *ys[0].f;
    Multi<Rat> v = bracket(vd, x, *ys[1].f);
    if (!v.is_zero()) out.add_q(v.arity(), Rat(sign_pow(x.arity() - 1)) * v);
  }
  return out;
}

}  // namespace detail

/// l_k(x_1, .., x_k), extended multilinearly over homogeneous components.
inline LElem voronov_lk(const VData& vd, const std::vector<LElem>& xs) {
  LElem out;
  const int k = static_cast<int>(xs.size());
  if (k == 0) return out;
  std::vector<std::vector<detail::Piece>> ps;
  for (const auto& x : xs) {
    ps.push_back(detail::pieces(x));
    if (ps.back().empty()) return out;
  }
  std::vector<std::size_t> at(k, 0);
  std::vector<detail::Piece> cur(k, ps[0][0]);
  while (true) {
    for (int i = 0; i < k; ++i) cur[i] = ps[i][at[i]];
    out += detail::lk_pieces(vd, cur);
    int i = k - 1;
    while (i >= 0 && ++at[i] == ps[i].size()) at[i--] = 0;
    if (i < 0) break;
  }
  out.prune();
  return out;
}

/// Largest k with l_k(pieces of x...) possibly nonzero when Delta = 0: a q-piece
/// of arity r needs exactly r further a-inputs.
inline int nilpotency_bound(const std::vector<LElem>& xs) {
  int b = 2;
  for (const auto& x : xs)
    for (const auto& [k, f] : x.q)
      if (!f.is_zero()) b = std::max(b, k + 1);
  return b;
}

struct McSum {
  std::vector<LElem> terms;  // terms[k] = (1/k!) l_k(theta, .., theta); index 0 unused
  LElem sum;
};

inline McSum mc_sum(const VData& vd, const LElem& theta, int iter_cap = 64) {
  if (!vd.delta.empty()) throw std::invalid_argument("mc_sum: termination is only guaranteed for Delta = 0");
  McSum out;
  out.terms.emplace_back();
  const int bound = nilpotency_bound({theta});
  Rat fact = 1;
  for (int k = 1; k <= bound + 1; ++k) {
    if (k > iter_cap) throw std::runtime_error("series does not terminate within iteration cap");
    fact *= k;
    LElem t = Rat(1) / fact * voronov_lk(vd, std::vector<LElem>(k, theta));
    if (k == bound + 1 && !t.is_zero()) throw std::runtime_error("series does not terminate within iteration cap");
    out.sum += t;
    out.terms.push_back(std::move(t));
  }
  out.sum.prune();
  return out;
}

/// l_k^theta(x_1..x_k) = sum_n (1/n!) l_{n+k}(theta^n, x_1..x_k).
inline LElem twisted_lk(const VData& vd, const LElem& theta, const std::vector<LElem>& xs, int iter_cap = 64) {
  std::vector<LElem> all = xs;
  all.push_back(theta);
  const int bound = nilpotency_bound(all);
  LElem out;
  Rat fact = 1;
  for (int n = 0; n + static_cast<int>(xs.size()) <= bound + 1; ++n) {
    if (n > iter_cap) throw std::runtime_error("series does not terminate within iteration cap");
    if (n > 0) fact *= n;
    std::vector<LElem> args(n, theta);
    args.insert(args.end(), xs.begin(), xs.end());
    LElem t = Rat(1) / fact * voronov_lk(vd, args);
    if (n + static_cast<int>(xs.size()) == bound + 1 && !t.is_zero())
      throw std::runtime_error("series does not terminate within iteration cap");
    out += t;
  }
  out.prune();
  return out;
}

/// The twisted operations as a callable family.
struct TwistedLInfty {
  VData vd;
  LElem theta;
  int iter_cap = 64;
  LElem operator()(const std::vector<LElem>& xs) const { return twisted_lk(vd, theta, xs, iter_cap); }
};

inline TwistedLInfty twist_by_mc(const VData& vd, const LElem& theta, int iter_cap = 64) {
  McSum mc = mc_sum(vd, theta, iter_cap);
  if (!mc.sum.is_zero()) throw std::invalid_argument("twisting element is not Maurer-Cartan");
  return {vd, theta, iter_cap};
}

/// sum (1/k!) l_k^theta(theta', ..)
inline LElem twisted_mc_sum(const TwistedLInfty& tw, const LElem& theta2) {
  const int bound = nilpotency_bound({tw.theta, theta2});
  LElem out;
  Rat fact = 1;
  for (int k = 1; k <= bound + 1; ++k) {
    fact *= k;
    out += Rat(1) / fact * tw(std::vector<LElem>(k, theta2));
  }
  out.prune();
  return out;
}

// ---------------------------------------------------------------------------
// Triples as Maurer-Cartan elements

/// (mu [+] rho)((x,u),(y,v)) = (mu(x,y), rho(x,v))
inline Multi<Rat> box_q(int gdim, int vdim, const Multi<Rat>& mu, const Multi<Rat>& rho) {
  return lift_pair(gdim, vdim, mu, rho);
}

inline LElem triple_element(const Multi<Rat>& mu, const Multi<Rat>& rho, const Matrix& T) {
  const int gd = T.rows(), vd = T.cols();
  LElem x;
  x.q.emplace(2, box_q(gd, vd, mu, rho));
  x.a.emplace(1, lift_to_sum(from_matrix(T), gd, vd));
  return x;
}

struct HlltMcReport {
  ValidationReport report;
  Multi<Rat> pair_residual;    // [mu [+] rho, mu [+] rho]_B
  Multi<Rat> tensor_residual;  // P [[mu [+] rho, T]_B, T]_B
  std::vector<int> nonzero_terms;  // k with (1/k!) l_k(theta..) != 0
  LElem sum;
};

inline HlltMcReport hllt_mc_check(const Multi<Rat>& mu, const Multi<Rat>& rho, const Matrix& T, const Matrix& alpha,
                                  const Matrix& beta, int iter_cap = 64) {
  HlltMcReport out;
  const int gd = alpha.rows(), vd = beta.rows();
  if (!detail::shape_ok(out.report, detail::bilinear_shape(mu, gd, gd, gd), "bracket tensor") ||
      !detail::shape_ok(out.report, detail::bilinear_shape(rho, gd, vd, vd), "action tensor") ||
      !detail::shape_ok(out.report, T.rows() == gd && T.cols() == vd, "tensor shape"))
    return out;
  VData v = hllt_vdata(alpha, beta);
  LElem theta = triple_element(mu, rho, T);
  McSum mc = mc_sum(v, theta, iter_cap);
  out.sum = mc.sum;
  for (std::size_t k = 1; k < mc.terms.size(); ++k)
    if (!mc.terms[k].is_zero()) out.nonzero_terms.push_back(static_cast<int>(k));
  const Multi<Rat>& q = theta.q.at(2);
  const Multi<Rat>& t = theta.a.at(1);
  out.pair_residual = balavoine(q, q, v.twist);
  out.tensor_residual = project_a(v, balavoine(balavoine(q, t, v.twist), t, v.twist));
  // membership of the data itself
  collect(out.report, "bracket skew", mu + permute(mu, {1, 0}));
  collect(out.report, "bracket twist", postcompose(alpha, mu) - precompose(precompose(mu, 0, alpha), 1, alpha));
  collect(out.report, "action twist", postcompose(beta, rho) - precompose(precompose(rho, 0, alpha), 1, beta));
  collect(out.report, "tensor twist", alpha * T - T * beta);
  for (const auto& [k, f] : mc.sum.q) collect(out.report, "mc q-part arity " + std::to_string(k), f);
  for (const auto& [k, f] : mc.sum.a) collect(out.report, "mc a-part arity " + std::to_string(k), f);
  return out;
}

/// The Maurer-Cartan element of a triple.
inline LElem triple_element(const EmbeddingTensor& t) { return triple_element(t.alg().bracket, t.rep.rho, t.T); }

/// (f_g, f_V, P) in C^n_HLLT as s^{-1}(f_g + f_V) + P.
inline LElem hllt_cochain_element(const EmbeddingTensor& t, const Composite& f) {
  const int gd = t.rep.gdim(), vd = t.rep.vdim();
  LElem x;
  x.q.emplace(f[0].arity(), lift_pair(gd, vd, f[0], f[1]));
  if (f.size() > 2) x.a.emplace(f[2].arity(), lift_to_sum(f[2], gd, vd));
  return x;
}

/// delta_HLLT through the twisted operations: -l_1^theta at n = 1 and
/// (-1)^{n-2} l_1^theta for n >= 2, read back into components.
inline Composite delta_hllt_linfty(const EmbeddingTensor& t, const Composite& f, int iter_cap = 64) {
  const int gd = t.rep.gdim(), vd = t.rep.vdim();
  const int n = f[0].arity();
  VData v = hllt_vdata(t.alg().alpha, t.rep.beta);
  LElem y = twisted_lk(v, triple_element(t), {hllt_cochain_element(t, f)}, iter_cap);
  const int sg = n == 1 ? -1 : sign_pow(n - 2);
  Composite out = split_pair(y.q.count(n + 1) ? y.q.at(n + 1) : Multi<Rat>::uniform(n + 1, gd + vd, gd + vd), gd, vd);
  out.push_back(y.a.count(n) ? restrict_vg(y.a.at(n), gd, vd) : Multi<Rat>(std::vector<int>(n, vd), gd));
  for (auto& c : out) c = Rat(sg) * c;
  return out;
}

/// sum over i+j=n+1 and (i,n-i)-shuffles of eps(s) l_j(l_i(x_s(1..i)), x_s(i+1..n)),
/// for homogeneous inputs with the given degrees.
inline LElem linfty_jacobi(const std::function<LElem(const std::vector<LElem>&)>& l, const std::vector<LElem>& xs,
                           const std::vector<int>& degs) {
  const int n = static_cast<int>(xs.size());
  LElem out;
  for (int i = 1; i <= n; ++i)
    for_each_shuffle(i, n - i, [&](const std::vector<int>& s, int) {
      std::vector<LElem> inner, outer;
      for (int t = 0; t < i; ++t) inner.push_back(xs[s[t]]);
      LElem li = l(inner);
      if (li.is_zero()) return;
      outer.push_back(li);
      for (int t = i; t < n; ++t) outer.push_back(xs[s[t]]);
      out += Rat(koszul_sign(s, degs)) * l(outer);
    });
  out.prune();
  return out;
}

inline int degree_of_q(int arity) { return arity - 2; }
inline int degree_of_a(int arity) { return arity - 1; }

}  // namespace hlemb
