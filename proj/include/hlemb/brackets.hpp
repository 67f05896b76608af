#pragma once

// Ungraded cochain engine: Balavoine's bracket on C^{*+1}(h, h), the derived
// bracket on C^*(V, g) and the maps Phi_n into C^{*+1}(V, V).

#include <stdexcept>
#include <vector>

#include "hlemb/shuffle.hpp"
#include "hlemb/structures.hpp"
#include "hlemb/tensor.hpp"

namespace hlemb {

/// out_twist o f == f o twist^{(x) n}
template <class S>
bool twist_compatible(const Multi<S>& f, const Mat<S>& in_twist, const Mat<S>& out_twist) {
  return postcompose(out_twist, f) == precompose_range(f, 0, f.arity(), in_twist);
}

/// Balavoine's pre-product with inner twist power n-1:
/// (P <> Q)(x_1..x_{m+n-1}) = sum_i sum_{s in Sh(i-1,n-1)} (-1)^{(i-1)(n-1)} sgn(s)
///   P(t^{n-1} x_s(1).., Q(x_s(i)..x_s(i+n-2), x_{i+n-1}), t^{n-1} x_{i+n}..).
/// P : X^m -> Y is arbitrary in the output; Q : X^n -> X.
template <class S>
Multi<S> diamond(const Multi<S>& p, const Multi<S>& q, const Mat<S>& twist) {
  const int m = p.arity(), n = q.arity();
  if (m < 1 || n < 1) throw std::invalid_argument("diamond: cochains must have arity >= 1");
  const int x = q.out();
  for (int s = 0; s < m; ++s)
    if (p.dim(s) != x) throw std::invalid_argument("diamond: slot dimension mismatch");
  for (int s = 0; s < n; ++s)
    if (q.dim(s) != x) throw std::invalid_argument("diamond: inner slot dimension mismatch");
  const Mat<S> tw = power(twist, n - 1);
  const bool plain = tw.is_identity();
  Multi<S> out = Multi<S>::uniform(m + n - 1, x, p.out());
  for (int i = 1; i <= m; ++i) {
    Multi<S> pp = p;
    if (!plain)
      for (int s = 0; s < m; ++s)
        if (s != i - 1) pp = precompose(pp, s, tw);
    Multi<S> r = insert(pp, i - 1, q);
    const S base(sign_pow(static_cast<long>(i - 1) * (n - 1)));
    for_each_shuffle(i - 1, n - 1, [&](const std::vector<int>& sh, int sg) {
      std::vector<int> perm = sh;
      for (int k = i + n - 2; k < m + n - 1; ++k) perm.push_back(k);
      accumulate_permuted(out, r, perm, sg > 0 ? base : S(-base));
    });
  }
  return out;
}

/// [P,Q]_B = P<>Q - (-1)^{(m-1)(n-1)} Q<>P on C^{*+1}(h, h).
template <class S>
Multi<S> balavoine(const Multi<S>& p, const Multi<S>& q, const Mat<S>& twist) {
  const long m = p.arity(), n = q.arity();
  Multi<S> r = diamond(p, q, twist);
  Multi<S> s = diamond(q, p, twist);
  if (sign_pow((m - 1) * (n - 1)) > 0)
    r -= s;
  else
    r += s;
  return r;
}

/// Leibniz multiplication as an element of C^2(h, h).
template <class S>
const Multi<S>& leibniz_element(const HomLeibnizAlgebraT<S>& h) {
  return h.bracket;
}

// ---------------------------------------------------------------------------
// C^*(V, g) inside C^*(g (+) V, g (+) V)

/// P : V^m -> g as a cochain on h = g (+) V vanishing unless all inputs lie in V.
template <class S>
Multi<S> lift_to_sum(const Multi<S>& p, int gdim, int vdim) {
  const int N = gdim + vdim;
  return embed(p, std::vector<int>(p.arity(), N), std::vector<int>(p.arity(), gdim), N, 0);
}

/// The V^{m} -> g block of a cochain on h.
template <class S>
Multi<S> restrict_vg(const Multi<S>& f, int gdim, int vdim) {
  return restrict_to(f, std::vector<int>(f.arity(), vdim), std::vector<int>(f.arity(), gdim), gdim, 0);
}

/// rho~Q(v_1..v_n, w) = rho(Q(v_1..v_n))(beta^{n-1} w)
template <class S>
Multi<S> rho_tilde(const HomLieRepT<S>& r, const Multi<S>& q) {
  const int n = q.arity();
  return precompose(insert(r.rho, 0, q), n, power(r.beta, n - 1));
}

/// Phi_n(f)(v_1..v_{n+1}) = -rho(f(v_1..v_n))(beta^{n-1} v_{n+1})
template <class S>
Multi<S> phi_map(const HomLieRepT<S>& r, const Multi<S>& f) {
  return -rho_tilde(r, f);
}

/// Derived bracket by its definition (-1)^{m-1} [[pi, P]_B, Q]_B computed on
/// the hemi-semidirect product; returns the full cochain on g (+) V.
template <class S>
Multi<S> derived_bracket_full(const HomLieRepT<S>& r, const Multi<S>& p, const Multi<S>& q) {
  const int n = r.gdim(), m = r.vdim();
  HomLeibnizAlgebraT<S> h = hemi_semidirect(r);
  Multi<S> pp = lift_to_sum(p, n, m), qq = lift_to_sum(q, n, m);
  Multi<S> out = balavoine(balavoine(h.bracket, pp, h.alpha), qq, h.alpha);
  if (sign_pow(p.arity() - 1) < 0) out = -out;
  return out;
}

template <class S>
Multi<S> derived_bracket_definition(const HomLieRepT<S>& r, const Multi<S>& p, const Multi<S>& q) {
  return restrict_vg(derived_bracket_full(r, p, q), r.gdim(), r.vdim());
}

/// Derived bracket by the closed formula (no detour through g (+) V):
///   -P <>_beta rho~Q + (-1)^{mn} Q <>_beta rho~P
///   + sum_{s in Sh(m,n)} (-1)^{mn+1} sgn(s) [P(beta^{n-1} v_s..), Q(beta^{m-1} v_s..)].
template <class S>
Multi<S> derived_bracket(const HomLieRepT<S>& r, const Multi<S>& p, const Multi<S>& q) {
  const int m = p.arity(), n = q.arity();
  Multi<S> out = -diamond(p, rho_tilde(r, q), r.beta);
  Multi<S> second = diamond(q, rho_tilde(r, p), r.beta);
  if (sign_pow(static_cast<long>(m) * n) > 0)
    out += second;
  else
    out -= second;
  Multi<S> pb = precompose_range(p, 0, m, power(r.beta, n - 1));
  Multi<S> qb = precompose_range(q, 0, n, power(r.beta, m - 1));
  Multi<S> bq = insert(insert(r.alg.bracket, 1, qb), 0, pb);
  const S base(sign_pow(static_cast<long>(m) * n + 1));
  for_each_shuffle(m, n, [&](const std::vector<int>& sh, int sg) {
    accumulate_permuted(out, bq, sh, sg > 0 ? base : S(-base));
  });
  return out;
}

}  // namespace hlemb
