#pragma once

// Dense multilinear maps W_1 x ... x W_k -> U with exact coefficients.
//
// Storage is row-major over the input slots with the output index last:
// entry (a_1, ..., a_k, j) is the e_j coefficient of f(e_{a_1}, ..., e_{a_k}).
// An arity-0 map is just a vector of U.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hlemb/matrix.hpp"

namespace hlemb {

template <class S>
class Multi {
 public:
  Multi() = default;
  Multi(std::vector<int> dims, int out) : dims_(std::move(dims)), out_(out) {
    std::size_t n = static_cast<std::size_t>(out_);
    for (int d : dims_) n *= static_cast<std::size_t>(d);
    c_.assign(n, S());
  }
  /// k slots of equal dimension.
  static Multi uniform(int arity, int dim, int out) { return Multi(std::vector<int>(arity, dim), out); }

  int arity() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  int dim(int slot) const { return dims_[slot]; }
  int out() const { return out_; }
  std::size_t in_size() const {
    std::size_t n = 1;
    for (int d : dims_) n *= static_cast<std::size_t>(d);
    return n;
  }
  std::size_t size() const { return c_.size(); }

  std::vector<S>& data() { return c_; }
  const std::vector<S>& data() const { return c_; }

  std::size_t flat(const std::vector<int>& idx) const {
    std::size_t f = 0;
    for (std::size_t s = 0; s < dims_.size(); ++s) f = f * dims_[s] + idx[s];
    return f;
  }
  S& at(const std::vector<int>& idx, int k) { return c_[flat(idx) * out_ + k]; }
  const S& at(const std::vector<int>& idx, int k) const { return c_[flat(idx) * out_ + k]; }

  /// Decodes a flat input index into slot indices.
  std::vector<int> decode(std::size_t f) const {
    std::vector<int> idx(dims_.size());
    for (std::size_t s = dims_.size(); s-- > 0;) {
      idx[s] = static_cast<int>(f % dims_[s]);
      f /= dims_[s];
    }
    return idx;
  }

  /// Value f(e_idx) as a vector of U.
  std::vector<S> value(const std::vector<int>& idx) const {
    std::size_t base = flat(idx) * out_;
    return std::vector<S>(c_.begin() + base, c_.begin() + base + out_);
  }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!hlemb::is_zero(x)) return false;
    return true;
  }
  bool same_shape(const Multi& o) const { return dims_ == o.dims_ && out_ == o.out_; }

  friend bool operator==(const Multi& a, const Multi& b) { return a.same_shape(b) && a.c_ == b.c_; }
  friend bool operator!=(const Multi& a, const Multi& b) { return !(a == b); }

  Multi& operator+=(const Multi& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!hlemb::is_zero(o.c_[i])) c_[i] += o.c_[i];
    return *this;
  }
  Multi& operator-=(const Multi& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!hlemb::is_zero(o.c_[i])) c_[i] -= o.c_[i];
    return *this;
  }
  /// this += s * o
  void axpy(const S& s, const Multi& o) {
    check(o);
    if (hlemb::is_zero(s)) return;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!hlemb::is_zero(o.c_[i])) c_[i] += s * o.c_[i];
  }
  friend Multi operator+(Multi a, const Multi& b) { return a += b; }
  friend Multi operator-(Multi a, const Multi& b) { return a -= b; }
  friend Multi operator*(const S& s, Multi a) {
    for (auto& x : a.c_)
      if (!hlemb::is_zero(x)) x = s * x;
    return a;
  }
  friend Multi operator-(Multi a) {
    for (auto& x : a.c_)
      if (!hlemb::is_zero(x)) x = -x;
    return a;
  }

 private:
  void check(const Multi& o) const {
    if (!same_shape(o)) throw std::invalid_argument("multilinear map shape mismatch");
  }

  std::vector<int> dims_;
  int out_ = 0;
  std::vector<S> c_;
};

template <class To, class From>
Multi<To> convert(const Multi<From>& m) {
  Multi<To> r(m.dims(), m.out());
  for (std::size_t i = 0; i < m.size(); ++i) r.data()[i] = To(m.data()[i]);
  return r;
}

/// A linear map as an arity-1 multilinear map.
template <class S>
Multi<S> from_matrix(const Mat<S>& m) {
  Multi<S> f({m.cols()}, m.rows());
  for (int c = 0; c < m.cols(); ++c)
    for (int r = 0; r < m.rows(); ++r) f.data()[static_cast<std::size_t>(c) * m.rows() + r] = m(r, c);
  return f;
}
template <class S>
Mat<S> to_matrix(const Multi<S>& f) {
  if (f.arity() != 1) throw std::invalid_argument("to_matrix: arity must be 1");
  Mat<S> m(f.out(), f.dim(0));
  for (int c = 0; c < f.dim(0); ++c)
    for (int r = 0; r < f.out(); ++r) m(r, c) = f.data()[static_cast<std::size_t>(c) * f.out() + r];
  return m;
}

/// f with slot `slot` precomposed by m: (f o_slot m)(.., y, ..) = f(.., m y, ..).
/// m maps the new slot space into the old one (rows = old dim).
template <class S>
Multi<S> precompose(const Multi<S>& f, int slot, const Mat<S>& m) {
  if (m.rows() != f.dim(slot)) throw std::invalid_argument("precompose: dimension mismatch");
  std::vector<int> nd = f.dims();
  nd[slot] = m.cols();
  Multi<S> g(nd, f.out());
  std::size_t pre = 1, post = static_cast<std::size_t>(f.out());
  for (int s = 0; s < slot; ++s) pre *= f.dim(s);
  for (int s = slot + 1; s < f.arity(); ++s) post *= f.dim(s);
  const int dold = f.dim(slot), dnew = m.cols();
  const auto& fc = f.data();
  auto& gc = g.data();
  for (std::size_t p = 0; p < pre; ++p)
    for (int b = 0; b < dold; ++b) {
      const std::size_t src = (p * dold + b) * post;
      for (int a = 0; a < dnew; ++a) {
        const S& w = m(b, a);
        if (hlemb::is_zero(w)) continue;
        const std::size_t dst = (p * dnew + a) * post;
        for (std::size_t q = 0; q < post; ++q)
          if (!hlemb::is_zero(fc[src + q])) gc[dst + q] += w * fc[src + q];
      }
    }
  return g;
}

/// Precomposes every slot in [first, last) with m.
template <class S>
Multi<S> precompose_range(Multi<S> f, int first, int last, const Mat<S>& m) {
  if (m.is_identity()) return f;
  for (int s = first; s < last; ++s) f = precompose(f, s, m);
  return f;
}

/// m o f
template <class S>
Multi<S> postcompose(const Mat<S>& m, const Multi<S>& f) {
  if (m.cols() != f.out()) throw std::invalid_argument("postcompose: dimension mismatch");
  Multi<S> g(f.dims(), m.rows());
  const std::size_t n = f.in_size();
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k < f.out(); ++k) {
      const S& x = f.data()[i * f.out() + k];
      if (hlemb::is_zero(x)) continue;
      for (int r = 0; r < m.rows(); ++r)
        if (!hlemb::is_zero(m(r, k))) g.data()[i * m.rows() + r] += m(r, k) * x;
    }
  return g;
}

/// Substitutes q into slot `slot` of p:
/// (p o_slot q)(y_1..y_{slot}, z_1..z_l, y_{slot+2}..) = p(y.., q(z..), y..).
template <class S>
Multi<S> insert(const Multi<S>& p, int slot, const Multi<S>& q) {
  if (q.out() != p.dim(slot)) throw std::invalid_argument("insert: dimension mismatch");
  std::vector<int> nd(p.dims().begin(), p.dims().begin() + slot);
  nd.insert(nd.end(), q.dims().begin(), q.dims().end());
  nd.insert(nd.end(), p.dims().begin() + slot + 1, p.dims().end());
  Multi<S> r(nd, p.out());
  std::size_t pre = 1, post = static_cast<std::size_t>(p.out());
  for (int s = 0; s < slot; ++s) pre *= p.dim(s);
  for (int s = slot + 1; s < p.arity(); ++s) post *= p.dim(s);
  const std::size_t zq = q.in_size();
  const int dj = p.dim(slot);
  const auto& pc = p.data();
  const auto& qc = q.data();
  auto& rc = r.data();
  for (std::size_t pi = 0; pi < pre; ++pi)
    for (int j = 0; j < dj; ++j) {
      const std::size_t src = (pi * dj + j) * post;
      bool any = false;
      for (std::size_t t = 0; t < post && !any; ++t) any = !hlemb::is_zero(pc[src + t]);
      if (!any) continue;
      for (std::size_t z = 0; z < zq; ++z) {
        const S& w = qc[z * dj + j];
        if (hlemb::is_zero(w)) continue;
        const std::size_t dst = (pi * zq + z) * post;
        for (std::size_t t = 0; t < post; ++t)
          if (!hlemb::is_zero(pc[src + t])) rc[dst + t] += w * pc[src + t];
      }
    }
  return r;
}

/// out(x_0..x_{n-1}) += coeff(idx) * r(x_{s[0]}, ..., x_{s[n-1]}).
/// Slot j of r receives argument s[j], so out slot s[j] has r's dim(j).
/// coeff receives the out multi-index and returns +1/-1; pass nullptr for +1.
template <class S>
void accumulate_permuted(Multi<S>& out, const Multi<S>& r, const std::vector<int>& s, const S& scale,
                         const std::function<int(const std::vector<int>&)>& coeff = nullptr) {
  const int n = r.arity();
  if (out.arity() != n || out.out() != r.out()) throw std::invalid_argument("accumulate_permuted: shape");
  for (int j = 0; j < n; ++j)
    if (out.dim(s[j]) != r.dim(j)) throw std::invalid_argument("accumulate_permuted: slot dims");
  std::vector<std::size_t> rstride(n);
  {
    std::size_t st = 1;
    for (int j = n; j-- > 0;) {
      rstride[j] = st;
      st *= r.dim(j);
    }
  }
  // out slot i feeds r slot inv[i]
  std::vector<int> inv(n);
  for (int j = 0; j < n; ++j) inv[s[j]] = j;
  const std::size_t total = out.in_size();
  const int k = r.out();
  std::vector<int> idx(n, 0);
  S neg = -scale;
  for (std::size_t f = 0; f < total; ++f) {
    std::size_t src = 0;
    for (int i = 0; i < n; ++i) src += idx[i] * rstride[inv[i]];
    src *= k;
    int sg = coeff ? coeff(idx) : 1;
    const S& w = sg > 0 ? scale : neg;
    for (int t = 0; t < k; ++t) {
      const S& v = r.data()[src + t];
      if (!hlemb::is_zero(v)) out.data()[f * k + t] += w * v;
    }
    for (int i = n; i-- > 0;) {
      if (++idx[i] < out.dim(i)) break;
      idx[i] = 0;
    }
  }
}

/// r with arguments permuted: result(x_0..) = r(x_{s[0]}, ..).
template <class S>
Multi<S> permute(const Multi<S>& r, const std::vector<int>& s) {
  std::vector<int> nd(r.arity());
  for (int j = 0; j < r.arity(); ++j) nd[s[j]] = r.dim(j);
  Multi<S> out(nd, r.out());
  accumulate_permuted(out, r, s, S(1));
  return out;
}

/// Calls fn(idx, k, value) for every nonzero coefficient.
template <class S, class Fn>
void for_each_nonzero(const Multi<S>& f, Fn&& fn) {
  const std::size_t n = f.in_size();
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k < f.out(); ++k) {
      const S& x = f.data()[i * f.out() + k];
      if (!hlemb::is_zero(x)) fn(f.decode(i), k, x);
    }
}

/// f viewed inside larger spaces: slot s embeds into a space of dim big_dims[s]
/// at offset in_off[s]; output lands at offset out_off in dimension big_out.
template <class S>
Multi<S> embed(const Multi<S>& f, const std::vector<int>& big_dims, const std::vector<int>& in_off, int big_out,
               int out_off) {
  Multi<S> g(big_dims, big_out);
  for_each_nonzero(f, [&](const std::vector<int>& idx, int k, const S& x) {
    std::vector<int> j(idx.size());
    for (std::size_t s = 0; s < idx.size(); ++s) j[s] = idx[s] + in_off[s];
    g.at(j, k + out_off) = x;
  });
  return g;
}

/// Restriction of f to sub-blocks: slot s restricted to [in_off[s], in_off[s]+dims[s]),
/// output projected to [out_off, out_off+out).
template <class S>
Multi<S> restrict_to(const Multi<S>& f, const std::vector<int>& dims, const std::vector<int>& in_off, int out,
                     int out_off) {
  Multi<S> g(dims, out);
  const std::size_t n = g.in_size();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> idx = g.decode(i);
    for (std::size_t s = 0; s < idx.size(); ++s) idx[s] += in_off[s];
    std::size_t base = f.flat(idx) * f.out();
    for (int k = 0; k < out; ++k) g.data()[i * out + k] = f.data()[base + out_off + k];
  }
  return g;
}

}  // namespace hlemb
