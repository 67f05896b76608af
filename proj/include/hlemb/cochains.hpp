#pragma once

// Cochain spaces as explicit subspaces: maps of a fixed shape that alternate
// in a leading block of slots and commute with the twists.  A basis is found
// by parametrizing the alternating maps and taking the kernel of the
// twist-compatibility map.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hlemb/matrix.hpp"
#include "hlemb/shuffle.hpp"
#include "hlemb/tensor.hpp"

namespace hlemb {

struct CochainShape {
  std::string name;
  std::vector<int> dims;
  std::vector<Matrix> twists;  // one per slot
  int out = 0;
  Matrix out_twist;
  int wedge = 0;  // slots [0, wedge) alternate

  int arity() const { return static_cast<int>(dims.size()); }
  std::size_t ambient() const {
    std::size_t n = static_cast<std::size_t>(out);
    for (int d : dims) n *= static_cast<std::size_t>(d);
    return n;
  }
};

/// Maps X^{(x) wedge} (x) Y_1 (x) ... -> U with the given twists.
inline CochainShape make_shape(std::string name, int wedge, int wdim, const Matrix& wtwist,
                               const std::vector<std::pair<int, Matrix>>& tail, int out, const Matrix& out_twist) {
  CochainShape s;
  s.name = std::move(name);
  s.wedge = wedge;
  for (int i = 0; i < wedge; ++i) {
    s.dims.push_back(wdim);
    s.twists.push_back(wtwist);
  }
  for (const auto& [d, t] : tail) {
    s.dims.push_back(d);
    s.twists.push_back(t);
  }
  s.out = out;
  s.out_twist = out_twist;
  return s;
}

/// Residual out_twist o f - f o (twists) and alternation defect.
inline bool in_shape(const CochainShape& s, const Multi<Rat>& f) {
  if (f.dims() != s.dims || f.out() != s.out) return false;
  for (int i = 0; i + 1 < s.wedge; ++i) {
    std::vector<int> sw(s.arity());
    for (int j = 0; j < s.arity(); ++j) sw[j] = j;
    std::swap(sw[i], sw[i + 1]);
    if (!(f + permute(f, sw)).is_zero()) return false;
  }
  Multi<Rat> g = f;
  for (int j = 0; j < s.arity(); ++j)
    if (!s.twists[j].is_identity()) g = precompose(g, j, s.twists[j]);
  return g == postcompose(s.out_twist, f);
}

using Composite = std::vector<Multi<Rat>>;

inline Composite zero_composite(const std::vector<CochainShape>& shapes) {
  Composite c;
  for (const auto& s : shapes) c.emplace_back(s.dims, s.out);
  return c;
}

inline Vec flatten(const Composite& c) {
  Vec v;
  for (const auto& m : c) v.insert(v.end(), m.data().begin(), m.data().end());
  return v;
}

inline bool is_zero(const Composite& c) {
  for (const auto& m : c)
    if (!m.is_zero()) return false;
  return true;
}

inline Composite operator+(Composite a, const Composite& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline Composite operator-(Composite a, const Composite& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline Composite operator*(const Rat& s, Composite a) {
  for (auto& m : a) m = s * m;
  return a;
}

/// Basis of one shape.
class ShapeSpace {
 public:
  ShapeSpace() = default;
  explicit ShapeSpace(CochainShape shape) : shape_(std::move(shape)) { build(); }

  const CochainShape& shape() const { return shape_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Multi<Rat>>& basis() const { return basis_; }

  /// Coordinates of f in the basis (f assumed to lie in the space).
  Vec coords(const Multi<Rat>& f) const {
    Vec c(free_pos_.size());
    for (std::size_t k = 0; k < free_pos_.size(); ++k) c[k] = f.data()[free_pos_[k]];
    return c;
  }

 private:
  struct Param {
    std::vector<std::pair<std::size_t, int>> support;  // flat index, sign
  };

  void build() {
    const auto& s = shape_;
    if (s.wedge > 0)
      for (int i = 1; i < s.wedge; ++i)
        if (s.dims[i] != s.dims[0]) throw std::invalid_argument("alternating slots must share a space");
    Multi<Rat> probe(s.dims, s.out);
    // enumerate representatives: strictly increasing wedge block, anything after
    std::vector<Param> params;
    std::vector<std::size_t> rep_pos;
    const std::size_t nin = probe.in_size();
    std::vector<std::vector<int>> perms;
    if (s.wedge > 1) {
      std::vector<int> p(s.wedge);
      for (int i = 0; i < s.wedge; ++i) p[i] = i;
      do perms.push_back(p);
      while (std::next_permutation(p.begin(), p.end()));
    }
    for (std::size_t f = 0; f < nin; ++f) {
      std::vector<int> idx = probe.decode(f);
      bool ok = true;
      for (int i = 0; i + 1 < s.wedge && ok; ++i) ok = idx[i] < idx[i + 1];
      if (!ok) continue;
      for (int k = 0; k < s.out; ++k) {
        Param par;
        if (s.wedge > 1) {
          for (const auto& p : perms) {
            std::vector<int> j = idx;
            for (int i = 0; i < s.wedge; ++i) j[i] = idx[p[i]];
            par.support.emplace_back(probe.flat(j) * s.out + k, perm_sign(p));
          }
        } else {
          par.support.emplace_back(f * s.out + k, 1);
        }
        rep_pos.push_back(f * s.out + k);
        params.push_back(std::move(par));
      }
    }
    const std::size_t np = params.size();
    bool trivial = s.out_twist.is_identity();
    for (const auto& t : s.twists) trivial = trivial && t.is_identity();
    Subspace ker;
    std::vector<std::size_t> free_cols;
    if (trivial) {
      ker = Subspace::whole(np);
      for (std::size_t p = 0; p < np; ++p) free_cols.push_back(p);
    } else {
      // rows of the constraint matrix, keyed by residual position
      std::map<std::size_t, std::map<std::size_t, Rat>> rows;
      std::vector<std::size_t> stride(s.arity());
      {
        std::size_t st = 1;
        for (int j = s.arity(); j-- > 0;) {
          stride[j] = st;
          st *= s.dims[j];
        }
      }
      for (std::size_t p = 0; p < np; ++p) {
        for (const auto& [pos, sg] : params[p].support) {
          const std::size_t f = pos / s.out;
          const int k = static_cast<int>(pos % s.out);
          std::vector<int> b = probe.decode(f);
          // + out_twist o e
          for (int r = 0; r < s.out; ++r)
            if (!is_zero(s.out_twist(r, k))) rows[f * s.out + r][p] += sg * s.out_twist(r, k);
          // - e o twists: contributes at inputs a with coefficient prod_j tw_j(b_j, a_j)
          std::vector<std::vector<std::pair<int, Rat>>> choices(s.arity());
          bool dead = false;
          for (int j = 0; j < s.arity() && !dead; ++j) {
            for (int a = 0; a < s.dims[j]; ++a)
              if (!is_zero(s.twists[j](b[j], a))) choices[j].emplace_back(a, s.twists[j](b[j], a));
            dead = choices[j].empty();
          }
          if (dead) continue;
          std::vector<std::size_t> at(s.arity(), 0);
          while (true) {
            std::size_t flat = 0;
            Rat w = sg;
            for (int j = 0; j < s.arity(); ++j) {
              flat += choices[j][at[j]].first * stride[j];
              w *= choices[j][at[j]].second;
            }
            rows[flat * s.out + k][p] -= w;
            int j = s.arity() - 1;
            while (j >= 0 && ++at[j] == choices[j].size()) at[j--] = 0;
            if (j < 0) break;
          }
        }
      }
      RowEchelon ech(np);
      for (const auto& [key, row] : rows) {
        Vec v(np);
        bool nz = false;
        for (const auto& [c, x] : row)
          if (!is_zero(x)) {
            v[c] = x;
            nz = true;
          }
        if (nz) ech.add(std::move(v));
      }
      std::vector<Vec> ech_rows;
      for (std::size_t r = 0; r < ech.rank(); ++r) ech_rows.push_back(ech.row(r));
      Rref e = rref_of_rows(np, ech_rows);
      ker = kernel_from_rref(e);
      std::vector<bool> piv(np, false);
      for (auto q : e.pivots) piv[q] = true;
      for (std::size_t q = 0; q < np; ++q)
        if (!piv[q]) free_cols.push_back(q);
    }
    for (const auto& v : ker.basis()) {
      Multi<Rat> f(s.dims, s.out);
      for (std::size_t p = 0; p < np; ++p) {
        if (is_zero(v[p])) continue;
        for (const auto& [pos, sg] : params[p].support) f.data()[pos] += sg * v[p];
      }
      basis_.push_back(std::move(f));
    }
    // vector k has its unit at free_cols[k] and zeros at the other free columns
    for (auto q : free_cols) free_pos_.push_back(rep_pos[q]);
  }

  CochainShape shape_;
  std::vector<Multi<Rat>> basis_;
  std::vector<std::size_t> free_pos_;
};

/// Direct sum of shape spaces; composite basis vectors have one nonzero component.
class CochainSpace {
 public:
  CochainSpace() = default;
  explicit CochainSpace(const std::vector<CochainShape>& shapes) {
    for (const auto& s : shapes) parts_.emplace_back(s);
    for (std::size_t i = 0; i < parts_.size(); ++i)
      for (const auto& b : parts_[i].basis()) {
        Composite c = zero_composite(shapes);
        c[i] = b;
        basis_.push_back(std::move(c));
      }
  }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<Composite>& basis() const { return basis_; }
  const std::vector<ShapeSpace>& parts() const { return parts_; }
  std::vector<CochainShape> shapes() const {
    std::vector<CochainShape> s;
    for (const auto& p : parts_) s.push_back(p.shape());
    return s;
  }
  Composite zero() const { return zero_composite(shapes()); }

  bool contains(const Composite& c) const {
    if (c.size() != parts_.size()) return false;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!in_shape(parts_[i].shape(), c[i])) return false;
    return true;
  }

  Vec coords(const Composite& c) const {
    Vec v;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      Vec ci = parts_[i].coords(c[i]);
      v.insert(v.end(), ci.begin(), ci.end());
    }
    return v;
  }

  Composite from_coords(const Vec& x) const {
    Composite c = zero();
    for (std::size_t k = 0; k < basis_.size(); ++k)
      if (!is_zero(x[k])) c = c + x[k] * basis_[k];
    return c;
  }

 private:
  std::vector<ShapeSpace> parts_;
  std::vector<Composite> basis_;
};

}  // namespace hlemb
