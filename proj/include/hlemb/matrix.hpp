#pragma once

// Dense matrices over an exact scalar ring, plus rank/kernel/subspace
// machinery over the rationals.
//
// Matrix convention used throughout the library: a linear map A acts on basis
// vectors as A(e_c) = sum_r A(r, c) e_r, i.e. columns are images.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hlemb/rational.hpp"

namespace hlemb {

template <class S>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }
  static Mat diagonal(const std::vector<S>& d) {
    Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  S& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const S& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  const std::vector<S>& data() const { return a_; }
  std::vector<S>& data() { return a_; }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const S& x) { return hlemb::is_zero(x); });
  }
  bool is_identity() const {
    if (!square()) return false;
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c)
        if (!((*this)(r, c) == S(r == c ? 1 : 0))) return false;
    return true;
  }

  std::vector<S> apply(const std::vector<S>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<S> out(rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c)
        if (!hlemb::is_zero((*this)(r, c)) && !hlemb::is_zero(v[c])) out[r] += (*this)(r, c) * v[c];
    return out;
  }

  std::vector<S> column(int c) const {
    std::vector<S> v(rows_);
    for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  friend Mat operator+(const Mat& x, const Mat& y) {
    check_same(x, y);
    Mat z = x;
    for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] += y.a_[i];
    return z;
  }
  friend Mat operator-(const Mat& x, const Mat& y) {
    check_same(x, y);
    Mat z = x;
    for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] -= y.a_[i];
    return z;
  }
  friend Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Mat z(x.rows_, y.cols_);
    for (int r = 0; r < x.rows_; ++r)
      for (int k = 0; k < x.cols_; ++k) {
        const S& xr = x(r, k);
        if (hlemb::is_zero(xr)) continue;
        for (int c = 0; c < y.cols_; ++c)
          if (!hlemb::is_zero(y(k, c))) z(r, c) += xr * y(k, c);
      }
    return z;
  }
  friend Mat operator*(const S& s, const Mat& x) {
    Mat z = x;
    for (auto& e : z.a_) e = s * e;
    return z;
  }

 private:
  static void check_same(const Mat& x, const Mat& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<S> a_;
};

using Matrix = Mat<Rat>;

template <class S>
Mat<S> power(const Mat<S>& m, int k) {
  if (!m.square()) throw std::invalid_argument("power of non-square matrix");
  Mat<S> r = Mat<S>::identity(m.rows());
  for (int i = 0; i < k; ++i) r = r * m;
  return r;
}

/// Block-diagonal sum a (+) b.
template <class S>
Mat<S> direct_sum(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> m(a.rows() + b.rows(), a.cols() + b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
  for (int r = 0; r < b.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c) m(a.rows() + r, a.cols() + c) = b(r, c);
  return m;
}

template <class To, class From>
Mat<To> convert(const Mat<From>& m) {
  Mat<To> out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(r, c) = To(m(r, c));
  return out;
}

using Vec = std::vector<Rat>;

inline bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return is_zero(x); });
}

/// Echelon basis grown one vector at a time.  Rows are stored sparsely; each
/// stored row is reduced against all earlier rows, and its pivot is its first
/// nonzero coordinate, so reducing a new vector in insertion order is exact.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t ambient) : n_(ambient) {}

  std::size_t ambient() const { return n_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduces v in place against the stored rows.
  void reduce(Vec& v) const {
    if (v.size() != n_) throw std::invalid_argument("vector length mismatch in echelon reduction");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rat& lead = v[pivots_[r]];
      if (is_zero(lead)) continue;
      Rat f = lead;
      for (const auto& [j, x] : rows_[r]) v[j] -= f * x;
    }
  }

  /// Adds v; returns true if it was independent of the stored rows.
  bool add(Vec v) {
    reduce(v);
    std::size_t p = 0;
    while (p < n_ && is_zero(v[p])) ++p;
    if (p == n_) return false;
    Rat inv = 1 / v[p];
    std::vector<std::pair<std::size_t, Rat>> row;
    for (std::size_t j = p; j < n_; ++j)
      if (!is_zero(v[j])) row.emplace_back(j, Rat(v[j] * inv));
    rows_.push_back(std::move(row));
    pivots_.push_back(p);
    return true;
  }

  bool contains(Vec v) const {
    reduce(v);
    return is_zero_vec(v);
  }

  Vec row(std::size_t r) const {
    Vec v(n_);
    for (const auto& [j, x] : rows_[r]) v[j] = x;
    return v;
  }

 private:
  std::size_t n_;
  std::vector<std::vector<std::pair<std::size_t, Rat>>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Reduced row echelon form: rows with pivot 1 in strictly increasing columns,
/// zero above and below each pivot.  Pivot choice is the first nonzero entry in
/// column order, so the output is canonical.
struct Rref {
  std::size_t cols = 0;
  std::vector<Vec> rows;
  std::vector<std::size_t> pivots;
};

inline Rref rref_of_rows(std::size_t cols, const std::vector<Vec>& input) {
  RowEchelon ech(cols);
  for (const auto& r : input) ech.add(r);
  // Sort by pivot, then clear entries above each pivot.
  std::vector<std::size_t> order(ech.rank());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ech.pivots()[a] < ech.pivots()[b]; });
  Rref out;
  out.cols = cols;
  for (std::size_t i : order) {
    out.rows.push_back(ech.row(i));
    out.pivots.push_back(ech.pivots()[i]);
  }
  for (std::size_t i = out.rows.size(); i-- > 0;) {
    std::size_t p = out.pivots[i];
    for (std::size_t k = 0; k < i; ++k) {
      if (is_zero(out.rows[k][p])) continue;
      Rat f = out.rows[k][p];
      for (std::size_t j = p; j < cols; ++j)
        if (!is_zero(out.rows[i][j])) out.rows[k][j] -= f * out.rows[i][j];
    }
  }
  return out;
}

inline std::vector<Vec> matrix_rows(const Matrix& m) {
  std::vector<Vec> rows(m.rows(), Vec(m.cols()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
  return rows;
}

inline Rref rref(const Matrix& m) { return rref_of_rows(m.cols(), matrix_rows(m)); }

inline std::size_t rank(const Matrix& m) {
  RowEchelon ech(m.cols());
  for (auto& r : matrix_rows(m)) ech.add(std::move(r));
  return ech.rank();
}

/// Rank of a family of vectors of common length.
inline std::size_t rank_of(std::size_t ambient, const std::vector<Vec>& vecs) {
  RowEchelon ech(ambient);
  for (const auto& v : vecs) ech.add(v);
  return ech.rank();
}

/// Finite-dimensional subspace of Q^n given by a basis.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

  /// Spans the given vectors; dependent vectors are dropped.
  static Subspace span(std::size_t ambient, const std::vector<Vec>& vecs) {
    Subspace s(ambient);
    RowEchelon ech(ambient);
    for (const auto& v : vecs)
      if (ech.add(v)) s.basis_.push_back(v);
    return s;
  }
  static Subspace whole(std::size_t n) {
    Subspace s(n);
    for (std::size_t i = 0; i < n; ++i) {
      Vec e(n);
      e[i] = 1;
      s.basis_.push_back(std::move(e));
    }
    return s;
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }

  bool contains(const Vec& v) const {
    RowEchelon ech(ambient_);
    for (const auto& b : basis_) ech.add(b);
    return ech.contains(v);
  }

  /// Adds an already independent vector (caller's responsibility).
  void push_independent(Vec v) { basis_.push_back(std::move(v)); }

 private:
  std::size_t ambient_ = 0;
  std::vector<Vec> basis_;
};

/// Basis of the null space {v : m v = 0}.  Vector k has a 1 in its free column
/// and 0 in every other free column, so coordinates of a kernel element are read
/// off its free columns.
inline Subspace kernel_from_rref(const Rref& e) {
  Subspace ker(e.cols);
  std::vector<bool> is_pivot(e.cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < e.cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(e.cols);
    v[f] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i)
      if (!is_zero(e.rows[i][f])) v[e.pivots[i]] = -e.rows[i][f];
    ker.push_independent(std::move(v));
  }
  return ker;
}

inline Subspace kernel_basis(const Matrix& m) { return kernel_from_rref(rref(m)); }

inline Subspace fixed_point_space(const Matrix& a) {
  if (!a.square()) throw std::invalid_argument("fixed_point_space: non-square matrix");
  return kernel_basis(a - Matrix::identity(a.rows()));
}

/// dim(big) - dim(small) after checking small is contained in big.
inline std::size_t quotient_dim(const Subspace& big, const Subspace& small) {
  if (big.ambient_dim() != small.ambient_dim()) throw std::invalid_argument("not a subspace");
  RowEchelon ech(big.ambient_dim());
  for (const auto& b : big.basis()) ech.add(b);
  for (const auto& s : small.basis())
    if (!ech.contains(s)) throw std::invalid_argument("not a subspace");
  return big.dim() - small.dim();
}

/// One solution x of m x = b, or nullopt when the system is inconsistent.
inline std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("solve: shape mismatch");
  std::vector<Vec> rows = matrix_rows(m);
  for (int r = 0; r < m.rows(); ++r) rows[r].push_back(b[r]);
  Rref e = rref_of_rows(m.cols() + 1, rows);
  Vec x(m.cols());
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    if (e.pivots[i] == static_cast<std::size_t>(m.cols())) return std::nullopt;
    x[e.pivots[i]] = e.rows[i][m.cols()];
  }
  return x;
}

/// Solves for coefficients c with sum_k c_k gens[k] = target, if possible.
inline std::optional<Vec> solve_in_span(const std::vector<Vec>& gens, const Vec& target) {
  Matrix m(static_cast<int>(target.size()), static_cast<int>(gens.size()));
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::size_t r = 0; r < target.size(); ++r) m(static_cast<int>(r), static_cast<int>(k)) = gens[k][r];
  return solve(m, target);
}

}  // namespace hlemb
