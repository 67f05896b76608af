#pragma once

// Hom-Lie / Hom-Leibniz algebras, their representations, embedding tensors and
// the constructions between them.  Everything is templated on the scalar so the
// same validators run over Q and over the dual numbers Q[eps]/(eps^2).

#include <sstream>
#include <string>
#include <vector>

#include "hlemb/matrix.hpp"
#include "hlemb/tensor.hpp"

namespace hlemb {

template <class S>
struct HomSpaceT {
  int dim = 0;
  Mat<S> twist;
};

/// [e_i, e_j] = sum_k bracket(i,j,k) e_k, twisted by alpha.
template <class S>
struct HomLieAlgebraT {
  Mat<S> alpha;
  Multi<S> bracket;
  int dim() const { return alpha.rows(); }
  HomSpaceT<S> space() const { return {dim(), alpha}; }
};

/// rho(e_i) f_a = sum_b rho(i,a,b) f_b.
template <class S>
struct HomLieRepT {
  HomLieAlgebraT<S> alg;
  Mat<S> beta;
  Multi<S> rho;
  int gdim() const { return alg.dim(); }
  int vdim() const { return beta.rows(); }
};

template <class S>
struct HomLeibnizAlgebraT {
  Mat<S> alpha;
  Multi<S> bracket;
  int dim() const { return alpha.rows(); }
};

/// left: h x V -> V, right: V x h -> V.
template <class S>
struct HomLeibnizRepT {
  HomLeibnizAlgebraT<S> alg;
  Mat<S> beta;
  Multi<S> left;
  Multi<S> right;
  int vdim() const { return beta.rows(); }
};

/// T : V -> g, stored as a (dim g) x (dim V) matrix.
template <class S>
struct EmbeddingTensorT {
  HomLieRepT<S> rep;
  Mat<S> T;
  const HomLieAlgebraT<S>& alg() const { return rep.alg; }
};

template <class S>
struct TripleMorphismT {
  EmbeddingTensorT<S> source;
  EmbeddingTensorT<S> target;
  Mat<S> phi;
  Mat<S> psi;
};

using HomSpace = HomSpaceT<Rat>;
using HomLieAlgebra = HomLieAlgebraT<Rat>;
using HomLieRep = HomLieRepT<Rat>;
using HomLeibnizAlgebra = HomLeibnizAlgebraT<Rat>;
using HomLeibnizRep = HomLeibnizRepT<Rat>;
using EmbeddingTensor = EmbeddingTensorT<Rat>;
using TripleMorphism = TripleMorphismT<Rat>;

// ---------------------------------------------------------------------------
// Reports

struct Violation {
  std::string identity;
  std::vector<int> tuple;
  std::vector<std::string> residual;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> errors;  // shape problems etc.

  bool ok() const { return violations.empty() && errors.empty(); }
  void merge(const ValidationReport& o, const std::string& prefix = "") {
    for (auto v : o.violations) {
      if (!prefix.empty()) v.identity = prefix + v.identity;
      violations.push_back(std::move(v));
    }
    for (const auto& e : o.errors) errors.push_back(prefix + e);
  }
  bool has(const std::string& identity) const {
    for (const auto& v : violations)
      if (v.identity == identity) return true;
    return false;
  }
  std::string summary(std::size_t limit = 5) const {
    std::ostringstream os;
    if (ok()) return "valid";
    for (const auto& e : errors) os << "error: " << e << "\n";
    os << violations.size() << " violation(s)";
    for (std::size_t i = 0; i < violations.size() && i < limit; ++i) {
      const auto& v = violations[i];
      os << "\n  " << v.identity << " at (";
      for (std::size_t j = 0; j < v.tuple.size(); ++j) os << (j ? "," : "") << v.tuple[j];
      os << ") residual [";
      for (std::size_t j = 0; j < v.residual.size(); ++j) os << (j ? ", " : "") << v.residual[j];
      os << "]";
    }
    return os.str();
  }
};

/// Records one violation per input tuple at which `residual` is nonzero.
template <class S>
void collect(ValidationReport& rep, const std::string& name, const Multi<S>& residual) {
  const std::size_t n = residual.in_size();
  const int k = residual.out();
  for (std::size_t i = 0; i < n; ++i) {
    bool nz = false;
    for (int t = 0; t < k && !nz; ++t) nz = !is_zero(residual.data()[i * k + t]);
    if (!nz) continue;
    Violation v{name, residual.decode(i), {}};
    for (int t = 0; t < k; ++t) v.residual.push_back(to_string(residual.data()[i * k + t]));
    rep.violations.push_back(std::move(v));
  }
}

template <class S>
void collect(ValidationReport& rep, const std::string& name, const Mat<S>& residual) {
  collect(rep, name, from_matrix(residual));
}

namespace detail {

inline bool shape_ok(ValidationReport& rep, bool cond, const std::string& what) {
  if (!cond) rep.errors.push_back("shape mismatch: " + what);
  return cond;
}

template <class S>
bool square_of(const Mat<S>& m, int n) {
  return m.rows() == n && m.cols() == n;
}

template <class S>
bool bilinear_shape(const Multi<S>& b, int d1, int d2, int out) {
  return b.arity() == 2 && b.dim(0) == d1 && b.dim(1) == d2 && b.out() == out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Validators

template <class S>
ValidationReport validate_hom_lie(const HomLieAlgebraT<S>& g) {
  ValidationReport rep;
  const int n = g.alpha.rows();
  if (!detail::shape_ok(rep, detail::square_of(g.alpha, n), "twist not square") ||
      !detail::shape_ok(rep, detail::bilinear_shape(g.bracket, n, n, n), "bracket tensor"))
    return rep;
  const auto& br = g.bracket;
  collect(rep, "skew-symmetry", br + permute(br, {1, 0}));
  collect(rep, "multiplicativity",
          postcompose(g.alpha, br) - precompose(precompose(br, 0, g.alpha), 1, g.alpha));
  // [a x, [y, z]] summed cyclically
  Multi<S> a = insert(precompose(br, 0, g.alpha), 1, br);
  collect(rep, "hom-jacobi", a + permute(a, {1, 2, 0}) + permute(a, {2, 0, 1}));
  return rep;
}

template <class S>
ValidationReport validate_hom_leibniz(const HomLeibnizAlgebraT<S>& h) {
  ValidationReport rep;
  const int n = h.alpha.rows();
  if (!detail::shape_ok(rep, detail::square_of(h.alpha, n), "twist not square") ||
      !detail::shape_ok(rep, detail::bilinear_shape(h.bracket, n, n, n), "bracket tensor"))
    return rep;
  const auto& br = h.bracket;
  collect(rep, "multiplicativity",
          postcompose(h.alpha, br) - precompose(precompose(br, 0, h.alpha), 1, h.alpha));
  Multi<S> a = insert(precompose(br, 0, h.alpha), 1, br);  // {ax,{y,z}}
  Multi<S> b = insert(precompose(br, 1, h.alpha), 0, br);  // {{x,y},az}
  collect(rep, "hom-leibniz", a - b - permute(a, {1, 0, 2}));
  return rep;
}

/// Checks only the representation identities; pair with validate_hom_lie
/// for the algebra itself.
template <class S>
ValidationReport validate_representation_only(const HomLieRepT<S>& r) {
  ValidationReport rep;
  const int n = r.gdim(), m = r.vdim();
  if (!detail::shape_ok(rep, detail::square_of(r.beta, m), "module twist not square") ||
      !detail::shape_ok(rep, detail::bilinear_shape(r.rho, n, m, m), "action tensor"))
    return rep;
  collect(rep, "rep-twist",
          postcompose(r.beta, r.rho) - precompose(precompose(r.rho, 0, r.alg.alpha), 1, r.beta));
  Multi<S> a = insert(precompose(r.rho, 0, r.alg.alpha), 1, r.rho);  // rho(ax)rho(y)v
  Multi<S> c = insert(precompose(r.rho, 1, r.beta), 0, r.alg.bracket);
  collect(rep, "rep-bracket", a - permute(a, {1, 0, 2}) - c);
  return rep;
}

template <class S>
ValidationReport validate_representation(const HomLieRepT<S>& r) {
  ValidationReport rep;
  rep.merge(validate_hom_lie(r.alg), "algebra: ");
  if (!rep.errors.empty()) return rep;
  rep.merge(validate_representation_only(r));
  return rep;
}

template <class S>
ValidationReport validate_leibniz_rep(const HomLeibnizRepT<S>& r) {
  ValidationReport rep;
  rep.merge(validate_hom_leibniz(r.alg), "algebra: ");
  if (!rep.errors.empty()) return rep;
  const int n = r.alg.dim(), m = r.vdim();
  if (!detail::shape_ok(rep, detail::square_of(r.beta, m), "module twist not square") ||
      !detail::shape_ok(rep, detail::bilinear_shape(r.left, n, m, m), "left action tensor") ||
      !detail::shape_ok(rep, detail::bilinear_shape(r.right, m, n, m), "right action tensor"))
    return rep;
  const auto& al = r.alg.alpha;
  const auto& be = r.beta;
  const auto& br = r.alg.bracket;
  const auto& L = r.left;
  const auto& R = r.right;
  collect(rep, "left-twist", postcompose(be, L) - precompose(precompose(L, 0, al), 1, be));
  collect(rep, "right-twist", postcompose(be, R) - precompose(precompose(R, 0, be), 1, al));
  {  // (x, y, v)
    Multi<S> a = insert(precompose(L, 0, al), 1, L);
    Multi<S> b = insert(precompose(L, 1, be), 0, br);
    collect(rep, "left-left", a - b - permute(a, {1, 0, 2}));
  }
  {  // (x, v, y)
    Multi<S> a = insert(precompose(L, 0, al), 1, R);
    Multi<S> b = insert(precompose(R, 1, al), 0, L);
    Multi<S> c = permute(insert(precompose(R, 0, be), 1, br), {1, 0, 2});
    collect(rep, "left-right", a - b - c);
  }
  {  // (v, x, y)
    Multi<S> a = insert(precompose(R, 0, be), 1, br);
    Multi<S> b = insert(precompose(R, 1, al), 0, R);
    Multi<S> c = permute(insert(precompose(L, 0, al), 1, R), {1, 0, 2});
    collect(rep, "right-right", a - b - c);
  }
  return rep;
}

/// [Tu,Tv] - T(rho(Tu)v) as a bilinear map V x V -> g.
template <class S>
Multi<S> embedding_residual(const EmbeddingTensorT<S>& t) {
  Multi<S> lhs = precompose(precompose(t.alg().bracket, 0, t.T), 1, t.T);
  Multi<S> rhs = postcompose(t.T, precompose(t.rep.rho, 0, t.T));
  return lhs - rhs;
}

/// Only the two defining identities; pair with validate_representation.
template <class S>
ValidationReport validate_embedding_only(const EmbeddingTensorT<S>& t) {
  ValidationReport rep;
  if (!detail::shape_ok(rep, t.T.rows() == t.rep.gdim() && t.T.cols() == t.rep.vdim(), "T is not dim g x dim V"))
    return rep;
  collect(rep, "tensor-twist", t.alg().alpha * t.T - t.T * t.rep.beta);
  collect(rep, "tensor-bracket", embedding_residual(t));
  return rep;
}

template <class S>
ValidationReport validate_embedding_tensor(const EmbeddingTensorT<S>& t) {
  ValidationReport rep;
  rep.merge(validate_representation(t.rep), "representation: ");
  if (!rep.errors.empty()) return rep;
  rep.merge(validate_embedding_only(t));
  return rep;
}

/// Four morphism identities; the Hom-Lie morphism condition splits into its
/// twist and bracket parts.
template <class S>
ValidationReport validate_morphism(const TripleMorphismT<S>& m) {
  ValidationReport rep;
  const auto& s = m.source;
  const auto& t = m.target;
  if (!detail::shape_ok(rep, m.phi.rows() == t.rep.gdim() && m.phi.cols() == s.rep.gdim(), "phi shape") ||
      !detail::shape_ok(rep, m.psi.rows() == t.rep.vdim() && m.psi.cols() == s.rep.vdim(), "psi shape"))
    return rep;
  collect(rep, "phi-twist", t.alg().alpha * m.phi - m.phi * s.alg().alpha);
  collect(rep, "phi-bracket",
          postcompose(m.phi, s.alg().bracket) - precompose(precompose(t.alg().bracket, 0, m.phi), 1, m.phi));
  collect(rep, "psi-twist", t.rep.beta * m.psi - m.psi * s.rep.beta);
  collect(rep, "psi-action",
          postcompose(m.psi, s.rep.rho) - precompose(precompose(t.rep.rho, 0, m.phi), 1, m.psi));
  collect(rep, "tensor-intertwining", m.phi * s.T - t.T * m.psi);
  return rep;
}

// ---------------------------------------------------------------------------
// Constructions

template <class S>
HomLieRepT<S> adjoint_rep(const HomLieAlgebraT<S>& g) {
  return {g, g.alpha, g.bracket};
}

template <class S>
HomLeibnizRepT<S> adjoint_rep(const HomLeibnizAlgebraT<S>& h) {
  return {h, h.alpha, h.bracket, h.bracket};
}

/// Direct sum of two representations of the same algebra.
template <class S>
HomLieRepT<S> direct_sum_rep(const HomLieRepT<S>& a, const HomLieRepT<S>& b) {
  const int n = a.gdim(), m1 = a.vdim(), m2 = b.vdim();
  Multi<S> rho = embed(a.rho, {n, m1 + m2}, {0, 0}, m1 + m2, 0);
  rho += embed(b.rho, {n, m1 + m2}, {0, m1}, m1 + m2, m1);
  return {a.alg, direct_sum(a.beta, b.beta), rho};
}

template <class S>
HomLieRepT<S> trivial_rep(const HomLieAlgebraT<S>& g, const Mat<S>& beta) {
  return {g, beta, Multi<S>({g.dim(), beta.rows()}, beta.rows())};
}

/// {(x,u),(y,v)} = ([x,y], rho(x)v) on g (+) V with twist alpha (+) beta.
template <class S>
HomLeibnizAlgebraT<S> hemi_semidirect(const HomLieRepT<S>& r) {
  const int n = r.gdim(), m = r.vdim(), N = n + m;
  Multi<S> br = embed(r.alg.bracket, {N, N}, {0, 0}, N, 0);
  br += embed(r.rho, {N, N}, {0, n}, N, n);
  return {direct_sum(r.alg.alpha, r.beta), br};
}

/// {u,v}_T = rho(Tu)v on V with twist beta.
template <class S>
HomLeibnizAlgebraT<S> induced_hom_leibniz(const EmbeddingTensorT<S>& t) {
  return {t.rep.beta, precompose(t.rep.rho, 0, t.T)};
}

/// Carrier g: left(v,x) = [Tv,x], right(x,v) = [x,Tv] - T(rho(x)v).
template <class S>
HomLeibnizRepT<S> induced_leibniz_rep(const EmbeddingTensorT<S>& t) {
  const auto& br = t.alg().bracket;
  Multi<S> left = precompose(br, 0, t.T);
  Multi<S> right = precompose(br, 1, t.T) - postcompose(t.T, t.rep.rho);  // dims (g, V)
  return {induced_hom_leibniz(t), t.alg().alpha, left, right};
}

/// Graph {(Tv, v)} tested for closure inside the hemi-semidirect product by
/// subspace membership, independently of the defining identities.
inline ValidationReport graph_closure(const EmbeddingTensor& t) {
  ValidationReport rep;
  const int n = t.rep.gdim(), m = t.rep.vdim();
  HomLeibnizAlgebra h = hemi_semidirect(t.rep);
  std::vector<Vec> gens;
  for (int a = 0; a < m; ++a) {
    Vec v(n + m);
    for (int r = 0; r < n; ++r) v[r] = t.T(r, a);
    v[n + a] = 1;
    gens.push_back(std::move(v));
  }
  Subspace gr = Subspace::span(n + m, gens);
  for (int a = 0; a < m; ++a) {
    Vec img = h.alpha.apply(gens[a]);
    if (!gr.contains(img)) rep.violations.push_back({"graph-twist", {a}, {}});
  }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      Vec w(n + m);
      for (int i = 0; i < n + m; ++i)
        for (int j = 0; j < n + m; ++j) {
          if (is_zero(gens[a][i]) || is_zero(gens[b][j])) continue;
          Rat c = gens[a][i] * gens[b][j];
          for (int k = 0; k < n + m; ++k) {
            const Rat& x = h.bracket.at({i, j}, k);
            if (!is_zero(x)) w[k] += c * x;
          }
        }
      if (!gr.contains(w)) rep.violations.push_back({"graph-bracket", {a, b}, {}});
    }
  return rep;
}

struct QuotientTriple {
  HomLieAlgebra algebra;
  HomLieRep rep;
  EmbeddingTensor tensor;
  Subspace ideal;
};

/// Quotient by the two-sided alpha-stable ideal I generated by the squares
/// {x,x}; the quotient is Hom-Lie, h is a module through rho(<x>)y = {x,y},
/// and the projection is an embedding tensor whose induced bracket is h's.
/// Throws when {I, h} != 0, i.e. the action is not well defined.
inline QuotientTriple quotient_triple(const HomLeibnizAlgebra& h) {
  const int n = h.dim();
  auto bvec = [&](const Vec& x, const Vec& y) {
    Vec w(n);
    for (int i = 0; i < n; ++i) {
      if (is_zero(x[i])) continue;
      for (int j = 0; j < n; ++j) {
        if (is_zero(y[j])) continue;
        Rat c = x[i] * y[j];
        for (int k = 0; k < n; ++k)
          if (!is_zero(h.bracket.at({i, j}, k))) w[k] += c * h.bracket.at({i, j}, k);
      }
    }
    return w;
  };
  auto unit = [&](int i) {
    Vec e(n);
    e[i] = 1;
    return e;
  };
  std::vector<Vec> gens;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Vec w = bvec(unit(i), unit(j));
      if (i != j) {
        Vec w2 = bvec(unit(j), unit(i));
        for (int k = 0; k < n; ++k) w[k] += w2[k];
      }
      gens.push_back(std::move(w));
    }
  // close under alpha and two-sided brackets
  RowEchelon ech(n);
  std::vector<Vec> basis;
  std::vector<Vec> queue = gens;
  while (!queue.empty()) {
    Vec v = queue.back();
    queue.pop_back();
    if (!ech.add(v)) continue;
    basis.push_back(v);
    queue.push_back(h.alpha.apply(v));
    for (int i = 0; i < n; ++i) {
      queue.push_back(bvec(unit(i), v));
      queue.push_back(bvec(v, unit(i)));
    }
  }
  for (const auto& v : basis)
    for (int i = 0; i < n; ++i)
      if (!is_zero_vec(bvec(v, unit(i))))
        throw std::runtime_error("ill-defined induced structure: ideal does not act trivially");

  Rref e = rref_of_rows(n, basis);
  std::vector<bool> piv(n, false);
  for (auto p : e.pivots) piv[p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < n; ++j)
    if (!piv[j]) free_cols.push_back(j);
  const int q = static_cast<int>(free_cols.size());
  // projection: reduce by I then read free coordinates
  Matrix proj(q, n);
  for (int c = 0; c < n; ++c) {
    Vec v = unit(c);
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
      Rat f = v[e.pivots[r]];
      if (is_zero(f)) continue;
      for (int j = 0; j < n; ++j) v[j] -= f * e.rows[r][j];
    }
    for (int a = 0; a < q; ++a) proj(a, c) = v[free_cols[a]];
  }
  Matrix section(n, q);
  for (int a = 0; a < q; ++a) section(free_cols[a], a) = 1;

  HomLieAlgebra bar;
  bar.alpha = proj * h.alpha * section;
  bar.bracket = postcompose(proj, precompose(precompose(h.bracket, 0, section), 1, section));
  // well-definedness of the induced twist and bracket
  if (!(proj * h.alpha == bar.alpha * proj))
    throw std::runtime_error("ill-defined induced structure: twist does not descend");
  if (postcompose(proj, h.bracket) != precompose(precompose(bar.bracket, 0, proj), 1, proj))
    throw std::runtime_error("ill-defined induced structure: bracket does not descend");

  HomLieRep rep{bar, h.alpha, precompose(h.bracket, 0, section)};
  EmbeddingTensor t{rep, proj};
  return {bar, rep, t, Subspace::span(n, basis)};
}

/// A structure lifted into dual numbers with no eps part.
template <class S>
HomLieAlgebraT<S> lift(const HomLieAlgebra& g) {
  return {convert<S>(g.alpha), convert<S>(g.bracket)};
}
template <class S>
HomLieRepT<S> lift(const HomLieRep& r) {
  return {lift<S>(r.alg), convert<S>(r.beta), convert<S>(r.rho)};
}
template <class S>
EmbeddingTensorT<S> lift(const EmbeddingTensor& t) {
  return {lift<S>(t.rep), convert<S>(t.T)};
}

}  // namespace hlemb
