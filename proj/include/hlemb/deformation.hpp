#pragma once

// Infinitesimal deformations over Q[eps]/(eps^2): cocycle checks, equivalence
// witnesses and classification by H^1_T and H^2_HLLT.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hlemb/cohomology.hpp"

namespace hlemb {

/// x + eps y, entrywise.
inline Multi<Dual> dual_of(const Multi<Rat>& x, const Multi<Rat>& y) {
  if (!x.same_shape(y)) throw std::invalid_argument("dual_of: shape mismatch");
  Multi<Dual> out(x.dims(), x.out());
  for (std::size_t i = 0; i < x.size(); ++i) out.data()[i] = Dual(x.data()[i], y.data()[i]);
  return out;
}

inline Mat<Dual> dual_of(const Matrix& x, const Matrix& y) {
  Mat<Dual> out(x.rows(), x.cols());
  for (int r = 0; r < x.rows(); ++r)
    for (int c = 0; c < x.cols(); ++c) out(r, c) = Dual(x(r, c), y(r, c));
  return out;
}

// ---------------------------------------------------------------------------
// Embedding tensors

struct TensorDeformationCheck {
  ValidationReport report;  // eps-linear condition d_T(T1) = 0
  Multi<Rat> cocycle_residual;  // d_T(T1)
  Multi<Rat> mc_residual;       // d_T(T1) + 1/2 [[T1, T1]]: zero iff T + T1 is an embedding tensor
  bool dual_route_agrees = true;  // eps part of the residual of T + eps T1 equals d_T(T1)
};

inline TensorDeformationCheck check_inf_deformation_tensor(const EmbeddingTensor& t, const Matrix& t1) {
  TensorDeformationCheck out;
  if (t1.rows() != t.T.rows() || t1.cols() != t.T.cols()) {
    out.report.errors.push_back("shape mismatch: deformation has shape " + std::to_string(t1.rows()) + "x" +
                                std::to_string(t1.cols()));
    return out;
  }
  if (!(t.alg().alpha * t1 == t1 * t.rep.beta)) {
    out.report.errors.push_back("twist-incompatible deformation: alpha o T1 != T1 o beta");
    return out;
  }
  Multi<Rat> f = from_matrix(t1);
  out.cocycle_residual = d_T(t, f);
  out.mc_residual = out.cocycle_residual + Rat(1, 2) * derived_bracket(t.rep, f, f);
  collect(out.report, "cocycle", out.cocycle_residual);
  EmbeddingTensorT<Dual> d = lift<Dual>(t);
  d.T = dual_of(t.T, t1);
  Multi<Dual> res = embedding_residual(d);
  for (std::size_t i = 0; i < res.size(); ++i)
    if (res.data()[i].eps != out.cocycle_residual.data()[i] || !is_zero(res.data()[i].re)) out.dual_route_agrees = false;
  return out;
}

struct Classification {
  int degree = 0;
  std::size_t dim = 0;
  std::size_t cochain_dim = 0;
  std::vector<Composite> cocycles;
  std::vector<std::pair<Composite, Composite>> coboundaries;  // (coboundary, witness)
  std::vector<Composite> representatives;
};

inline Classification classify(Cohomology& c, int n) {
  Classification out;
  out.degree = n;
  out.cochain_dim = c.space(n).dim();
  out.dim = c.dim(n);
  out.cocycles = c.cocycles(n);
  out.coboundaries = c.coboundaries(n);
  out.representatives = c.representatives(n);
  return out;
}

inline Classification classify_h1_T(const EmbeddingTensor& t) {
  Cohomology c(emb_complex(t));
  return classify(c, 1);
}

struct EquivalenceCheck {
  ValidationReport report;       // decides: a alpha-fixed and T1' - T1 == d_T(a)
  ValidationReport morphism;     // all eps-expanded morphism identities over Q[eps]/(eps^2)
  Multi<Rat> difference;         // T1' - T1 - d_T(a)
};

/// Pair (id + eps [a,-], id + eps rho(a)) from T + eps T1 to T + eps T1'.
inline EquivalenceCheck check_equivalence_tensor(const EmbeddingTensor& t, const Matrix& t1, const Matrix& t1p,
                                                 const Vec& a) {
  EquivalenceCheck out;
  const auto& g = t.alg();
  if (static_cast<int>(a.size()) != g.dim()) {
    out.report.errors.push_back("shape mismatch: element has the wrong dimension");
    return out;
  }
  if (g.alpha.apply(a) != a) {
    out.report.errors.push_back("element is not alpha-fixed");
    return out;
  }
  Multi<Rat> av(std::vector<int>{}, g.dim());
  for (int i = 0; i < g.dim(); ++i) av.data()[i] = a[i];
  out.difference = from_matrix(Matrix(t1p - t1)) - d_T(t, av);
  collect(out.report, "tensor-difference", out.difference);

  Matrix ad = to_matrix(insert(g.bracket, 0, av));
  Matrix ra = to_matrix(insert(t.rep.rho, 0, av));
  EmbeddingTensorT<Dual> src = lift<Dual>(t), dst = lift<Dual>(t);
  src.T = dual_of(t.T, t1);
  dst.T = dual_of(t.T, t1p);
  TripleMorphismT<Dual> m{src, dst, dual_of(Matrix::identity(g.dim()), ad),
                          dual_of(Matrix::identity(t.rep.vdim()), ra)};
  out.morphism = validate_morphism(m);
  return out;
}

/// Witness a with T1' - T1 = d_T(a), if one exists.
inline std::optional<Vec> equivalence_witness_tensor(const EmbeddingTensor& t, const Matrix& t1, const Matrix& t1p) {
  Cohomology c(emb_complex(t));
  auto w = c.primitive(1, {from_matrix(Matrix(t1p - t1))});
  if (!w) return std::nullopt;
  return (*w)[0].data();
}

// ---------------------------------------------------------------------------
// Triples

struct TripleDeformation {
  Multi<Rat> mu1;   // skew, g x g -> g
  Multi<Rat> rho1;  // g x V -> V
  Matrix t1;        // V -> g

  Composite cochain() const { return {mu1, rho1, from_matrix(t1)}; }
  static TripleDeformation from_cochain(const Composite& c) { return {c[0], c[1], to_matrix(c[2])}; }
};

struct TripleDeformationCheck {
  ValidationReport report;      // the three eps-linear identities
  bool cocycle = false;         // delta_HLLT at degree 2 vanishes
  bool dual_valid = false;      // the deformed triple validates over Q[eps]/(eps^2)
  bool routes_agree() const { return report.ok() == cocycle && cocycle == dual_valid; }
};

inline TripleDeformationCheck check_inf_deformation_triple(const EmbeddingTensor& t, const TripleDeformation& d) {
  TripleDeformationCheck out;
  const auto& g = t.alg();
  const int n = g.dim(), m = t.rep.vdim();
  auto& rep = out.report;
  if (!detail::shape_ok(rep, detail::bilinear_shape(d.mu1, n, n, n), "bracket deformation") ||
      !detail::shape_ok(rep, detail::bilinear_shape(d.rho1, n, m, m), "action deformation") ||
      !detail::shape_ok(rep, d.t1.rows() == n && d.t1.cols() == m, "tensor deformation"))
    return out;
  const auto& al = g.alpha;
  const auto& be = t.rep.beta;
  const auto& br = g.bracket;
  const auto& rho = t.rep.rho;
  // membership
  collect(rep, "bracket-deformation skew", d.mu1 + permute(d.mu1, {1, 0}));
  collect(rep, "bracket-deformation twist", postcompose(al, d.mu1) - precompose(precompose(d.mu1, 0, al), 1, al));
  collect(rep, "action-deformation twist",
          postcompose(be, d.rho1) - precompose(precompose(d.rho1, 0, al), 1, be));
  collect(rep, "tensor-deformation twist", al * d.t1 - d.t1 * be);
  {
    Multi<Rat> a = insert(precompose(br, 0, al), 1, d.mu1) + insert(precompose(d.mu1, 0, al), 1, br);
    collect(rep, "deformed hom-jacobi", a + permute(a, {1, 2, 0}) + permute(a, {2, 0, 1}));
  }
  {
    Multi<Rat> x1 = insert(precompose(rho, 0, al), 1, d.rho1);
    Multi<Rat> x2 = insert(precompose(d.rho1, 0, al), 1, rho);
    Multi<Rat> lhs = x1 + x2 - permute(x1, {1, 0, 2}) - permute(x2, {1, 0, 2});
    Multi<Rat> rhs = precompose(insert(d.rho1, 0, br), 2, be) + precompose(insert(rho, 0, d.mu1), 2, be);
    collect(rep, "deformed rep-bracket", lhs - rhs);
  }
  {
    const Matrix& T = t.T;
    Multi<Rat> lhs = precompose(precompose(br, 0, T), 1, d.t1) + precompose(precompose(br, 0, d.t1), 1, T) +
                     precompose(precompose(d.mu1, 0, T), 1, T);
    Multi<Rat> rhs = postcompose(T, precompose(rho, 0, d.t1)) + postcompose(T, precompose(d.rho1, 0, T)) +
                     postcompose(d.t1, precompose(rho, 0, T));
    collect(rep, "deformed tensor identity", lhs - rhs);
  }
  out.cocycle = is_zero(delta_hllt(t, d.cochain()));
  EmbeddingTensorT<Dual> dt{{{convert<Dual>(al), dual_of(br, d.mu1)}, convert<Dual>(be), dual_of(rho, d.rho1)},
                            dual_of(t.T, d.t1)};
  out.dual_valid = validate_embedding_tensor(dt).ok() && al * d.t1 == d.t1 * be && (d.mu1 + permute(d.mu1, {1, 0})).is_zero();
  return out;
}

inline Classification classify_h2_hllt(const EmbeddingTensor& t) {
  Cohomology c(hllt_complex(t));
  return classify(c, 2);
}

inline EmbeddingTensorT<Dual> deformed_triple(const EmbeddingTensor& t, const TripleDeformation& d) {
  return {{{convert<Dual>(t.alg().alpha), dual_of(t.alg().bracket, d.mu1)}, convert<Dual>(t.rep.beta),
           dual_of(t.rep.rho, d.rho1)},
          dual_of(t.T, d.t1)};
}

struct TripleEquivalenceCheck {
  ValidationReport report;    // the three difference identities plus twist-commuting N, S
  ValidationReport morphism;  // (id + eps N, id + eps S) as a morphism over Q[eps]/(eps^2)
};

/// Pair (id + eps N, id + eps S) from deformation d1 to d2.
inline TripleEquivalenceCheck check_equivalence_triple(const EmbeddingTensor& t, const TripleDeformation& d1,
                                                       const TripleDeformation& d2, const Matrix& N,
                                                       const Matrix& S) {
  TripleEquivalenceCheck out;
  const auto& g = t.alg();
  if (!detail::shape_ok(out.report, N.rows() == g.dim() && N.cols() == g.dim(), "N shape") ||
      !detail::shape_ok(out.report, S.rows() == t.rep.vdim() && S.cols() == t.rep.vdim(), "S shape"))
    return out;
  collect(out.report, "N-twist", g.alpha * N - N * g.alpha);
  collect(out.report, "S-twist", t.rep.beta * S - S * t.rep.beta);
  Composite diff = d1.cochain() - d2.cochain();
  Composite dn = delta_hllt(t, {from_matrix(N), from_matrix(S)});
  collect(out.report, "bracket difference", diff[0] - dn[0]);
  collect(out.report, "action difference", diff[1] - dn[1]);
  collect(out.report, "tensor difference", diff[2] - dn[2]);
  TripleMorphismT<Dual> m{deformed_triple(t, d1), deformed_triple(t, d2),
                          dual_of(Matrix::identity(g.dim()), N), dual_of(Matrix::identity(t.rep.vdim()), S)};
  out.morphism = validate_morphism(m);
  return out;
}

/// (N, S) with d1 - d2 = delta_HLLT(N, S), if one exists.
inline std::optional<std::pair<Matrix, Matrix>> equivalence_witness_triple(const EmbeddingTensor& t,
                                                                           const TripleDeformation& d1,
                                                                           const TripleDeformation& d2) {
  Cohomology c(hllt_complex(t));
  auto w = c.primitive(2, d1.cochain() - d2.cochain());
  if (!w) return std::nullopt;
  return std::make_pair(to_matrix((*w)[0]), to_matrix((*w)[1]));
}

}  // namespace hlemb
