#pragma once

// Command dispatch for the hlemb executable.  Kept in a header so the test
// suite can drive commands in-process.  Exit codes: 0 pass, 1 mathematical
// failure (witnesses in the report), 2 input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hlemb/hlemb.hpp"

namespace hlemb::cli {

struct Options {
  std::string file;
  std::vector<std::string> params;
  std::string out;
  bool cross_check = false;
  bool timing = false;
  int arity_cap = 4;
  int iter_cap = 64;
  std::string kind = "emb";
  int degree = -1;
  int max_degree = 3;
  bool perturb = false;
};

struct Report {
  std::string command;
  bool pass = true;
  json data = json::object();
  std::string text;

  void line(const std::string& s) { text += s + "\n"; }
  void fail() { pass = false; }
};

struct Outcome {
  int code = 0;
  Report report;
};

// ---------------------------------------------------------------------------
// Formatting

inline json witness_json(const ValidationReport& v) {
  json w = json::array();
  for (const auto& x : v.violations) w.push_back({{"identity", x.identity}, {"tuple", x.tuple}, {"residual", x.residual}});
  return json{{"ok", v.ok()}, {"violations", w}, {"errors", v.errors}};
}

inline std::string tuple_text(const std::vector<int>& t) {
  std::string a = "(", b = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    a += (i ? "," : "") + std::to_string(t[i]);
    b += (i ? ",e" : "e") + std::to_string(t[i] + 1);
  }
  return a + ") = " + b + ")";
}

inline void describe(Report& r, const std::string& label, const ValidationReport& v, std::size_t limit = 8) {
  if (v.ok()) {
    r.line(label + ": valid");
    return;
  }
  for (const auto& e : v.errors) r.line(label + ": error: " + e);
  r.line(label + ": " + std::to_string(v.violations.size()) + " violation(s)");
  for (std::size_t i = 0; i < v.violations.size() && i < limit; ++i) {
    const auto& x = v.violations[i];
    std::string res;
    for (std::size_t j = 0; j < x.residual.size(); ++j) res += (j ? ", " : "") + x.residual[j];
    r.line("  " + x.identity + " at " + tuple_text(x.tuple) + " residual [" + res + "]");
  }
}

inline void record(Report& r, const std::string& key, const std::string& label, const ValidationReport& v) {
  r.data[key] = witness_json(v);
  describe(r, label, v);
  if (!v.ok()) r.fail();
}

inline void truncation(Report& r, const Options& o, bool truncated) {
  r.data["truncation"] = {{"arity_cap", o.arity_cap}, {"iter_cap", o.iter_cap}, {"truncated", truncated}};
}

inline std::string yes(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------
// Commands

inline StructureFile load(const Options& o) { return parse_structure(o.file, parse_params(o.params)); }

inline void cmd_validate(const Options& o, Report& r) {
  const StructureFile f = load(o);
  r.data["kind"] = f.kind;
  r.line("kind: " + f.kind);
  const std::string& k = f.kind;
  if (k == "hom_lie") {
    record(r, "validation", "hom-lie", validate_hom_lie(*f.lie));
  } else if (k == "hom_leibniz") {
    ValidationReport v = validate_hom_leibniz(*f.leibniz);
    record(r, "validation", "hom-leibniz", v);
    if (o.cross_check && (f.leibniz->bracket + permute(f.leibniz->bracket, {1, 0})).is_zero()) {
      const bool lie = validate_hom_lie(HomLieAlgebra{f.leibniz->alpha, f.leibniz->bracket}).ok();
      r.data["cross_check"] = {{"skew_bracket_is_hom_lie", lie}};
      r.line("cross-check: skew bracket passes hom-lie validation: " + yes(lie));
      if (lie != v.ok()) r.fail();
    }
  } else if (k == "representation") {
    record(r, "validation", "representation", validate_representation(*f.rep));
  } else if (k == "embedding_tensor" || k == "triple") {
    const EmbeddingTensor t = f.triple();
    ValidationReport v = validate_embedding_tensor(t);
    record(r, "validation", "embedding tensor", v);
    if (f.module_bracket) {
      ValidationReport cm;
      cm.merge(validate_hom_lie(HomLieAlgebra{t.rep.beta, *f.module_bracket}), "module algebra: ");
      if (cm.errors.empty()) collect(cm, "crossed-module action", precompose(t.rep.rho, 0, t.T) - *f.module_bracket);
      record(r, "crossed_module", "crossed module", cm);
    }
    if (o.cross_check && v.errors.empty()) {
      const bool graph = graph_closure(t).ok();
      const bool twist = t.alg().alpha * t.T == t.T * t.rep.beta;
      const Multi<Rat> p = from_matrix(t.T);
      const bool mc = twist && derived_bracket(t.rep, p, p).is_zero();
      r.data["cross_check"] = {{"graph_closed", graph}, {"maurer_cartan", mc}};
      r.line("cross-check: graph closed " + yes(graph) + ", [[T,T]] = 0 " + yes(mc));
      if (graph != v.ok() || mc != v.ok()) r.fail();
    }
  } else if (k == "triple_rep") {
    record(r, "validation", "triple representation", validate_triple_rep(*f.coefficients));
  } else if (k == "graded_hl_infty") {
    record(r, "validation", "hl-infinity", validate_hl_infty(*f.hl, o.arity_cap));
    truncation(r, o, false);
  } else if (k == "graded_hl_infty_rep") {
    record(r, "validation", "hl-infinity representation", validate_hl_infty_rep(*f.hlrep, o.arity_cap));
    truncation(r, o, false);
  } else if (k == "graded_hleib_infty") {
    record(r, "validation", "hleib-infinity", validate_hleib_infty(*f.hleib, o.arity_cap));
    truncation(r, o, false);
  } else if (k == "graded_homotopy_tensor") {
    record(r, "representation", "hl-infinity representation", validate_hl_infty_rep(*f.hlrep, o.arity_cap));
    HomotopyMcReport mc = homotopy_mc_check(*f.hlrep, *f.pi, o.arity_cap, o.iter_cap);
    record(r, "validation", "homotopy embedding tensor", mc.report);
    truncation(r, o, mc.truncated);
  }
}

inline void cmd_bracket(const Options& o, Report& r) {
  const EmbeddingTensor t = load(o).triple();
  ValidationReport rv = validate_representation(t.rep);
  record(r, "representation", "representation", rv);
  if (!rv.ok()) return;
  const Multi<Rat> p = from_matrix(t.T);
  const Multi<Rat> b = derived_bracket(t.rep, p, p);
  const Multi<Rat> expect = Rat(2) * embedding_residual(t);
  r.data["bracket"] = to_json(b);
  r.data["bracket_is_zero"] = b.is_zero();
  r.line("[[T,T]] " + std::string(b.is_zero() ? "= 0" : "has " + std::to_string(to_json(b)["entries"].size()) + " nonzero entries"));
  ValidationReport id;
  collect(id, "[[T,T]] - 2([Tu,Tv] - T(rho(Tu)v))", b - expect);
  record(r, "identity", "expansion identity", id);
  if (o.cross_check) {
    const bool same = restrict_vg(derived_bracket_full(t.rep, p, p), t.rep.gdim(), t.rep.vdim()) == b &&
                      derived_bracket_definition(t.rep, p, p) == b;
    r.data["cross_check"] = {{"definition_route_agrees", same}};
    r.line("cross-check: definition route agrees " + yes(same));
    if (!same) r.fail();
  }
}

inline void cmd_mc_check(const Options& o, Report& r) {
  const EmbeddingTensor t = load(o).triple();
  ValidationReport rv = validate_representation(t.rep);
  record(r, "representation", "representation", rv);
  if (!rv.ok()) return;
  ValidationReport v = validate_embedding_only(t);
  const bool twist = t.alg().alpha * t.T == t.T * t.rep.beta;
  const Multi<Rat> p = from_matrix(t.T);
  const bool mc = twist && derived_bracket(t.rep, p, p).is_zero();
  r.data["embedding_tensor"] = witness_json(v);
  r.data["maurer_cartan"] = mc;
  r.data["agree"] = mc == v.ok();
  describe(r, "embedding tensor", v);
  r.line("maurer-cartan ([[T,T]] = 0, T twist-compatible): " + yes(mc));
  r.line("characterizations agree: " + yes(mc == v.ok()));
  if (!mc || !v.ok()) r.fail();
}

inline std::vector<int> degrees_of(const Options& o, int lo) {
  std::vector<int> ns;
  if (o.degree >= 0) {
    ns.push_back(o.degree);
  } else {
    for (int n = lo; n <= o.max_degree; ++n) ns.push_back(n);
  }
  return ns;
}

inline void cmd_cohomology(const Options& o, Report& r) {
  const StructureFile f = load(o);
  const EmbeddingTensor t = f.triple();
  ValidationReport v = validate_embedding_tensor(t);
  record(r, "validation", "embedding tensor", v);
  if (!v.ok()) return;
  Complex c;
  if (o.kind == "hllt_coeff") {
    if (!f.coefficients) throw InputError("--kind hllt_coeff needs a triple_rep file");
    ValidationReport cv = validate_triple_rep(*f.coefficients);
    record(r, "coefficients", "triple representation", cv);
    if (!cv.ok()) return;
    c = hllt_coeff_complex(*f.coefficients);
  } else if (o.kind == "emb" || o.kind == "hleib" || o.kind == "hlr" || o.kind == "hllt") {
    c = make_complex(o.kind, t);
  } else {
    throw InputError("unknown --kind '" + o.kind + "' (emb, hleib, hlr, hllt, hllt_coeff)");
  }
  const int lo = (o.kind == "emb" || o.kind == "hleib") ? 0 : 1;
  Cohomology h(c);
  json table = json::array();
  r.data["complex"] = o.kind;
  r.line("complex: " + o.kind);
  r.line("  n  cochain_dim  rank_d  dim_H  d^2=0");
  for (int n : degrees_of(o, lo)) {
    if (n < lo) throw InputError("degree " + std::to_string(n) + " below the start of the complex");
    const bool closed = h.closed(n);
    const bool dd = h.d_squared_zero(n);
    json row{{"degree", n},     {"cochain_dim", h.space(n).dim()}, {"rank_d", h.rank_d(n)},
             {"dim_H", h.dim(n)}, {"d_squared_zero", dd},           {"closed", closed}};
    table.push_back(row);
    std::ostringstream os;
    os << "  " << n << "  " << h.space(n).dim() << "  " << h.rank_d(n) << "  " << h.dim(n) << "  " << yes(dd);
    r.line(os.str());
    if (!closed || !dd) r.fail();
  }
  r.data["table"] = table;
  if (!o.cross_check) return;
  // a second, independent route for each differential
  std::size_t checked = 0, agreed = 0;
  for (int n : degrees_of(o, lo)) {
    for (const auto& b : h.space(n).basis()) {
      bool same = true;
      const Composite d = c.d(n, b);
      if (o.kind == "emb") {
        Multi<Rat> s = delta_hleib(induced_leibniz_rep(t), b[0]);
        if (sign_pow(n - 1) < 0) s = -s;
        same = s == d[0];
      } else if (o.kind == "hleib") {
        Multi<Rat> s = d_T(t, b[0]);
        if (sign_pow(n - 1) < 0) s = -s;
        same = s == d[0];
      } else if (o.kind == "hlr") {
        same = flatten(delta_hlr_balavoine(t.rep, b)) == flatten(d);
      } else if (o.kind == "hllt") {
        same = flatten(delta_hllt_via_semidirect(adjoint_triple_rep(t), b)) == flatten(d) &&
               flatten(delta_hllt_linfty(t, b, o.iter_cap)) == flatten(d);
      } else {
        same = flatten(delta_hllt_via_semidirect(*f.coefficients, b)) == flatten(d);
      }
      ++checked;
      if (same) ++agreed;
    }
  }
  r.data["cross_check"] = {{"basis_elements", checked}, {"agreeing", agreed}};
  r.line("cross-check: " + std::to_string(agreed) + "/" + std::to_string(checked) + " basis differentials agree");
  if (agreed != checked) r.fail();
}

inline TripleDeformation triple_deformation(const StructureFile& f) {
  const EmbeddingTensor t = f.triple();
  const int n = t.rep.gdim(), m = t.rep.vdim();
  const auto& d = *f.deformation;
  return {d.bracket ? *d.bracket : Multi<Rat>({n, n}, n), d.action ? *d.action : Multi<Rat>({n, m}, m), d.tensor};
}

inline void cmd_deform_check(const Options& o, Report& r) {
  const StructureFile f = load(o);
  if (!f.deformation) throw InputError("deform check needs a deformation section");
  const EmbeddingTensor t = f.triple();
  ValidationReport v = validate_embedding_tensor(t);
  record(r, "validation", "embedding tensor", v);
  if (!v.ok()) return;
  if (!f.deformation->bracket && !f.deformation->action) {
    r.data["target"] = "tensor";
    TensorDeformationCheck c = check_inf_deformation_tensor(t, f.deformation->tensor);
    if (!c.report.errors.empty()) throw InputError(c.report.errors.front());
    record(r, "cocycle", "d_T(T1) = 0", c.report);
    const bool exact = c.mc_residual.is_zero();
    r.data["finite_deformation"] = exact;
    r.line("T + T1 is itself an embedding tensor: " + yes(exact));
    if (o.cross_check) {
      r.data["cross_check"] = {{"dual_route_agrees", c.dual_route_agrees}};
      r.line("cross-check: eps-part of the deformed residual equals d_T(T1): " + yes(c.dual_route_agrees));
      if (!c.dual_route_agrees) r.fail();
    }
    return;
  }
  r.data["target"] = "triple";
  TripleDeformationCheck c = check_inf_deformation_triple(t, triple_deformation(f));
  if (!c.report.errors.empty()) throw InputError(c.report.errors.front());
  record(r, "deformation", "infinitesimal deformation", c.report);
  r.data["hllt_cocycle"] = c.cocycle;
  r.line("2-cocycle in the triple complex: " + yes(c.cocycle));
  if (o.cross_check) {
    r.data["cross_check"] = {{"dual_valid", c.dual_valid}, {"routes_agree", c.routes_agree()}};
    r.line("cross-check: deformed triple valid over Q[eps]/(eps^2) " + yes(c.dual_valid) + ", routes agree " +
           yes(c.routes_agree()));
    if (!c.routes_agree()) r.fail();
  }
}

inline json classification_json(const Classification& c) {
  json reps = json::array();
  for (const auto& z : c.representatives) {
    json parts = json::array();
    for (const auto& p : z) parts.push_back(to_json(p));
    reps.push_back(parts);
  }
  return {{"degree", c.degree},
          {"cochain_dim", c.cochain_dim},
          {"dim", c.dim},
          {"cocycles", c.cocycles.size()},
          {"coboundaries", c.coboundaries.size()},
          {"representatives", reps}};
}

inline void cmd_deform_classify(const Options& o, Report& r) {
  const EmbeddingTensor t = load(o).triple();
  ValidationReport v = validate_embedding_tensor(t);
  record(r, "validation", "embedding tensor", v);
  if (!v.ok()) return;
  const Classification h1 = classify_h1_T(t);
  const Classification h2 = classify_h2_hllt(t);
  r.data["H1_T"] = classification_json(h1);
  r.data["H2_HLLT"] = classification_json(h2);
  r.line("H^1_T: dim " + std::to_string(h1.dim) + " (cochains " + std::to_string(h1.cochain_dim) + ", cocycles " +
         std::to_string(h1.cocycles.size()) + ", coboundaries " + std::to_string(h1.coboundaries.size()) + ")");
  r.line("H^2_HLLT: dim " + std::to_string(h2.dim) + " (cochains " + std::to_string(h2.cochain_dim) + ", cocycles " +
         std::to_string(h2.cocycles.size()) + ", coboundaries " + std::to_string(h2.coboundaries.size()) + ")");
  if (!o.cross_check) return;
  // every cocycle deforms, every coboundary is trivial with its witness
  std::size_t bad = 0;
  const int n = t.rep.gdim(), m = t.rep.vdim();
  for (const auto& z : h1.cocycles)
    if (!check_inf_deformation_tensor(t, to_matrix(z[0])).report.ok()) ++bad;
  for (const auto& [b, w] : h1.coboundaries) {
    const Vec a = w[0].data();
    EquivalenceCheck e = check_equivalence_tensor(t, Matrix(n, m), to_matrix(b[0]), a);
    if (!e.report.ok()) ++bad;
  }
  for (const auto& z : h2.cocycles)
    if (!check_inf_deformation_triple(t, TripleDeformation::from_cochain(z)).report.ok()) ++bad;
  for (const auto& [b, w] : h2.coboundaries) {
    TripleDeformation zero{Multi<Rat>({n, n}, n), Multi<Rat>({n, m}, m), Matrix(n, m)};
    TripleEquivalenceCheck e =
        check_equivalence_triple(t, TripleDeformation::from_cochain(b), zero, to_matrix(w[0]), to_matrix(w[1]));
    if (!e.report.ok() || !e.morphism.ok()) ++bad;
  }
  r.data["cross_check"] = {{"failures", bad}};
  r.line("cross-check: cocycles deform and coboundaries are trivial: " + yes(bad == 0));
  if (bad) r.fail();
}

inline void cmd_quotient(const Options& o, Report& r) {
  const StructureFile f = load(o);
  if (!f.leibniz) throw InputError("quotient needs a hom_leibniz file");
  ValidationReport v = validate_hom_leibniz(*f.leibniz);
  record(r, "validation", "hom-leibniz", v);
  if (!v.ok()) return;
  QuotientTriple q;
  try {
    q = quotient_triple(*f.leibniz);
  } catch (const std::invalid_argument& e) {
    r.data["error"] = e.what();
    r.line(std::string("quotient: ") + e.what());
    r.fail();
    return;
  }
  r.data["ideal_dim"] = q.ideal.dim();
  r.data["quotient_dim"] = q.algebra.dim();
  r.line("ideal dim " + std::to_string(q.ideal.dim()) + ", quotient dim " + std::to_string(q.algebra.dim()));
  record(r, "tensor", "projection as embedding tensor", validate_embedding_tensor(q.tensor));
  const bool back = induced_hom_leibniz(q.tensor).bracket == f.leibniz->bracket;
  r.data["induced_bracket_recovers_input"] = back;
  r.line("induced bracket recovers the input: " + yes(back));
  if (!back) r.fail();
  StructureFile out;
  out.kind = "embedding_tensor";
  out.lie = q.algebra;
  out.rep = q.rep;
  out.tensor = q.tensor.T;
  r.data["structure"] = to_json(out);
}

inline void cmd_linfty_check(const Options& o, Report& r) {
  const EmbeddingTensor t = load(o).triple();
  HlltMcReport mc = hllt_mc_check(t.alg().bracket, t.rep.rho, t.T, t.alg().alpha, t.rep.beta, o.iter_cap);
  if (!mc.report.errors.empty()) throw InputError(mc.report.errors.front());
  record(r, "maurer_cartan", "triple as maurer-cartan element", mc.report);
  r.data["nonzero_terms"] = mc.nonzero_terms;
  r.data["pair_residual_zero"] = mc.pair_residual.is_zero();
  r.data["tensor_residual_zero"] = mc.tensor_residual.is_zero();
  std::string ks;
  for (int k : mc.nonzero_terms) ks += (ks.empty() ? "" : ",") + std::to_string(k);
  r.line("nonzero terms l_k: {" + ks + "}");
  r.line("[mu+rho, mu+rho]_B = 0: " + yes(mc.pair_residual.is_zero()) +
         ", P[[mu+rho, T]_B, T]_B = 0: " + yes(mc.tensor_residual.is_zero()));
  truncation(r, o, false);
  if (o.cross_check) {
    const bool valid = validate_embedding_tensor(t).ok();
    r.data["cross_check"] = {{"triple_valid", valid}};
    r.line("cross-check: triple validation " + yes(valid));
    if (valid != mc.report.ok()) r.fail();
  }
}

inline void cmd_linfty_twist(const Options& o, Report& r) {
  const StructureFile f = load(o);
  const EmbeddingTensor t = f.triple();
  const VData vd = hllt_vdata(t.alg().alpha, t.rep.beta);
  TwistedLInfty tw;
  try {
    tw = twist_by_mc(vd, triple_element(t), o.iter_cap);
  } catch (const std::invalid_argument& e) {
    r.data["error"] = e.what();
    r.line(std::string("twist: ") + e.what());
    r.fail();
    return;
  }
  truncation(r, o, false);
  if (o.perturb) {
    if (!f.deformation) throw InputError("--perturb needs a deformation section");
    const TripleDeformation d = triple_deformation(f);
    const LElem sum = twisted_mc_sum(tw, triple_element(d.mu1, d.rho1, d.t1));
    EmbeddingTensor p = t;
    p.rep.alg.bracket += d.mu1;
    p.rep.rho += d.rho1;
    p.T = p.T + d.t1;
    const bool valid = validate_embedding_tensor(p).ok();
    r.data["perturbation_mc"] = sum.is_zero();
    r.data["perturbed_triple_valid"] = valid;
    r.line("perturbation is maurer-cartan for the twisted operations: " + yes(sum.is_zero()));
    r.line("perturbed triple validates: " + yes(valid));
    if (sum.is_zero() != valid) r.fail();
    return;
  }
  // l_1 twisted by the triple against the triple differential
  Cohomology h(hllt_complex(t));
  const int top = o.degree >= 1 ? o.degree : std::min(o.max_degree, 2);
  json rows = json::array();
  for (int n = (o.degree >= 1 ? o.degree : 1); n <= top; ++n) {
    std::size_t agree = 0, total = 0;
    for (const auto& b : h.space(n).basis()) {
      ++total;
      if (flatten(delta_hllt_linfty(t, b, o.iter_cap)) == flatten(h.complex().d(n, b))) ++agree;
    }
    rows.push_back({{"degree", n}, {"basis_elements", total}, {"agreeing", agree}});
    r.line("degree " + std::to_string(n) + ": twisted l_1 matches the triple differential on " + std::to_string(agree) +
           "/" + std::to_string(total) + " basis elements");
    if (agree != total) r.fail();
  }
  r.data["twisted_l1"] = rows;
}

inline json bundle_arities(const Bundle& b) {
  json a = json::array();
  for (const auto& [k, f] : b.ops)
    if (!f.is_zero()) a.push_back(k);
  return a;
}

inline void cmd_homotopy_check(const Options& o, Report& r) {
  const StructureFile f = load(o);
  if (!f.hlrep || !f.pi) throw InputError("homotopy commands need a graded_homotopy_tensor file");
  ValidationReport rv = validate_hl_infty_rep(*f.hlrep, o.arity_cap);
  record(r, "representation", "hl-infinity representation", rv);
  if (!rv.ok()) return;
  HomotopyMcReport mc = homotopy_mc_check(*f.hlrep, *f.pi, o.arity_cap, o.iter_cap);
  record(r, "maurer_cartan", "homotopy embedding tensor", mc.report);
  json raw = json::array();
  for (const auto& b : mc.raw_terms) raw.push_back(bundle_arities(b));
  r.data["raw_term_arities"] = raw;
  r.data["residual_arities"] = bundle_arities(mc.residual);
  r.line("conjugation terms: " + std::to_string(mc.raw_terms.size()));
  truncation(r, o, mc.truncated);
}

inline void cmd_homotopy_induce(const Options& o, Report& r) {
  const StructureFile f = load(o);
  if (!f.hlrep || !f.pi) throw InputError("homotopy commands need a graded_homotopy_tensor file");
  ValidationReport rv = validate_hl_infty_rep(*f.hlrep, o.arity_cap);
  record(r, "representation", "hl-infinity representation", rv);
  if (!rv.ok()) return;
  HomotopyMcReport mc = homotopy_mc_check(*f.hlrep, *f.pi, o.arity_cap, o.iter_cap);
  record(r, "maurer_cartan", "homotopy embedding tensor", mc.report);
  if (!mc.report.ok()) return;
  HLeibInfty h = induced_hleib_infty(*f.hlrep, *f.pi, o.arity_cap, o.iter_cap);
  record(r, "induced", "induced hleib-infinity structure", validate_hleib_infty(h, o.arity_cap));
  StructureFile out;
  out.kind = "graded_hleib_infty";
  out.hleib = h;
  r.data["structure"] = to_json(out);
  json ar = json::array();
  for (const auto& [k, op] : h.pi.ops) ar.push_back(k);
  r.data["induced_arities"] = ar;
  truncation(r, o, h.pi.truncated);
}

// ---------------------------------------------------------------------------
// Entry point

inline void add_common(CLI::App* s, Options& o) {
  s->add_option("file", o.file, "structure file")->required();
  s->add_option("--param", o.params, "override a file parameter, name=value");
  s->add_option("--out", o.out, "write the machine-readable report here");
  s->add_flag("--cross-check", o.cross_check, "verify through a second route");
  s->add_flag("--timing", o.timing, "include wall time in the report");
  s->add_option("--arity-cap", o.arity_cap, "graded arity truncation");
  s->add_option("--iter-cap", o.iter_cap, "iteration cap for series");
}

inline Outcome run(const std::vector<std::string>& args) {
  Outcome res;
  Options o;
  CLI::App app{"exact embedding-tensor engine"};
  app.require_subcommand(1);
  std::string command;

  auto sub = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* s = parent->add_subcommand(name, help);
    add_common(s, o);
    return s;
  };
  CLI::App* validate = sub(&app, "validate", "validate a structure file");
  CLI::App* bracket = sub(&app, "bracket", "derived bracket [[T,T]] and its expansion");
  CLI::App* cohom = sub(&app, "cohomology", "cohomology table");
  cohom->add_option("--kind", o.kind, "emb, hleib, hlr, hllt or hllt_coeff");
  cohom->add_option("--degree", o.degree, "single degree");
  cohom->add_option("--max-degree", o.max_degree, "top degree of the table");
  CLI::App* mc = sub(&app, "mc-check", "embedding tensor versus [[T,T]] = 0");
  CLI::App* deform = app.add_subcommand("deform", "infinitesimal deformations");
  deform->require_subcommand(1);
  CLI::App* dcheck = sub(deform, "check", "check the deformation section");
  CLI::App* dclass = sub(deform, "classify", "H^1_T and H^2_HLLT");
  CLI::App* quot = sub(&app, "quotient", "embedding tensor from a Hom-Leibniz algebra");
  CLI::App* linf = app.add_subcommand("linfty", "the triple L-infinity algebra");
  linf->require_subcommand(1);
  CLI::App* lcheck = sub(linf, "check-mc", "triple as a Maurer-Cartan element");
  CLI::App* ltwist = sub(linf, "twist", "operations twisted by the triple");
  ltwist->add_flag("--perturb", o.perturb, "test the deformation section as a Maurer-Cartan perturbation");
  ltwist->add_option("--degree", o.degree, "single degree");
  ltwist->add_option("--max-degree", o.max_degree, "top degree");
  CLI::App* homo = app.add_subcommand("homotopy", "homotopy embedding tensors");
  homo->require_subcommand(1);
  CLI::App* hcheck = sub(homo, "check", "Maurer-Cartan check of Pi");
  CLI::App* hind = sub(homo, "induce", "induced HLeib-infinity structure");

  std::vector<std::string> argv_store{"hlemb"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    res.report.text = app.help();
    return res;
  } catch (const CLI::ParseError& e) {
    res.code = 2;
    res.report.pass = false;
    res.report.text = std::string("input error: ") + e.what() + "\n";
    res.report.data["status"] = "error";
    res.report.data["error"] = e.what();
    return res;
  }

  struct Entry {
    CLI::App* app;
    std::string name;
    void (*fn)(const Options&, Report&);
  };
  const std::vector<Entry> table{{validate, "validate", cmd_validate},
                                 {bracket, "bracket", cmd_bracket},
                                 {cohom, "cohomology", cmd_cohomology},
                                 {mc, "mc-check", cmd_mc_check},
                                 {dcheck, "deform check", cmd_deform_check},
                                 {dclass, "deform classify", cmd_deform_classify},
                                 {quot, "quotient", cmd_quotient},
                                 {lcheck, "linfty check-mc", cmd_linfty_check},
                                 {ltwist, "linfty twist", cmd_linfty_twist},
                                 {hcheck, "homotopy check", cmd_homotopy_check},
                                 {hind, "homotopy induce", cmd_homotopy_induce}};
  Report& r = res.report;
  const auto start = std::chrono::steady_clock::now();
  try {
    for (const auto& e : table)
      if (e.app->parsed()) {
        r.command = e.name;
        e.fn(o, r);
      }
    r.data["status"] = r.pass ? "pass" : "fail";
    res.code = r.pass ? 0 : 1;
  } catch (const InputError& e) {
    res.code = 2;
    r.pass = false;
    r.line(std::string("input error: ") + e.what());
    r.data["status"] = "error";
    r.data["error"] = e.what();
  } catch (const std::invalid_argument& e) {
    res.code = 2;
    r.pass = false;
    r.line(std::string("input error: ") + e.what());
    r.data["status"] = "error";
    r.data["error"] = e.what();
  } catch (const std::runtime_error& e) {
    res.code = 1;
    r.pass = false;
    r.line(std::string("failure: ") + e.what());
    r.data["status"] = "fail";
    r.data["error"] = e.what();
  }
  r.data["command"] = r.command;
  if (o.timing)
    r.data["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  r.text = r.command + ": " + (res.code == 0 ? "pass" : res.code == 1 ? "FAIL" : "ERROR") + "\n" + r.text;
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) {
      r.text += "cannot write '" + o.out + "'\n";
      res.code = 2;
    } else {
      f << r.data.dump(2) << "\n";
    }
  }
  return res;
}

inline int run_command(const std::vector<std::string>& args, std::ostream& out = std::cout) {
  Outcome o = run(args);
  out << o.report.text;
  return o.code;
}

}  // namespace hlemb::cli
