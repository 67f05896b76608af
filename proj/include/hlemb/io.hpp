#pragma once

// Structure files: a versioned JSON schema for algebras, representations,
// embedding tensors, triple representations and graded structures.  Indices
// are 0-based.  Every scalar is a string holding a rational expression over the
// file's named parameters ("-1/2*a*b") or a JSON integer; floats are refused.
//
//   bracket entry [i, j, k, x] : [e_i, e_j] has coefficient x on e_k
//   action entry  [i, a, b, x] : rho(e_i) f_a has coefficient x on f_b
//   matrix entry  [r, c, x]    : the image of basis vector c has coefficient x
//                                on basis vector r (columns are images)

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hlemb/cohomology.hpp"
#include "hlemb/graded.hpp"
#include "hlemb/shuffle.hpp"
#include "hlemb/structures.hpp"

namespace hlemb {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// Malformed input: syntax, shape, unknown parameter, bad rational.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Params = std::map<std::string, Rat>;

// ---------------------------------------------------------------------------
// Rational expressions

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view s, const Params& p) : s_(s), p_(p) {}

  Rat run() {
    Rat v = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError(what + " in expression '" + std::string(s_) + "'");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  Rat expr() {
    Rat v = term();
    while (true) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }
  Rat term() {
    Rat v = unary();
    while (true) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        Rat d = unary();
        if (is_zero(d)) throw InputError("zero denominator in expression '" + std::string(s_) + "'");
        v /= d;
      } else {
        return v;
      }
    }
  }
  Rat unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }
  Rat primary() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    const char c = s_[i_];
    if (c == '(') {
      ++i_;
      Rat v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      Rat v(mpz_class(std::string(s_.substr(i_, j - i_)), 10));
      i_ = j;
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
      std::string name(s_.substr(i_, j - i_));
      i_ = j;
      auto it = p_.find(name);
      if (it == p_.end()) throw InputError("unknown parameter '" + name + "'");
      return it->second;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const Params& p_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline Rat eval_rational(std::string_view text, const Params& params = {}) {
  return detail::ExprParser(text, params).run();
}

// ---------------------------------------------------------------------------
// In-memory form

struct TripleDeformationSpec {
  std::optional<Multi<Rat>> bracket;  // mu_1
  std::optional<Multi<Rat>> action;   // rho_1
  Matrix tensor;                      // T_1
};

struct StructureFile {
  int format_version = kFormatVersion;
  std::string kind;
  Params params;

  std::optional<HomLieAlgebra> lie;
  std::optional<HomLeibnizAlgebra> leibniz;
  std::optional<HomLieRep> rep;
  std::optional<Multi<Rat>> module_bracket;  // crossed-module data: a bracket on V
  std::optional<Matrix> tensor;
  std::optional<TripleRep> coefficients;
  std::optional<TripleDeformationSpec> deformation;

  std::optional<HLInfty> hl;
  std::optional<HLInftyRep> hlrep;
  std::optional<HLeibInfty> hleib;
  std::optional<std::map<int, Multi<Rat>>> pi;

  EmbeddingTensor triple() const {
    if (!rep || !tensor) throw InputError("structure of kind '" + kind + "' carries no embedding tensor");
    return {*rep, *tensor};
  }
};

inline const std::vector<std::string>& known_kinds() {
  static const std::vector<std::string> k{"hom_lie",          "hom_leibniz",        "representation",
                                          "embedding_tensor", "triple",             "triple_rep",
                                          "graded_hl_infty",  "graded_hl_infty_rep", "graded_hleib_infty",
                                          "graded_homotopy_tensor"};
  return k;
}

// ---------------------------------------------------------------------------
// Reading

namespace detail {

class Reader {
 public:
  explicit Reader(const Params& p) : p_(p) {}

  Rat scalar(const json& j, const std::string& path) const {
    if (j.is_string()) {
      try {
        return eval_rational(j.get<std::string>(), p_);
      } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
      }
    }
    if (j.is_number_integer()) return Rat(j.dump(), 10);
    throw InputError(path + ": rationals must be strings or integers");
  }

  int index(const json& j, int bound, const std::string& path) const {
    if (!j.is_number_integer()) throw InputError(path + ": index must be an integer");
    const long v = j.get<long>();
    if (v < 0 || v >= bound)
      throw InputError("shape mismatch at " + path + ": index " + std::to_string(v) + " outside [0, " +
                       std::to_string(bound) + ")");
    return static_cast<int>(v);
  }

  int dim(const json& obj, const std::string& path) const {
    if (!obj.contains("dim") || !obj["dim"].is_number_integer() || obj["dim"].get<long>() < 0)
      throw InputError(path + ".dim: expected a non-negative integer");
    return obj["dim"].get<int>();
  }

  /// "identity", "zero", {"diag": [...]}, {"rows": [[...]]} or {"entries": [[r, c, x]]}.
  Matrix matrix(const json& j, int rows, int cols, const std::string& path) const {
    Matrix m(rows, cols);
    if (j.is_string()) {
      const auto s = j.get<std::string>();
      if (s == "zero") return m;
      if (s == "identity") {
        if (rows != cols) throw InputError("shape mismatch at " + path + ": identity needs a square matrix");
        return Matrix::identity(rows);
      }
      throw InputError(path + ": unknown matrix form '" + s + "'");
    }
    if (!j.is_object()) throw InputError(path + ": expected a matrix");
    if (j.contains("diag")) {
      const auto& d = j["diag"];
      if (!d.is_array() || rows != cols || static_cast<int>(d.size()) != rows)
        throw InputError("shape mismatch at " + path + ".diag: expected " + std::to_string(rows) + " entries");
      for (int i = 0; i < rows; ++i) m(i, i) = scalar(d[i], path + ".diag[" + std::to_string(i) + "]");
    } else if (j.contains("rows")) {
      const auto& r = j["rows"];
      if (!r.is_array() || static_cast<int>(r.size()) != rows)
        throw InputError("shape mismatch at " + path + ".rows: expected " + std::to_string(rows) + " rows");
      for (int i = 0; i < rows; ++i) {
        const std::string pi = path + ".rows[" + std::to_string(i) + "]";
        if (!r[i].is_array() || static_cast<int>(r[i].size()) != cols)
          throw InputError("shape mismatch at " + pi + ": expected " + std::to_string(cols) + " columns");
        for (int c = 0; c < cols; ++c) m(i, c) = scalar(r[i][c], pi + "[" + std::to_string(c) + "]");
      }
    } else if (j.contains("entries")) {
      const auto& e = j["entries"];
      if (!e.is_array()) throw InputError(path + ".entries: expected an array");
      for (std::size_t t = 0; t < e.size(); ++t) {
        const std::string pt = path + ".entries[" + std::to_string(t) + "]";
        if (!e[t].is_array() || e[t].size() != 3) throw InputError("shape mismatch at " + pt + ": expected [row, col, value]");
        m(index(e[t][0], rows, pt + "[0]"), index(e[t][1], cols, pt + "[1]")) += scalar(e[t][2], pt + "[2]");
      }
    } else {
      throw InputError(path + ": matrix needs one of diag, rows, entries");
    }
    return m;
  }

  /// {"entries": [[i_1..i_k, out, x]]} with optional symmetrization of the
  /// first `sym` slots: "skew" (ungraded) or "symmetric" (graded, Koszul signs).
  Multi<Rat> tensor(const json& j, const std::vector<int>& dims, int out, const std::string& path,
                    const std::vector<int>* degrees = nullptr, int sym = 0) const {
    Multi<Rat> f(dims, out);
    if (j.is_null()) return f;
    if (!j.is_object()) throw InputError(path + ": expected a tensor object");
    const bool skew = j.value("skew", false);
    const bool symmetric = j.value("symmetric", false);
    if (skew && symmetric) throw InputError(path + ": skew and symmetric are exclusive");
    if ((skew || symmetric) && sym < 2) throw InputError(path + ": nothing to symmetrize");
    if (symmetric && !degrees) throw InputError(path + ": symmetric needs a graded carrier");
    if (!j.contains("entries")) return f;
    const auto& e = j["entries"];
    if (!e.is_array()) throw InputError(path + ".entries: expected an array");
    const int k = static_cast<int>(dims.size());
    std::vector<std::vector<int>> perms;
    if (skew || symmetric) {
      std::vector<int> p(sym);
      for (int i = 0; i < sym; ++i) p[i] = i;
      do perms.push_back(p);
      while (std::next_permutation(p.begin(), p.end()));
    }
    // explicit entries win over symmetrized copies only if they agree
    std::map<std::size_t, Rat> seen;
    auto put = [&](const std::vector<int>& idx, int o, const Rat& x, const std::string& pt) {
      const std::size_t pos = f.flat(idx) * out + o;
      auto [it, fresh] = seen.emplace(pos, x);
      if (!fresh && it->second != x) throw InputError(path + ": conflicting value implied by " + pt);
      f.data()[pos] = x;
    };
    for (std::size_t t = 0; t < e.size(); ++t) {
      const std::string pt = path + ".entries[" + std::to_string(t) + "]";
      if (!e[t].is_array() || static_cast<int>(e[t].size()) != k + 2)
        throw InputError("shape mismatch at " + pt + ": expected " + std::to_string(k + 2) + " items");
      std::vector<int> idx(k);
      for (int s = 0; s < k; ++s) idx[s] = index(e[t][s], dims[s], pt + "[" + std::to_string(s) + "]");
      const int o = index(e[t][k], out, pt + "[" + std::to_string(k) + "]");
      const Rat x = scalar(e[t][k + 1], pt + "[" + std::to_string(k + 1) + "]");
      if (perms.empty()) {
        put(idx, o, x, pt);
        continue;
      }
      for (const auto& p : perms) {
        // slot s receives the argument that sat in slot p[s]
        std::vector<int> j2 = idx;
        std::vector<int> d(sym);
        for (int s = 0; s < sym; ++s) {
          j2[s] = idx[p[s]];
          d[s] = degrees ? (*degrees)[idx[s]] : -1;
        }
        int sg = skew ? perm_sign(p) : koszul_sign(p, d);
        put(j2, o, sg * x, pt);
      }
    }
    return f;
  }

 private:
  const Params& p_;
};

inline std::string key(const std::string& base, const std::string& k) { return base.empty() ? k : base + "." + k; }

inline const json& need(const json& obj, const std::string& k, const std::string& path) {
  if (!obj.is_object() || !obj.contains(k)) throw InputError("missing field " + key(path, k));
  return obj[k];
}

inline HomLieAlgebraT<Rat> read_lie_like(const Reader& rd, const json& a, const std::string& path, Multi<Rat>& br) {
  const int n = rd.dim(a, path);
  HomLieAlgebra g;
  g.alpha = a.contains("twist") ? rd.matrix(a["twist"], n, n, path + ".twist") : Matrix::identity(n);
  br = rd.tensor(a.value("bracket", json()), {n, n}, n, path + ".bracket", nullptr, 2);
  return g;
}

inline HomLieRep read_module(const Reader& rd, const json& m, const HomLieAlgebra& g, const std::string& path) {
  if (m.is_string()) {
    if (m.get<std::string>() == "adjoint") return adjoint_rep(g);
    throw InputError(path + ": unknown module form '" + m.get<std::string>() + "'");
  }
  HomLieRep r;
  r.alg = g;
  const int d = rd.dim(m, path);
  r.beta = m.contains("twist") ? rd.matrix(m["twist"], d, d, path + ".twist") : Matrix::identity(d);
  r.rho = rd.tensor(m.value("action", json()), {g.dim(), d}, d, path + ".action");
  return r;
}

inline GradedSpace read_graded_space(const Reader& rd, const json& s, const std::string& path) {
  const auto& dj = need(s, "degrees", path);
  if (!dj.is_array()) throw InputError(path + ".degrees: expected an array");
  GradedSpace g;
  for (std::size_t i = 0; i < dj.size(); ++i) {
    if (!dj[i].is_number_integer()) throw InputError(path + ".degrees[" + std::to_string(i) + "]: expected an integer");
    g.deg.push_back(dj[i].get<int>());
  }
  const int n = g.dim();
  g.twist = s.contains("twist") ? rd.matrix(s["twist"], n, n, path + ".twist") : Matrix::identity(n);
  return g;
}

inline int arity_key(const std::string& k, const std::string& path) {
  try {
    std::size_t used = 0;
    int a = std::stoi(k, &used);
    if (used == k.size() && a >= 1) return a;
  } catch (const std::exception&) {
  }
  throw InputError(path + ": arity keys must be positive integers, got '" + k + "'");
}

/// {"1": tensor, "2": tensor, ...} over uniform slots.
/// With module_last the final slot has dimension last_dim and is never permuted.
inline std::map<int, Multi<Rat>> read_ops(const Reader& rd, const json& j, const GradedSpace& in, int last_dim, int out,
                                          const std::string& path, bool module_last) {
  std::map<int, Multi<Rat>> ops;
  if (j.is_null()) return ops;
  if (!j.is_object()) throw InputError(path + ": expected an object keyed by arity");
  for (const auto& [k, v] : j.items()) {
    const int a = arity_key(k, path);
    std::vector<int> dims(a, in.dim());
    if (module_last) dims[a - 1] = last_dim;
    ops.emplace(a, rd.tensor(v, dims, out, path + "." + k, &in.deg, module_last ? a - 1 : a));
  }
  return ops;
}

}  // namespace detail

/// Parses a structure file from text; `overrides` replace file parameters.
inline StructureFile parse_structure_text(const std::string& text, const Params& overrides = {}) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("parse error: ") + e.what());
  }
  if (!j.is_object()) throw InputError("parse error: top level must be an object");
  StructureFile f;
  if (!j.contains("format_version") || !j["format_version"].is_number_integer())
    throw InputError("missing field format_version");
  f.format_version = j["format_version"].get<int>();
  if (f.format_version != kFormatVersion)
    throw InputError("unsupported format_version " + std::to_string(f.format_version));
  f.kind = detail::need(j, "kind", "").get<std::string>();
  if (std::find(known_kinds().begin(), known_kinds().end(), f.kind) == known_kinds().end())
    throw InputError("unknown kind '" + f.kind + "'");

  if (j.contains("params")) {
    if (!j["params"].is_object()) throw InputError("params: expected an object");
    for (const auto& [k, v] : j["params"].items()) {
      Params none;
      f.params[k] = detail::Reader(none).scalar(v, "params." + k);
    }
  }
  for (const auto& [k, v] : overrides) {
    if (!f.params.count(k)) throw InputError("unknown parameter '" + k + "'");
    f.params[k] = v;
  }
  const detail::Reader rd(f.params);
  const std::string& kind = f.kind;

  if (kind.rfind("graded_", 0) == 0) {
    if (kind == "graded_hleib_infty") {
      const json& a = detail::need(j, "algebra", "");
      GradedSpace H = detail::read_graded_space(rd, a, "algebra");
      f.hleib = HLeibInfty{H, {1, detail::read_ops(rd, a.value("ops", json()), H, 0, H.dim(), "algebra.ops", false), false}};
      return f;
    }
    const json& a = detail::need(j, "algebra", "");
    GradedSpace G = detail::read_graded_space(rd, a, "algebra");
    f.hl = HLInfty{G, {1, detail::read_ops(rd, a.value("ops", json()), G, 0, G.dim(), "algebra.ops", false), false}};
    if (kind == "graded_hl_infty") return f;
    const json& m = detail::need(j, "module", "");
    if (m.is_string()) {
      if (m.get<std::string>() != "adjoint") throw InputError("module: unknown module form '" + m.get<std::string>() + "'");
      f.hlrep = adjoint_rep(*f.hl);
    } else {
      GradedSpace V = detail::read_graded_space(rd, m, "module");
      f.hlrep = HLInftyRep{*f.hl, V,
                           detail::read_ops(rd, m.value("ops", json()), G, V.dim(), V.dim(), "module.ops", true)};
    }
    if (kind == "graded_hl_infty_rep") return f;
    const GradedSpace& V = f.hlrep->vspace;
    std::map<int, Multi<Rat>> pi;
    const json& pj = detail::need(j, "tensor", "");
    if (!pj.is_object()) throw InputError("tensor: expected an object keyed by arity");
    for (const auto& [k, v] : pj.items()) {
      const int ar = detail::arity_key(k, "tensor");
      pi.emplace(ar, rd.tensor(v, std::vector<int>(ar, V.dim()), G.dim(), "tensor." + k));
    }
    f.pi = std::move(pi);
    return f;
  }

  const json& a = detail::need(j, "algebra", "");
  Multi<Rat> br;
  HomLieAlgebra g = detail::read_lie_like(rd, a, "algebra", br);
  g.bracket = br;
  if (kind == "hom_leibniz") {
    f.leibniz = HomLeibnizAlgebra{g.alpha, br};
    return f;
  }
  f.lie = g;
  if (kind == "hom_lie") return f;
  const json& mj = detail::need(j, "module", "");
  f.rep = detail::read_module(rd, mj, g, "module");
  if (mj.is_object() && mj.contains("bracket")) {
    const int d = f.rep->vdim();
    f.module_bracket = rd.tensor(mj["bracket"], {d, d}, d, "module.bracket", nullptr, 2);
  }
  if (kind == "representation") return f;
  f.tensor = rd.matrix(detail::need(j, "tensor", ""), g.dim(), f.rep->vdim(), "tensor");
  const EmbeddingTensor t = f.triple();
  if (j.contains("deformation")) {
    const json& d = j["deformation"];
    TripleDeformationSpec s;
    s.tensor = d.contains("tensor") ? rd.matrix(d["tensor"], g.dim(), f.rep->vdim(), "deformation.tensor")
                                    : Matrix(g.dim(), f.rep->vdim());
    if (d.contains("bracket")) s.bracket = rd.tensor(d["bracket"], {g.dim(), g.dim()}, g.dim(), "deformation.bracket", nullptr, 2);
    if (d.contains("action"))
      s.action = rd.tensor(d["action"], {g.dim(), f.rep->vdim()}, f.rep->vdim(), "deformation.action");
    f.deformation = std::move(s);
  }
  if (kind == "triple_rep") {
    const json& c = detail::need(j, "coefficients", "");
    if (c.is_string()) {
      if (c.get<std::string>() != "adjoint") throw InputError("coefficients: unknown form '" + c.get<std::string>() + "'");
      f.coefficients = adjoint_triple_rep(t);
    } else {
      TripleRep r;
      r.triple = t;
      r.hrep = detail::read_module(rd, detail::need(c, "h", "coefficients"), g, "coefficients.h");
      r.wrep = detail::read_module(rd, detail::need(c, "W", "coefficients"), g, "coefficients.W");
      r.S = rd.matrix(detail::need(c, "S", "coefficients"), r.hrep.vdim(), r.wrep.vdim(), "coefficients.S");
      r.theta = rd.tensor(c.value("pairing", json()), {f.rep->vdim(), r.hrep.vdim()}, r.wrep.vdim(),
                          "coefficients.pairing");
      f.coefficients = std::move(r);
    }
  }
  return f;
}

inline StructureFile parse_structure(const std::string& path, const Params& overrides = {}) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_structure_text(ss.str(), overrides);
}

/// "name=value" pairs from --param flags.
inline Params parse_params(const std::vector<std::string>& kv) {
  Params p;
  for (const auto& s : kv) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("--param expects name=value, got '" + s + "'");
    p[s.substr(0, eq)] = eval_rational(s.substr(eq + 1));
  }
  return p;
}

// ---------------------------------------------------------------------------
// Writing: resolved values only, full entry lists, deterministic order

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return json{{"rows", rows}};
}

inline json to_json(const Multi<Rat>& f) {
  json e = json::array();
  for_each_nonzero(f, [&](const std::vector<int>& idx, int k, const Rat& x) {
    json row = json::array();
    for (int i : idx) row.push_back(i);
    row.push_back(k);
    row.push_back(to_string(x));
    e.push_back(std::move(row));
  });
  return json{{"entries", e}};
}

namespace detail {

inline json lie_json(const Matrix& alpha, const Multi<Rat>& br) {
  return json{{"dim", alpha.rows()}, {"twist", to_json(alpha)}, {"bracket", to_json(br)}};
}
inline json module_json(const HomLieRep& r) {
  return json{{"dim", r.vdim()}, {"twist", to_json(r.beta)}, {"action", to_json(r.rho)}};
}
inline json space_json(const GradedSpace& s) { return json{{"degrees", s.deg}, {"twist", to_json(s.twist)}}; }
inline json ops_json(const std::map<int, Multi<Rat>>& ops) {
  json o = json::object();
  for (const auto& [k, f] : ops) o[std::to_string(k)] = to_json(f);
  return o;
}

}  // namespace detail

inline json to_json(const StructureFile& f) {
  json j;
  j["format_version"] = f.format_version;
  j["kind"] = f.kind;
  if (!f.params.empty()) {
    json p = json::object();
    for (const auto& [k, v] : f.params) p[k] = to_string(v);
    j["params"] = p;
  }
  if (f.kind == "graded_hleib_infty") {
    json a = detail::space_json(f.hleib->space);
    a["ops"] = detail::ops_json(f.hleib->pi.ops);
    j["algebra"] = a;
    return j;
  }
  if (f.hl) {
    json a = detail::space_json(f.hl->space);
    a["ops"] = detail::ops_json(f.hl->l.ops);
    j["algebra"] = a;
    if (f.hlrep) {
      json m = detail::space_json(f.hlrep->vspace);
      m["ops"] = detail::ops_json(f.hlrep->rho);
      j["module"] = m;
    }
    if (f.pi) j["tensor"] = detail::ops_json(*f.pi);
    return j;
  }
  if (f.leibniz) {
    j["algebra"] = detail::lie_json(f.leibniz->alpha, f.leibniz->bracket);
    return j;
  }
  j["algebra"] = detail::lie_json(f.lie->alpha, f.lie->bracket);
  if (f.rep) j["module"] = detail::module_json(*f.rep);
  if (f.module_bracket) j["module"]["bracket"] = to_json(*f.module_bracket);
  if (f.tensor) j["tensor"] = to_json(*f.tensor);
  if (f.deformation) {
    json d{{"tensor", to_json(f.deformation->tensor)}};
    if (f.deformation->bracket) d["bracket"] = to_json(*f.deformation->bracket);
    if (f.deformation->action) d["action"] = to_json(*f.deformation->action);
    j["deformation"] = d;
  }
  if (f.coefficients) {
    const auto& c = *f.coefficients;
    j["coefficients"] = json{{"h", detail::module_json(c.hrep)},
                             {"W", detail::module_json(c.wrep)},
                             {"S", to_json(c.S)},
                             {"pairing", to_json(c.theta)}};
  }
  return j;
}

inline std::string serialize_structure(const StructureFile& f) { return to_json(f).dump(2) + "\n"; }

namespace detail {

inline bool same(const GradedSpace& a, const GradedSpace& b) { return a.deg == b.deg && a.twist == b.twist; }
inline bool same(const HomLieAlgebra& a, const HomLieAlgebra& b) { return a.alpha == b.alpha && a.bracket == b.bracket; }
inline bool same(const HomLieRep& a, const HomLieRep& b) { return same(a.alg, b.alg) && a.beta == b.beta && a.rho == b.rho; }

template <class T, class Eq>
bool same_opt(const std::optional<T>& a, const std::optional<T>& b, Eq eq) {
  if (a.has_value() != b.has_value()) return false;
  return !a || eq(*a, *b);
}

}  // namespace detail

/// Field-by-field equality of the resolved contents.
inline bool same_structure(const StructureFile& a, const StructureFile& b) {
  using namespace detail;
  auto eq = [](const auto& x, const auto& y) { return x == y; };
  auto lie = [](const HomLieAlgebra& x, const HomLieAlgebra& y) { return same(x, y); };
  auto rep = [](const HomLieRep& x, const HomLieRep& y) { return same(x, y); };
  return a.format_version == b.format_version && a.kind == b.kind && a.params == b.params &&
         same_opt(a.lie, b.lie, lie) &&
         same_opt(a.leibniz, b.leibniz,
                  [](const HomLeibnizAlgebra& x, const HomLeibnizAlgebra& y) {
                    return x.alpha == y.alpha && x.bracket == y.bracket;
                  }) &&
         same_opt(a.rep, b.rep, rep) && same_opt(a.module_bracket, b.module_bracket, eq) &&
         same_opt(a.tensor, b.tensor, eq) &&
         same_opt(a.coefficients, b.coefficients,
                  [&](const TripleRep& x, const TripleRep& y) {
                    return same(x.triple.rep, y.triple.rep) && x.triple.T == y.triple.T && same(x.hrep, y.hrep) &&
                           same(x.wrep, y.wrep) && x.S == y.S && x.theta == y.theta;
                  }) &&
         same_opt(a.deformation, b.deformation,
                  [&](const TripleDeformationSpec& x, const TripleDeformationSpec& y) {
                    return x.tensor == y.tensor && same_opt(x.bracket, y.bracket, eq) && same_opt(x.action, y.action, eq);
                  }) &&
         same_opt(a.hl, b.hl,
                  [](const HLInfty& x, const HLInfty& y) { return same(x.space, y.space) && x.l.ops == y.l.ops; }) &&
         same_opt(a.hlrep, b.hlrep,
                  [](const HLInftyRep& x, const HLInftyRep& y) {
                    return same(x.base.space, y.base.space) && x.base.l.ops == y.base.l.ops && same(x.vspace, y.vspace) &&
                           x.rho == y.rho;
                  }) &&
         same_opt(a.hleib, b.hleib,
                  [](const HLeibInfty& x, const HLeibInfty& y) { return same(x.space, y.space) && x.pi.ops == y.pi.ops; }) &&
         same_opt(a.pi, b.pi, eq);
}

}  // namespace hlemb
