#pragma once

// Catalog of six-dimensional pseudo-Kaehler nilpotent Lie algebras, JSON I/O and self-validation.

#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilkaehler/geometry.hpp"
#include "nilkaehler/parse.hpp"
#include "nilkaehler/quadratic.hpp"
#include "nilkaehler/solver.hpp"

namespace nilkaehler {

using json = nlohmann::json;
using ScalarBinding = std::map<std::string, Scalar>;

class UnknownEntryError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

class CatalogFormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// JSON schemas (1-based indices in files).

inline Scalar scalar_from_json(const json& v) {
  if (v.is_string()) return parse_expr(v.get<std::string>());
  if (v.is_number_integer()) return Scalar(v.get<long>());
  throw CatalogFormatError("expected a scalar string, got " + v.dump());
}

inline std::size_t index_from_json(const json& v, std::size_t dim) {
  long i = v.get<long>();
  if (i < 1 || static_cast<std::size_t>(i) > dim) throw CatalogFormatError("index out of range: " + v.dump());
  return static_cast<std::size_t>(i - 1);
}

inline LieAlgebra<Scalar> algebra_from_json(const json& j) {
  std::size_t n = j.at("dim").get<std::size_t>();
  LieAlgebra<Scalar> alg(n);
  for (const auto& b : j.at("brackets"))
    alg.add_bracket(index_from_json(b.at("i"), n), index_from_json(b.at("j"), n), index_from_json(b.at("k"), n),
                    b.contains("c") ? scalar_from_json(b.at("c")) : Scalar(1L));
  return alg;
}

inline json algebra_to_json(const LieAlgebra<Scalar>& alg) {
  json br = json::array();
  for (const auto& [idx, c] : alg.constants())
    br.push_back({{"i", idx[0] + 1}, {"j", idx[1] + 1}, {"k", idx[2] + 1}, {"c", c.to_string()}});
  return {{"dim", alg.dim()}, {"brackets", br}};
}

inline TwoForm<Scalar> form_from_json(const json& j) {
  std::size_t n = j.at("dim").get<std::size_t>();
  TwoForm<Scalar> w(n);
  for (const auto& t : j.at("terms"))
    w.add_term(index_from_json(t.at("i"), n), index_from_json(t.at("j"), n), scalar_from_json(t.at("c")));
  return w;
}

template <class F>
json form_to_json(const TwoForm<F>& w) {
  json terms = json::array();
  for (std::size_t i = 0; i < w.dim(); ++i)
    for (std::size_t j = i + 1; j < w.dim(); ++j)
      if (!is_zero(w(i, j))) terms.push_back({{"i", i + 1}, {"j", j + 1}, {"c", FieldTraits<F>::str(w(i, j))}});
  return {{"dim", w.dim()}, {"terms", terms}};
}

inline Matrix<Scalar> matrix_from_json(const json& j) {
  std::size_t n = j.at("dim").get<std::size_t>();
  const auto& rows = j.at("rows");
  if (rows.size() != n) throw CatalogFormatError("expected " + std::to_string(n) + " rows");
  Matrix<Scalar> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw CatalogFormatError("row " + std::to_string(i + 1) + " has wrong length");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = scalar_from_json(rows[i][k]);
  }
  return m;
}

template <class F>
json matrix_to_json(const Matrix<F>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(FieldTraits<F>::str(m(i, k)));
    rows.push_back(r);
  }
  return {{"dim", m.rows()}, {"rows", rows}};
}

inline ParamBinding binding_from_json(const json& j) {
  ParamBinding b;
  for (const auto& [k, v] : j.items()) {
    Scalar s = scalar_from_json(v);
    if (!s.is_constant()) throw CatalogFormatError("binding " + k + " must be rational");
    b[k] = s.constant_value();
  }
  return b;
}

inline ScalarBinding scalar_binding_from_json(const json& j) {
  ScalarBinding b;
  for (const auto& [k, v] : j.items()) b[k] = scalar_from_json(v);
  return b;
}

inline std::vector<std::string> strings_from_json(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  return j.at(key).get<std::vector<std::string>>();
}

// ---------------------------------------------------------------------------
// Catalog model.

struct FormSpec {
  std::string id;
  std::string admits_J;  // "yes" or "no"
  TwoForm<Scalar> w;
  std::vector<std::string> side_conditions;
  ParamBinding probe_binding;
};

struct MetricSpec {
  ScalarBinding binding;
  Matrix<Scalar> g;
  std::string note;
};

struct StructureSpec {
  std::string id;
  std::string form;
  Matrix<Scalar> J;
  std::vector<std::string> params;
  std::vector<std::string> side_conditions;
  ParamBinding sample_binding;
  std::optional<ScalarBinding> canonical_binding;
  ParamBinding form_binding;
  std::vector<std::string> relations;
  std::vector<MetricSpec> expected_metrics;

  bool uses_sqrt2() const {
    for (const auto& r : relations)
      if (r == "s^2=2") return true;
    return false;
  }
};

struct NegativePairing {
  std::string form;
  Matrix<Scalar> J;
  std::string note;
};

struct Entry {
  std::string name;
  std::vector<std::size_t> type;
  std::string notes;
  LieAlgebra<Scalar> algebra;
  std::vector<FormSpec> forms;
  std::vector<StructureSpec> structures;
  std::vector<NegativePairing> negative_pairings;

  const FormSpec& form(const std::string& id) const {
    for (const auto& f : forms)
      if (f.id == id) return f;
    throw UnknownEntryError(name + ": no form '" + id + "'");
  }
  const StructureSpec& structure(const std::string& id) const {
    for (const auto& s : structures)
      if (s.id == id) return s;
    throw UnknownEntryError(name + ": no structure '" + id + "'");
  }
  /// Structures on form `id`, in file order.
  std::vector<const StructureSpec*> structures_on(const std::string& form_id) const {
    std::vector<const StructureSpec*> out;
    for (const auto& s : structures)
      if (s.form == form_id) out.push_back(&s);
    return out;
  }
  /// The form of `s`, with its form binding applied.
  TwoForm<Scalar> bound_form(const StructureSpec& s) const {
    const auto& f = form(s.form).w;
    if (s.form_binding.empty()) return f;
    return TwoForm<Scalar>(f.matrix().map([&](const Scalar& x) { return x.substitute(s.form_binding); }));
  }
};

struct Component {
  std::array<std::size_t, 4> idx;  // 0-based
  std::string value;
};

struct Expectation {
  std::string entry, form, structure;
  std::vector<Component> down;
  std::vector<Component> up;
  bool has_up = false;
  bool up_exhaustive = false;
  bool down_exhaustive = false;
};

inline Entry entry_from_json(const json& j) {
  Entry e;
  e.name = j.at("name").get<std::string>();
  e.type = j.at("type").get<std::vector<std::size_t>>();
  e.notes = j.value("notes", "");
  e.algebra = algebra_from_json(j.at("algebra"));
  for (const auto& f : j.at("forms")) {
    FormSpec fs;
    fs.id = f.at("id").get<std::string>();
    fs.admits_J = f.at("admits_J").get<std::string>();
    fs.w = form_from_json(f.at("form"));
    fs.side_conditions = strings_from_json(f, "side_conditions");
    if (f.contains("probe_binding")) fs.probe_binding = binding_from_json(f.at("probe_binding"));
    e.forms.push_back(std::move(fs));
  }
  for (const auto& s : j.at("structures")) {
    StructureSpec ss;
    ss.id = s.at("id").get<std::string>();
    ss.form = s.at("form").get<std::string>();
    ss.J = matrix_from_json(s.at("J"));
    ss.params = strings_from_json(s, "params");
    ss.side_conditions = strings_from_json(s, "side_conditions");
    if (s.contains("sample_binding")) ss.sample_binding = binding_from_json(s.at("sample_binding"));
    if (s.contains("canonical_binding")) ss.canonical_binding = scalar_binding_from_json(s.at("canonical_binding"));
    if (s.contains("form_binding")) ss.form_binding = binding_from_json(s.at("form_binding"));
    ss.relations = strings_from_json(s, "relations");
    if (s.contains("expected_metrics"))
      for (const auto& m : s.at("expected_metrics")) {
        MetricSpec ms;
        if (m.contains("binding")) ms.binding = scalar_binding_from_json(m.at("binding"));
        ms.g = matrix_from_json({{"dim", m.at("rows").size()}, {"rows", m.at("rows")}});
        ms.note = m.value("note", "");
        ss.expected_metrics.push_back(std::move(ms));
      }
    e.structures.push_back(std::move(ss));
  }
  if (j.contains("negative_pairings"))
    for (const auto& p : j.at("negative_pairings"))
      e.negative_pairings.push_back({p.at("form").get<std::string>(), matrix_from_json(p.at("J")), p.value("note", "")});
  for (const auto& s : e.structures) e.form(s.form);
  return e;
}

inline json entry_to_json(const Entry& e) {
  json forms = json::array(), structures = json::array();
  for (const auto& f : e.forms) {
    json fj = {{"id", f.id}, {"admits_J", f.admits_J}, {"form", form_to_json(f.w)}};
    if (!f.side_conditions.empty()) fj["side_conditions"] = f.side_conditions;
    forms.push_back(fj);
  }
  for (const auto& s : e.structures) {
    json sj = {{"id", s.id}, {"form", s.form}, {"J", matrix_to_json(s.J)}, {"params", s.params},
               {"side_conditions", s.side_conditions}};
    if (!s.form_binding.empty()) {
      json b;
      for (const auto& [k, v] : s.form_binding) b[k] = v.get_str();
      sj["form_binding"] = b;
    }
    if (!s.relations.empty()) sj["relations"] = s.relations;
    structures.push_back(sj);
  }
  return {{"name", e.name}, {"type", e.type}, {"notes", e.notes}, {"algebra", algebra_to_json(e.algebra)},
          {"forms", forms}, {"structures", structures}};
}

inline std::vector<Component> components_from_json(const json& j) {
  std::vector<Component> out;
  for (const auto& c : j) {
    Component comp;
    for (std::size_t a = 0; a < 4; ++a) comp.idx[a] = index_from_json(c.at("idx").at(a), 6);
    comp.value = c.at("value").get<std::string>();
    out.push_back(comp);
  }
  return out;
}

inline Expectation expectation_from_json(const json& j) {
  Expectation x;
  x.entry = j.at("entry").get<std::string>();
  x.form = j.at("form").get<std::string>();
  x.structure = j.value("structure", "J");
  x.down = components_from_json(j.at("down_components"));
  x.down_exhaustive = j.value("down_exhaustive", false);
  if (j.contains("up_components")) {
    x.has_up = true;
    x.up = components_from_json(j.at("up_components"));
    x.up_exhaustive = j.value("up_exhaustive", false);
  }
  return x;
}

inline std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("NILKAEHLER_CATALOG"); env && *env) return env;
#ifdef NILKAEHLER_DATA_DIR
  return NILKAEHLER_DATA_DIR;
#else
  return "data/catalog";
#endif
}

inline json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw CatalogFormatError("cannot open " + p.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw CatalogFormatError(p.string() + ": " + e.what());
  }
}

class Catalog {
public:
  static Catalog load(const std::filesystem::path& dir = default_data_dir()) {
    Catalog c;
    if (!std::filesystem::is_directory(dir)) throw CatalogFormatError("catalog directory not found: " + dir.string());
    for (const auto& f : std::filesystem::directory_iterator(dir)) {
      if (f.path().extension() != ".json" || f.path().filename() == "expectations.json") continue;
      try {
        Entry e = entry_from_json(read_json_file(f.path()));
        std::string name = e.name;
        c.entries_.emplace(name, std::move(e));
      } catch (const json::exception& ex) {
        throw CatalogFormatError(f.path().string() + ": " + ex.what());
      }
    }
    auto ex = dir / "expectations.json";
    if (std::filesystem::exists(ex))
      for (const auto& x : read_json_file(ex)) c.expectations_.push_back(expectation_from_json(x));
    return c;
  }

  std::vector<std::string> list() const {
    std::vector<std::string> out;
    for (const auto& [name, e] : entries_) out.push_back(name);
    return out;
  }

  const Entry& get(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw UnknownEntryError("unknown catalog entry: " + name);
    return it->second;
  }

  const std::vector<Expectation>& expectations() const { return expectations_; }
  std::vector<Expectation> expectations_for(const std::string& entry) const {
    std::vector<Expectation> out;
    for (const auto& x : expectations_)
      if (x.entry == entry) out.push_back(x);
    return out;
  }

private:
  std::map<std::string, Entry> entries_;
  std::vector<Expectation> expectations_;
};

// ---------------------------------------------------------------------------
// Field lifting.

namespace detail {

template <class F>
F lift(const Scalar& x) {
  if constexpr (std::is_same_v<F, QuadScalar>)
    return QuadScalar::reduce(x);
  else
    return x;
}

inline Scalar subst(const Scalar& x, const ScalarBinding& b) { return x.substitute(b); }
inline QuadScalar subst(const QuadScalar& x, const ScalarBinding& b) {
  return QuadScalar::reduce(x.re().substitute(b)) + QuadScalar::reduce(x.im().substitute(b)) * QuadScalar::sqrt2();
}
inline Scalar subst(const Scalar& x, const ParamBinding& b) { return x.substitute(b); }
inline QuadScalar subst(const QuadScalar& x, const ParamBinding& b) { return x.substitute(b); }

template <class F, class B>
Tensor4<F> subst(const Tensor4<F>& t, const B& b) {
  const std::size_t n = t.dim();
  Tensor4<F> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) out(i, j, k, l) = subst(t(i, j, k, l), b);
  return out;
}

inline std::string idx_label(std::size_t i, std::size_t j, std::size_t k, std::size_t l, bool up) {
  auto d = [](std::size_t x) { return std::to_string(x + 1); };
  return up ? "R_" + d(i) + d(j) + d(k) + "^" + d(l) : "R_" + d(i) + d(j) + d(k) + d(l);
}

// Orbit representative of (i,j,k,l) under the symmetries of R_ijkl.
inline std::array<std::size_t, 4> down_rep(std::array<std::size_t, 4> a) {
  auto [i, j, k, l] = a;
  if (i > j) std::swap(i, j);
  if (k > l) std::swap(k, l);
  if (std::make_pair(i, j) > std::make_pair(k, l)) {
    std::swap(i, k);
    std::swap(j, l);
  }
  return {i, j, k, l};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Curvature analysis.

struct ComponentValue {
  std::array<std::size_t, 4> idx;
  std::string label;
  std::string value;
};

template <class F>
struct CurvatureData {
  Metric<F> metric;
  Tensor3<F> gamma;
  Tensor4<F> up, down;
  Matrix<F> ric;
  F norm;
};

template <class F>
CurvatureData<F> compute_curvature(const LieAlgebra<F>& alg, const TwoForm<F>& w, const Endomorphism<F>& J) {
  CurvatureData<F> d;
  d.metric = associated_metric(w, J);
  d.gamma = christoffel(alg, d.metric);
  d.up = curvature(alg, d.gamma);
  d.down = lower_curvature(d.up, d.metric);
  d.ric = ricci(d.up);
  d.norm = curvature_norm(d.down, d.metric);
  return d;
}

/// Nonzero R_ijk^s with i < j.
template <class F>
std::vector<ComponentValue> nonzero_up(const Tensor4<F>& up) {
  std::vector<ComponentValue> out;
  const std::size_t n = up.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t s = 0; s < n; ++s)
          if (!is_zero(up(i, j, k, s)))
            out.push_back({{i, j, k, s}, detail::idx_label(i, j, k, s, true), FieldTraits<F>::str(up(i, j, k, s))});
  return out;
}

/// Nonzero R_ijkl, one per symmetry orbit (i < j, k < l, (i,j) <= (k,l)).
template <class F>
std::vector<ComponentValue> nonzero_down(const Tensor4<F>& down) {
  std::vector<ComponentValue> out;
  const std::size_t n = down.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = i; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          if (k == i && l < j) continue;
          if (!is_zero(down(i, j, k, l)))
            out.push_back({{i, j, k, l}, detail::idx_label(i, j, k, l, false), FieldTraits<F>::str(down(i, j, k, l))});
        }
  return out;
}

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct StructureReport {
  std::string structure, form;
  std::vector<Check> checks;
  std::vector<ComponentValue> up, down;
  bool ricci_zero = false;
  std::string norm;
  std::vector<std::string> side_conditions;
  std::pair<int, int> sample_signature{0, 0};
  std::vector<std::string> metric_notes;  // informational comparison with transcribed metrics
  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

struct EntryReport {
  std::string entry;
  std::vector<Check> checks;
  std::vector<StructureReport> structures;
  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    for (const auto& s : structures)
      if (!s.passed()) return false;
    return true;
  }
  std::vector<Check> failures() const {
    std::vector<Check> out;
    for (const auto& c : checks)
      if (!c.passed) out.push_back(c);
    for (const auto& s : structures)
      for (const auto& c : s.checks)
        if (!c.passed) out.push_back({s.structure + ": " + c.name, false, c.detail});
    return out;
  }
};

struct AnalysisOptions {
  bool invariants = true;  // connection/curvature identities, a_1(J) and split checks
  bool canonical = true;   // recompute at the canonical binding
  ParamBinding binding;    // extra user binding applied to J before everything
};

namespace detail {

template <class F>
Matrix<F> lift_matrix(const Matrix<Scalar>& m) {
  return m.map([](const Scalar& x) { return lift<F>(x); });
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep = "; ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

template <class F>
void compare_components(StructureReport& rep, const std::vector<Component>& expected,
                        const std::vector<ComponentValue>& computed, const Tensor4<F>& t, bool up, bool exhaustive) {
  std::vector<std::string> bad;
  std::set<std::array<std::size_t, 4>> listed;
  for (const auto& c : expected) {
    F want = lift<F>(parse_expr(c.value));
    const auto [i, j, k, l] = c.idx;
    F got = t(i, j, k, l);
    listed.insert(up ? c.idx : down_rep(c.idx));
    if (!is_zero(got - want))
      bad.push_back(idx_label(i, j, k, l, up) + ": expected " + c.value + ", computed " + FieldTraits<F>::str(got));
  }
  if (exhaustive)
    for (const auto& c : computed)
      if (!listed.count(c.idx)) bad.push_back(c.label + " = " + c.value + " not listed");
  rep.checks.push_back({up ? "expected up-components" : "expected down-components", bad.empty(), join(bad)});
}

template <class F>
void check_list(StructureReport& rep, const std::string& name, const std::vector<std::string>& violations) {
  rep.checks.push_back({name, violations.empty(),
                        violations.empty() ? "" : violations.front() + (violations.size() > 1 ? " ..." : "")});
}

template <class F>
StructureReport analyze_in(const Entry& e, const StructureSpec& s, const Expectation* ex, const AnalysisOptions& opt) {
  StructureReport rep;
  rep.structure = s.id;
  rep.form = s.form;
  auto alg = e.algebra.convert<F>([](const Scalar& x) { return lift<F>(x); });
  TwoForm<F> w(lift_matrix<F>(e.bound_form(s).matrix()));
  Matrix<F> J = lift_matrix<F>(s.J);
  if (!opt.binding.empty()) {
    J = J.map([&](const F& x) { return subst(x, opt.binding); });
    w = TwoForm<F>(w.matrix().map([&](const F& x) { return subst(x, opt.binding); }));
  }

  auto fam = verify_family(alg, w, J);
  rep.checks.push_back({"compatible", fam.compatible, fam.compatible ? "" : join(fam.failures)});
  rep.checks.push_back({"J^2 = -I", fam.almost_complex, ""});
  rep.checks.push_back({"N_J = 0", fam.integrable, ""});
  SideConditions conds = fam.conditions;
  if (!fam.passed()) return rep;

  CurvatureData<F> cd;
  try {
    cd = compute_curvature(alg, w, J);
  } catch (const std::exception& err) {
    rep.checks.push_back({"metric nondegenerate", false, err.what()});
    return rep;
  }
  conds.merge(cd.metric.conditions);
  rep.side_conditions = s.side_conditions;
  for (const auto& c : conds.strings())
    if (std::find(rep.side_conditions.begin(), rep.side_conditions.end(), c) == rep.side_conditions.end())
      rep.side_conditions.push_back(c);
  if (s.uses_sqrt2()) rep.side_conditions.push_back("s^2 = 2");

  rep.up = nonzero_up(cd.up);
  rep.down = nonzero_down(cd.down);
  rep.ricci_zero = cd.ric.is_zero();
  rep.norm = FieldTraits<F>::str(cd.norm);
  rep.checks.push_back({"Ricci = 0", rep.ricci_zero, ""});
  rep.checks.push_back({"|R|^2 = 0", is_zero(cd.norm), rep.norm});

  if (ex && opt.binding.empty()) {
    compare_components(rep, ex->down, rep.down, cd.down, false, ex->down_exhaustive);
    if (ex->has_up) compare_components(rep, ex->up, rep.up, cd.up, true, ex->up_exhaustive);
  }

  if (opt.invariants) {
    check_list<F>(rep, "torsion-free", torsion_violations(alg, cd.gamma));
    check_list<F>(rep, "nabla g = 0", metric_compatibility_violations(cd.gamma, cd.metric));
    check_list<F>(rep, "first Bianchi", bianchi_violations(cd.up));
    check_list<F>(rep, "pair symmetry", pair_symmetry_violations(cd.down));
  }

  // Numeric checks at the sample binding.
  ParamBinding sample = s.sample_binding;
  for (const auto& [k, v] : opt.binding) sample[k] = v;
  try {
    auto Js = J.map([&](const F& x) { return subst(x, sample); });
    auto ws = TwoForm<F>(w.matrix().map([&](const F& x) { return subst(x, sample); }));
    auto gs = cd.metric.g.map([&](const F& x) { return subst(x, sample); });
    if (!Js.is_numeric() || !gs.is_numeric()) throw UnboundParameterError("sample binding leaves parameters free");
    rep.sample_signature = signature(gs);
    bool indefinite = rep.sample_signature.first > 0 && rep.sample_signature.second > 0;
    rep.checks.push_back({"indefinite signature at sample",
                          indefinite,
                          "(" + std::to_string(rep.sample_signature.first) + "," +
                              std::to_string(rep.sample_signature.second) + ")"});
    if (opt.invariants) {
      auto algs = alg;
      bool nil = is_nilpotent_J(algs, Js);
      rep.checks.push_back({"J nilpotent at sample", nil, ""});
      auto ups = subst(cd.up, sample);
      check_list<F>(rep, "R(a_1(J), .) = 0", a1_curvature_violations(algs, Js, ups));
      if (e.type == std::vector<std::size_t>{2, 4, 6}) {
        std::vector<Vector<F>> A, B, Z;
        for (std::size_t i = 0; i < 2; ++i) A.push_back(alg.basis_vector(i));
        for (std::size_t i = 2; i < 4; ++i) B.push_back(alg.basis_vector(i));
        for (std::size_t i = 4; i < 6; ++i) Z.push_back(alg.basis_vector(i));
        auto t = type246_structure_check(algs, ws, Js, A, B, Z);
        std::vector<std::string> bad;
        for (const auto& [name, ok] : t.hypotheses)
          if (!ok) bad.push_back("hypothesis " + name);
        for (const auto& [name, ok] : t.conclusions)
          if (!ok) bad.push_back("conclusion " + name);
        rep.checks.push_back({"(2,4,6) split structure", t.passed(), join(bad)});
      }
    }
  } catch (const std::exception& err) {
    rep.checks.push_back({"sample binding", false, err.what()});
  }

  if (opt.canonical && s.canonical_binding && !s.canonical_binding->empty() && opt.binding.empty()) {
    try {
      auto Jc = J.map([&](const F& x) { return subst(x, *s.canonical_binding); });
      auto cc = compute_curvature(alg, w, Jc);
      auto fc = verify_family(alg, w, Jc);
      rep.checks.push_back({"canonical structure", fc.passed() && cc.ric.is_zero() && is_zero(cc.norm),
                            fc.passed() ? "" : join(fc.failures)});
    } catch (const std::exception& err) {
      rep.checks.push_back({"canonical structure", false, err.what()});
    }
  }

  for (const auto& m : s.expected_metrics) {
    auto g = m.binding.empty() ? cd.metric.g : cd.metric.g.map([&](const F& x) { return subst(x, m.binding); });
    auto want = lift_matrix<F>(m.g);
    std::vector<std::string> diffs;
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = i; j < g.cols(); ++j)
        if (!is_zero(g(i, j) - want(i, j)))
          diffs.push_back("g" + std::to_string(i + 1) + std::to_string(j + 1) + ": transcribed " +
                          FieldTraits<F>::str(want(i, j)) + ", computed " + FieldTraits<F>::str(g(i, j)));
    std::string where = m.binding.empty() ? "family metric" : "metric at canonical binding";
    rep.metric_notes.push_back(diffs.empty() ? where + " matches transcription"
                                             : where + " differs from transcription: " + join(diffs));
  }
  return rep;
}

}  // namespace detail

inline StructureReport analyze_structure(const Entry& e, const StructureSpec& s, const Expectation* ex = nullptr,
                                         const AnalysisOptions& opt = {}) {
  if (s.uses_sqrt2()) return detail::analyze_in<QuadScalar>(e, s, ex, opt);
  return detail::analyze_in<Scalar>(e, s, ex, opt);
}

inline const Expectation* find_expectation(const std::vector<Expectation>& xs, const Entry& e,
                                           const StructureSpec& s) {
  for (const auto& x : xs)
    if (x.entry == e.name && x.structure == s.id && x.form == s.form) return &x;
  return nullptr;
}

/// Algebra- and form-level checks (Jacobi, nilpotency, type, closed and nondegenerate forms, negative pairings).
inline std::vector<Check> entry_checks(const Entry& e) {
  std::vector<Check> out;
  auto bad = jacobi_check(e.algebra);
  out.push_back({"Jacobi", bad.empty(), bad.empty() ? "" : "fails on (e" + std::to_string(bad[0][0] + 1) + ",e" +
                                                             std::to_string(bad[0][1] + 1) + ",e" +
                                                             std::to_string(bad[0][2] + 1) + ")"});
  out.push_back({"nilpotent", is_nilpotent(e.algebra), ""});
  auto t = algebra_type(e.algebra);
  std::string ts;
  for (auto d : t) ts += (ts.empty() ? "" : ",") + std::to_string(d);
  out.push_back({"type", t == e.type, "(" + ts + ")"});
  for (const auto& f : e.forms) {
    auto d = exterior_d(e.algebra, f.w);
    std::string detail;
    for (std::size_t i = 0; i < 6 && detail.empty(); ++i)
      for (std::size_t j = i + 1; j < 6 && detail.empty(); ++j)
        for (std::size_t k = j + 1; k < 6 && detail.empty(); ++k)
          if (!is_zero(d(i, j, k)))
            detail = "dw(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ",e" + std::to_string(k + 1) +
                     ") = " + d(i, j, k).to_string();
    out.push_back({f.id + " closed", detail.empty(), detail});
    out.push_back({f.id + " nondegenerate", nondegenerate(f.w), ""});
    auto lem = derived_center_pairing_violations(e.algebra, f.w);
    out.push_back({f.id + " w(C^1, Z) = 0", lem.empty(), lem.empty() ? "" : lem.front()});
    if (f.admits_J == "yes" && e.structures_on(f.id).empty())
      out.push_back({f.id + " has a structure", false, "admits_J is yes but no structure is listed"});
  }
  for (const auto& p : e.negative_pairings) {
    auto rep = verify_family(e.algebra, e.form(p.form).w, p.J);
    out.push_back({"negative pairing on " + p.form + " fails compatibility", !rep.compatible, ""});
  }
  return out;
}

inline EntryReport validate_entry(const Entry& e, const std::vector<Expectation>& expectations,
                                  const AnalysisOptions& opt = {}) {
  EntryReport rep;
  rep.entry = e.name;
  rep.checks = entry_checks(e);
  for (const auto& s : e.structures) rep.structures.push_back(analyze_structure(e, s, find_expectation(expectations, e, s), opt));
  for (const auto& x : expectations)
    if (x.entry == e.name) {
      bool found = false;
      for (const auto& s : e.structures) found = found || (s.id == x.structure && s.form == x.form);
      if (!found) rep.checks.push_back({"expectation " + x.form + "/" + x.structure, false, "no such structure"});
    }
  return rep;
}

/// Per-entry pass/fail over the whole catalog.
inline std::vector<EntryReport> self_validate(const Catalog& c, const AnalysisOptions& opt = {}) {
  std::vector<EntryReport> out;
  for (const auto& name : c.list()) out.push_back(validate_entry(c.get(name), c.expectations(), opt));
  return out;
}

}  // namespace nilkaehler
