// nilkaehler: list, inspect, verify and export the pseudo-Kaehler catalog.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "nilkaehler/catalog.hpp"

using namespace nilkaehler;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("file not found: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::string type_string(const std::vector<std::size_t>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

std::string form_string(const TwoForm<Scalar>& w) {
  std::string s;
  for (std::size_t i = 0; i < w.dim(); ++i)
    for (std::size_t j = i + 1; j < w.dim(); ++j) {
      if (w(i, j).is_zero()) continue;
      std::string c = w(i, j).to_string(), e = "e" + std::to_string(i + 1) + std::to_string(j + 1);
      bool compound = c.find_first_of("+-", 1) != std::string::npos || c.find('/') != std::string::npos;
      if (c == "1") c = "";
      else if (c == "-1") c = "-";
      else if (compound) c = "(" + c + ")*";
      else c += "*";
      if (!s.empty() && c.rfind('-', 0) != 0) s += " + ";
      else if (!s.empty()) s += " ";
      s += c + e;
    }
  return s.empty() ? "0" : s;
}

std::string bracket_string(const LieAlgebra<Scalar>& alg) {
  std::string s;
  for (const auto& [idx, c] : alg.constants()) {
    if (!s.empty()) s += ", ";
    std::string cs = c.to_string();
    s += "[e" + std::to_string(idx[0] + 1) + ",e" + std::to_string(idx[1] + 1) + "] = " +
         (cs == "1" ? "" : cs == "-1" ? "-" : cs + "*") + "e" + std::to_string(idx[2] + 1);
  }
  return s;
}

ParamBinding parse_bindings(const std::vector<std::string>& items) {
  ParamBinding b;
  for (const auto& it : items) {
    try {
      auto [k, v] = parse_binding(it);
      b[k] = v;
    } catch (const std::exception& e) {
      throw UsageError("bad binding '" + it + "': rational values only, e.g. psi12=-2/3");
    }
  }
  return b;
}

template <class F>
std::string latex_matrix(const Matrix<F>& m) {
  std::string s = "\\begin{pmatrix}\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += "  ";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " & " : "") + to_latex(m(i, j));
    s += i + 1 < m.rows() ? " \\\\\n" : "\n";
  }
  return s + "\\end{pmatrix}";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void print_checks(const std::vector<Check>& checks, const std::string& indent) {
  for (const auto& c : checks)
    std::cout << indent << (c.passed ? "[ok]   " : "[FAIL] ") << c.name << (c.detail.empty() ? "" : ": " + c.detail)
              << "\n";
}

// ---------------------------------------------------------------------------

int cmd_list(const Catalog& cat) {
  for (const auto& name : cat.list()) {
    const auto& e = cat.get(name);
    std::cout << name << "  type " << type_string(e.type) << "  forms " << e.forms.size() << "  structures "
              << e.structures.size() << "\n";
  }
  return kPass;
}

int cmd_show(const Catalog& cat, const std::string& name) {
  const auto& e = cat.get(name);
  std::cout << "entry: " << e.name << "\n"
            << "type: " << type_string(e.type) << "\n"
            << "notes: " << e.notes << "\n"
            << "brackets: " << bracket_string(e.algebra) << "\n";
  for (const auto& f : e.forms) {
    std::cout << "form " << f.id << ": " << form_string(f.w) << "  (admits J: " << f.admits_J << ")\n";
    for (const auto& c : f.side_conditions) std::cout << "  side condition: " << c << "\n";
  }
  for (const auto& s : e.structures) {
    std::cout << "structure " << s.id << " on " << s.form;
    if (!s.params.empty()) {
      std::cout << ", parameters:";
      for (const auto& p : s.params) std::cout << " " << p;
    }
    std::cout << "\n";
    for (std::size_t i = 0; i < s.J.rows(); ++i) {
      std::cout << "  J e" << i + 1 << " =";
      bool any = false;
      for (std::size_t k = 0; k < s.J.cols(); ++k)
        if (!s.J(i, k).is_zero()) {
          std::cout << (any ? " + " : " ") << "(" << s.J(i, k) << ") e" << k + 1;
          any = true;
        }
      std::cout << (any ? "" : " 0") << "\n";
    }
    for (const auto& c : s.side_conditions) std::cout << "  side condition: " << c << "\n";
    for (const auto& r : s.relations) std::cout << "  relation: " << r << "\n";
    for (const auto& [k, v] : s.form_binding) std::cout << "  form binding: " << k << " = " << v.get_str() << "\n";
  }
  return kPass;
}

bool report_entry(const Catalog& cat, const Entry& e, const std::string& form_id) {
  EntryReport rep;
  rep.entry = e.name;
  if (form_id.empty()) {
    rep = validate_entry(e, cat.expectations());
  } else {
    e.form(form_id);
    for (const auto& c : entry_checks(e))
      if (c.name.rfind(form_id + " ", 0) == 0 || c.name.find(" on " + form_id + " ") != std::string::npos)
        rep.checks.push_back(c);
    for (const auto* s : e.structures_on(form_id))
      rep.structures.push_back(analyze_structure(e, *s, find_expectation(cat.expectations(), e, *s)));
  }
  std::cout << e.name << ": " << (rep.passed() ? "PASS" : "FAIL") << "\n";
  print_checks(rep.checks, "  ");
  for (const auto& s : rep.structures) {
    std::cout << "  structure " << s.structure << " on " << s.form << ": " << (s.passed() ? "PASS" : "FAIL") << "\n";
    print_checks(s.checks, "    ");
    const Expectation* ex = find_expectation(cat.expectations(), e, e.structure(s.structure));
    if (ex) {
      auto cite = [&](const std::vector<Component>& cs, bool up) {
        for (const auto& c : cs) {
          std::string label = detail::idx_label(c.idx[0], c.idx[1], c.idx[2], c.idx[3], up);
          std::string computed = "0";
          for (const auto& v : up ? s.up : s.down)
            if ((up ? v.idx : v.idx) == (up ? c.idx : detail::down_rep(c.idx))) computed = v.value;
          bool ok = is_zero(parse_expr(computed) - parse_expr(c.value)) ||
                    (e.structure(s.structure).uses_sqrt2() &&
                     is_zero(QuadScalar::reduce(parse_expr(computed)) - QuadScalar::reduce(parse_expr(c.value))));
          std::cout << "    " << label << " = " << c.value << (ok ? "  matched" : "  MISMATCH (computed " + computed + ")")
                    << "\n";
        }
      };
      cite(ex->down, false);
      if (ex->has_up) cite(ex->up, true);
    }
    for (const auto& c : s.side_conditions) std::cout << "    side condition: " << c << "\n";
    for (const auto& m : s.metric_notes) std::cout << "    note: " << m << "\n";
  }
  return rep.passed();
}

int cmd_verify(const Catalog& cat, const std::string& name, bool all, const std::string& form_id) {
  if (all == !name.empty()) throw UsageError("verify takes either an entry name or --all");
  if (all && !form_id.empty()) throw UsageError("--form cannot be combined with --all");
  bool ok = true;
  if (all) {
    std::size_t passed = 0;
    for (const auto& n : cat.list()) {
      bool r = report_entry(cat, cat.get(n), "");
      passed += r;
      ok = ok && r;
    }
    std::cout << "summary: " << passed << "/" << cat.list().size() << " entries pass\n";
  } else {
    ok = report_entry(cat, cat.get(name), form_id);
  }
  return ok ? kPass : kFail;
}

int cmd_curvature(const Catalog& cat, const std::string& name, const std::string& form_id,
                  const std::string& structure_id, const std::vector<std::string>& binds) {
  const auto& e = cat.get(name);
  e.form(form_id);
  auto on = e.structures_on(form_id);
  if (on.empty()) throw UsageError(name + ": form " + form_id + " has no compatible structure in the catalog");
  const StructureSpec* s = on.front();
  if (!structure_id.empty()) {
    s = &e.structure(structure_id);
    if (s->form != form_id) throw UsageError("structure " + structure_id + " is not on form " + form_id);
  }
  AnalysisOptions opt;
  opt.binding = parse_bindings(binds);
  opt.invariants = false;
  opt.canonical = false;
  auto rep = analyze_structure(e, *s, nullptr, opt);
  json out;
  out["entry"] = e.name;
  out["form"] = form_id;
  out["structure"] = s->id;
  json b = json::object();
  for (const auto& [k, v] : opt.binding) b[k] = v.get_str();
  out["binding"] = b;
  bool ok = true;
  for (const auto& c : rep.checks)
    if ((c.name == "compatible" || c.name == "J^2 = -I" || c.name == "N_J = 0" || c.name == "metric nondegenerate") &&
        !c.passed) {
      out["error"] = c.name + " fails" + (c.detail.empty() ? "" : ": " + c.detail);
      ok = false;
    }
  auto comps = [](const std::vector<ComponentValue>& cs) {
    json a = json::array();
    for (const auto& c : cs)
      a.push_back({{"idx", {c.idx[0] + 1, c.idx[1] + 1, c.idx[2] + 1, c.idx[3] + 1}}, {"label", c.label}, {"value", c.value}});
    return a;
  };
  out["up_components"] = comps(rep.up);
  out["down_components"] = comps(rep.down);
  out["ricci_zero"] = rep.ricci_zero;
  out["norm"] = rep.norm;
  out["side_conditions"] = rep.side_conditions;
  std::cout << out.dump(2) << "\n";
  return ok ? kPass : kFail;
}

int cmd_solve_linear(const std::string& path) {
  TwoForm<Scalar> w;
  try {
    w = form_from_json(read_file(path));
  } catch (const json::exception& e) {
    throw UsageError(path + ": schema violation: " + e.what());
  }
  auto sol = compat_nullspace(w);
  json basis = json::array();
  for (const auto& m : sol.basis) basis.push_back(matrix_to_json(m));
  json out = {{"dimension", sol.dimension}, {"basis", basis}, {"side_conditions", sol.conditions.strings()}};
  std::cout << out.dump(2) << "\n";
  return kPass;
}

int cmd_search(const std::string& alg_path, const std::string& form_path, std::size_t starts, double tol,
               std::uint64_t seed) {
  LieAlgebra<Scalar> alg;
  TwoForm<Scalar> w;
  try {
    alg = algebra_from_json(read_file(alg_path));
    w = form_from_json(read_file(form_path));
  } catch (const json::exception& e) {
    throw UsageError("schema violation: " + std::string(e.what()));
  }
  if (alg.dim() != w.dim()) throw UsageError("algebra and form dimensions differ");
  if (!w.matrix().is_numeric()) throw UsageError("search needs a numeric form; substitute parameters first");
  for (const auto& [idx, c] : alg.constants())
    if (!c.is_constant()) throw UsageError("search needs numeric structure constants");
  auto to_d = [](const Scalar& x) { return x.to_double(); };
  SearchOptions opt;
  opt.max_starts = starts;
  opt.tolerance = tol;
  opt.seed = seed;
  auto r = newton_search(alg.convert<double>(to_d), TwoForm<double>(w.matrix().map(to_d)), opt);
  json out;
  out["status"] = r.converged ? "converged" : "failed";
  out["residual"] = r.residual;
  json J = json::array();
  if (r.converged)
    for (std::size_t i = 0; i < r.J.rows(); ++i)
      for (std::size_t k = 0; k < r.J.cols(); ++k) J.push_back(r.J(i, k));
  out["J"] = J;
  out["starts_tried"] = r.starts_tried;
  out["seed"] = r.seed;
  std::cout << out.dump(2) << "\n";
  return r.converged ? kPass : kFail;
}

int cmd_export(const Catalog& cat, const std::string& name, const std::string& format) {
  const auto& e = cat.get(name);
  auto metric_of = [&](const StructureSpec& s) -> std::optional<Matrix<Scalar>> {
    if (s.uses_sqrt2()) return std::nullopt;
    try {
      return associated_metric(e.bound_form(s), s.J).g;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  };
  if (format == "json") {
    json out = entry_to_json(e);
    for (std::size_t i = 0; i < e.structures.size(); ++i) {
      const auto& s = e.structures[i];
      if (s.uses_sqrt2()) {
        TwoForm<QuadScalar> w(e.bound_form(s).matrix().map([](const Scalar& x) { return QuadScalar::reduce(x); }));
        auto J = s.J.map([](const Scalar& x) { return QuadScalar::reduce(x); });
        out["structures"][i]["metric"] = matrix_to_json(associated_metric(w, J).g);
      } else if (auto g = metric_of(s)) {
        out["structures"][i]["metric"] = matrix_to_json(*g);
      }
    }
    std::cout << out.dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << "entry,object,id,i,j,k,value\n";
    for (const auto& [idx, c] : e.algebra.constants())
      std::cout << e.name << ",bracket,," << idx[0] + 1 << "," << idx[1] + 1 << "," << idx[2] + 1 << ","
                << csv_field(c.to_string()) << "\n";
    for (const auto& f : e.forms)
      for (std::size_t i = 0; i < f.w.dim(); ++i)
        for (std::size_t j = i + 1; j < f.w.dim(); ++j)
          if (!f.w(i, j).is_zero())
            std::cout << e.name << ",form," << f.id << "," << i + 1 << "," << j + 1 << ",," << csv_field(f.w(i, j).to_string())
                      << "\n";
    for (const auto& s : e.structures) {
      for (std::size_t i = 0; i < s.J.rows(); ++i)
        for (std::size_t k = 0; k < s.J.cols(); ++k)
          if (!s.J(i, k).is_zero())
            std::cout << e.name << ",J," << s.id << "," << i + 1 << "," << k + 1 << ",," << csv_field(s.J(i, k).to_string())
                      << "\n";
      if (auto g = metric_of(s))
        for (std::size_t i = 0; i < g->rows(); ++i)
          for (std::size_t j = i; j < g->cols(); ++j)
            if (!(*g)(i, j).is_zero())
              std::cout << e.name << ",metric," << s.id << "," << i + 1 << "," << j + 1 << ",,"
                        << csv_field((*g)(i, j).to_string()) << "\n";
    }
  } else if (format == "latex") {
    for (const auto& s : e.structures) {
      std::cout << "% " << e.name << " structure " << s.id << " on " << s.form << "\n";
      std::cout << "J_{" << s.id << "} = " << latex_matrix(s.J.transpose()) << "\n\n";
      if (s.uses_sqrt2()) {
        TwoForm<QuadScalar> w(e.bound_form(s).matrix().map([](const Scalar& x) { return QuadScalar::reduce(x); }));
        auto J = s.J.map([](const Scalar& x) { return QuadScalar::reduce(x); });
        std::cout << "g_{" << s.id << "} = " << latex_matrix(associated_metric(w, J).g) << "\n\n";
      } else if (auto g = metric_of(s)) {
        std::cout << "g_{" << s.id << "} = " << latex_matrix(*g) << "\n\n";
      }
    }
  } else {
    throw UsageError("unknown format '" + format + "' (json, csv or latex)");
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-Kaehler structures on six-dimensional nilpotent Lie algebras"};
  app.require_subcommand(1);

  std::string name, form_id, structure_id, format, alg_path, form_path;
  std::vector<std::string> binds;
  bool all = false;
  std::size_t starts = 200;
  double tol = 1e-9;
  std::uint64_t seed = 1;

  auto* list = app.add_subcommand("list", "List catalog entries");
  auto* show = app.add_subcommand("show", "Show an entry");
  show->add_option("name", name)->required();
  auto* verify = app.add_subcommand("verify", "Verify an entry against its expectations");
  verify->add_option("name", name);
  verify->add_option("--form", form_id);
  verify->add_flag("--all", all);
  auto* curv = app.add_subcommand("curvature", "Curvature report for a structure");
  curv->add_option("name", name)->required();
  curv->add_option("--form", form_id)->required();
  curv->add_option("--structure", structure_id);
  curv->add_option("--bind", binds)->expected(0, -1);
  auto* solve = app.add_subcommand("solve-linear", "Nullspace of the compatibility system");
  solve->add_option("form-file", form_path)->required();
  auto* search = app.add_subcommand("search", "Numerical search for a compatible complex structure");
  search->add_option("algebra-file", alg_path)->required();
  search->add_option("form-file", form_path)->required();
  search->add_option("--starts", starts)->check(CLI::PositiveNumber);
  search->add_option("--tol", tol)->check(CLI::PositiveNumber);
  search->add_option("--seed", seed);
  auto* exp = app.add_subcommand("export", "Export an entry");
  exp->add_option("name", name)->required();
  exp->add_option("--format", format)->required()->check(CLI::IsMember({"json", "csv", "latex"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*solve) return cmd_solve_linear(form_path);
    if (*search) return cmd_search(alg_path, form_path, starts, tol, seed);
    Catalog cat = Catalog::load();
    if (*list) return cmd_list(cat);
    if (*show) return cmd_show(cat, name);
    if (*verify) return cmd_verify(cat, name, all, form_id);
    if (*curv) return cmd_curvature(cat, name, form_id, structure_id, binds);
    if (*exp) return cmd_export(cat, name, format);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnknownEntryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CatalogFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
