#include "cli.hpp"

#include "affleib/catalog.hpp"
#include "affleib/classify.hpp"
#include "affleib/json_io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace affleib::cli {

namespace {

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void print(std::ostream& out) const {
    std::vector<std::size_t> w;
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (w.size() <= i) w.push_back(0);
        w[i] = std::max(w[i], r[i].size());
      }
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(w[i] - r[i].size() + 2, ' ');
      }
      out << line << '\n';
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(s);
  while (std::getline(ss, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

struct Globals {
  std::string field;
  std::string input;
  std::string output;
  unsigned jobs = 1;
};

void emit_json(const Globals& g, const Json& j, std::ostream& out) {
  if (g.output.empty())
    out << j.dump(2) << '\n';
  else
    write_file(g.output, j.dump(2) + "\n");
}

BiAffineBracket load_datum(const Globals& g, const std::string& path) {
  if (path.empty()) throw InputError("no input file (use -i or a positional path)");
  BiAffineBracket K = datum_from_json(parse_json(read_file(path)));
  if (!g.field.empty() && !(parse_field(g.field) == K.field()))
    throw InputError("--field " + g.field + " does not match the input field " + K.field().to_string());
  return K;
}

double millis_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// ------------------------------------------------------------ check

int cmd_check(const Globals& g, const std::string& path, const std::string& type, std::ostream& out) {
  auto t0 = std::chrono::steady_clock::now();
  BiAffineBracket K = load_datum(g, path);
  Vec origin(K.field(), K.dim());

  std::vector<ConditionReport> reports;
  bool want_all = type == "all";
  if (want_all || type == "general") reports.push_back(check_general_conditions(K));
  if (want_all || type == "derivative") reports.push_back(check_derivative_conditions(K));
  if (want_all || type == "homogeneous") reports.push_back(check_homogeneous_conditions(K));
  if (want_all || type == "lie") reports.push_back(check_lie_type_conditions(K));
  if (want_all || type == "lie-affgebra") reports.push_back(check_lie_affgebra_axioms(K));

  bool leib = is_affine_leibniz(K);
  std::vector<std::pair<std::string, bool>> verdicts;
  auto add = [&](const std::string& name, bool v) { verdicts.emplace_back(name, v); };
  if (want_all || type == "general") add("affine-Leibniz", leib && linearization_vanishes(K, origin));
  if (want_all || type == "derivative") add("derivative", leib && is_derivative(K));
  if (want_all || type == "homogeneous") add("homogeneous", leib && is_homogeneous(K));
  if (want_all || type == "lie") add("lie-type", leib && is_lie_type(K));
  if (want_all || type == "lie-affgebra") add("lie-affgebra", is_lie_affgebra(K));

  if (want_all) {
    auto v = [&](const std::string& n) {
      for (const auto& [k, b] : verdicts)
        if (k == n) return b;
      return false;
    };
    if (v("derivative") && !v("homogeneous")) throw std::logic_error("derivative datum reported non-homogeneous");
    if (leib && is_affine_antisymmetric(K) && v("lie-affgebra") != v("lie-type"))
      throw std::logic_error("antisymmetric datum: Lie-affgebra and Lie-type verdicts disagree");
  }

  // With --type all every verdict is reported and the exit code follows the
  // base affine-Leibniz verdict.
  bool holds = true;
  for (const auto& [k, b] : verdicts)
    if (!want_all || k == "affine-Leibniz") holds = holds && b;

  Table conds({"condition", "holds"});
  Json cj = Json::object();
  for (const auto& r : reports)
    for (const auto& item : r.items) {
      conds.add({item.label, yes_no(item.holds)});
      cj[item.label] = item.holds;
    }
  Table verd({"verdict", "value"});
  Json vj = Json::object();
  for (const auto& [k, b] : verdicts) {
    verd.add({k, yes_no(b)});
    vj[k] = b;
  }
  conds.print(out);
  out << '\n';
  verd.print(out);
  double ms = millis_since(t0);
  out << "\nresult: " << (holds ? "holds" : "fails") << "\n";
  if (!g.output.empty()) {
    Json rep{{"command", "check"}, {"type", type}, {"field", field_to_json(K.field())}, {"dim", K.dim()},
             {"conditions", cj}, {"verdicts", vj}, {"holds", holds}, {"timing_ms", ms}};
    write_file(g.output, rep.dump(2) + "\n");
  }
  return holds ? 0 : 1;
}

// ------------------------------------------------------------ fibre

int cmd_fibre(const Globals& g, const std::string& path, const std::string& at, std::ostream& out) {
  BiAffineBracket K = load_datum(g, path);
  Vec o(K.field(), K.dim());
  if (!at.empty()) {
    auto parts = split(at, ',');
    if (parts.size() != K.dim())
      throw InputError("--at has " + std::to_string(parts.size()) + " coordinates; the datum has dimension " +
                       std::to_string(K.dim()));
    for (std::size_t i = 0; i < parts.size(); ++i) o[i] = parse_scalar(parts[i], K.field());
  }
  Fibre F = fibre_at(K, o);
  emit_json(g, datum_to_json(BiAffineBracket::from_algebra(F.algebra, F.lambda, F.mu, F.s)), out);
  return 0;
}

// ------------------------------------------------------------ iso

int cmd_iso(const Globals& g, const std::string& left, const std::string& right, const std::string& witness,
            bool search, std::ostream& out) {
  BiAffineBracket K = load_datum(g, left), Kp = load_datum(g, right);
  if (!(K.field() == Kp.field())) throw InputError("the two data are over different fields");
  if (search == !witness.empty()) throw InputError("iso needs exactly one of --witness or --search");
  if (search) {
    auto t0 = std::chrono::steady_clock::now();
    SearchResult r = search_iso(K, Kp, g.jobs);
    Table t({"item", "value"});
    t.add({"found", yes_no(r.found)});
    t.add({"checked", std::to_string(r.checked)});
    if (r.witness) {
      t.add({"psi", r.witness->psi.to_string()});
      t.add({"q", r.witness->q.to_string()});
    }
    t.print(out);
    Json j = search_result_to_json(r);
    j["timing_ms"] = millis_since(t0);
    if (!g.output.empty()) write_file(g.output, j.dump(2) + "\n");
    return r.found ? 0 : 1;
  }
  if (K.dim() != Kp.dim()) throw InputError("the two data have different dimensions");
  IsoWitness w = witness_from_json(parse_json(read_file(witness)), K.field(), K.dim());
  ConditionReport rep = iso_conditions(K, Kp, w.psi, w.q);
  bool ok = is_affgebra_iso(K, Kp, w.psi, w.q);
  Table t({"condition", "holds"});
  for (const auto& item : rep.items) t.add({item.label, yes_no(item.holds)});
  t.print(out);
  out << "\nresult: " << (ok ? "verified" : "not an isomorphism") << "\n";
  if (!g.output.empty()) {
    Json j{{"command", "iso"}, {"conditions", report_to_json(rep)}, {"verified", ok}};
    write_file(g.output, j.dump(2) + "\n");
  }
  return ok ? 0 : 1;
}

// ------------------------------------------------------------ classify

int cmd_classify(const Globals& g, const std::string& fibre, const std::string& type_text, std::uint64_t cap,
                 bool with_orbits, bool list, std::ostream& out) {
  if (g.field.empty()) throw InputError("classify needs --field gf:p");
  FieldSpec f = parse_field(g.field);
  if (!f.is_prime_field()) throw InputError("classify runs over prime fields only");
  SweepType type = parse_sweep_type(type_text);
  LeibnizAlgebra L = algebra(fibre, f);
  auto t0 = std::chrono::steady_clock::now();
  SweepResult r = sweep(L, type, {g.jobs, cap});
  std::vector<Orbit> orbs;
  if (with_orbits) orbs = orbits(L, r.solutions, cap);

  Table t({"item", "value"});
  t.add({"fibre", fibre});
  t.add({"field", f.to_string()});
  t.add({"type", to_string(type)});
  t.add({"candidates", std::to_string(r.candidates)});
  t.add({"solutions", std::to_string(r.solutions.size())});
  if (with_orbits) t.add({"orbits", std::to_string(orbs.size())});
  t.print(out);
  Json j{{"command", "classify"}, {"fibre", fibre}, {"field", field_to_json(f)}, {"type", to_string(type)},
         {"candidates", r.candidates}, {"solutions", r.solutions.size()}};
  if (with_orbits) {
    out << '\n';
    Table ot({"orbit", "size", "lambda", "mu", "s"});
    Json oj = Json::array();
    for (std::size_t i = 0; i < orbs.size(); ++i) {
      BiAffineBracket K = datum_from_key(L, orbs[i].representative);
      ot.add({std::to_string(i + 1), std::to_string(orbs[i].size), K.lambda().to_string(), K.mu().to_string(),
              K.s().to_string()});
      oj.push_back(Json{{"size", orbs[i].size}, {"representative", datum_to_json(K)}});
    }
    ot.print(out);
    j["orbits"] = oj;
  }
  if (list) {
    Json data = Json::array();
    for (auto key : r.solutions) data.push_back(datum_to_json(datum_from_key(L, key)));
    j["data"] = data;
  }
  if (!g.output.empty()) write_file(g.output, j.dump(2) + "\n");
  return 0;
}

// ------------------------------------------------------------ catalog

int cmd_catalog_list(const Globals& g, std::ostream& out) {
  Json fams = Json::array();
  for (const auto& name : family_names()) {
    FamilyDescriptor d = family(name);
    Json cons = Json::array();
    for (const auto& r : d.constraints) cons.push_back(r.to_string());
    fams.push_back(Json{{"name", d.name},
                        {"fibre", d.fibre},
                        {"type", to_string(d.type)},
                        {"params", d.params},
                        {"constraints", cons},
                        {"normal_form", d.has_normal_form}});
  }
  emit_json(g, Json{{"algebras", algebra_names()}, {"families", fams}}, out);
  return 0;
}

int cmd_catalog_emit(const Globals& g, const std::string& name, const std::string& bind, std::ostream& out) {
  FieldSpec f = g.field.empty() ? FieldSpec::rationals() : parse_field(g.field);
  auto names = family_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    if (!bind.empty()) throw InputError("--bind applies to families, not algebras");
    emit_json(g, algebra_to_json(algebra(name, f)), out);
    return 0;
  }
  Bindings b;
  for (const auto& item : split(bind, ',')) {
    auto eqpos = item.find('=');
    if (eqpos == std::string::npos) throw InputError("binding '" + item + "' is not name=value");
    b[item.substr(0, eqpos)] = parse_scalar(item.substr(eqpos + 1), f);
  }
  emit_json(g, datum_to_json(instantiate(family(name), b, f)), out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Affine Leibniz brackets: conditions, fibres, isomorphisms, classification"};
  app.name("affleib");
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--field", g.field, "Field: Q or gf:p");
  app.add_option("-i,--input", g.input, "Input JSON file ('-' for stdin)");
  app.add_option("-o,--output", g.output, "Output JSON file");
  app.add_option("--jobs", g.jobs, "Worker threads for search and classify")->check(CLI::Range(1u, 256u));

  std::string check_type = "all", check_path;
  auto* check = app.add_subcommand("check", "Condition reports and type verdicts for a datum");
  check->add_option("--type", check_type)
      ->check(CLI::IsMember({"all", "general", "derivative", "homogeneous", "lie", "lie-affgebra"}));
  check->add_option("file", check_path, "Datum JSON");

  std::string fibre_path, fibre_at_text;
  auto* fib = app.add_subcommand("fibre", "Fibre decomposition at a base point");
  fib->add_option("--at", fibre_at_text, "Base point, comma separated (default 0)");
  fib->add_option("file", fibre_path, "Datum JSON");

  std::string iso_left, iso_right, iso_witness;
  bool iso_search = false;
  auto* iso = app.add_subcommand("iso", "Verify or search an isomorphism between two data");
  iso->add_option("left", iso_left, "Source datum JSON")->required();
  iso->add_option("right", iso_right, "Target datum JSON")->required();
  iso->add_option("--witness", iso_witness, "Witness JSON {psi, q}");
  iso->add_flag("--search", iso_search, "Exhaustive search over a prime field");

  std::string cl_fibre, cl_type;
  std::uint64_t cl_cap = 10'000'000;
  bool cl_no_orbits = false, cl_list = false;
  auto* cls = app.add_subcommand("classify", "Exhaustive sweep and orbit decomposition over a prime field");
  cls->add_option("--fibre", cl_fibre, "Catalog algebra")->required();
  cls->add_option("--type", cl_type, "general | homogeneous | lie")->required();
  cls->add_option("--cap", cl_cap, "Maximum number of candidates");
  cls->add_flag("--no-orbits", cl_no_orbits, "Skip the orbit decomposition");
  cls->add_flag("--list", cl_list, "Include every solution in the JSON output");

  auto* cat = app.add_subcommand("catalog", "Built-in algebras and families");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "List algebras and families");
  std::string emit_name, emit_bind;
  auto* cat_emit = cat->add_subcommand("emit", "Emit an algebra or a family instance as JSON");
  cat_emit->add_option("--name", emit_name)->required();
  cat_emit->add_option("--bind", emit_bind, "name=value,...");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    auto pick = [&](const std::string& positional) { return positional.empty() ? g.input : positional; };
    if (*check) return cmd_check(g, pick(check_path), check_type, out);
    if (*fib) return cmd_fibre(g, pick(fibre_path), fibre_at_text, out);
    if (*iso) return cmd_iso(g, iso_left, iso_right, iso_witness, iso_search, out);
    if (*cls) return cmd_classify(g, cl_fibre, cl_type, cl_cap, !cl_no_orbits, cl_list, out);
    if (*cat_list) return cmd_catalog_list(g, out);
    if (*cat_emit) return cmd_catalog_emit(g, emit_name, emit_bind, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace affleib::cli
