// clusterforge command-line front end. Talks to the library only through
// the C interface.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "clusterforge/clusterforge.h"

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kSchema = "clusterforge/1";

enum Exit { kOk = 0, kInternal = 1, kInvalid = 2, kVerification = 3, kResource = 4, kUndetermined = 5 };

struct Failure {
  int exit;
  std::string status, message;
};

int exit_for(cf_status s) {
  switch (s) {
    case CF_OK: return kOk;
    case CF_ERR_INVALID_INPUT: return kInvalid;
    case CF_ERR_VERIFICATION:
    case CF_ERR_INEXACT_DIVISION: return kVerification;
    case CF_ERR_RESOURCE_LIMIT: return kResource;
    case CF_ERR_UNDETERMINED: return kUndetermined;
    case CF_ERR_INTERNAL: return kInternal;
  }
  return kInternal;
}

void check(cf_status s) {
  if (s != CF_OK) throw Failure{exit_for(s), cf_status_name(s), cf_last_error_message()};
}

[[noreturn]] void invalid(const std::string& msg) { throw Failure{kInvalid, "invalid_input", msg}; }

template <class T, void (*F)(T*)>
struct Deleter {
  void operator()(T* p) const { F(p); }
};
using Poly = std::unique_ptr<cf_poly, Deleter<cf_poly, cf_poly_free>>;
using Seed = std::unique_ptr<cf_seed, Deleter<cf_seed, cf_seed_free>>;
using Class = std::unique_ptr<cf_class, Deleter<cf_class, cf_class_free>>;
using Matrix = std::unique_ptr<cf_nmatrix, Deleter<cf_nmatrix, cf_nmatrix_free>>;
using Module = std::unique_ptr<cf_module, Deleter<cf_module, cf_module_free>>;

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  cf_string_free(s);
  return out;
}

json take_json(char* s) { return json::parse(take(s)); }

std::string poly_text(const cf_poly* p) {
  char* s = nullptr;
  check(cf_poly_to_string(p, &s));
  return take(s);
}

std::vector<std::size_t> parse_list(const std::string& text, const std::string& what) {
  std::vector<std::size_t> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != item.size()) invalid(what + ": '" + item + "' is not a positive integer");
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::vector<const char*> c_strs(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void require_file(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) invalid("no such file '" + path + "'");
}

void require_writable(const std::string& path) {
  const auto dir = std::filesystem::absolute(path).parent_path();
  if (!std::filesystem::is_directory(dir)) invalid("output directory does not exist for '" + path + "'");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) invalid("cannot write '" + path + "'");
  out << text;
}

// Seed source: a JSON file or builtin:<name>.
Seed load_seed(const std::string& src, int n) {
  cf_seed* s = nullptr;
  if (src.rfind("builtin:", 0) == 0) {
    check(cf_seed_builtin(src.substr(8).c_str(), n, &s));
  } else {
    require_file(src);
    check(cf_seed_from_json(read_file(src).c_str(), &s));
  }
  return Seed(s);
}

// Module source: a JSON file, injective:<type>:<i>, simple:<type>:<i> or
// builtin:<name>.
Module load_module(const std::string& src) {
  cf_module* m = nullptr;
  auto parts = [&](const std::string& prefix) {
    auto rest = src.substr(prefix.size());
    auto colon = rest.find(':');
    if (colon == std::string::npos) invalid("module source '" + src + "' needs <type>:<vertex>");
    auto v = parse_list(rest.substr(colon + 1), "vertex");
    if (v.size() != 1) invalid("module source '" + src + "' needs one vertex");
    return std::pair{rest.substr(0, colon), v[0]};
  };
  if (src.rfind("injective:", 0) == 0) {
    auto [t, v] = parts("injective:");
    check(cf_module_injective(t.c_str(), v, &m));
  } else if (src.rfind("simple:", 0) == 0) {
    auto [t, v] = parts("simple:");
    check(cf_module_simple(t.c_str(), v, &m));
  } else if (src.rfind("builtin:", 0) == 0) {
    check(cf_module_builtin(src.substr(8).c_str(), &m));
  } else {
    require_file(src);
    check(cf_module_from_json(read_file(src).c_str(), &m));
  }
  return Module(m);
}

void validate_module_source(const std::string& src) {
  for (const char* p : {"injective:", "simple:", "builtin:"})
    if (src.rfind(p, 0) == 0) return;
  require_file(src);
}

std::string module_layers(const cf_module* m) {
  char* s = nullptr;
  check(cf_module_layers(m, &s));
  return take(s);
}

json module_json(const cf_module* m) {
  char* s = nullptr;
  check(cf_module_to_json(m, &s));
  return take_json(s);
}

json module_summary(const cf_module* m) {
  char* d = nullptr;
  check(cf_module_dims(m, &d));
  return {{"dims", take_json(d)}, {"layers", module_layers(m)}, {"module", module_json(m)}};
}

std::string join(const json& arr, const std::string& sep = ",") {
  std::string s;
  for (const auto& x : arr) s += (s.empty() ? "" : sep) + (x.is_string() ? x.get<std::string>() : x.dump());
  return s;
}

std::string matrix_text(const json& rows) {
  std::string s;
  for (const auto& r : rows) s += "  [" + join(r, ", ") + "]\n";
  return s;
}

struct Output {
  json result = json::object();
  std::ostringstream text;
  int exit = kOk;
};

// Options shared by several commands.
struct Opts {
  std::string seed_src, dot, word, params, type, rows, cols, K, module, m, n, x, y, out, case_name, suite, rigid,
      point, request, builtin;
  int quadric_n = 0, degree = 2, n_min = 4, n_max = 7, random_points = 0;
  std::size_t direction = 0, vertex = 0, max_seeds = 0, max_depth = 0, generic = 0;
  bool dagger = false;
};

// cluster

void cmd_cluster_mutate(const Opts& o, Output& out) {
  auto seed = load_seed(o.seed_src, o.quadric_n);
  cf_seed* next = nullptr;
  check(cf_seed_mutate(seed.get(), o.direction, &next));
  Seed mutated(next);
  char* js = nullptr;
  check(cf_seed_to_json(mutated.get(), &js));
  json sj = take_json(js);
  cf_poly* v = nullptr;
  check(cf_seed_variable(mutated.get(), o.direction, &v));
  Poly var(v);
  const std::string label = sj["labels"][o.direction - 1].get<std::string>();
  out.result = {{"direction", o.direction}, {"matrix", sj["matrix"]}, {"new_variable", {{"label", label}, {"value", poly_text(var.get())}}}, {"seed", sj}};
  out.text << "mutated matrix (direction " << o.direction << "):\n" << matrix_text(sj["matrix"]);
  out.text << label << " = " << poly_text(var.get()) << "\n";
}

Class explore_class(const Opts& o) {
  auto seed = load_seed(o.seed_src, o.quadric_n);
  cf_class* c = nullptr;
  check(cf_explore(seed.get(), o.max_seeds, o.max_depth, &c));
  return Class(c);
}

void cmd_cluster_explore(const Opts& o, Output& out) {
  if (!o.dot.empty()) require_writable(o.dot);
  auto c = explore_class(o);
  char* js = nullptr;
  check(cf_class_to_json(c.get(), &js));
  json cj = take_json(js);
  if (!o.dot.empty()) {
    char* dot = nullptr;
    check(cf_class_to_dot(c.get(), &dot));
    write_file(o.dot, take(dot));
  }
  out.result = cj;
  out.text << "clusters: " << cj["clusters"] << "\n"
           << "cluster variables: " << cj["variable_count"] << "\n"
           << "exhausted: " << (cj["exhausted"].get<bool>() ? "yes" : "no") << "\n";
  for (const auto& v : cj["variables"]) out.text << "  " << v.get<std::string>() << "\n";
  if (!o.dot.empty()) out.text << "dot: " << o.dot << "\n";
  if (!cj["exhausted"].get<bool>()) out.exit = kResource;
}

void cmd_cluster_finite(const Opts& o, Output& out) {
  auto c = explore_class(o);
  std::size_t clusters = 0, vars = 0;
  int exhausted = 0;
  check(cf_class_counts(c.get(), &clusters, &vars, &exhausted));
  out.result = {{"finite", exhausted != 0}, {"exhausted", exhausted != 0}, {"clusters", clusters}, {"cluster_variables", vars}};
  if (exhausted)
    out.text << "finite type: " << clusters << " clusters, " << vars << " cluster variables\n";
  else
    out.text << "undecided: limits reached after " << clusters << " clusters\n";
}

void cmd_cluster_monomials(const Opts& o, Output& out) {
  auto c = explore_class(o);
  char* js = nullptr;
  check(cf_class_monomials(c.get(), o.degree, &js));
  json mj = take_json(js);
  out.result = {{"degree_bound", o.degree}, {"count", mj.size()}, {"monomials", mj}};
  out.text << mj.size() << " cluster monomials of degree <= " << o.degree << "\n";
  for (const auto& m : mj) out.text << "  " << m["value"].get<std::string>() << "\n";
}

// nmatrix

Matrix build_matrix(const Opts& o) {
  cf_nmatrix* m = nullptr;
  if (o.generic) {
    check(cf_nmatrix_generic(o.generic, "n", &m));
    return Matrix(m);
  }
  if (o.type.empty() || o.word.empty()) invalid("give --type and --word, or --generic");
  const auto letters = parse_list(o.word, "word");
  const auto params = split(o.params);
  if (!params.empty() && params.size() != letters.size()) invalid("--params needs one name per letter");
  const auto cp = c_strs(params);
  check(cf_nmatrix_product(o.type.c_str(), letters.data(), letters.size(), params.empty() ? nullptr : cp.data(), &m));
  return Matrix(m);
}

void cmd_nmatrix_product(const Opts& o, Output& out) {
  auto m = build_matrix(o);
  char* js = nullptr;
  check(cf_nmatrix_to_json(m.get(), &js));
  out.result = take_json(js);
  std::size_t size = 0;
  check(cf_nmatrix_size(m.get(), &size));
  for (std::size_t i = 1; i <= size; ++i)
    for (std::size_t j = i + 1; j <= size; ++j) {
      cf_poly* e = nullptr;
      check(cf_nmatrix_entry(m.get(), i, j, &e));
      Poly p(e);
      out.text << "(" << i << "," << j << ") " << poly_text(p.get()) << "\n";
    }
}

void cmd_nmatrix_minor(const Opts& o, Output& out) {
  const auto rows = parse_list(o.rows, "rows"), cols = parse_list(o.cols, "cols");
  if (rows.size() != cols.size()) invalid("--rows and --cols differ in length");
  auto m = build_matrix(o);
  cf_poly* p = nullptr;
  check(cf_nmatrix_minor(m.get(), rows.data(), cols.data(), rows.size(), &p));
  Poly minor(p);
  char* js = nullptr;
  check(cf_poly_to_json(minor.get(), &js));
  out.result = {{"rows", rows}, {"cols", cols}, {"polynomial", poly_text(minor.get())}, {"value", take_json(js)}};
  out.text << "minor rows " << join(json(rows)) << " cols " << join(json(cols)) << ": " << poly_text(minor.get()) << "\n";
}

void cmd_nmatrix_quadric(const Opts& o, Output& out) {
  auto m = build_matrix(o);
  int holds = 0;
  char* w = nullptr;
  check(cf_nmatrix_quadric_check(m.get(), &holds, &w));
  const std::string witness = take(w);
  out.result = {{"holds", holds != 0}, {"witness", witness}};
  out.text << "quadric relation on row 1: " << (holds ? "holds" : "fails at " + witness) << "\n";
  if (!holds) out.exit = kVerification;
}

// prepmod

void cmd_injective(const Opts& o, Output& out) {
  if (!o.out.empty()) require_writable(o.out);
  cf_module* m = nullptr;
  check(cf_module_injective(o.type.c_str(), o.vertex, &m));
  Module q(m);
  out.result = module_summary(q.get());
  if (!o.out.empty()) write_file(o.out, module_json(q.get()).dump(2) + "\n");
  out.text << "Q" << o.vertex << " in " << o.type << ": " << out.result["layers"].get<std::string>() << "\n"
           << "dims: " << join(out.result["dims"]) << "\n";
}

void cmd_efunctor(const Opts& o, Output& out) {
  validate_module_source(o.module);
  if (!o.out.empty()) require_writable(o.out);
  const auto word = parse_list(o.word, "word");
  auto m = load_module(o.module);
  cf_module* r = nullptr;
  check(cf_module_efunctor(m.get(), word.data(), word.size(), o.dagger, &r));
  Module res(r);
  out.result = module_summary(res.get());
  out.result["word"] = word;
  out.result["dagger"] = o.dagger;
  if (!o.out.empty()) write_file(o.out, module_json(res.get()).dump(2) + "\n");
  out.text << (o.dagger ? "E-dagger" : "E") << "_{" << o.word << "}: " << out.result["layers"].get<std::string>() << "\n"
           << "dims: " << join(out.result["dims"]) << "\n";
}

void cmd_hom_ext(const Opts& o, Output& out, bool ext) {
  validate_module_source(o.m);
  validate_module_source(o.n);
  auto a = load_module(o.m), b = load_module(o.n);
  std::size_t d = 0;
  check(ext ? cf_module_ext1_dim(a.get(), b.get(), &d) : cf_module_hom_dim(a.get(), b.get(), &d));
  const char* what = ext ? "ext1_dim" : "hom_dim";
  out.result = {{what, d}};
  out.text << what << " = " << d << "\n";
}

void cmd_rigid(const Opts& o, Output& out) {
  validate_module_source(o.module);
  auto m = load_module(o.module);
  int rigid = 0;
  check(cf_module_is_rigid(m.get(), &rigid));
  std::size_t e = 0;
  check(cf_module_ext1_dim(m.get(), m.get(), &e));
  out.result = {{"rigid", rigid != 0}, {"ext1_self", e}, {"layers", module_layers(m.get())}};
  out.text << module_layers(m.get()) << ": " << (rigid ? "rigid" : "not rigid") << " (ext1 = " << e << ")\n";
}

void cmd_build_rigid(const Opts& o, Output& out) {
  const auto K = parse_list(o.K, "K"), word = parse_list(o.word, "word");
  char* js = nullptr;
  check(cf_build_rigid(o.type.c_str(), K.data(), K.size(), word.data(), word.size(), &js));
  out.result = take_json(js);
  const auto& r = out.result;
  out.text << "r = " << r["r"] << ", r_K = " << r["r_K"] << ", summands = " << r["summands"].size() << "\n";
  for (const auto& s : r["summands"]) out.text << "  " << s["name"].get<std::string>() << ": " << s["layers"].get<std::string>() << "\n";
  if (!r["vanished"].empty()) out.text << "vanished: M_" << join(r["vanished"], ", M_") << "\n";
}

void cmd_exchange_matrix(const Opts& o, Output& out) {
  std::string req;
  if (!o.request.empty()) {
    require_file(o.request);
    req = read_file(o.request);
  } else {
    req = json{{"builtin", o.builtin.empty() ? "d4-example" : o.builtin}}.dump();
  }
  char* js = nullptr;
  check(cf_exchange_matrix(req.c_str(), &js));
  out.result = take_json(js);
  out.text << "B(T):\n" << matrix_text(out.result["matrix"]);
  if (!out.result["extension"].empty()) out.text << "extension rows:\n" << matrix_text(out.result["extension"]);
}

// phi

void cmd_phi_eval(const Opts& o, Output& out) {
  validate_module_source(o.module);
  const auto letters = parse_list(o.word, "word");
  const auto params = split(o.params);
  if (!params.empty() && params.size() != letters.size()) invalid("--params needs one name per letter");
  auto m = load_module(o.module);
  const auto cp = c_strs(params);
  char* js = nullptr;
  check(cf_phi_eval(m.get(), letters.data(), letters.size(), params.empty() ? nullptr : cp.data(), &js));
  out.result = take_json(js);
  out.text << "phi = " << out.result["polynomial"].get<std::string>() << "\n"
           << "backend: " << out.result["backend"].get<std::string>();
  if (!out.result["primes_used"].empty()) out.text << " (primes " << join(out.result["primes_used"]) << ")";
  out.text << "\n";
}

void cmd_phi_chi(const Opts& o, Output& out) {
  validate_module_source(o.module);
  const auto word = parse_list(o.word, "type");
  auto m = load_module(o.module);
  char* js = nullptr;
  check(cf_phi_chi(m.get(), word.data(), word.size(), &js));
  out.result = take_json(js);
  out.text << "chi = " << out.result["value"].get<std::string>() << " [" << out.result["backend"].get<std::string>() << "]\n";
}

json run_case(const std::string& name, const Opts& o, std::uint64_t seed) {
  json opt{{"seed", seed}, {"quadric_min", o.n_min}, {"quadric_max", o.n_max}};
  char* js = nullptr;
  check(cf_case_run(name.c_str(), opt.dump().c_str(), &js));
  return take_json(js);
}

void print_case(const json& r, std::ostream& os) {
  os << r["case"].get<std::string>() << ": " << (r["passed"].get<bool>() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : r["checks"])
    os << "  [" << (c["passed"].get<bool>() ? "ok" : "FAIL") << "] " << c["name"].get<std::string>() << " -- "
       << c["detail"].get<std::string>() << "\n";
}

void cmd_phi_verify(const Opts& o, Output& out, std::uint64_t seed) {
  out.result = run_case(o.case_name, o, seed);
  print_case(out.result, out.text);
  if (!out.result["passed"].get<bool>()) out.exit = kVerification;
}

void cmd_phi_positivity(const Opts& o, Output& out, std::uint64_t seed) {
  constexpr std::size_t kPoint = 12;
  std::vector<std::vector<std::string>> points;
  if (o.random_points > 0) {
    std::mt19937_64 rng(seed);
    for (int k = 0; k < o.random_points; ++k) {
      std::vector<std::string> p;
      for (std::size_t i = 0; i < kPoint; ++i)
        p.push_back(std::to_string(1 + rng() % 100) + "/" + std::to_string(1 + rng() % 100));
      points.push_back(p);
    }
  } else {
    points.push_back(o.point.empty() ? std::vector<std::string>(kPoint, "1") : split(o.point));
  }
  json reports = json::array();
  bool all = true;
  for (const auto& p : points) {
    const auto cp = c_strs(p);
    char* js = nullptr;
    check(cf_phi_positivity(o.rigid.c_str(), cp.data(), cp.size(), &js));
    json r = take_json(js);
    all = all && r["all_positive"].get<bool>();
    out.text << "point (" << join(r["point"]) << "):\n";
    for (const auto& c : r["clusters"]) {
      out.text << "  " << c["cluster"].get<std::string>() << ": " << (c["all_positive"].get<bool>() ? "positive" : "NOT positive") << "\n";
      for (const auto& v : c["values"]) out.text << "    " << v["value"].get<std::string>() << "\n";
    }
    reports.push_back(r);
  }
  out.result = {{"rigid", o.rigid}, {"all_positive", all}, {"points", reports}};
  if (!all) out.exit = kVerification;
}

void cmd_verify_all(const Opts& o, Output& out, std::uint64_t seed) {
  if (o.suite != "paper-golden") invalid("unknown suite '" + o.suite + "'");
  char* js = nullptr;
  check(cf_case_names(&js));
  json cases = json::array();
  std::size_t passed = 0, failed = 0;
  for (const auto& name : take_json(js)) {
    json r = run_case(name.get<std::string>(), o, seed);
    for (const auto& c : r["checks"]) (c["passed"].get<bool>() ? passed : failed)++;
    print_case(r, out.text);
    cases.push_back(r);
  }
  out.result = {{"suite", o.suite}, {"passed", passed}, {"failed", failed}, {"cases", cases}};
  out.text << "checks passed: " << passed << ", failed: " << failed << "\n";
  if (failed) out.exit = kVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clusterforge: cluster algebras and preprojective-algebra modules"};
  app.require_subcommand(1);
  bool as_json = false;
  std::uint64_t seed = 0;
  app.add_flag("--json", as_json, "Print a JSON report");
  app.add_option("--rng-seed", seed, "Seed for randomized steps")->capture_default_str();

  Opts o;
  std::string command;
  std::function<void(Output&)> action;
  auto bind = [&](CLI::App* sub, const std::string& name, std::function<void(Output&)> fn) {
    sub->callback([&, name, fn] {
      command = name;
      action = fn;
    });
  };

  auto* cluster = app.add_subcommand("cluster", "Seeds, mutation and exploration")->require_subcommand(1);
  auto seed_opts = [&](CLI::App* s) {
    s->add_option("--seed", o.seed_src, "Seed JSON file or builtin:<name>")->required();
    s->add_option("--n", o.quadric_n, "Size parameter for builtin:quadric");
  };
  auto limit_opts = [&](CLI::App* s) {
    s->add_option("--max-seeds", o.max_seeds, "Exploration seed limit (default 100000)");
    s->add_option("--max-depth", o.max_depth, "Exploration depth limit (default 64)");
  };
  auto* mutate = cluster->add_subcommand("mutate", "Mutate a seed in one direction");
  seed_opts(mutate);
  mutate->add_option("--direction", o.direction, "Direction k (1-based)")->required();
  bind(mutate, "cluster mutate", [&](Output& out) { cmd_cluster_mutate(o, out); });
  auto* explore = cluster->add_subcommand("explore", "Explore the mutation class");
  seed_opts(explore);
  limit_opts(explore);
  explore->add_option("--dot", o.dot, "Write the exchange graph in DOT format");
  bind(explore, "cluster explore", [&](Output& out) { cmd_cluster_explore(o, out); });
  auto* finite = cluster->add_subcommand("finite-type", "Decide finite type within limits");
  seed_opts(finite);
  limit_opts(finite);
  bind(finite, "cluster finite-type", [&](Output& out) { cmd_cluster_finite(o, out); });
  auto* monos = cluster->add_subcommand("monomials", "List cluster monomials up to a degree");
  seed_opts(monos);
  limit_opts(monos);
  monos->add_option("--degree", o.degree, "Total degree bound")->capture_default_str();
  bind(monos, "cluster monomials", [&](Output& out) { cmd_cluster_monomials(o, out); });

  auto* nmatrix = app.add_subcommand("nmatrix", "Unitriangular matrix realizations")->require_subcommand(1);
  auto matrix_opts = [&](CLI::App* s) {
    s->add_option("--type", o.type, "Dynkin type, A_n or D_n");
    s->add_option("--word", o.word, "Letters, e.g. 1,2,1");
    s->add_option("--params", o.params, "Parameter names (default t1,t2,...)");
    s->add_option("--generic", o.generic, "Use the generic unitriangular matrix of this size instead");
  };
  auto* product = nmatrix->add_subcommand("product", "x_{i_1}(t_1)...x_{i_k}(t_k)");
  matrix_opts(product);
  bind(product, "nmatrix product", [&](Output& out) { cmd_nmatrix_product(o, out); });
  auto* minor = nmatrix->add_subcommand("minor", "A minor of the product");
  matrix_opts(minor);
  minor->add_option("--rows", o.rows, "Row indices")->required();
  minor->add_option("--cols", o.cols, "Column indices")->required();
  bind(minor, "nmatrix minor", [&](Output& out) { cmd_nmatrix_minor(o, out); });
  auto* quadric = nmatrix->add_subcommand("quadric-check", "Quadric relation on the first row (type D)");
  matrix_opts(quadric);
  bind(quadric, "nmatrix quadric-check", [&](Output& out) { cmd_nmatrix_quadric(o, out); });

  auto* prepmod = app.add_subcommand("prepmod", "Modules over preprojective algebras")->require_subcommand(1);
  const std::string module_help = "Module JSON file, injective:<type>:<i>, simple:<type>:<i> or builtin:d4-nonrigid";
  auto* inj = prepmod->add_subcommand("injective", "Indecomposable injective Q_i");
  inj->add_option("--type", o.type, "Dynkin type")->required();
  inj->add_option("--vertex", o.vertex, "Vertex i")->required();
  inj->add_option("--out", o.out, "Write the module JSON here");
  bind(inj, "prepmod injective", [&](Output& out) { cmd_injective(o, out); });
  auto* ef = prepmod->add_subcommand("efunctor", "Apply E_w or its dagger (last letter first)");
  ef->add_option("--module", o.module, module_help)->required();
  ef->add_option("--word", o.word, "Letters")->required();
  ef->add_flag("--dagger", o.dagger, "Use the dagger functors");
  ef->add_option("--out", o.out, "Write the module JSON here");
  bind(ef, "prepmod efunctor", [&](Output& out) { cmd_efunctor(o, out); });
  auto* hom = prepmod->add_subcommand("hom", "dim Hom(M, N)");
  hom->add_option("--m", o.m, module_help)->required();
  hom->add_option("--n", o.n, module_help)->required();
  bind(hom, "prepmod hom", [&](Output& out) { cmd_hom_ext(o, out, false); });
  auto* ext = prepmod->add_subcommand("ext", "dim Ext^1(M, N)");
  ext->add_option("--m", o.m, module_help)->required();
  ext->add_option("--n", o.n, module_help)->required();
  bind(ext, "prepmod ext", [&](Output& out) { cmd_hom_ext(o, out, true); });
  auto* rigid = prepmod->add_subcommand("rigid", "Rigidity test");
  rigid->add_option("--module", o.module, module_help)->required();
  bind(rigid, "prepmod rigid", [&](Output& out) { cmd_rigid(o, out); });
  auto* build = prepmod->add_subcommand("build-rigid", "Complete rigid module from a reduced word");
  build->add_option("--type", o.type, "Dynkin type")->required();
  build->add_option("--K", o.K, "Vertex subset K (may be empty)");
  build->add_option("--word", o.word, "Reduced word for w_0")->required();
  bind(build, "prepmod build-rigid", [&](Output& out) { cmd_build_rigid(o, out); });
  auto* exm = prepmod->add_subcommand("exchange-matrix", "B(T) from exchange-sequence data");
  exm->add_option("--request", o.request, "JSON request file");
  exm->add_option("--builtin", o.builtin, "Built-in data (d4-example)");
  bind(exm, "prepmod exchange-matrix", [&](Output& out) { cmd_exchange_matrix(o, out); });

  auto* phi = app.add_subcommand("phi", "The functions phi_M")->require_subcommand(1);
  auto* eval = phi->add_subcommand("eval", "phi_M(x_{i_1}(t_1)...x_{i_k}(t_k))");
  eval->add_option("--module", o.module, module_help)->required();
  eval->add_option("--word", o.word, "Letters")->required();
  eval->add_option("--params", o.params, "Parameter names (default t1,t2,...)");
  bind(eval, "phi eval", [&](Output& out) { cmd_phi_eval(o, out); });
  auto* chi = phi->add_subcommand("chi", "Euler characteristic of composition series of a type");
  chi->add_option("--module", o.module, module_help)->required();
  chi->add_option("--type,--word", o.word, "Composition series type, e.g. 1,2,1")->required();
  bind(chi, "phi chi", [&](Output& out) { cmd_phi_chi(o, out); });
  auto* verify = phi->add_subcommand("verify", "Run a named verification case");
  verify->add_option("--case", o.case_name, "a2-thm61, a3-plucker, d4-exercise55, d4-example152 or quadric-n")->required();
  verify->add_option("--n-min", o.n_min, "Smallest quadric n")->capture_default_str();
  verify->add_option("--n-max", o.n_max, "Largest quadric n")->capture_default_str();
  bind(verify, "phi verify", [&](Output& out) { cmd_phi_verify(o, out, seed); });
  auto* pos = phi->add_subcommand("positivity", "Evaluate the cluster functions at positive points");
  pos->add_option("--rigid", o.rigid, "Rigid example (d4-example)")->required();
  pos->add_option("--point", o.point, "Twelve positive rationals (default all 1)");
  pos->add_option("--random", o.random_points, "Use this many random positive points instead");
  bind(pos, "phi positivity", [&](Output& out) { cmd_phi_positivity(o, out, seed); });

  auto* verify_cmd = app.add_subcommand("verify", "Verification suites")->require_subcommand(1);
  auto* all = verify_cmd->add_subcommand("all", "Run every built-in case");
  all->add_option("--suite", o.suite, "Suite name")->default_val("paper-golden");
  all->add_option("--n-min", o.n_min, "Smallest quadric n")->capture_default_str();
  all->add_option("--n-max", o.n_max, "Largest quadric n")->capture_default_str();
  bind(all, "verify all", [&](Output& out) { cmd_verify_all(o, out, seed); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  Output out;
  json report{{"schema", kSchema}, {"command", command}, {"rng_seed", seed}};
  try {
    action(out);
    report["result"] = out.result;
  } catch (const Failure& f) {
    out.exit = f.exit;
    report["error"] = {{"status", f.status}, {"message", f.message}};
    if (!as_json) std::cerr << "error (" << f.status << "): " << f.message << "\n";
  }
  report["exit_code"] = out.exit;
  if (as_json) {
    std::cout << report.dump(2) << "\n";
  } else if (!report.contains("error")) {
    std::cout << out.text.str() << "rng seed: " << seed << "\n";
  }
  return out.exit;
}
