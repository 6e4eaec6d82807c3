#include "clusterforge/clusterforge.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <utility>

#include "clusterforge/cases.hpp"
#include "clusterforge/cluster.hpp"
#include "clusterforge/error.hpp"
#include "clusterforge/json_io.hpp"
#include "clusterforge/laurent.hpp"
#include "clusterforge/nmatrix.hpp"
#include "clusterforge/phi.hpp"
#include "clusterforge/prepmod.hpp"

struct cf_poly {
  cf::LaurentPoly p;
};
struct cf_seed {
  cf::cluster::Seed s;
};
struct cf_class {
  cf::cluster::MutationClass c;
};
struct cf_nmatrix {
  cf::nmat::NMatrix m;
};
struct cf_module {
  cf::prep::QRep m;
};

namespace {

using cf::io::json;

thread_local std::string g_error;

cf_status fail(cf_status s, std::string msg) {
  g_error = std::move(msg);
  return s;
}

cf_status from_code(cf::ErrorCode c) {
  switch (c) {
    case cf::ErrorCode::ok: return CF_OK;
    case cf::ErrorCode::invalid_input: return CF_ERR_INVALID_INPUT;
    case cf::ErrorCode::verification_failed: return CF_ERR_VERIFICATION;
    case cf::ErrorCode::resource_limit: return CF_ERR_RESOURCE_LIMIT;
    case cf::ErrorCode::undetermined: return CF_ERR_UNDETERMINED;
    case cf::ErrorCode::inexact_division: return CF_ERR_INEXACT_DIVISION;
    case cf::ErrorCode::internal: return CF_ERR_INTERNAL;
  }
  return CF_ERR_INTERNAL;
}

template <class Fn>
cf_status guarded(Fn&& fn) {
  try {
    fn();
    return CF_OK;
  } catch (const cf::Error& e) {
    return fail(from_code(e.code()), e.what());
  } catch (const json::exception& e) {
    return fail(CF_ERR_INVALID_INPUT, std::string("JSON: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(CF_ERR_RESOURCE_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return fail(CF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CF_ERR_INTERNAL, "unknown exception");
  }
}

template <class... P>
void require(const P*... ptrs) {
  if (((ptrs == nullptr) || ...)) throw cf::InvalidInput("null argument");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

char* dup(const json& j) { return dup(j.dump()); }

std::vector<std::size_t> to_vec(const size_t* p, size_t n) {
  if (n > 0 && !p) throw cf::InvalidInput("null array");
  return std::vector<std::size_t>(p, p + n);
}

cf::nmat::Word make_word(const size_t* letters, size_t n, const char* const* params) {
  if (n == 0) throw cf::InvalidInput("empty word");
  auto w = cf::nmat::Word::with_default_params(to_vec(letters, n));
  if (params)
    for (size_t k = 0; k < n; ++k) {
      if (!params[k]) throw cf::InvalidInput("null parameter name");
      w.params[k] = params[k];
    }
  return w;
}

cf::Rational parse_rational(const std::string& s) {
  cf::Rational r;
  if (s.empty() || r.set_str(s, 10) != 0 || sgn(r.get_den()) == 0)
    throw cf::InvalidInput("bad rational '" + s + "'");
  r.canonicalize();
  return r;
}

json phi_json(const cf::phi::PhiResult& r) {
  json table = json::array();
  for (const auto& e : r.table.entries)
    table.push_back({{"word", e.expanded_word},
                     {"multiplicities", e.multiplicities},
                     {"chi", e.chi.get_str()},
                     {"coefficient", e.coefficient.get_str()}});
  return {{"value", cf::io::poly_to_json(r.value)},
          {"polynomial", r.value.to_string()},
          {"backend", cf::phi::backend_name(r.table.backend)},
          {"primes_used", r.table.primes_used},
          {"table", table}};
}

json identity_json(const cf::phi::IdentityCheck& c) { return {{"holds", c.holds}, {"witness", c.witness}}; }

}  // namespace

extern "C" {

const char* cf_version(void) { return "1.0.0"; }

const char* cf_status_name(cf_status s) {
  switch (s) {
    case CF_OK: return "ok";
    case CF_ERR_INVALID_INPUT: return "invalid_input";
    case CF_ERR_VERIFICATION: return "verification_failed";
    case CF_ERR_RESOURCE_LIMIT: return "resource_limit";
    case CF_ERR_UNDETERMINED: return "undetermined";
    case CF_ERR_INEXACT_DIVISION: return "inexact_division";
    case CF_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* cf_last_error_message(void) { return g_error.c_str(); }

void cf_string_free(char* s) { std::free(s); }

// Polynomials

cf_status cf_poly_parse(const char* const* var_names, size_t nvars, const char* text, cf_poly** out) {
  return guarded([&] {
    require(text, out);
    std::vector<std::string> names;
    for (size_t i = 0; i < nvars; ++i) {
      require(var_names, var_names[i]);
      names.emplace_back(var_names[i]);
    }
    *out = new cf_poly{cf::parse_laurent(cf::make_vars(std::move(names)), text)};
  });
}

cf_status cf_poly_from_json(const char* text, cf_poly** out) {
  return guarded([&] {
    require(text, out);
    *out = new cf_poly{cf::io::poly_from_json(json::parse(text))};
  });
}

cf_status cf_poly_to_json(const cf_poly* p, char** out) {
  return guarded([&] {
    require(p, out);
    *out = dup(cf::io::poly_to_json(p->p));
  });
}

cf_status cf_poly_to_string(const cf_poly* p, char** out) {
  return guarded([&] {
    require(p, out);
    *out = dup(p->p.to_string());
  });
}

cf_status cf_poly_add(const cf_poly* a, const cf_poly* b, cf_poly** out) {
  return guarded([&] {
    require(a, b, out);
    *out = new cf_poly{cf::add(a->p, b->p)};
  });
}

cf_status cf_poly_sub(const cf_poly* a, const cf_poly* b, cf_poly** out) {
  return guarded([&] {
    require(a, b, out);
    *out = new cf_poly{a->p - b->p};
  });
}

cf_status cf_poly_mul(const cf_poly* a, const cf_poly* b, cf_poly** out) {
  return guarded([&] {
    require(a, b, out);
    *out = new cf_poly{cf::mul(a->p, b->p)};
  });
}

cf_status cf_poly_div_exact(const cf_poly* a, const cf_poly* b, cf_poly** out) {
  return guarded([&] {
    require(a, b, out);
    *out = new cf_poly{cf::div_exact(a->p, b->p)};
  });
}

cf_status cf_poly_pow(const cf_poly* p, int e, cf_poly** out) {
  return guarded([&] {
    require(p, out);
    *out = new cf_poly{p->p.pow(e)};
  });
}

cf_status cf_poly_equal(const cf_poly* a, const cf_poly* b, int* out) {
  return guarded([&] {
    require(a, b, out);
    *out = cf::same_ring(a->p.vars(), b->p.vars()) && a->p == b->p;
  });
}

cf_status cf_poly_evaluate(const cf_poly* p, const char* point_json, char** out) {
  return guarded([&] {
    require(p, point_json, out);
    const json j = json::parse(point_json);
    if (!j.is_object()) throw cf::InvalidInput("point must be a JSON object");
    cf::RationalPoint pt;
    for (const auto& [k, v] : j.items()) pt[k] = parse_rational(v.is_string() ? v.get<std::string>() : v.dump());
    *out = dup(cf::evaluate(p->p, pt).get_str());
  });
}

void cf_poly_free(cf_poly* p) { delete p; }

// Seeds

cf_status cf_seed_builtin(const char* name, int n, cf_seed** out) {
  return guarded([&] {
    require(name, out);
    *out = new cf_seed{cf::cluster::builtin_seed(name, n)};
  });
}

cf_status cf_seed_from_json(const char* text, cf_seed** out) {
  return guarded([&] {
    require(text, out);
    *out = new cf_seed{cf::io::seed_from_json(json::parse(text))};
  });
}

cf_status cf_seed_to_json(const cf_seed* s, char** out) {
  return guarded([&] {
    require(s, out);
    *out = dup(cf::io::seed_to_json(s->s));
  });
}

cf_status cf_seed_shape(const cf_seed* s, size_t* d, size_t* n) {
  return guarded([&] {
    require(s, d, n);
    *d = s->s.d();
    *n = s->s.matrix.n();
  });
}

cf_status cf_seed_mutate(const cf_seed* s, size_t k, cf_seed** out) {
  return guarded([&] {
    require(s, out);
    *out = new cf_seed{cf::cluster::mutate_seed(s->s, k)};
  });
}

cf_status cf_seed_variable(const cf_seed* s, size_t i, cf_poly** out) {
  return guarded([&] {
    require(s, out);
    if (i < 1 || i > s->s.d()) throw cf::InvalidInput("cluster index out of range");
    *out = new cf_poly{s->s.cluster[i - 1]};
  });
}

void cf_seed_free(cf_seed* s) { delete s; }

cf_status cf_explore(const cf_seed* s, size_t max_seeds, size_t max_depth, cf_class** out) {
  return guarded([&] {
    require(s, out);
    cf::cluster::ExploreLimits lim;
    if (max_seeds) lim.max_seeds = max_seeds;
    if (max_depth) lim.max_depth = max_depth;
    *out = new cf_class{cf::cluster::explore(s->s, lim)};
  });
}

cf_status cf_class_counts(const cf_class* c, size_t* clusters, size_t* variables, int* exhausted) {
  return guarded([&] {
    require(c, clusters, variables, exhausted);
    *clusters = c->c.cluster_count();
    *variables = c->c.variable_count();
    *exhausted = c->c.exhausted;
  });
}

cf_status cf_class_to_json(const cf_class* c, char** out) {
  return guarded([&] {
    require(c, out);
    json vars = json::array();
    for (const auto& v : c->c.variables) vars.push_back(v.to_string());
    json seeds = json::array();
    for (std::size_t i = 0; i < c->c.seeds.size(); ++i) {
      json cl = json::array();
      for (const auto& v : c->c.seeds[i].cluster) cl.push_back(v.to_string());
      json edges = json::array();
      for (const auto& e : c->c.edges[i]) edges.push_back(e ? json(*e) : json(nullptr));
      seeds.push_back({{"key", c->c.keys[i]}, {"depth", c->c.depth[i]}, {"cluster", cl}, {"edges", edges}});
    }
    *out = dup(json{{"exhausted", c->c.exhausted},
                    {"clusters", c->c.cluster_count()},
                    {"variable_count", c->c.variable_count()},
                    {"variables", vars},
                    {"seeds", seeds}});
  });
}

cf_status cf_class_to_dot(const cf_class* c, char** out) {
  return guarded([&] {
    require(c, out);
    *out = dup(cf::cluster::to_dot(c->c));
  });
}

cf_status cf_class_monomials(const cf_class* c, int degree_bound, char** out) {
  return guarded([&] {
    require(c, out);
    json arr = json::array();
    for (const auto& m : cf::cluster::cluster_monomials(c->c, degree_bound))
      arr.push_back({{"value", m.value.to_string()}, {"degree", m.degree}, {"cluster", m.cluster}, {"exponents", m.exponents}});
    *out = dup(arr);
  });
}

void cf_class_free(cf_class* c) { delete c; }

// Matrices

cf_status cf_nmatrix_product(const char* type, const size_t* letters, size_t nletters, const char* const* params,
                             cf_nmatrix** out) {
  return guarded([&] {
    require(type, out);
    const auto w = make_word(letters, nletters, params);
    *out = new cf_nmatrix{cf::nmat::product(cf::prep::DynkinType::parse(type), w)};
  });
}

cf_status cf_nmatrix_generic(size_t size, const char* stem, cf_nmatrix** out) {
  return guarded([&] {
    require(out);
    if (size < 1) throw cf::InvalidInput("matrix size must be positive");
    *out = new cf_nmatrix{cf::nmat::generic_unitriangular(size, stem ? stem : "n")};
  });
}

cf_status cf_nmatrix_size(const cf_nmatrix* m, size_t* out) {
  return guarded([&] {
    require(m, out);
    *out = m->m.size();
  });
}

cf_status cf_nmatrix_entry(const cf_nmatrix* m, size_t i, size_t j, cf_poly** out) {
  return guarded([&] {
    require(m, out);
    if (i < 1 || j < 1 || i > m->m.size() || j > m->m.size()) throw cf::InvalidInput("entry index out of range");
    *out = new cf_poly{m->m.at(i, j)};
  });
}

cf_status cf_nmatrix_minor(const cf_nmatrix* m, const size_t* rows, const size_t* cols, size_t k, cf_poly** out) {
  return guarded([&] {
    require(m, out);
    *out = new cf_poly{cf::nmat::minor(m->m, to_vec(rows, k), to_vec(cols, k))};
  });
}

cf_status cf_nmatrix_to_json(const cf_nmatrix* m, char** out) {
  return guarded([&] {
    require(m, out);
    *out = dup(cf::io::nmatrix_to_json(m->m));
  });
}

cf_status cf_nmatrix_quadric_check(const cf_nmatrix* m, int* holds, char** witness) {
  return guarded([&] {
    require(m, holds);
    const auto q = cf::nmat::quadric_form_on_row(m->m.row(1));
    char* w = witness ? dup(q.witness) : nullptr;
    *holds = q.holds;
    if (witness) *witness = w;
  });
}

void cf_nmatrix_free(cf_nmatrix* m) { delete m; }

// Modules

cf_status cf_module_injective(const char* type, size_t vertex, cf_module** out) {
  return guarded([&] {
    require(type, out);
    const auto t = cf::prep::DynkinType::parse(type);
    if (vertex < 1 || vertex > static_cast<size_t>(t.rank)) throw cf::InvalidInput("vertex out of range");
    *out = new cf_module{cf::prep::injective(t, vertex)};
  });
}

cf_status cf_module_simple(const char* type, size_t vertex, cf_module** out) {
  return guarded([&] {
    require(type, out);
    const auto q = cf::prep::make_quiver(cf::prep::DynkinType::parse(type));
    *out = new cf_module{cf::prep::simple(cf::RationalField{}, q, vertex)};
  });
}

cf_status cf_module_builtin(const char* name, cf_module** out) {
  return guarded([&] {
    require(name, out);
    if (std::string(name) != "d4-nonrigid") throw cf::InvalidInput(std::string("unknown module '") + name + "'");
    *out = new cf_module{cf::prep::d4_nonrigid_module()};
  });
}

cf_status cf_module_from_json(const char* text, cf_module** out) {
  return guarded([&] {
    require(text, out);
    *out = new cf_module{cf::io::module_from_json(json::parse(text))};
  });
}

cf_status cf_module_to_json(const cf_module* m, char** out) {
  return guarded([&] {
    require(m, out);
    *out = dup(cf::io::module_to_json(m->m));
  });
}

cf_status cf_module_layers(const cf_module* m, char** out) {
  return guarded([&] {
    require(m, out);
    *out = dup(cf::prep::layers_to_string(cf::prep::socle_layers(m->m)));
  });
}

cf_status cf_module_dims(const cf_module* m, char** out) {
  return guarded([&] {
    require(m, out);
    *out = dup(json(m->m.dims));
  });
}

cf_status cf_module_efunctor(const cf_module* m, const size_t* word, size_t nword, int dagger, cf_module** out) {
  return guarded([&] {
    require(m, out);
    *out = new cf_module{cf::prep::functor_E_word(m->m, to_vec(word, nword), dagger != 0)};
  });
}

cf_status cf_module_direct_sum(const cf_module* a, const cf_module* b, cf_module** out) {
  return guarded([&] {
    require(a, b, out);
    *out = new cf_module{cf::prep::direct_sum(a->m, b->m)};
  });
}

cf_status cf_module_hom_dim(const cf_module* a, const cf_module* b, size_t* out) {
  return guarded([&] {
    require(a, b, out);
    *out = cf::prep::hom_dim(a->m, b->m);
  });
}

cf_status cf_module_ext1_dim(const cf_module* a, const cf_module* b, size_t* out) {
  return guarded([&] {
    require(a, b, out);
    *out = cf::prep::ext1_dim(a->m, b->m);
  });
}

cf_status cf_module_is_rigid(const cf_module* m, int* out) {
  return guarded([&] {
    require(m, out);
    *out = cf::prep::is_rigid(m->m);
  });
}

cf_status cf_module_is_isomorphic(const cf_module* a, const cf_module* b, uint64_t seed, int* out) {
  return guarded([&] {
    require(a, b, out);
    *out = cf::prep::is_isomorphic(a->m, b->m, seed);
  });
}

cf_status cf_module_short_exact(const cf_module* a, const cf_module* b, const cf_module* c, uint64_t seed, int* out) {
  return guarded([&] {
    require(a, b, c, out);
    *out = cf::prep::has_short_exact_sequence(a->m, b->m, c->m, seed);
  });
}

void cf_module_free(cf_module* m) { delete m; }

cf_status cf_build_rigid(const char* type, const size_t* K, size_t nK, const size_t* word, size_t nword, char** out) {
  return guarded([&] {
    require(type, out);
    const auto r = cf::prep::build_complete_rigid(cf::prep::DynkinType::parse(type), to_vec(K, nK), to_vec(word, nword));
    json summands = json::array();
    for (const auto& s : r.summands)
      summands.push_back({{"name", s.name},
                          {"layers", cf::prep::layers_to_string(cf::prep::socle_layers(s.module))},
                          {"dims", s.module.dims},
                          {"module", cf::io::module_to_json(s.module)}});
    json q = json::object(), t = json::object();
    for (const auto& [k, v] : r.q) q[std::to_string(k)] = v;
    for (const auto& [k, v] : r.t) t[std::to_string(k)] = v;
    *out = dup(json{{"type", type},
                    {"K", r.K},
                    {"J", r.J},
                    {"r", r.r},
                    {"r_K", r.r_K},
                    {"q", q},
                    {"t", t},
                    {"vanished", r.vanished},
                    {"summands", summands}});
  });
}

cf_status cf_exchange_matrix(const char* request_json, char** out) {
  return guarded([&] {
    require(request_json, out);
    const json req = json::parse(request_json);
    std::vector<cf::prep::QRep> summands;
    std::vector<cf::prep::ExchangeSequence> seqs;
    std::vector<std::size_t> J;
    if (req.contains("builtin")) {
      if (req.at("builtin").get<std::string>() != "d4-example")
        throw cf::InvalidInput("unknown exchange-matrix example '" + req.at("builtin").get<std::string>() + "'");
      const auto& d = cf::cases::d4_flag();
      summands = d.seed_order;
      seqs = d.sequences;
      J = d.J;
    } else {
      for (const auto& m : req.at("summands")) summands.push_back(cf::io::module_from_json(m));
      for (const auto& s : req.at("sequences"))
        seqs.push_back({s.at("x").get<std::vector<std::size_t>>(), s.at("y").get<std::vector<std::size_t>>()});
      if (req.contains("J")) J = req.at("J").get<std::vector<std::size_t>>();
    }
    const auto r = cf::prep::exchange_matrix_from_sequences(summands, seqs, J);
    *out = dup(json{{"matrix", r.b.rows()}, {"extension", r.extension}, {"extended", r.extended().rows()}});
  });
}

// phi

cf_status cf_phi_eval(const cf_module* m, const size_t* letters, size_t nletters, const char* const* params,
                      char** out) {
  return guarded([&] {
    require(m, out);
    *out = dup(phi_json(cf::phi::phi_eval(m->m, make_word(letters, nletters, params))));
  });
}

cf_status cf_phi_chi(const cf_module* m, const size_t* word, size_t nword, char** out) {
  return guarded([&] {
    require(m, out);
    const auto r = cf::phi::chi(m->m, to_vec(word, nword));
    *out = dup(json{{"value", r.value.get_str()},
                    {"backend", cf::phi::backend_name(r.backend)},
                    {"primes_used", r.primes_used}});
  });
}

cf_status cf_phi_multiplication(const cf_module* m, const cf_module* n, const cf_module* x, const cf_module* y,
                                const size_t* letters, size_t nletters, char** out) {
  return guarded([&] {
    require(m, n, out);
    if ((x == nullptr) != (y == nullptr)) throw cf::InvalidInput("give both X and Y or neither");
    const auto w = make_word(letters, nletters, nullptr);
    const auto r = cf::phi::verify_multiplication(m->m, n->m, w, x ? &x->m : nullptr, y ? &y->m : nullptr);
    json j{{"direct_sum", identity_json(r.direct_sum)}};
    if (r.exchange) j["exchange"] = identity_json(*r.exchange);
    *out = dup(j);
  });
}

cf_status cf_phi_positivity(const char* rigid, const char* const* point, size_t npoint, char** out) {
  return guarded([&] {
    require(rigid, out);
    if (std::string(rigid) != "d4-example") throw cf::InvalidInput(std::string("unknown rigid example '") + rigid + "'");
    const auto w = cf::nmat::Word::with_default_params(cf::cases::kD4FlagWord);
    if (npoint != w.letters.size())
      throw cf::InvalidInput("point needs " + std::to_string(w.letters.size()) + " coordinates");
    std::vector<cf::Rational> pt;
    json pj = json::array();
    for (size_t k = 0; k < npoint; ++k) {
      require(point, point[k]);
      pt.push_back(parse_rational(point[k]));
      pj.push_back(pt.back().get_str());
    }
    json clusters = json::array();
    bool all = true;
    for (const auto& [name, summands] : cf::cases::d4_positivity_clusters()) {
      const auto r = cf::phi::positivity_check(summands, w, pt);
      json vals = json::array();
      for (std::size_t i = 0; i < r.values.size(); ++i)
        vals.push_back({{"function", r.functions[i].to_string()}, {"value", r.values[i].get_str()}, {"positive", bool(r.positive[i])}});
      clusters.push_back({{"cluster", name}, {"values", vals}, {"all_positive", r.all_positive}});
      all = all && r.all_positive;
    }
    *out = dup(json{{"word", w.letters}, {"point", pj}, {"clusters", clusters}, {"all_positive", all}});
  });
}

// Cases

cf_status cf_case_names(char** out) {
  return guarded([&] {
    require(out);
    *out = dup(json(cf::cases::case_names()));
  });
}

cf_status cf_case_run(const char* name, const char* options_json, char** out) {
  return guarded([&] {
    require(name, out);
    cf::cases::CaseOptions opt;
    if (options_json) {
      const json o = json::parse(options_json);
      if (o.contains("seed")) opt.seed = o.at("seed").get<std::uint64_t>();
      if (o.contains("quadric_min")) opt.quadric_min = o.at("quadric_min").get<int>();
      if (o.contains("quadric_max")) opt.quadric_max = o.at("quadric_max").get<int>();
      opt.count.seed = opt.seed;
    }
    const auto r = cf::cases::run_case(name, opt);
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    *out = dup(json{{"case", r.name}, {"passed", r.passed()}, {"failures", r.failures()}, {"checks", checks}});
  });
}

}  // extern "C"
