// Links only the shared library; checks the C surface end to end.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "clusterforge/clusterforge.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  cf_string_free(s);
  return out;
}

cf_poly* parse(const char* text) {
  static const char* names[] = {"x", "y"};
  cf_poly* p = nullptr;
  REQUIRE(cf_poly_parse(names, 2, text, &p) == CF_OK);
  return p;
}

std::string str(const cf_poly* p) {
  char* s = nullptr;
  REQUIRE(cf_poly_to_string(p, &s) == CF_OK);
  return take(s);
}

}  // namespace

TEST_CASE("status names and versions") {
  CHECK(std::string(cf_version()).size() > 0);
  CHECK(std::string(cf_status_name(CF_OK)) == "ok");
  CHECK(std::string(cf_status_name(CF_ERR_INEXACT_DIVISION)).size() > 0);
}

TEST_CASE("polynomials") {
  cf_poly *a = parse("x + y"), *b = parse("x - y"), *prod = nullptr, *back = nullptr, *sq = nullptr;
  REQUIRE(cf_poly_mul(a, b, &prod) == CF_OK);
  CHECK(str(prod) == "x^2 - y^2");
  REQUIRE(cf_poly_div_exact(prod, a, &back) == CF_OK);
  int eq = 0;
  REQUIRE(cf_poly_equal(back, b, &eq) == CF_OK);
  CHECK(eq == 1);
  REQUIRE(cf_poly_pow(a, 2, &sq) == CF_OK);
  CHECK(str(sq) == "x^2 + 2*x*y + y^2");
  char* v = nullptr;
  REQUIRE(cf_poly_evaluate(sq, R"({"x": "1/2", "y": "1"})", &v) == CF_OK);
  CHECK(take(v) == "9/4");

  char* js = nullptr;
  REQUIRE(cf_poly_to_json(prod, &js) == CF_OK);
  cf_poly* rt = nullptr;
  REQUIRE(cf_poly_from_json(take(js).c_str(), &rt) == CF_OK);
  CHECK(str(rt) == "x^2 - y^2");

  cf_poly *one = parse("x + 1"), *other = parse("y + 1"), *q = nullptr;
  CHECK(cf_poly_div_exact(one, other, &q) == CF_ERR_INEXACT_DIVISION);
  CHECK(q == nullptr);
  CHECK(std::string(cf_last_error_message()).size() > 0);

  cf_poly* bad = nullptr;
  static const char* names[] = {"x"};
  CHECK(cf_poly_parse(names, 1, "z + 1", &bad) == CF_ERR_INVALID_INPUT);
  CHECK(cf_poly_add(nullptr, a, &bad) == CF_ERR_INVALID_INPUT);
  CHECK(bad == nullptr);

  for (cf_poly* p : {a, b, prod, back, sq, rt, one, other}) cf_poly_free(p);
  cf_poly_free(nullptr);
}

TEST_CASE("seeds and classes") {
  cf_seed *s = nullptr, *m = nullptr;
  REQUIRE(cf_seed_builtin("grassmannian_2_5", 0, &s) == CF_OK);
  size_t d = 0, n = 0;
  REQUIRE(cf_seed_shape(s, &d, &n) == CF_OK);
  CHECK(d == 7);
  CHECK(n == 5);
  REQUIRE(cf_seed_mutate(s, 1, &m) == CF_OK);
  cf_poly* v = nullptr;
  REQUIRE(cf_seed_variable(m, 1, &v) == CF_OK);
  CHECK(str(v) == "y1^-1*y2*y4 + y1^-1*y3*y5");
  cf_poly_free(v);
  cf_seed* none = nullptr;
  CHECK(cf_seed_mutate(s, 3, &none) == CF_ERR_INVALID_INPUT);
  CHECK(none == nullptr);

  cf_class* c = nullptr;
  REQUIRE(cf_explore(s, 0, 0, &c) == CF_OK);
  size_t clusters = 0, vars = 0;
  int exhausted = 0;
  REQUIRE(cf_class_counts(c, &clusters, &vars, &exhausted) == CF_OK);
  CHECK(clusters == 5);
  CHECK(vars == 5);
  CHECK(exhausted == 1);
  char* dot = nullptr;
  REQUIRE(cf_class_to_dot(c, &dot) == CF_OK);
  CHECK(take(dot).rfind("graph", 0) == 0);
  cf_class_free(c);

  cf_seed* q = nullptr;
  CHECK(cf_seed_builtin("quadric", 3, &q) == CF_ERR_INVALID_INPUT);
  REQUIRE(cf_seed_builtin("quadric", 6, &q) == CF_OK);
  CHECK(cf_explore(q, 3, 0, &c) == CF_OK);
  REQUIRE(cf_class_counts(c, &clusters, &vars, &exhausted) == CF_OK);
  CHECK(exhausted == 0);
  cf_class_free(c);

  char* js = nullptr;
  REQUIRE(cf_seed_to_json(m, &js) == CF_OK);
  cf_seed* rt = nullptr;
  REQUIRE(cf_seed_from_json(take(js).c_str(), &rt) == CF_OK);
  CHECK(cf_seed_from_json("{not json", &q) == CF_ERR_INVALID_INPUT);
  for (cf_seed* x : {s, m, q, rt}) cf_seed_free(x);
}

TEST_CASE("unitriangular matrices") {
  const size_t letters[] = {1, 2, 1};
  cf_nmatrix* x = nullptr;
  REQUIRE(cf_nmatrix_product("A2", letters, 3, nullptr, &x) == CF_OK);
  size_t size = 0;
  REQUIRE(cf_nmatrix_size(x, &size) == CF_OK);
  CHECK(size == 3);
  const size_t rows[] = {1, 2}, cols[] = {2, 3};
  cf_poly* m = nullptr;
  REQUIRE(cf_nmatrix_minor(x, rows, cols, 2, &m) == CF_OK);
  CHECK(str(m) == "t2*t3");
  cf_poly_free(m);
  const size_t bad[] = {2, 1};
  CHECK(cf_nmatrix_minor(x, bad, cols, 2, &m) == CF_ERR_INVALID_INPUT);
  cf_nmatrix_free(x);

  const size_t w[] = {1, 2, 4, 3};
  REQUIRE(cf_nmatrix_product("D4", w, 4, nullptr, &x) == CF_OK);
  int holds = 0;
  char* wit = nullptr;
  REQUIRE(cf_nmatrix_quadric_check(x, &holds, &wit) == CF_OK);
  CHECK(holds == 1);
  CHECK(take(wit).empty());
  cf_nmatrix_free(x);
}

TEST_CASE("modules") {
  cf_module *q4 = nullptr, *e = nullptr, *s4 = nullptr, *nr = nullptr;
  REQUIRE(cf_module_injective("D4", 4, &q4) == CF_OK);
  char* layers = nullptr;
  REQUIRE(cf_module_layers(q4, &layers) == CF_OK);
  CHECK(take(layers) == "S_4 | S_3 | S_1+S_2 | S_3 | S_4");
  const size_t word[] = {4};
  REQUIRE(cf_module_efunctor(q4, word, 1, 0, &e) == CF_OK);
  REQUIRE(cf_module_layers(e, &layers) == CF_OK);
  CHECK(take(layers) == "S_3 | S_1+S_2 | S_3 | S_4");
  REQUIRE(cf_module_simple("D4", 4, &s4) == CF_OK);
  size_t h = 0;
  REQUIRE(cf_module_hom_dim(s4, q4, &h) == CF_OK);
  CHECK(h == 1);
  REQUIRE(cf_module_builtin("d4-nonrigid", &nr) == CF_OK);
  int rigid = 1;
  REQUIRE(cf_module_is_rigid(nr, &rigid) == CF_OK);
  CHECK(rigid == 0);
  CHECK(cf_module_injective("D4", 9, &e) == CF_ERR_INVALID_INPUT);

  char* js = nullptr;
  REQUIRE(cf_module_to_json(q4, &js) == CF_OK);
  cf_module* rt = nullptr;
  REQUIRE(cf_module_from_json(take(js).c_str(), &rt) == CF_OK);
  int iso = 0;
  REQUIRE(cf_module_is_isomorphic(rt, q4, 0, &iso) == CF_OK);
  CHECK(iso == 1);

  const size_t letters[] = {1, 2, 4, 3, 1, 2, 4, 3, 1, 2, 4, 3};
  char* out = nullptr;
  REQUIRE(cf_phi_eval(q4, letters, 12, nullptr, &out) == CF_OK);
  CHECK(take(out).find("\"backend\"") != std::string::npos);

  for (cf_module* m : {q4, e, s4, nr, rt}) cf_module_free(m);
}

TEST_CASE("reports") {
  char* out = nullptr;
  REQUIRE(cf_exchange_matrix(R"({"builtin": "d4-example"})", &out) == CF_OK);
  CHECK(take(out).find("\"extension\"") != std::string::npos);
  REQUIRE(cf_case_run("a2-thm61", nullptr, &out) == CF_OK);
  const auto rep = take(out);
  CHECK(rep.find("\"passed\":true") != std::string::npos);
  CHECK(cf_case_run("no-such-case", nullptr, &out) == CF_ERR_INVALID_INPUT);
  REQUIRE(cf_case_names(&out) == CF_OK);
  CHECK(take(out).find("quadric-n") != std::string::npos);

  const char* zero[12] = {"1", "1", "1", "0", "1", "1", "1", "1", "1", "1", "1", "1"};
  CHECK(cf_phi_positivity("d4-example", zero, 12, &out) == CF_ERR_INVALID_INPUT);
}
