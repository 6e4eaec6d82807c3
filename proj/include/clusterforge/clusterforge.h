#ifndef CLUSTERFORGE_H
#define CLUSTERFORGE_H

/* C interface to the clusterforge library.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns a cf_status; on failure the out-parameters are
 * left untouched and cf_last_error_message() describes the problem (per
 * thread, valid until the next failing call on that thread).
 * Strings returned through char** are heap-allocated; release them with
 * cf_string_free. Vertices, directions and matrix indices are 1-based. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CF_API __declspec(dllexport)
#else
#define CF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cf_status {
  CF_OK = 0,
  CF_ERR_INVALID_INPUT = 1,
  CF_ERR_VERIFICATION = 2,
  CF_ERR_RESOURCE_LIMIT = 3,
  CF_ERR_UNDETERMINED = 4,
  CF_ERR_INEXACT_DIVISION = 5,
  CF_ERR_INTERNAL = 6
} cf_status;

typedef struct cf_poly cf_poly;
typedef struct cf_seed cf_seed;
typedef struct cf_class cf_class;
typedef struct cf_nmatrix cf_nmatrix;
typedef struct cf_module cf_module;

CF_API const char* cf_version(void);
CF_API const char* cf_status_name(cf_status s);
CF_API const char* cf_last_error_message(void);
CF_API void cf_string_free(char* s);

/* Laurent polynomials over the named variables. */
CF_API cf_status cf_poly_parse(const char* const* var_names, size_t nvars, const char* text, cf_poly** out);
CF_API cf_status cf_poly_from_json(const char* json, cf_poly** out);
CF_API cf_status cf_poly_to_json(const cf_poly* p, char** out);
CF_API cf_status cf_poly_to_string(const cf_poly* p, char** out);
CF_API cf_status cf_poly_add(const cf_poly* a, const cf_poly* b, cf_poly** out);
CF_API cf_status cf_poly_sub(const cf_poly* a, const cf_poly* b, cf_poly** out);
CF_API cf_status cf_poly_mul(const cf_poly* a, const cf_poly* b, cf_poly** out);
/* Fails with CF_ERR_INEXACT_DIVISION when b does not divide a. */
CF_API cf_status cf_poly_div_exact(const cf_poly* a, const cf_poly* b, cf_poly** out);
CF_API cf_status cf_poly_pow(const cf_poly* p, int e, cf_poly** out);
CF_API cf_status cf_poly_equal(const cf_poly* a, const cf_poly* b, int* out);
/* point_json: {"x": "1/2", "y": "3"}; out receives the value as "p/q". */
CF_API cf_status cf_poly_evaluate(const cf_poly* p, const char* point_json, char** out);
CF_API void cf_poly_free(cf_poly* p);

/* Seeds and mutation classes. Builtin names: quadric (n >= 4),
 * grassmannian_2_5, d4_flag, d4_flag_extended. */
CF_API cf_status cf_seed_builtin(const char* name, int n, cf_seed** out);
CF_API cf_status cf_seed_from_json(const char* json, cf_seed** out);
CF_API cf_status cf_seed_to_json(const cf_seed* s, char** out);
CF_API cf_status cf_seed_shape(const cf_seed* s, size_t* d, size_t* n);
CF_API cf_status cf_seed_mutate(const cf_seed* s, size_t k, cf_seed** out);
CF_API cf_status cf_seed_variable(const cf_seed* s, size_t i, cf_poly** out);
CF_API void cf_seed_free(cf_seed* s);

/* max_seeds / max_depth of 0 select the defaults (100000, 64). */
CF_API cf_status cf_explore(const cf_seed* s, size_t max_seeds, size_t max_depth, cf_class** out);
CF_API cf_status cf_class_counts(const cf_class* c, size_t* clusters, size_t* variables, int* exhausted);
/* {exhausted, clusters, variables: [poly], seeds: [{key, depth, cluster: [text]}]} */
CF_API cf_status cf_class_to_json(const cf_class* c, char** out);
CF_API cf_status cf_class_to_dot(const cf_class* c, char** out);
/* [{value, degree, cluster, exponents}] */
CF_API cf_status cf_class_monomials(const cf_class* c, int degree_bound, char** out);
CF_API void cf_class_free(cf_class* c);

/* Unitriangular matrix realizations (types A_n, D_n). params may be NULL
 * for t1..tk. */
CF_API cf_status cf_nmatrix_product(const char* type, const size_t* letters, size_t nletters,
                                    const char* const* params, cf_nmatrix** out);
CF_API cf_status cf_nmatrix_generic(size_t size, const char* stem, cf_nmatrix** out);
CF_API cf_status cf_nmatrix_size(const cf_nmatrix* m, size_t* out);
CF_API cf_status cf_nmatrix_entry(const cf_nmatrix* m, size_t i, size_t j, cf_poly** out);
CF_API cf_status cf_nmatrix_minor(const cf_nmatrix* m, const size_t* rows, const size_t* cols, size_t k,
                                  cf_poly** out);
CF_API cf_status cf_nmatrix_to_json(const cf_nmatrix* m, char** out);
/* Evaluates sum_i (-1)^(i-1) y_i y_(2n+1-i) on the first row; witness
 * (may be NULL) receives a surviving term or an empty string. */
CF_API cf_status cf_nmatrix_quadric_check(const cf_nmatrix* m, int* holds, char** witness);
CF_API void cf_nmatrix_free(cf_nmatrix* m);

/* Modules over the preprojective algebra of type A, D or E. */
CF_API cf_status cf_module_injective(const char* type, size_t vertex, cf_module** out);
CF_API cf_status cf_module_simple(const char* type, size_t vertex, cf_module** out);
/* Named modules: "d4-nonrigid". */
CF_API cf_status cf_module_builtin(const char* name, cf_module** out);
CF_API cf_status cf_module_from_json(const char* json, cf_module** out);
CF_API cf_status cf_module_to_json(const cf_module* m, char** out);
/* Socle series, top first, e.g. "S_3 | S_1+S_2 | S_3". */
CF_API cf_status cf_module_layers(const cf_module* m, char** out);
CF_API cf_status cf_module_dims(const cf_module* m, char** out);
/* The last letter acts first. */
CF_API cf_status cf_module_efunctor(const cf_module* m, const size_t* word, size_t nword, int dagger,
                                    cf_module** out);
CF_API cf_status cf_module_direct_sum(const cf_module* a, const cf_module* b, cf_module** out);
CF_API cf_status cf_module_hom_dim(const cf_module* a, const cf_module* b, size_t* out);
CF_API cf_status cf_module_ext1_dim(const cf_module* a, const cf_module* b, size_t* out);
CF_API cf_status cf_module_is_rigid(const cf_module* m, int* out);
CF_API cf_status cf_module_is_isomorphic(const cf_module* a, const cf_module* b, uint64_t seed, int* out);
/* Whether some injective a -> b has cokernel isomorphic to c. */
CF_API cf_status cf_module_short_exact(const cf_module* a, const cf_module* b, const cf_module* c, uint64_t seed,
                                       int* out);
CF_API void cf_module_free(cf_module* m);

/* JSON report: summands with layers and module JSON, K, J, r, r_K, q, t,
 * vanished. */
CF_API cf_status cf_build_rigid(const char* type, const size_t* K, size_t nK, const size_t* word, size_t nword,
                                char** out);
/* request: {"summands": [module], "sequences": [{"x": [..], "y": [..]}], "J": [..]}
 * or {"builtin": "d4-example"}. Reply: {matrix, extension, extended}. */
CF_API cf_status cf_exchange_matrix(const char* request_json, char** out);

/* phi_M over x_{i_1}(t_1)...x_{i_k}(t_k). Reply: {value, polynomial,
 * backend, primes_used, table}. params may be NULL. */
CF_API cf_status cf_phi_eval(const cf_module* m, const size_t* letters, size_t nletters, const char* const* params,
                             char** out);
/* Reply: {value, backend, primes_used}. */
CF_API cf_status cf_phi_chi(const cf_module* m, const size_t* word, size_t nword, char** out);
/* Checks phi_M phi_N = phi_{M+N} and, when x and y are given,
 * phi_M phi_N = phi_X + phi_Y. */
CF_API cf_status cf_phi_multiplication(const cf_module* m, const cf_module* n, const cf_module* x,
                                       const cf_module* y, const size_t* letters, size_t nletters, char** out);
/* rigid: "d4-example". point: one rational string per letter of the word
 * (1,2,4,3)^3. */
CF_API cf_status cf_phi_positivity(const char* rigid, const char* const* point, size_t npoint, char** out);

/* Named verification cases. options_json may be NULL:
 * {"seed": 0, "quadric_min": 4, "quadric_max": 7}. */
CF_API cf_status cf_case_names(char** out);
CF_API cf_status cf_case_run(const char* name, const char* options_json, char** out);

#ifdef __cplusplus
}
#endif

#endif
