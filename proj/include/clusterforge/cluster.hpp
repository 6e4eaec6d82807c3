#pragma once

// Seeds of cluster algebras of geometric type: matrix mutation, seed
// mutation, breadth-first exploration of the mutation class and the
// built-in seeds (quadric cone, Gr(2,5), D4 partial flag variety).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clusterforge/laurent.hpp"

namespace cf::cluster {

// d x (d - n) integer matrix; rows past d - n are coefficient rows.
class ExchangeMatrix {
 public:
  ExchangeMatrix(std::size_t d, std::size_t n, std::vector<std::vector<long>> rows);

  std::size_t d() const { return d_; }
  std::size_t n() const { return n_; }
  std::size_t rank() const { return d_ - n_; }
  // 0-based.
  long at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  const std::vector<std::vector<long>>& rows() const { return rows_; }

  bool operator==(const ExchangeMatrix& o) const { return d_ == o.d_ && n_ == o.n_ && rows_ == o.rows_; }
  bool principal_part_skew_symmetric() const;

 private:
  std::size_t d_, n_;
  std::vector<std::vector<long>> rows_;
};

// k is 1-based, 1 <= k <= d - n.
ExchangeMatrix mutate_matrix(const ExchangeMatrix& b, std::size_t k);

struct Seed {
  ExchangeMatrix matrix;
  std::vector<LaurentPoly> cluster;
  std::vector<std::string> labels;

  const Vars& vars() const { return cluster.front().vars(); }
  std::size_t d() const { return matrix.d(); }
  std::size_t rank() const { return matrix.rank(); }
};

// The initial seed (y, B): cluster entry i is the i-th variable of the ring.
Seed make_initial_seed(ExchangeMatrix b, std::vector<std::string> var_names,
                       std::vector<std::string> labels = {});

// Numerator of the exchange relation in direction k (1-based):
// prod_{b_ik > 0} y_i^{b_ik} + prod_{b_ik < 0} y_i^{-b_ik}.
LaurentPoly exchange_binomial(const Seed& s, std::size_t k);

// Throws InexactDivision (with a dump of the seed) if the new variable is
// not a Laurent polynomial in the initial variables.
Seed mutate_seed(const Seed& s, std::size_t k);

// Equality of matrix and cluster; labels are display-only.
bool same_seed(const Seed& a, const Seed& b);

// Canonical key: the sorted multiset of mutable cluster variables followed
// by the frozen tuple. The exchange matrix is not part of the key.
std::string seed_key(const Seed& s);

struct ExploreLimits {
  std::size_t max_seeds = 100000;
  std::size_t max_depth = 64;
};

struct MutationClass {
  std::vector<Seed> seeds;                                 // BFS discovery order
  std::vector<std::string> keys;                           // parallel to seeds
  std::vector<std::size_t> depth;                          // parallel to seeds
  std::vector<std::vector<std::optional<std::size_t>>> edges;  // [seed][k-1]
  std::vector<LaurentPoly> variables;                      // distinct mutable variables
  bool exhausted = false;

  std::size_t cluster_count() const { return seeds.size(); }
  std::size_t variable_count() const { return variables.size(); }
};

MutationClass explore(const Seed& initial, const ExploreLimits& limits = {});

struct FiniteTypeReport {
  bool finite = false;
  bool exhausted = false;
  std::size_t cluster_variable_count = 0;
  std::size_t cluster_count = 0;
};

FiniteTypeReport is_finite_type(const Seed& initial, const ExploreLimits& limits = {});

struct ClusterMonomial {
  LaurentPoly value;
  std::size_t cluster;          // first seed (BFS order) containing it
  std::vector<int> exponents;   // per position of that seed's cluster
  int degree;
};

// All monomials of total degree <= degree_bound supported on one cluster,
// de-duplicated as Laurent polynomials. Degree 0 contributes the constant 1.
// Throws InvalidInput for a non-exhausted class.
std::vector<ClusterMonomial> cluster_monomials(const MutationClass& c, int degree_bound);

// Undirected exchange graph; nodes are canonical seed keys, edges are
// labelled by the direction index of the endpoint discovered first.
std::string to_dot(const MutationClass& c);

// Built-in seeds.
Seed quadric_seed(int n);
Seed grassmannian_2_5_seed();
Seed d4_flag_seed();
Seed d4_flag_extended_seed();
// name: quadric (needs n >= 4), grassmannian_2_5, d4_flag, d4_flag_extended.
Seed builtin_seed(std::string_view name, int n = 0);

}  // namespace cf::cluster
