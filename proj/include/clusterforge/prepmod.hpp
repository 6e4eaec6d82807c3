#pragma once

// Constructions on top of the module layer: complete rigid modules from a
// reduced word, exchange matrices from exchange-sequence data, submodule
// lattices of small modules and random test modules.

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "clusterforge/algebra.hpp"
#include "clusterforge/cluster.hpp"
#include "clusterforge/quiver.hpp"

namespace cf::prep {

// Number of positive roots of the root subsystem spanned by the given
// vertices (1-based); computed by closing the simple roots under reflections.
std::size_t positive_root_count(const DoubleQuiver& q, const std::vector<std::size_t>& vertices);

struct RigidSummand {
  std::string name;   // "M5", "Q4"
  std::size_t index;  // p for M_p, j for Q_j
  QRep module;
};

struct RigidReport {
  std::vector<RigidSummand> summands;        // M_p by increasing p, then Q_j
  std::vector<std::size_t> K, J;             // 1-based, sorted
  std::size_t r = 0, r_K = 0;
  std::map<std::size_t, std::size_t> q;      // k in K -> q_k
  std::map<std::size_t, std::size_t> t;      // l in I -> t_l
  std::vector<std::size_t> vanished;         // p > r_K with M_p = 0
  std::vector<QRep> all_M;                   // M_1 .. M_r (index p-1)
};

// word: reduced word for w_0 whose first r_K letters lie in K (only the
// letter sets and the length are checked). Throws VerificationFailure when
// the summand count differs from r - r_K.
RigidReport build_complete_rigid(const DynkinType& type, const std::vector<std::size_t>& K,
                                 const std::vector<std::size_t>& word);

// One exchange direction: multiplicities of each summand in the middle terms
// X_k (of 0 -> T_k -> X_k -> T_k^* -> 0) and Y_k (of 0 -> T_k^* -> Y_k -> T_k -> 0).
struct ExchangeSequence {
  std::vector<std::size_t> x, y;
};

struct ExchangeMatrixReport {
  cluster::ExchangeMatrix b;                   // d x (d-n)
  std::vector<std::vector<long>> extension;    // one row per j in J
  cluster::ExchangeMatrix extended() const;
};

// summands: T_1..T_d with the d-n mutable ones first; one sequence per
// mutable direction. b_ik = [Y_k : T_i] - [X_k : T_i] and the coefficient row
// of j is dim Hom(S_j, X_k) - dim Hom(S_j, Y_k).
ExchangeMatrixReport exchange_matrix_from_sequences(const std::vector<QRep>& summands,
                                                    const std::vector<ExchangeSequence>& sequences,
                                                    const std::vector<std::size_t>& J = {});

// True when some injective a -> b has cokernel isomorphic to c (randomized,
// seeded): witnesses a short exact sequence 0 -> a -> b -> c -> 0.
bool has_short_exact_sequence(const QRep& a, const QRep& b, const QRep& c, std::uint64_t seed = 0);

// All submodules, built bottom-up by adding one socle line of the quotient
// at a time. Throws InvalidInput when a quotient has a socle of dimension
// > 1 at some vertex (the lattice is then infinite).
std::vector<QRep> submodules(const QRep& m);

// A random module of total dimension in [1, max_total_dim]: a subquotient of
// a sum of at most two injectives, cut out by random generators.
QRep random_module(const DynkinType& type, std::mt19937_64& rng, std::size_t max_total_dim);

// The D4 module with socle series (S_3 | S_1+S_2+S_4 | S_3) belonging to a
// one-parameter family, hence not rigid.
QRep d4_nonrigid_module();

// Layer display, top first: "S_3 | S_1+S_2 | S_3 | S_4+S_4".
std::string layers_to_string(const std::vector<std::vector<std::size_t>>& layers_bottom_first);

}  // namespace cf::prep
