#pragma once

// phi_M evaluated on x_{i_1}(t_1) ... x_{i_k}(t_k) through Euler
// characteristics of varieties of composition series.
//
// Chains are ascending, 0 = M_0 < M_1 < ... with M_j / M_{j-1} = S_{i_j}:
// the first letter is consumed at the socle end.
//
// For phi we count "layered" chains whose j-th factor is S_{i_j}^{a_j}. The
// variety of composition series of type i^a fibres over the layered variety
// with fibre a product of full flag varieties, so
//   chi_{i^a, M} = a_1! ... a_k! * chi(layered chains),
// and the coefficient of t^a / a! in phi_M is recovered without division.
//
// Backends: when every step meets a socle of dimension <= 1 at the demanded
// vertex the chain set is finite and field independent (exact). Otherwise
// chains are counted over F_p for successive primes and the count
// polynomial is evaluated at q = 1 once it is stable on two extra primes.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clusterforge/laurent.hpp"
#include "clusterforge/nmatrix.hpp"
#include "clusterforge/quiver.hpp"

namespace cf::phi {

enum class Backend { exact, interpolated };
std::string backend_name(Backend b);

struct CountOptions {
  std::size_t max_primes = 12;
  std::size_t extra_primes = 2;
  // Memo budget in bytes; 0 means "read CLUSTERFORGE_MAX_MEM, else 256 MiB".
  std::size_t memo_bytes = 0;
  std::size_t max_nodes = 20000000;
  std::uint64_t seed = 0;
};

struct ChiEntry {
  std::vector<std::size_t> expanded_word;  // i^a
  std::vector<int> multiplicities;         // a
  BigInt chi;                              // chi_{i^a, M}
  BigInt coefficient;                      // chi / prod a_j!
};

struct ChiTable {
  std::vector<ChiEntry> entries;
  Backend backend = Backend::exact;
  std::vector<std::uint32_t> primes_used;
};

// Number of full composition series of the given type over F_p.
BigInt count_flags_mod_p(const prep::PRep& m, const std::vector<std::size_t>& word, const CountOptions& opt = {});

struct ChiResult {
  BigInt value;
  Backend backend = Backend::exact;
  std::vector<std::uint32_t> primes_used;
};

// Euler characteristic of the variety of composition series of type word.
ChiResult chi(const prep::QRep& m, const std::vector<std::size_t>& word, const CountOptions& opt = {});

struct PhiResult {
  LaurentPoly value;
  ChiTable table;
};

PhiResult phi_eval(const prep::QRep& m, const nmat::Word& w, const CountOptions& opt = {});
// Same, with the result expressed over `vars` (must contain the params).
PhiResult phi_eval(const prep::QRep& m, const nmat::Word& w, const Vars& vars, const CountOptions& opt = {});

struct IdentityCheck {
  bool holds = false;
  std::string witness;  // a term of lhs - rhs when it fails
};

struct MultiplicationReport {
  IdentityCheck direct_sum;                // phi_M phi_N = phi_{M+N}
  std::optional<IdentityCheck> exchange;   // phi_M phi_N = phi_X + phi_Y
};

MultiplicationReport verify_multiplication(const prep::QRep& m, const prep::QRep& n, const nmat::Word& w,
                                           const prep::QRep* x = nullptr, const prep::QRep* y = nullptr,
                                           const CountOptions& opt = {});

struct PositivityReport {
  std::vector<LaurentPoly> functions;
  std::vector<Rational> values;
  std::vector<bool> positive;
  bool all_positive = false;
};

// point[k] is the value of w.params[k]; every coordinate must be > 0.
PositivityReport positivity_check(const std::vector<prep::QRep>& summands, const nmat::Word& w,
                                  const std::vector<Rational>& point, const CountOptions& opt = {});

}  // namespace cf::phi
