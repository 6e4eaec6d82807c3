#pragma once

// Named worked examples turned into runnable checks. Each case returns a list
// of named checks with a verdict and a short detail line; the CLI, the C API
// and the acceptance binary all report through this registry.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "clusterforge/phi.hpp"
#include "clusterforge/prepmod.hpp"

namespace cf::cases {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CaseReport {
  std::string name;
  std::vector<Check> checks;
  double seconds = 0;

  bool passed() const;
  std::size_t failures() const;
};

struct CaseOptions {
  int quadric_min = 4;
  int quadric_max = 7;
  std::uint64_t seed = 0;
  phi::CountOptions count;
};

// a2-thm61, a3-plucker, d4-exercise55, d4-example152, quadric-n.
const std::vector<std::string>& case_names();
CaseReport run_case(std::string_view name, const CaseOptions& opt = {});

// Words used throughout.
extern const std::vector<std::size_t> kA2Word;        // 1,2,1
extern const std::vector<std::size_t> kA3Word;        // 1,2,3,1,2,1
extern const std::vector<std::size_t> kD4FlagWord;    // (1,2,4,3) three times
extern const std::vector<std::size_t> kD4RigidWord;   // 1,3,1,2,3,1,4,3,1,2,3,4

// The eight displayed first-row entries of x_1(t_1)...x_3(t_12) in D4.
std::vector<std::string> d4_first_row_text();

// Displayed socle series, top first, in the layers_to_string format.
std::string displayed_layers(std::string_view module_name);

// The D4, K = {1,2,3}, J = {4} data: rigid summands, the two exchanged
// summands and the four exchange sequences.
struct D4Flag {
  prep::RigidReport rigid;
  prep::QRep M4, M5, M6, M7, M8, Q4;
  prep::QRep M7s, M8s;  // E_4(Q_4) and E_3(E_4(Q_4))
  // Seed order M7, M8, M4, M5, M6, Q4.
  std::vector<prep::QRep> seed_order;
  std::vector<prep::ExchangeSequence> sequences;
  std::vector<std::size_t> J{4};
};
const D4Flag& d4_flag();

// M = S_2, N = (S_1+S_3 | S_2), X = Q_2, Y = (S_1 | S_2), Z = (S_3 | S_2) in A3.
struct A3Plucker {
  prep::QRep M, N, X, Y, Z;
};
A3Plucker a3_plucker();

// Summand lists of the four clusters {M7 | M7*} x {M8 | M8*} + M4, M5, M6, Q4.
std::vector<std::pair<std::string, std::vector<prep::QRep>>> d4_positivity_clusters();

}  // namespace cf::cases
