#pragma once

// Random generators shared by the unit tests and the acceptance binary.

#include <chrono>
#include <random>
#include <vector>

#include "clusterforge/cluster.hpp"
#include "clusterforge/laurent.hpp"

namespace cf::testing {

// Up to five terms, exponents in [-2, 3], coefficients in [-9, 9].
inline LaurentPoly random_poly(const Vars& vars, std::mt19937_64& rng, bool allow_zero = true) {
  std::uniform_int_distribution<int> nterms(allow_zero ? 0 : 1, 5), ex(-2, 3), co(-9, 9);
  std::vector<Term> terms;
  const int k = nterms(rng);
  for (int t = 0; t < k; ++t) {
    Monomial m;
    for (std::size_t i = 0; i < vars->size(); ++i) m.exps.push_back(ex(rng));
    int c = co(rng);
    if (c == 0) c = 1;
    terms.push_back({std::move(m), BigInt(c)});
  }
  return LaurentPoly::from_terms(vars, std::move(terms));
}

// Skew-symmetric principal part of size r, plus `frozen` coefficient rows.
inline cluster::ExchangeMatrix random_exchange_matrix(std::mt19937_64& rng, std::size_t r, std::size_t frozen) {
  std::uniform_int_distribution<int> e(-2, 2);
  std::vector<std::vector<long>> rows(r + frozen, std::vector<long>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      rows[i][j] = e(rng);
      rows[j][i] = -rows[i][j];
    }
  for (std::size_t i = r; i < r + frozen; ++i)
    for (std::size_t j = 0; j < r; ++j) rows[i][j] = e(rng);
  return cluster::ExchangeMatrix(r + frozen, frozen, std::move(rows));
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace cf::testing
