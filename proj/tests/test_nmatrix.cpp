#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "clusterforge/error.hpp"
#include "clusterforge/nmatrix.hpp"

using namespace cf;
using namespace cf::nmat;

namespace {
const DynkinType A2 = DynkinType::parse("A2");
const DynkinType D4 = DynkinType::parse("D4");
}  // namespace

TEST_CASE("A2 product along 1 2 1") {
  const auto x = product(A2, Word::with_default_params({1, 2, 1}));
  const auto& v = x.vars();
  CHECK(x.is_unitriangular());
  CHECK(x.at(1, 2) == parse_laurent(v, "t1 + t3"));
  CHECK(x.at(1, 3) == parse_laurent(v, "t1*t2"));
  CHECK(x.at(2, 3) == parse_laurent(v, "t2"));
  CHECK(minor(x, {1, 2}, {2, 3}) == parse_laurent(v, "t2*t3"));
}

TEST_CASE("sizes and generators") {
  CHECK(matrix_size(A2) == 3);
  CHECK(matrix_size(D4) == 8);
  CHECK(matrix_size(DynkinType::parse("D5")) == 10);
  const auto g = product(D4, Word::with_default_params({3}));
  CHECK(g.is_unitriangular());
  CHECK_THROWS_AS(product(D4, Word::with_default_params({5})), InvalidInput);
  CHECK_THROWS_AS(DynkinType::parse("Q7"), InvalidInput);
}

TEST_CASE("Bareiss and cofactor minors agree") {
  const auto x = product(D4, Word::with_default_params({1, 2, 3, 4, 3}));
  const std::vector<std::vector<std::size_t>> sets{{1}, {2, 5}, {1, 3, 4}, {1, 2, 6, 8}, {2, 3, 4}};
  for (const auto& r : sets)
    for (const auto& c : sets) {
      if (r.size() != c.size()) continue;
      CHECK(minor_bareiss(x, r, c) == minor_cofactor(x, r, c));
    }
  CHECK(minor(x, {1, 2, 3, 4, 5, 6, 7, 8}, {1, 2, 3, 4, 5, 6, 7, 8}) == LaurentPoly::constant(x.vars(), 1));
}

TEST_CASE("minor index validation") {
  const auto x = product(A2, Word::with_default_params({1, 2, 1}));
  CHECK_THROWS_AS(minor(x, {2, 1}, {1, 2}), InvalidInput);
  CHECK_THROWS_AS(minor(x, {1, 4}, {1, 2}), InvalidInput);
  CHECK_THROWS_AS(minor(x, {1}, {1, 2}), InvalidInput);
  CHECK_THROWS_AS(minor(x, {0}, {1}), InvalidInput);
}

TEST_CASE("generic unitriangular naming") {
  const auto g = generic_unitriangular(3);
  CHECK(g.vars()->names() == std::vector<std::string>{"n12", "n13", "n23"});
  CHECK(g.at(1, 3) == parse_laurent(g.vars(), "n13"));
  const auto big = generic_unitriangular(10);
  CHECK(big.at(1, 10) == parse_laurent(big.vars(), "n1_10"));
  CHECK(big.at(2, 3) == parse_laurent(big.vars(), "n2_3"));
}

TEST_CASE("quadric relation on random D-type words") {
  std::mt19937_64 rng(11);
  for (int n : {4, 5}) {
    const DynkinType t{'D', n};
    for (int k = 0; k < 10; ++k) {
      std::vector<std::size_t> w(1 + rng() % 8);
      for (auto& l : w) l = 1 + rng() % static_cast<std::size_t>(n);
      CHECK(verify_quadric_relation(t, Word::with_default_params(w)).holds);
    }
  }
  // A generic row violates it.
  const auto g = generic_unitriangular(8);
  const auto q = quadric_form_on_row(g.row(1));
  CHECK_FALSE(q.holds);
  CHECK_FALSE(q.witness.empty());
  CHECK_THROWS_AS(verify_quadric_relation(A2, Word::with_default_params({1})), InvalidInput);
}
