#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "clusterforge/cluster.hpp"
#include "clusterforge/error.hpp"
#include "clusterforge/json_io.hpp"
#include "support.hpp"

using namespace cf;
using namespace cf::cluster;

TEST_CASE("matrix mutation") {
  const auto s = grassmannian_2_5_seed();
  const ExchangeMatrix want(7, 5, {{0, 1}, {-1, 0}, {1, -1}, {-1, 0}, {1, 0}, {0, -1}, {0, 1}});
  CHECK(mutate_matrix(s.matrix, 1) == want);
  CHECK(mutate_matrix(mutate_matrix(s.matrix, 1), 1) == s.matrix);
  CHECK_THROWS_AS(mutate_matrix(s.matrix, 3), InvalidInput);
  CHECK_THROWS_AS(mutate_matrix(s.matrix, 0), InvalidInput);

  // Zero principal part: only column k changes sign.
  const auto b = d4_flag_seed().matrix;
  const auto m = mutate_matrix(b, 2);
  for (std::size_t i = 0; i < b.d(); ++i) {
    CHECK(m.at(i, 0) == b.at(i, 0));
    CHECK(m.at(i, 1) == -b.at(i, 1));
  }
}

TEST_CASE("matrix validation") {
  CHECK_THROWS_AS(ExchangeMatrix(2, 0, {{0, 1}, {1, 0}}), InvalidInput);
  CHECK_THROWS_AS(ExchangeMatrix(3, 1, {{0, 1}, {-1, 0}}), InvalidInput);
  CHECK_THROWS_AS(ExchangeMatrix(2, 3, {}), InvalidInput);
}

TEST_CASE("seed mutation") {
  const auto s = grassmannian_2_5_seed();
  const auto m = mutate_seed(s, 1);
  CHECK(m.cluster[0] == parse_laurent(s.vars(), "y1^-1*y2*y4 + y1^-1*y3*y5"));
  CHECK(m.labels[0] == "[1,3]*");
  CHECK(same_seed(mutate_seed(m, 1), s));

  const auto q = quadric_seed(4);
  const auto q2 = mutate_seed(q, 1);
  CHECK(q.cluster[0] * q2.cluster[0] == parse_laurent(q.vars(), "p1 + y1*y8"));
}

TEST_CASE("exploration") {
  const auto c = explore(grassmannian_2_5_seed());
  CHECK(c.exhausted);
  CHECK(c.cluster_count() == 5);
  CHECK(c.variable_count() == 5);

  const auto q = explore(quadric_seed(4));
  CHECK(q.exhausted);
  CHECK(q.cluster_count() == 4);
  CHECK(q.variable_count() == 4);

  const Seed trivial = make_initial_seed(ExchangeMatrix(2, 2, {{}, {}}), {"a", "b"});
  const auto t = explore(trivial);
  CHECK(t.exhausted);
  CHECK(t.cluster_count() == 1);
  CHECK(t.variable_count() == 0);
}

TEST_CASE("Grassmannian variables are Pluecker coordinates") {
  // Evaluate at the Pluecker coordinates of a random 2 x 5 matrix.
  std::mt19937_64 rng(5);
  long a[2][5];
  for (auto& row : a)
    for (auto& x : row) x = static_cast<long>(rng() % 19) - 9;
  auto pl = [&](int i, int j) { return Rational(a[0][i - 1] * a[1][j - 1] - a[0][j - 1] * a[1][i - 1]); };
  const int pairs[7][2] = {{1, 3}, {1, 4}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}};
  RationalPoint pt;
  for (int i = 0; i < 7; ++i) {
    REQUIRE(pl(pairs[i][0], pairs[i][1]) != 0);
    pt["y" + std::to_string(i + 1)] = pl(pairs[i][0], pairs[i][1]);
  }
  const auto c = explore(grassmannian_2_5_seed());
  std::set<Rational> want{pl(1, 3), pl(1, 4), pl(2, 4), pl(2, 5), pl(3, 5)};
  std::set<Rational> got;
  for (const auto& v : c.variables) got.insert(evaluate(v, pt));
  CHECK(got == want);
}

TEST_CASE("finite type") {
  const auto g = is_finite_type(grassmannian_2_5_seed());
  CHECK(g.finite);
  CHECK(g.cluster_variable_count == 5);

  const auto d = is_finite_type(d4_flag_extended_seed());
  CHECK(d.finite);
  CHECK(d.cluster_variable_count == 4);
  CHECK(d.cluster_count == 4);

  const Seed affine = make_initial_seed(ExchangeMatrix(2, 0, {{0, 2}, {-2, 0}}), {"x1", "x2"});
  const auto a = is_finite_type(affine, {100000, 20});
  CHECK_FALSE(a.exhausted);
  CHECK_FALSE(a.finite);
}

TEST_CASE("cluster monomials") {
  const auto g = explore(grassmannian_2_5_seed());
  const auto m0 = cluster_monomials(g, 0);
  REQUIRE(m0.size() == 1);
  CHECK(m0[0].value.is_constant());
  const auto m1 = cluster_monomials(g, 1);
  CHECK(std::count_if(m1.begin(), m1.end(), [](const ClusterMonomial& m) { return m.degree == 1; }) == 10);

  const auto q = explore(quadric_seed(4));
  const auto m2 = cluster_monomials(q, 2);
  CHECK(std::count_if(m2.begin(), m2.end(), [](const ClusterMonomial& m) { return m.degree == 2; }) == 43);
  // Exchange partners never share a cluster.
  const auto& s = q.seeds.front();
  for (std::size_t k = 1; k <= s.rank(); ++k) {
    const auto partner = mutate_seed(s, k).cluster[k - 1];
    const auto prod = s.cluster[k - 1] * partner;
    CHECK(std::none_of(m2.begin(), m2.end(), [&](const ClusterMonomial& m) { return m.value == prod; }));
  }

  Seed affine = make_initial_seed(ExchangeMatrix(2, 0, {{0, 2}, {-2, 0}}), {"x1", "x2"});
  CHECK_THROWS_AS(cluster_monomials(explore(affine, {50, 5}), 1), InvalidInput);
}

TEST_CASE("built-in seeds") {
  const auto g = grassmannian_2_5_seed();
  CHECK(g.labels == std::vector<std::string>{"[1,3]", "[1,4]", "[1,2]", "[2,3]", "[3,4]", "[4,5]", "[1,5]"});
  CHECK(d4_flag_seed().matrix == ExchangeMatrix(6, 4, {{0, 0}, {0, 0}, {0, -1}, {-1, 1}, {0, -1}, {1, 0}}));
  CHECK(d4_flag_extended_seed().matrix.rows().back() == std::vector<long>{1, 0});
  CHECK_THROWS_AS(builtin_seed("quadric", 3), InvalidInput);
  CHECK_THROWS_AS(builtin_seed("nope"), InvalidInput);
}

TEST_CASE("exchange identity, coefficient stability and Laurent property on built-in classes") {
  for (const auto& s : {grassmannian_2_5_seed(), quadric_seed(5), d4_flag_seed(), d4_flag_extended_seed()}) {
    const auto c = explore(s);
    REQUIRE(c.exhausted);
    const std::size_t r = s.rank();
    for (std::size_t i = 0; i < c.seeds.size(); ++i) {
      const auto& si = c.seeds[i];
      CHECK(std::equal(si.cluster.begin() + static_cast<std::ptrdiff_t>(r), si.cluster.end(),
                       s.cluster.begin() + static_cast<std::ptrdiff_t>(r)));
      for (std::size_t k = 1; k <= r; ++k) {
        REQUIRE(c.edges[i][k - 1]);
        const auto& sj = c.seeds[*c.edges[i][k - 1]];
        const auto moved = mutate_seed(si, k);
        CHECK(si.cluster[k - 1] * moved.cluster[k - 1] == exchange_binomial(si, k));
        CHECK(seed_key(moved) == seed_key(sj));
      }
    }
  }
}

TEST_CASE("random mutation properties") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 100; ++k) {
    const std::size_t r = 2 + rng() % 3, f = rng() % 3;
    const auto b = testing::random_exchange_matrix(rng, r, f);
    const std::size_t dir = 1 + rng() % r;
    CHECK(mutate_matrix(mutate_matrix(b, dir), dir) == b);
    auto c = b;
    for (int s = 0; s < 5; ++s) {
      c = mutate_matrix(c, 1 + rng() % r);
      CHECK(c.principal_part_skew_symmetric());
    }
  }
  // Seed-level involution along short random walks from the built-in seeds.
  for (int k = 0; k < 100; ++k) {
    Seed s = k % 2 ? grassmannian_2_5_seed() : quadric_seed(5);
    for (int step = 0; step < 3; ++step) s = mutate_seed(s, 1 + rng() % s.rank());
    const std::size_t dir = 1 + rng() % s.rank();
    CHECK(same_seed(mutate_seed(mutate_seed(s, dir), dir), s));
  }
}

TEST_CASE("seed JSON round trip and DOT export") {
  const auto s = mutate_seed(grassmannian_2_5_seed(), 2);
  const auto back = io::seed_from_json(io::seed_to_json(s));
  CHECK(same_seed(back, s));
  CHECK(back.labels == s.labels);
  const auto bare = io::seed_from_json(io::json::parse(R"({"d":2,"n":0,"matrix":[[0,1],[-1,0]]})"));
  CHECK(bare.vars()->names() == std::vector<std::string>{"x1", "x2"});
  CHECK_THROWS_AS(io::seed_from_json(io::json::parse(R"({"d":2,"n":0,"matrix":[[0,1],[1,0]]})")), InvalidInput);

  const auto dot = to_dot(explore(quadric_seed(4)));
  CHECK(dot.rfind("graph", 0) == 0);
  CHECK(std::count(dot.begin(), dot.end(), '-') >= 8);
}
