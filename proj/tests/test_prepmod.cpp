#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "clusterforge/algebra.hpp"
#include "clusterforge/cases.hpp"
#include "clusterforge/error.hpp"
#include "clusterforge/json_io.hpp"
#include "clusterforge/prepmod.hpp"

using namespace cf;
using namespace cf::prep;

namespace {
const DynkinType A2 = DynkinType::parse("A2");
const DynkinType A3 = DynkinType::parse("A3");
const DynkinType D4 = DynkinType::parse("D4");
const RationalField Q;

std::vector<std::size_t> dims_after_E(const QRep& m, std::size_t i) {
  auto d = m.dims;
  d[i - 1] -= top_dims(m)[i - 1];
  return d;
}
}  // namespace

TEST_CASE("algebra dimensions") {
  const std::vector<std::pair<std::string, std::size_t>> want{
      {"A1", 1}, {"A2", 4}, {"A3", 10}, {"A4", 20}, {"A5", 35}, {"A6", 56}, {"D4", 28}, {"D5", 60}};
  for (const auto& [name, dim] : want) CHECK_MESSAGE(algebra_for(DynkinType::parse(name)).dim() == dim, name);
  CHECK(injective(DynkinType::parse("A1"), 1).total_dim() == 1);
}

TEST_CASE("injectives of D4") {
  const auto q4 = injective(D4, 4), q3 = injective(D4, 3);
  CHECK(q4.dims == std::vector<std::size_t>{1, 1, 2, 2});
  CHECK(q3.dims == std::vector<std::size_t>{2, 2, 4, 2});
  CHECK(top_dims(q4) == std::vector<std::size_t>{0, 0, 0, 1});
  CHECK(socle_dims(q4) == std::vector<std::size_t>{0, 0, 0, 1});
  CHECK(check_relation(q4));
  CHECK(layers_to_string(socle_layers(q4)) == "S_4 | S_3 | S_1+S_2 | S_3 | S_4");
}

TEST_CASE("relation check") {
  for (std::size_t i = 1; i <= 4; ++i) CHECK(check_relation(simple(Q, make_quiver(D4), i)));
  QRep bad = rep_with_dims(Q, make_quiver(A2), {1, 1});
  for (auto& m : bad.maps) m(0, 0) = Rational(1);
  CHECK_FALSE(check_relation(bad));
  CHECK(relation_witness(bad).has_value());
}

TEST_CASE("functors") {
  const auto s1 = simple(Q, make_quiver(A2), 1);
  CHECK(functor_E(s1, 1).total_dim() == 0);
  const auto q4 = injective(D4, 4);
  CHECK(layers_to_string(socle_layers(functor_E(q4, 4))) == "S_3 | S_1+S_2 | S_3 | S_4");
  CHECK(functor_E_word(q4, {}, false).dims == q4.dims);
  CHECK(layers_to_string(socle_layers(functor_E_word(injective(D4, 2), {1, 3, 1, 2}, true))) == "S_2 | S_3 | S_4");
  const auto m4 = cases::d4_flag().M4;
  CHECK(is_isomorphic(functor_E_word(m4, {1, 3, 1, 2, 3, 1}, true), m4));

  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const auto& t = k % 2 ? A3 : D4;
    const QRep m = random_module(t, rng, 6);
    for (std::size_t i = 1; i <= static_cast<std::size_t>(t.rank); ++i) {
      const auto e = functor_E(m, i);
      CHECK(check_relation(e));
      CHECK(check_relation(functor_E_dagger(m, i)));
      CHECK(e.dims == dims_after_E(m, i));
    }
  }
}

TEST_CASE("hom and ext") {
  const auto q = make_quiver(A2);
  const auto s1 = simple(Q, q, 1), s2 = simple(Q, q, 2);
  CHECK(hom_dim(s1, s1) == 1);
  CHECK(hom_dim(s1, s2) == 0);
  CHECK(ext1_dim(s1, s2) == 1);
  CHECK(is_rigid(s1));
  const auto& d = cases::d4_flag();
  CHECK(hom_dim(simple(Q, make_quiver(D4), 4), d.M5) == 2);
  CHECK(ext1_dim(d.M7, d.M7s) == 1);
  CHECK(ext1_dim(d.M8, d.M8s) == 1);
  CHECK_FALSE(is_rigid(d4_nonrigid_module()));

  std::mt19937_64 rng(4);
  for (int k = 0; k < 10; ++k) {
    const QRep m = random_module(D4, rng, 5), n = random_module(D4, rng, 5);
    CHECK(ext1_dim(injective(D4, 1 + k % 4), m) == 0);
    CHECK(ext1_dim(m, n) == ext1_dim(n, m));
    CHECK(hom_dim(direct_sum(m, n), m) == hom_dim(m, m) + hom_dim(n, m));
  }
}

TEST_CASE("complete rigid modules") {
  const auto d4 = build_complete_rigid(D4, {1, 2, 3}, cases::kD4RigidWord);
  CHECK(d4.summands.size() == 6);
  CHECK(d4.r == 12);
  CHECK(d4.r_K == 6);
  CHECK(d4.vanished == std::vector<std::size_t>{9, 10, 11, 12});

  // With the last letter acting first, E+_{s1}(Q_2) = Q_2 and E+_{s1 s2}(Q_1) = S_2.
  const auto a2 = build_complete_rigid(A2, {}, {1, 2, 1});
  REQUIRE(a2.summands.size() == 3);
  std::vector<std::vector<std::size_t>> dims;
  for (const auto& s : a2.summands) dims.push_back(s.module.dims);
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<std::vector<std::size_t>>{{0, 1}, {1, 1}, {1, 1}});

  const auto a3 = build_complete_rigid(A3, {}, cases::kA3Word);
  for (const auto* r : {&d4, &a2, &a3}) {
    CHECK(r->summands.size() <= r->r - r->r_K);
    for (const auto& a : r->summands) {
      CHECK(a.module.total_dim() > 0);
      for (const auto& b : r->summands) {
        CHECK(ext1_dim(a.module, b.module) == 0);
        if (&a != &b) CHECK_FALSE(is_isomorphic(a.module, b.module));
      }
    }
  }
  CHECK_THROWS_AS(build_complete_rigid(A2, {}, {1, 2}), InvalidInput);
}

TEST_CASE("exchange matrix extraction") {
  const auto& d = cases::d4_flag();
  const auto em = exchange_matrix_from_sequences(d.seed_order, d.sequences, d.J);
  CHECK(em.b == cluster::d4_flag_seed().matrix);
  CHECK(em.extension == std::vector<std::vector<long>>{{1, 0}});
  CHECK(em.extended() == cluster::d4_flag_extended_seed().matrix);

  auto overlap = d.sequences;
  overlap[0].y = overlap[0].x;
  CHECK_THROWS_AS(exchange_matrix_from_sequences(d.seed_order, overlap), InvalidInput);
}

TEST_CASE("module JSON") {
  const auto m = cases::d4_flag().M5;
  const auto back = io::module_from_json(io::module_to_json(m));
  CHECK(back.dims == m.dims);
  CHECK(is_isomorphic(back, m));

  QRep bad = rep_with_dims(Q, make_quiver(A2), {1, 1});
  for (auto& x : bad.maps) x(0, 0) = Rational(1);
  const auto j = io::module_to_json(bad);
  CHECK_THROWS_AS(io::module_from_json(j), InvalidInput);
  CHECK_NOTHROW(io::module_from_json(j, false));

  auto wrong = io::module_to_json(m);
  wrong["dims"]["9"] = 1;
  CHECK_THROWS_AS(io::module_from_json(wrong), InvalidInput);
}
