#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "clusterforge/algebra.hpp"
#include "clusterforge/cases.hpp"
#include "clusterforge/cluster.hpp"
#include "clusterforge/error.hpp"
#include "clusterforge/phi.hpp"
#include "clusterforge/prepmod.hpp"

using namespace cf;
using prep::DynkinType;
using prep::QRep;

namespace {
const DynkinType A1 = DynkinType::parse("A1");
const DynkinType A2 = DynkinType::parse("A2");
const DynkinType D4 = DynkinType::parse("D4");
const RationalField Q;

QRep simple(const DynkinType& t, std::size_t i) { return prep::simple(Q, prep::make_quiver(t), i); }
prep::PRep mod_p(const QRep& m, std::uint32_t p) { return *prep::reduce_mod_p(m, p); }
}  // namespace

TEST_CASE("flag counts over F_p") {
  CHECK(phi::count_flags_mod_p(mod_p(simple(A2, 1), 2), {1}) == 1);
  const auto q1 = prep::injective(A2, 1);
  CHECK(phi::count_flags_mod_p(mod_p(q1, 2), {1, 2}) == 1);
  CHECK(phi::count_flags_mod_p(mod_p(q1, 2), {2, 1}) == 0);
  const auto ss = prep::direct_sum(simple(A2, 1), simple(A2, 1));
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) CHECK(phi::count_flags_mod_p(mod_p(ss, p), {1, 1}) == p + 1);
  // Finite chain sets do not see the field.
  const auto q4 = prep::injective(D4, 4);
  for (std::uint32_t p : {2u, 3u, 5u}) CHECK(phi::count_flags_mod_p(mod_p(q4, p), {4, 3, 1, 2, 3, 4}) == 1);
}

TEST_CASE("Euler characteristics") {
  const auto ss = prep::direct_sum(simple(A2, 1), simple(A2, 1));
  const auto c = phi::chi(ss, {1, 1});
  CHECK(c.value == 2);
  CHECK(phi::chi(prep::injective(D4, 4), {4, 3, 1, 2, 3, 4}).value == 1);
  CHECK(phi::chi(prep::injective(D4, 4), {4, 3, 1, 2, 4, 3}).value == 0);
  CHECK(phi::chi(simple(A2, 1), {1, 2}).value == 0);
  CHECK_THROWS_AS(phi::chi(simple(A2, 1), {3}), InvalidInput);
}

TEST_CASE("phi of small modules") {
  const auto w = nmat::Word::with_default_params({1});
  const auto one = phi::phi_eval(simple(A1, 1), w);
  CHECK(one.value == parse_laurent(one.value.vars(), "t1"));

  const auto w3 = nmat::Word::with_default_params(cases::kA2Word);
  const auto zero = prep::zero_rep(Q, prep::make_quiver(A2));
  const auto p0 = phi::phi_eval(zero, w3);
  CHECK(p0.value == LaurentPoly::constant(p0.value.vars(), 1));
  const auto q1 = prep::injective(A2, 1);
  CHECK(phi::phi_eval(prep::direct_sum(q1, zero), w3).value == phi::phi_eval(q1, w3).value);
  CHECK(phi::verify_multiplication(q1, zero, w3).direct_sum.holds);
}

TEST_CASE("weight grading") {
  // Each monomial of phi_M carries total exponent dim M_v on the letters equal to v.
  const auto& d = cases::d4_flag();
  const auto w = nmat::Word::with_default_params(cases::kD4FlagWord);
  for (const QRep* m : {&d.M4, &d.M5, &d.Q4, &d.M7}) {
    const auto r = phi::phi_eval(*m, w);
    REQUIRE_FALSE(r.value.is_zero());
    for (const auto& term : r.value.terms()) {
      std::vector<long> got(4, 0);
      for (std::size_t k = 0; k < w.params.size(); ++k) {
        const auto idx = *r.value.vars()->index_of(w.params[k]);
        got[w.letters[k] - 1] += term.mono.exps[idx];
      }
      for (std::size_t v = 0; v < 4; ++v) CHECK(got[v] == static_cast<long>(m->dims[v]));
    }
  }
}

TEST_CASE("interpolated backend agrees with direct counting") {
  const auto ss = prep::direct_sum(simple(A2, 1), simple(A2, 1));
  const auto r = phi::phi_eval(ss, nmat::Word::with_default_params({1, 2, 1}));
  CHECK(r.value == parse_laurent(r.value.vars(), "t1^2 + 2*t1*t3 + t3^2"));
  const auto c = phi::chi(ss, {1, 1});
  CHECK(c.backend == phi::Backend::interpolated);
  CHECK(c.primes_used.size() >= 3);
}

TEST_CASE("mutated cluster variables match phi of the exchanged modules") {
  // Substituting the phi values into the mutated seed variable gives phi of T_k*.
  const auto& d = cases::d4_flag();
  const auto w = nmat::Word::with_default_params(cases::kD4FlagWord);
  const auto x = nmat::product(D4, w);
  const auto& vars = x.vars();
  const std::vector<const QRep*> order{&d.M7, &d.M8, &d.M4, &d.M5, &d.M6, &d.Q4};
  const auto seed = cluster::d4_flag_seed();
  RationalPoint t;
  for (std::size_t k = 0; k < w.params.size(); ++k) t[w.params[k]] = Rational(static_cast<long>(k % 5 + 1), 3);
  RationalPoint at;
  for (std::size_t i = 0; i < order.size(); ++i)
    at[seed.vars()->names()[i]] = evaluate(phi::phi_eval(*order[i], w, vars).value, t);
  const std::vector<const QRep*> star{&d.M7s, &d.M8s};
  for (std::size_t k = 1; k <= 2; ++k) {
    const auto mutated = cluster::mutate_seed(seed, k).cluster[k - 1];
    CHECK(evaluate(mutated, at) == evaluate(phi::phi_eval(*star[k - 1], w, vars).value, t));
  }
}

TEST_CASE("positivity") {
  const auto w = nmat::Word::with_default_params({1});
  const auto r = phi::positivity_check({simple(A1, 1)}, w, {Rational(1, 2)});
  CHECK(r.values.front() == Rational(1, 2));
  CHECK(r.all_positive);
  CHECK_THROWS_AS(phi::positivity_check({simple(A1, 1)}, w, {Rational(0)}), InvalidInput);
  CHECK_THROWS_AS(phi::positivity_check({simple(A1, 1)}, w, {}), InvalidInput);

  const auto w12 = nmat::Word::with_default_params(cases::kD4FlagWord);
  const std::vector<Rational> ones(12, Rational(1));
  for (const auto& [name, summands] : cases::d4_positivity_clusters())
    CHECK_MESSAGE(phi::positivity_check(summands, w12, ones).all_positive, name);
}

TEST_CASE("memo budget from the environment") {
  const auto q3 = cases::d4_flag().M5;
  const auto w = nmat::Word::with_default_params(cases::kD4FlagWord);
  const auto base = phi::phi_eval(q3, w).value;
  setenv("CLUSTERFORGE_MAX_MEM", "1", 1);
  CHECK(phi::phi_eval(q3, w).value == base);
  setenv("CLUSTERFORGE_MAX_MEM", "2M", 1);
  CHECK(phi::phi_eval(q3, w).value == base);
  setenv("CLUSTERFORGE_MAX_MEM", "0", 1);
  CHECK_THROWS_AS(phi::phi_eval(q3, w), InvalidInput);
  setenv("CLUSTERFORGE_MAX_MEM", "12x", 1);
  CHECK_THROWS_AS(phi::phi_eval(q3, w), InvalidInput);
  unsetenv("CLUSTERFORGE_MAX_MEM");
}
