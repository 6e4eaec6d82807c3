// Acceptance run: one PASS/FAIL line per criterion with its runtime.
// Equality is structural everywhere; a criterion also fails when it runs
// past its time limit.

#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "clusterforge/cases.hpp"
#include "clusterforge/cluster.hpp"
#include "clusterforge/error.hpp"
#include "clusterforge/nmatrix.hpp"
#include "clusterforge/phi.hpp"
#include "clusterforge/prepmod.hpp"
#include "support.hpp"

using namespace cf;
using prep::DynkinType;
using prep::QRep;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void need(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

const DynkinType A2 = DynkinType::parse("A2");
const DynkinType A3 = DynkinType::parse("A3");
const DynkinType D4 = DynkinType::parse("D4");

Outcome c1_matrix_mutation() {
  Outcome o;
  const auto s = cluster::grassmannian_2_5_seed();
  const cluster::ExchangeMatrix want(7, 5, {{0, 1}, {-1, 0}, {1, -1}, {-1, 0}, {1, 0}, {0, -1}, {0, 1}});
  o.need(cluster::mutate_matrix(s.matrix, 1) == want, "mu_1(B) differs from the printed matrix");
  const auto m = cluster::mutate_seed(s, 1);
  const auto y1s = parse_laurent(s.vars(), "y1^-1*y2*y4 + y1^-1*y3*y5");
  o.need(m.cluster[0] == y1s, "y1* = " + m.cluster[0].to_string());
  o.need(m.matrix == want, "seed mutation matrix differs");
  o.detail = o.ok ? "y1* = (y2y4 + y3y5)/y1" : o.detail;
  return o;
}

Outcome c2_grassmannian() {
  Outcome o;
  const auto c = cluster::explore(cluster::grassmannian_2_5_seed());
  o.need(c.exhausted, "exploration not exhausted");
  o.need(c.cluster_count() == 5, std::to_string(c.cluster_count()) + " clusters");
  o.need(c.variable_count() == 5, std::to_string(c.variable_count()) + " mutable variables");
  if (o.ok) o.detail = "5 clusters, 5 mutable variables, all Laurent";
  return o;
}

Outcome c3_quadric() {
  Outcome o;
  cases::CaseOptions opt;
  const auto r = cases::run_case("quadric-n", opt);
  for (const auto& ch : r.checks) o.need(ch.passed, ch.name + ": " + ch.detail);
  if (o.ok) o.detail = "n=4..7 give 4, 8, 16, 32 clusters; every edge matches its relation";
  return o;
}

Outcome c4_exchange_matrix() {
  Outcome o;
  const auto& d = cases::d4_flag();
  const auto em = prep::exchange_matrix_from_sequences(d.seed_order, d.sequences, d.J);
  const cluster::ExchangeMatrix want(6, 4, {{0, 0}, {0, 0}, {0, -1}, {-1, 1}, {0, -1}, {1, 0}});
  o.need(em.b == want, "B(T) differs");
  o.need(em.extension == std::vector<std::vector<long>>{{1, 0}}, "extension row differs");
  const QRep s4 = prep::simple(RationalField{}, d.Q4.quiver, 4);
  const QRep m46 = prep::direct_sum(d.M4, d.M6);
  o.need(prep::hom_dim(s4, d.M5) == 2 && prep::hom_dim(s4, d.Q4) == 1, "direction 1 hom dims are not 2 and 1");
  o.need(prep::hom_dim(s4, m46) == 2 && prep::hom_dim(s4, d.M5) == 2, "direction 2 hom dims are not 2 and 2");
  if (o.ok) o.detail = "B(T) as printed, extension [1,0] from 2-1 and 2-2";
  return o;
}

Outcome c5_injectives() {
  Outcome o;
  for (const char* name : {"Q3", "Q4"}) {
    const auto got = prep::layers_to_string(prep::socle_layers(prep::injective(D4, name[1] - '0')));
    o.need(got == cases::displayed_layers(name), std::string(name) + " = " + got);
  }
  if (o.ok) o.detail = "Q3 and Q4 socle series match layer by layer";
  return o;
}

bool iso(const QRep& a, const QRep& b) { return prep::is_isomorphic(a, b, 0); }

// Relations among E_i (or their daggers) on m.
std::string functor_relations(const QRep& m, bool dagger) {
  const auto& q = *m.quiver;
  const std::size_t n = q.vertex_count();
  auto E = [&](const QRep& x, std::size_t i) { return dagger ? prep::functor_E_dagger(x, i) : prep::functor_E(x, i); };
  for (std::size_t i = 1; i <= n; ++i) {
    const QRep ei = E(m, i);
    if (!prep::check_relation(ei)) return "E_" + std::to_string(i) + " breaks the relation";
    if (!iso(E(ei, i), ei)) return "E_i E_i != E_i at i=" + std::to_string(i);
    for (std::size_t j = i + 1; j <= n; ++j) {
      const QRep ej = E(m, j);
      if (q.adjacent(i - 1, j - 1)) {
        if (!iso(E(E(ei, j), i), E(E(ej, i), j)))
          return "braid relation fails at " + std::to_string(i) + "," + std::to_string(j);
      } else if (!iso(E(ej, i), E(ei, j))) {
        return "E_i E_j != E_j E_i at " + std::to_string(i) + "," + std::to_string(j);
      }
    }
  }
  return {};
}

Outcome c6_functors() {
  Outcome o;
  std::mt19937_64 rng(0);
  std::size_t count = 0;
  for (const auto& t : {D4, A3})
    for (int k = 0; k < 20; ++k) {
      const QRep m = prep::random_module(t, rng, 8);
      for (bool dagger : {false, true}) {
        const auto bad = functor_relations(m, dagger);
        o.need(bad.empty(), t.name() + " module " + prep::layers_to_string(prep::socle_layers(m)) + ": " + bad);
      }
      ++count;
    }
  if (o.ok) o.detail = std::to_string(count) + " random modules (20 D4, 20 A3), E and E-dagger";
  return o;
}

Outcome c7_rigid() {
  Outcome o;
  const auto r = prep::build_complete_rigid(D4, {1, 2, 3}, cases::kD4RigidWord);
  o.need(r.summands.size() == 6, std::to_string(r.summands.size()) + " summands");
  o.need(r.r - r.r_K == 6, "dim N_K = " + std::to_string(r.r - r.r_K));
  o.need(r.vanished == std::vector<std::size_t>{9, 10, 11, 12}, "wrong vanishing indices");
  for (const auto& s : r.summands) {
    const auto got = prep::layers_to_string(prep::socle_layers(s.module));
    o.need(got == cases::displayed_layers(s.name), s.name + " = " + got);
  }
  for (const auto& a : r.summands)
    for (const auto& b : r.summands)
      o.need(prep::ext1_dim(a.module, b.module) == 0, "ext1(" + a.name + "," + b.name + ") != 0");
  if (o.ok) o.detail = "M4, M5, M6, M7, M8, Q4 as displayed; M9..M12 = 0; pairwise ext1 = 0";
  return o;
}

Outcome c8_phi_golden() {
  Outcome o;
  std::set<std::string> backends;
  auto note = [&](const phi::PhiResult& r) {
    backends.insert(phi::backend_name(r.table.backend));
    return r.value;
  };
  {
    const auto w = nmat::Word::with_default_params(cases::kA2Word);
    const auto q = prep::make_quiver(A2);
    const auto vars = make_vars(w.params);
    const std::vector<std::pair<QRep, std::string>> golden{{prep::simple(RationalField{}, q, 1), "t1 + t3"},
                                                          {prep::simple(RationalField{}, q, 2), "t2"},
                                                          {prep::injective(A2, 1), "t1*t2"},
                                                          {prep::injective(A2, 2), "t2*t3"}};
    for (const auto& [m, text] : golden)
      o.need(note(phi::phi_eval(m, w, vars)) == parse_laurent(vars, text), "A2 value " + text);
  }
  {
    const auto w = nmat::Word::with_default_params(cases::kD4FlagWord);
    const auto x = nmat::product(D4, w);
    const auto row = x.row(1);
    const auto text = cases::d4_first_row_text();
    for (std::size_t j = 0; j < 8; ++j)
      o.need(row[j] == parse_laurent(x.vars(), text[j]), "first row entry " + std::to_string(j + 1));
    const auto subs = prep::submodules(prep::injective(D4, 4));
    o.need(subs.size() == 8, std::to_string(subs.size()) + " submodules of Q4");
    std::set<std::size_t> used;
    for (const auto& m : subs) {
      const auto v = note(phi::phi_eval(m, w, x.vars()));
      std::size_t hit = 8;
      for (std::size_t j = 0; j < 8; ++j)
        if (!used.count(j) && row[j] == v) hit = j;
      o.need(hit < 8, "submodule " + prep::layers_to_string(prep::socle_layers(m)) + " matches no entry");
      used.insert(hit);
    }
  }
  {
    const auto w = nmat::Word::with_default_params(cases::kA3Word);
    const auto x = nmat::product(A3, w);
    const auto subs = prep::submodules(prep::injective(A3, 2));
    std::set<std::pair<std::size_t, std::size_t>> hit;
    for (const auto& m : subs) {
      const auto v = note(phi::phi_eval(m, w, x.vars()));
      bool found = false;
      for (std::size_t i = 1; i <= 4 && !found; ++i)
        for (std::size_t j = i + 1; j <= 4 && !found; ++j)
          if (nmat::minor(x, {1, 2}, {i, j}) == v) {
            found = true;
            o.need(hit.insert({i, j}).second, "two submodules of Q2 share a minor");
          }
      o.need(found, "submodule of Q2 without a minor");
    }
    o.need(hit.size() == 6, "not every 2x2 minor attained");
  }
  if (o.ok) {
    o.detail = "Example values, 8 first-row identities, 6 Q2 minors; backends:";
    for (const auto& b : backends) o.detail += " " + b;
  }
  return o;
}

Outcome c9_multiplication() {
  Outcome o;
  std::mt19937_64 rng(0);
  for (int k = 0; k < 20; ++k) {
    const bool d4 = k % 2 == 1;
    const auto& t = d4 ? D4 : A3;
    const auto w = nmat::Word::with_default_params(d4 ? cases::kD4FlagWord : cases::kA3Word);
    const QRep a = prep::random_module(t, rng, 4), b = prep::random_module(t, rng, 4);
    const auto r = phi::verify_multiplication(a, b, w);
    o.need(r.direct_sum.holds, "direct sum identity fails for pair " + std::to_string(k) + ": " + r.direct_sum.witness);
  }
  const auto a = cases::a3_plucker();
  const QRep yz = prep::direct_sum(a.Y, a.Z);
  const auto w3 = nmat::Word::with_default_params(cases::kA3Word);
  o.need(phi::verify_multiplication(a.M, a.N, w3, &a.X, &yz).exchange->holds, "A3 exchange identity");
  const auto t2 = DynkinType::parse("A2");
  const auto q2 = prep::make_quiver(t2);
  const QRep s1 = prep::simple(RationalField{}, q2, 1), s2 = prep::simple(RationalField{}, q2, 2);
  const QRep i1 = prep::injective(t2, 1), i2 = prep::injective(t2, 2);
  o.need(phi::verify_multiplication(s1, s2, nmat::Word::with_default_params(cases::kA2Word), &i1, &i2).exchange->holds,
         "A2 exchange identity");
  if (o.ok) o.detail = "20 random direct sums; A2 and A3 exchange identities";
  return o;
}

Outcome c10_nonrigid() {
  Outcome o;
  const QRep m = prep::d4_nonrigid_module();
  const auto layers = prep::layers_to_string(prep::socle_layers(m));
  o.need(layers == "S_3 | S_1+S_2+S_4 | S_3", "filtration " + layers);
  o.need(!prep::is_rigid(m), "reported rigid");
  if (o.ok) o.detail = layers + " is not rigid (ext1 = " + std::to_string(prep::ext1_dim(m, m)) + ")";
  return o;
}

Outcome c11_positivity() {
  Outcome o;
  const auto w = nmat::Word::with_default_params(cases::kD4FlagWord);
  std::mt19937_64 rng(0);
  const auto clusters = cases::d4_positivity_clusters();
  for (int k = 0; k < 10; ++k) {
    std::vector<Rational> pt;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
      Rational r(static_cast<long>(1 + rng() % 100), static_cast<long>(1 + rng() % 100));
      r.canonicalize();
      pt.push_back(r);
    }
    for (const auto& [name, summands] : clusters)
      o.need(phi::positivity_check(summands, w, pt).all_positive, "cluster " + name + " at point " + std::to_string(k));
  }
  o.need(nmat::verify_quadric_relation(D4, w).holds, "quadric relation fails");
  if (o.ok) o.detail = "4 clusters x 10 points positive; y1y8 - y2y7 + y3y6 - y4y5 = 0";
  return o;
}

Outcome c12_properties() {
  Outcome o;
  std::mt19937_64 rng(0);
  const int N = 100;
  int involution = 0, skew = 0, ring = 0, division = 0, ext = 0, hom = 0;
  for (int k = 0; k < N; ++k) {
    const std::size_t r = 2 + rng() % 4, f = rng() % 3;
    const auto b = testing::random_exchange_matrix(rng, r, f);
    const std::size_t dir = 1 + rng() % r;
    involution += cluster::mutate_matrix(cluster::mutate_matrix(b, dir), dir) == b;
    auto c = b;
    for (int s = 0; s < 6; ++s) c = cluster::mutate_matrix(c, 1 + rng() % r);
    skew += c.principal_part_skew_symmetric();
  }
  const Vars v = make_vars({"x", "y", "z"});
  for (int k = 0; k < N; ++k) {
    const auto a = testing::random_poly(v, rng), b = testing::random_poly(v, rng), c = testing::random_poly(v, rng);
    ring += (a + b == b + a) && (a * b == b * a) && ((a + b) + c == a + (b + c)) && ((a * b) * c == a * (b * c)) &&
            (a * (b + c) == a * b + a * c) && (a - a).is_zero();
    const auto d = testing::random_poly(v, rng, false);
    division += div_exact(a * d, d) == a;
  }
  for (int k = 0; k < N; ++k) {
    const auto& t = k % 2 ? D4 : A3;
    const QRep a = prep::random_module(t, rng, 6), b = prep::random_module(t, rng, 6), c = prep::random_module(t, rng, 6);
    ext += prep::ext1_dim(a, b) == prep::ext1_dim(b, a);
    hom += prep::hom_dim(prep::direct_sum(a, b), c) == prep::hom_dim(a, c) + prep::hom_dim(b, c);
  }
  o.need(involution == N, "mutation involution " + std::to_string(involution) + "/100");
  o.need(skew == N, "skew-symmetry " + std::to_string(skew) + "/100");
  o.need(ring == N, "ring axioms " + std::to_string(ring) + "/100");
  o.need(division == N, "division round trip " + std::to_string(division) + "/100");
  o.need(ext == N, "ext symmetry " + std::to_string(ext) + "/100");
  o.need(hom == N, "hom additivity " + std::to_string(hom) + "/100");
  if (o.ok) o.detail = "six suites x 100 instances, no failures";
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double limit_ms;  // 0: no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all{
      {1, "matrix mutation golden test", 1, c1_matrix_mutation},
      {2, "Gr(2,5) exploration", 1000, c2_grassmannian},
      {3, "quadric seeds n=4..7", 10000, c3_quadric},
      {4, "D4 exchange matrices", 1000, c4_exchange_matrix},
      {5, "injective socle filtrations", 1000, c5_injectives},
      {6, "functor relations", 30000, c6_functors},
      {7, "rigid construction", 5000, c7_rigid},
      {8, "phi golden tests", 60000, c8_phi_golden},
      {9, "multiplication identities", 30000, c9_multiplication},
      {10, "non-rigid witness", 1000, c10_nonrigid},
      {11, "positivity instantiation", 10000, c11_positivity},
      {12, "property suites", 0, c12_properties},
  };
  int failed = 0;
  for (const auto& c : all) {
    Outcome o;
    testing::Stopwatch sw;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double ms = sw.ms();
    const bool in_time = c.limit_ms == 0 || ms < c.limit_ms;
    const bool pass = o.ok && in_time;
    if (!pass) ++failed;
    std::string limit = c.limit_ms == 0 ? "no limit" : "limit " + std::to_string(static_cast<long>(c.limit_ms)) + " ms";
    std::printf("criterion %2d %s  %-30s %10.3f ms (%s)  %s%s\n", c.id, pass ? "PASS" : "FAIL", c.title, ms,
                limit.c_str(), o.detail.c_str(), in_time ? "" : "  [over time]");
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
