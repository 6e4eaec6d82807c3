#include "clusterforge/cases.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>

#include "clusterforge/algebra.hpp"
#include "clusterforge/cluster.hpp"
#include "clusterforge/error.hpp"
#include "clusterforge/nmatrix.hpp"

namespace cf::cases {

using prep::DynkinType;
using prep::QRep;

const std::vector<std::size_t> kA2Word{1, 2, 1};
const std::vector<std::size_t> kA3Word{1, 2, 3, 1, 2, 1};
const std::vector<std::size_t> kD4FlagWord{1, 2, 4, 3, 1, 2, 4, 3, 1, 2, 4, 3};
const std::vector<std::size_t> kD4RigidWord{1, 3, 1, 2, 3, 1, 4, 3, 1, 2, 3, 4};

bool CaseReport::passed() const { return failures() == 0 && !checks.empty(); }

std::size_t CaseReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; }));
}

std::vector<std::string> d4_first_row_text() {
  return {
      "1",
      "t3 + t7 + t11",
      "t3*t4 + t3*t8 + t7*t8 + t3*t12 + t7*t12 + t11*t12",
      "t3*t4*t6 + t3*t4*t10 + t3*t8*t10 + t7*t8*t10",
      "t3*t4*t5 + t3*t4*t9 + t3*t8*t9 + t7*t8*t9",
      "t3*t4*t5*t6 + t3*t4*t5*t10 + t3*t4*t6*t9 + t3*t4*t9*t10 + t3*t8*t9*t10 + t7*t8*t9*t10",
      "t3*t4*t5*t6*t8 + t3*t4*t5*t6*t12 + t3*t4*t6*t9*t12 + t3*t4*t5*t10*t12 + t3*t4*t9*t10*t12"
      " + t3*t8*t9*t10*t12 + t7*t8*t9*t10*t12",
      "t3*t4*t5*t6*t8*t11",
  };
}

std::string displayed_layers(std::string_view name) {
  static const std::map<std::string, std::string, std::less<>> table{
      {"Q3", "S_3 | S_1+S_2+S_4 | S_3+S_3 | S_1+S_2+S_4 | S_3"},
      {"Q4", "S_4 | S_3 | S_1+S_2 | S_3 | S_4"},
      {"M4", "S_2 | S_3 | S_4"},
      {"M5", "S_3 | S_1+S_2 | S_3 | S_4+S_4"},
      {"M6", "S_1 | S_3 | S_4"},
      {"M7", "S_4"},
      {"M8", "S_3 | S_4"},
  };
  auto it = table.find(name);
  if (it == table.end()) throw InvalidInput("no displayed filtration for '" + std::string(name) + "'");
  return it->second;
}

const D4Flag& d4_flag() {
  static std::once_flag once;
  static std::optional<D4Flag> data;
  std::call_once(once, [] {
    const auto t = DynkinType::parse("D4");
    D4Flag d{prep::build_complete_rigid(t, {1, 2, 3}, kD4RigidWord), {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {4}};
    auto by_name = [&](const std::string& n) -> const QRep& {
      for (const auto& s : d.rigid.summands)
        if (s.name == n) return s.module;
      throw VerificationFailure("rigid construction lacks summand " + n);
    };
    d.M4 = by_name("M4");
    d.M5 = by_name("M5");
    d.M6 = by_name("M6");
    d.M7 = by_name("M7");
    d.M8 = by_name("M8");
    d.Q4 = by_name("Q4");
    d.M7s = prep::functor_E(d.Q4, 4);
    d.M8s = prep::functor_E(d.M7s, 3);
    d.seed_order = {d.M7, d.M8, d.M4, d.M5, d.M6, d.Q4};
    // 0 -> M7 -> M5 -> M7* -> 0,  0 -> M7* -> Q4 -> M7 -> 0,
    // 0 -> M8 -> M4+M6 -> M8* -> 0,  0 -> M8* -> M5 -> M8 -> 0.
    d.sequences = {{{0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 1}}, {{0, 0, 1, 0, 1, 0}, {0, 0, 0, 1, 0, 0}}};
    data = std::move(d);
  });
  return *data;
}

A3Plucker a3_plucker() {
  const auto t = DynkinType::parse("A3");
  const auto q = prep::make_quiver(t);
  A3Plucker a;
  a.M = prep::simple(RationalField{}, q, 2);
  a.X = prep::injective(t, 2);
  a.N = prep::functor_E(a.X, 2);
  a.Y = prep::functor_E(a.N, 3);
  a.Z = prep::functor_E(a.N, 1);
  return a;
}

std::vector<std::pair<std::string, std::vector<QRep>>> d4_positivity_clusters() {
  const auto& d = d4_flag();
  std::vector<std::pair<std::string, std::vector<QRep>>> out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      std::string name = std::string(a ? "M7*" : "M7") + "," + (b ? "M8*" : "M8") + ",M4,M5,M6,Q4";
      out.push_back({name, {a ? d.M7s : d.M7, b ? d.M8s : d.M8, d.M4, d.M5, d.M6, d.Q4}});
    }
  return out;
}

namespace {

class Recorder {
 public:
  explicit Recorder(CaseReport& r) : r_(r) {}

  void add(std::string name, bool ok, std::string detail = {}) {
    r_.checks.push_back({std::move(name), ok, std::move(detail)});
  }

  // Runs body; an exception becomes a failed check carrying its message.
  void run(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    try {
      auto [ok, detail] = body();
      add(name, ok, std::move(detail));
    } catch (const std::exception& e) {
      add(name, false, std::string("error: ") + e.what());
    }
  }

 private:
  CaseReport& r_;
};

std::pair<bool, std::string> same_poly(const LaurentPoly& got, const LaurentPoly& want) {
  if (got == want) return {true, got.to_string()};
  return {false, "got " + got.to_string() + ", expected " + want.to_string()};
}

std::pair<bool, std::string> identity(const phi::IdentityCheck& c) {
  return {c.holds, c.holds ? "holds" : "differs at " + c.witness};
}

std::string layers(const QRep& m) { return prep::layers_to_string(prep::socle_layers(m)); }

std::pair<bool, std::string> same_layers(const QRep& m, std::string_view name) {
  const std::string got = layers(m), want = displayed_layers(name);
  return {got == want, got == want ? got : "got " + got + ", expected " + want};
}

std::string backend_summary(const phi::PhiResult& r) {
  std::string s = phi::backend_name(r.table.backend);
  if (!r.table.primes_used.empty()) s += " (" + std::to_string(r.table.primes_used.size()) + " primes)";
  return s;
}

// All k x k minors on rows 1..k, keyed by column set.
std::vector<std::pair<std::vector<std::size_t>, LaurentPoly>> top_minors(const nmat::NMatrix& x, std::size_t k) {
  std::vector<std::pair<std::vector<std::size_t>, LaurentPoly>> out;
  std::vector<std::size_t> rows(k);
  for (std::size_t i = 0; i < k; ++i) rows[i] = i + 1;
  std::vector<bool> pick(x.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < x.size(); ++c)
      if (pick[c]) cols.push_back(c + 1);
    out.push_back({cols, nmat::minor(x, rows, cols)});
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

std::string cols_text(const std::vector<std::size_t>& cols) {
  std::string s = "[";
  for (std::size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + std::to_string(cols[i]);
  return s + "]";
}

void case_a2(Recorder& rec, const CaseOptions& opt) {
  const auto t = DynkinType::parse("A2");
  const auto q = prep::make_quiver(t);
  const auto w = nmat::Word::with_default_params(kA2Word);
  const auto x = nmat::product(t, w);
  const auto& vars = x.vars();
  const QRep s1 = prep::simple(RationalField{}, q, 1), s2 = prep::simple(RationalField{}, q, 2);
  const QRep q1 = prep::injective(t, 1), q2 = prep::injective(t, 2);
  auto ph = [&](const QRep& m) { return phi::phi_eval(m, w, vars, opt.count).value; };

  const std::vector<std::pair<std::string, std::pair<const QRep*, std::string>>> golden{
      {"phi S1", {&s1, "t1 + t3"}}, {"phi S2", {&s2, "t2"}}, {"phi Q1", {&q1, "t1*t2"}}, {"phi Q2", {&q2, "t2*t3"}}};
  for (const auto& [name, v] : golden)
    rec.run(name + " = " + v.second, [&] { return same_poly(ph(*v.first), parse_laurent(vars, v.second)); });

  rec.run("phi S1 = x12, phi S2 = x23, phi Q1 = x13", [&] {
    bool ok = ph(s1) == x.at(1, 2) && ph(s2) == x.at(2, 3) && ph(q1) == x.at(1, 3);
    return std::pair{ok, std::string(ok ? "entries agree" : "entry mismatch")};
  });
  rec.run("phi Q2 = minor rows 1,2 cols 2,3", [&] { return same_poly(ph(q2), nmat::minor(x, {1, 2}, {2, 3})); });
  rec.run("phi S1 phi S2 = phi Q1 + phi Q2", [&] {
    auto r = phi::verify_multiplication(s1, s2, w, &q1, &q2, opt.count);
    return identity(*r.exchange);
  });
  rec.run("phi S1 phi S2 = phi (S1+S2)", [&] {
    return identity(phi::verify_multiplication(s1, s2, w, nullptr, nullptr, opt.count).direct_sum);
  });
  rec.run("ext1(S1, S2) = 1", [&] {
    auto e = prep::ext1_dim(s1, s2);
    return std::pair{e == 1, std::to_string(e)};
  });
  rec.run("0 -> S1 -> Q1 -> S2 -> 0 and 0 -> S2 -> Q2 -> S1 -> 0", [&] {
    bool ok = prep::has_short_exact_sequence(s1, q1, s2, opt.seed) && prep::has_short_exact_sequence(s2, q2, s1, opt.seed);
    return std::pair{ok, std::string(ok ? "both witnessed" : "not witnessed")};
  });
}

// In A3, for Q_k: phi of each submodule is a k x k minor on rows
// 1..k, distinct submodules give distinct minors and every nonzero minor occurs.
std::pair<bool, std::string> submodule_minors(std::size_t k, const CaseOptions& opt) {
  const auto t = DynkinType::parse("A3");
  const auto w = nmat::Word::with_default_params(kA3Word);
  const auto x = nmat::product(t, w);
  const auto minors = top_minors(x, k);
  const auto subs = prep::submodules(prep::injective(t, k));
  std::set<std::size_t> hit;
  for (const auto& m : subs) {
    const auto v = phi::phi_eval(m, w, x.vars(), opt.count).value;
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < minors.size(); ++i)
      if (minors[i].second == v) found = i;
    if (!found) return {false, "submodule " + layers(m) + " gives " + v.to_string() + ", not a minor"};
    if (!hit.insert(*found).second) return {false, "two submodules give minor " + cols_text(minors[*found].first)};
  }
  for (std::size_t i = 0; i < minors.size(); ++i)
    if (!minors[i].second.is_zero() && !hit.count(i))
      return {false, "minor " + cols_text(minors[i].first) + " is not attained"};
  return {true, std::to_string(subs.size()) + " submodules, bijective onto the nonzero minors"};
}

void case_a3(Recorder& rec, const CaseOptions& opt) {
  const auto t = DynkinType::parse("A3");
  const auto w = nmat::Word::with_default_params(kA3Word);
  const auto x = nmat::product(t, w);
  const auto a = a3_plucker();
  const QRep yz = prep::direct_sum(a.Y, a.Z);
  auto ph = [&](const QRep& m) { return phi::phi_eval(m, w, x.vars(), opt.count).value; };
  auto mn = [&](std::size_t i, std::size_t j) { return nmat::minor(x, {1, 2}, {i, j}); };

  rec.run("N, Y, Z filtrations", [&] {
    const std::string got = layers(a.N) + " / " + layers(a.Y) + " / " + layers(a.Z);
    return std::pair{got == "S_1+S_3 | S_2 / S_1 | S_2 / S_3 | S_2", got};
  });
  rec.run("ext1(M, N) = 1", [&] {
    auto e = prep::ext1_dim(a.M, a.N);
    return std::pair{e == 1, std::to_string(e)};
  });
  rec.run("phi M phi N = phi Q2 + phi (Y+Z)", [&] {
    return identity(*phi::verify_multiplication(a.M, a.N, w, &a.X, &yz, opt.count).exchange);
  });
  rec.run("phi M = [1,3]", [&] { return same_poly(ph(a.M), mn(1, 3)); });
  rec.run("phi N = [2,4]", [&] { return same_poly(ph(a.N), mn(2, 4)); });
  rec.run("phi Q2 = [1,2][3,4]", [&] { return same_poly(ph(a.X), mn(1, 2) * mn(3, 4)); });
  rec.run("phi (Y+Z) = [1,4][2,3]", [&] { return same_poly(ph(yz), mn(1, 4) * mn(2, 3)); });
  rec.run("Plucker relation on the generic unitriangular matrix", [&] {
    const auto g = nmat::generic_unitriangular(4);
    auto m = [&](std::size_t i, std::size_t j) { return nmat::minor(g, {1, 2}, {i, j}); };
    const auto diff = m(1, 3) * m(2, 4) - m(1, 2) * m(3, 4) - m(1, 4) * m(2, 3);
    return std::pair{diff.is_zero(), diff.is_zero() ? std::string("[1,3][2,4] = [1,2][3,4] + [1,4][2,3]") : diff.to_string()};
  });
  for (std::size_t k = 1; k <= 3; ++k)
    rec.run("submodules of Q" + std::to_string(k) + " match top minors", [&] { return submodule_minors(k, opt); });
}

void case_d4_55(Recorder& rec, const CaseOptions& opt) {
  const auto t = DynkinType::parse("D4");
  const auto w = nmat::Word::with_default_params(kD4FlagWord);
  const auto x = nmat::product(t, w);
  const auto row = x.row(1);
  const auto text = d4_first_row_text();

  rec.run("Q3 socle filtration", [&] { return same_layers(prep::injective(t, 3), "Q3"); });
  rec.run("Q4 socle filtration", [&] { return same_layers(prep::injective(t, 4), "Q4"); });
  for (std::size_t j = 0; j < 8; ++j)
    rec.run("first row entry (1," + std::to_string(j + 1) + ")",
            [&] { return same_poly(row[j], parse_laurent(x.vars(), text[j])); });

  rec.run("phi over the 8 submodules of Q4 = first row", [&]() -> std::pair<bool, std::string> {
    const auto subs = prep::submodules(prep::injective(t, 4));
    if (subs.size() != 8) return {false, std::to_string(subs.size()) + " submodules"};
    std::set<std::size_t> used;
    std::size_t interpolated = 0;
    for (const auto& m : subs) {
      const auto r = phi::phi_eval(m, w, x.vars(), opt.count);
      if (r.table.backend == phi::Backend::interpolated) ++interpolated;
      std::optional<std::size_t> hit;
      for (std::size_t j = 0; j < 8; ++j)
        if (!used.count(j) && row[j] == r.value) hit = j;
      if (!hit) return {false, "submodule " + layers(m) + " gives " + r.value.to_string()};
      used.insert(*hit);
    }
    return {true, "bijection, " + std::to_string(interpolated) + " interpolated"};
  });
  rec.run("phi Q4 = (1,8) entry", [&] {
    return same_poly(phi::phi_eval(prep::injective(t, 4), w, x.vars(), opt.count).value, x.at(1, 8));
  });
  rec.run("quadric form vanishes on the first row", [&] {
    const auto qc = nmat::quadric_form_on_row(row);
    return std::pair{qc.holds, qc.holds ? std::string("y1y8 - y2y7 + y3y6 - y4y5 = 0") : qc.witness};
  });
}

void case_d4_152(Recorder& rec, const CaseOptions& opt) {
  const auto t = DynkinType::parse("D4");
  const auto& d = d4_flag();
  const auto& rig = d.rigid;

  rec.run("six summands, r_K = 6, M9..M12 = 0", [&] {
    std::string names;
    for (const auto& s : rig.summands) names += (names.empty() ? "" : ",") + s.name;
    bool ok = rig.summands.size() == 6 && rig.r_K == 6 && rig.r == 12 &&
              rig.vanished == std::vector<std::size_t>{9, 10, 11, 12};
    return std::pair{ok, names};
  });
  for (const auto& [name, m] : std::vector<std::pair<std::string, const QRep*>>{
           {"M4", &d.M4}, {"M5", &d.M5}, {"M6", &d.M6}, {"M7", &d.M7}, {"M8", &d.M8}, {"Q4", &d.Q4}})
    rec.run(name + " filtration", [&] { return same_layers(*m, name); });
  rec.run("pairwise ext1 = 0", [&]() -> std::pair<bool, std::string> {
    for (const auto& a : rig.summands)
      for (const auto& b : rig.summands)
        if (prep::ext1_dim(a.module, b.module) != 0) return {false, "ext1(" + a.name + "," + b.name + ") != 0"};
    return {true, "36 pairs"};
  });
  rec.run("M7* and M8* filtrations", [&] {
    const std::string got = layers(d.M7s) + " / " + layers(d.M8s);
    return std::pair{got == "S_3 | S_1+S_2 | S_3 | S_4 / S_1+S_2 | S_3 | S_4", got};
  });
  rec.run("ext1(M7, M7*) = ext1(M8, M8*) = 1", [&] {
    auto a = prep::ext1_dim(d.M7, d.M7s), b = prep::ext1_dim(d.M8, d.M8s);
    return std::pair{a == 1 && b == 1, std::to_string(a) + "," + std::to_string(b)};
  });
  rec.run("four exchange sequences", [&] {
    const QRep m46 = prep::direct_sum(d.M4, d.M6);
    bool ok = prep::has_short_exact_sequence(d.M7, d.M5, d.M7s, opt.seed) &&
              prep::has_short_exact_sequence(d.M7s, d.Q4, d.M7, opt.seed) &&
              prep::has_short_exact_sequence(d.M8, m46, d.M8s, opt.seed) &&
              prep::has_short_exact_sequence(d.M8s, d.M5, d.M8, opt.seed);
    return std::pair{ok, std::string(ok ? "all witnessed" : "missing")};
  });
  rec.run("B(T) and its extension", [&] {
    const auto em = prep::exchange_matrix_from_sequences(d.seed_order, d.sequences, d.J);
    const auto want = cluster::d4_flag_seed().matrix;
    const auto ext = em.extended();
    bool ok = em.b == want && em.extension == std::vector<std::vector<long>>{{1, 0}} &&
              ext == cluster::d4_flag_extended_seed().matrix;
    std::ostringstream s;
    for (const auto& r : ext.rows()) s << "[" << r[0] << "," << r[1] << "]";
    return std::pair{ok, s.str()};
  });

  const auto w = nmat::Word::with_default_params(kD4FlagWord);
  const auto x = nmat::product(t, w);
  auto n = [&](std::size_t i, std::size_t j) { return x.at(i, j); };
  std::map<std::string, phi::PhiResult> ph;
  auto get = [&](const std::string& name, const QRep& m) -> const LaurentPoly& {
    auto it = ph.find(name);
    if (it == ph.end()) it = ph.emplace(name, phi::phi_eval(m, w, x.vars(), opt.count)).first;
    return it->second.value;
  };
  rec.run("phi M4 = n14", [&] { return same_poly(get("M4", d.M4), n(1, 4)); });
  rec.run("phi M5 = n17 n78 - n18", [&] {
    auto r = same_poly(get("M5", d.M5), n(1, 7) * n(7, 8) - n(1, 8));
    r.second += ", " + backend_summary(ph.at("M5"));
    return r;
  });
  rec.run("phi M6 = n15", [&] { return same_poly(get("M6", d.M6), n(1, 5)); });
  rec.run("phi M7 = n12", [&] { return same_poly(get("M7", d.M7), n(1, 2)); });
  rec.run("phi M8 = n13", [&] { return same_poly(get("M8", d.M8), n(1, 3)); });
  rec.run("phi Q4 = n18", [&] { return same_poly(get("Q4", d.Q4), n(1, 8)); });
  rec.run("phi M7 phi M7* = phi M5 + phi Q4", [&] {
    return identity(*phi::verify_multiplication(d.M7, d.M7s, w, &d.M5, &d.Q4, opt.count).exchange);
  });
  rec.run("phi M8 phi M8* = phi (M4+M6) + phi M5", [&] {
    const QRep m46 = prep::direct_sum(d.M4, d.M6);
    return identity(*phi::verify_multiplication(d.M8, d.M8s, w, &m46, &d.M5, opt.count).exchange);
  });
}

LaurentPoly quadric_shape(const Vars& vars, std::size_t n, std::size_t k) {
  auto v = [&](const std::string& s) { return LaurentPoly::variable(vars, s); };
  auto y = [&](std::size_t i) { return v("y" + std::to_string(i)); };
  auto p = [&](std::size_t s) { return v("p" + std::to_string(s)); };
  if (k == 2) return p(1) + y(1) * y(2 * n);
  if (k == n - 1) return y(n) * y(n + 1) + p(n - 3);
  return p(k - 1) + p(k - 2);
}

void case_quadric(Recorder& rec, const CaseOptions& opt) {
  if (opt.quadric_min < 4 || opt.quadric_max < opt.quadric_min)
    throw InvalidInput("quadric case needs 4 <= n_min <= n_max");
  for (int n = opt.quadric_min; n <= opt.quadric_max; ++n) {
    const auto un = static_cast<std::size_t>(n);
    const auto c = cluster::explore(cluster::quadric_seed(n));
    const std::size_t want = std::size_t{1} << (un - 2);
    rec.add("n=" + std::to_string(n) + ": " + std::to_string(want) + " clusters",
            c.exhausted && c.cluster_count() == want && c.variable_count() == 2 * (un - 2),
            std::to_string(c.cluster_count()) + " clusters, " + std::to_string(c.variable_count()) + " variables" +
                (c.exhausted ? "" : ", not exhausted"));
    rec.run("n=" + std::to_string(n) + ": exchange relations", [&]() -> std::pair<bool, std::string> {
      std::size_t edges = 0;
      for (std::size_t s = 0; s < c.seeds.size(); ++s)
        for (std::size_t k = 1; k <= c.seeds[s].rank(); ++k) {
          const auto& to = c.edges[s][k - 1];
          if (!to) return {false, "missing edge"};
          const auto prod = c.seeds[s].cluster[k - 1] * c.seeds[*to].cluster[k - 1];
          const auto want_rel = quadric_shape(c.seeds[s].vars(), un, k + 1);
          if (prod != want_rel)
            return {false, "seed " + std::to_string(s) + " direction " + std::to_string(k) + ": " + prod.to_string()};
          ++edges;
        }
      return {true, std::to_string(edges / 2) + " edges"};
    });
  }
}

}  // namespace

const std::vector<std::string>& case_names() {
  static const std::vector<std::string> names{"a2-thm61", "a3-plucker", "d4-exercise55", "d4-example152", "quadric-n"};
  return names;
}

CaseReport run_case(std::string_view name, const CaseOptions& opt) {
  CaseReport r;
  r.name = std::string(name);
  Recorder rec(r);
  const auto start = std::chrono::steady_clock::now();
  if (name == "a2-thm61")
    case_a2(rec, opt);
  else if (name == "a3-plucker")
    case_a3(rec, opt);
  else if (name == "d4-exercise55")
    case_d4_55(rec, opt);
  else if (name == "d4-example152")
    case_d4_152(rec, opt);
  else if (name == "quadric-n")
    case_quadric(rec, opt);
  else
    throw InvalidInput("unknown case '" + std::string(name) + "'");
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace cf::cases
