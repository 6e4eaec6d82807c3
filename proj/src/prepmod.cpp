#include "clusterforge/prepmod.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cf::prep {

std::size_t positive_root_count(const DoubleQuiver& q, const std::vector<std::size_t>& vertices) {
  const std::size_t n = q.vertex_count();
  std::set<std::vector<long>> roots;
  std::vector<std::vector<long>> todo;
  for (auto v : vertices) {
    if (v < 1 || v > n) throw InvalidInput("vertex " + std::to_string(v) + " out of range");
    std::vector<long> e(n, 0);
    e[v - 1] = 1;
    todo.push_back(e);
  }
  while (!todo.empty()) {
    auto a = todo.back();
    todo.pop_back();
    if (!roots.insert(a).second) continue;
    for (auto v : vertices) {
      // s_v(a) = a - (a, e_v) e_v
      long pairing = 2 * a[v - 1];
      for (const auto& [x, y] : q.edges()) {
        if (x == v - 1) pairing -= a[y];
        if (y == v - 1) pairing -= a[x];
      }
      auto b = a;
      b[v - 1] -= pairing;
      if (std::all_of(b.begin(), b.end(), [](long c) { return c >= 0; }) && !roots.count(b)) todo.push_back(b);
    }
  }
  return roots.size();
}

RigidReport build_complete_rigid(const DynkinType& type, const std::vector<std::size_t>& K_in,
                                 const std::vector<std::size_t>& word) {
  const auto& alg = algebra_for(type);
  const auto& q = *alg.quiver();
  const std::size_t n = q.vertex_count();
  RigidReport rep;
  rep.K = K_in;
  std::sort(rep.K.begin(), rep.K.end());
  rep.K.erase(std::unique(rep.K.begin(), rep.K.end()), rep.K.end());
  for (std::size_t j = 1; j <= n; ++j)
    if (!std::binary_search(rep.K.begin(), rep.K.end(), j)) rep.J.push_back(j);
  if (rep.J.empty()) throw InvalidInput("build_complete_rigid: K must be a proper subset of the vertices");
  for (auto i : word)
    if (i < 1 || i > n) throw InvalidInput("word letter " + std::to_string(i) + " out of range");

  rep.r = word.size();
  if (rep.r != q.positive_root_count())
    throw InvalidInput("word has length " + std::to_string(rep.r) + " but w_0 has length " +
                       std::to_string(q.positive_root_count()));
  rep.r_K = rep.K.empty() ? 0 : positive_root_count(q, rep.K);
  for (std::size_t p = 0; p < rep.r_K; ++p)
    if (!std::binary_search(rep.K.begin(), rep.K.end(), word[p]))
      throw InvalidInput("the first r_K = " + std::to_string(rep.r_K) + " letters must lie in K");

  for (std::size_t p = 1; p <= rep.r; ++p) {
    const std::size_t ip = word[p - 1];
    std::vector<std::size_t> prefix(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(p));
    rep.all_M.push_back(functor_E_word(alg.injective(ip), prefix, true));
    if (p <= rep.r_K && std::binary_search(rep.K.begin(), rep.K.end(), ip)) rep.q[ip] = p;
    rep.t[ip] = p;
  }

  std::set<std::size_t> chosen;
  for (std::size_t p = rep.r_K + 1; p <= rep.r; ++p) chosen.insert(p);
  for (const auto& [k, qk] : rep.q) chosen.insert(qk);
  for (auto p : chosen) {
    const QRep& m = rep.all_M[p - 1];
    if (m.total_dim() == 0) {
      rep.vanished.push_back(p);
      continue;
    }
    rep.summands.push_back({"M" + std::to_string(p), p, m});
  }
  for (auto j : rep.J) rep.summands.push_back({"Q" + std::to_string(j), j, alg.injective(j)});

  if (rep.summands.size() != rep.r - rep.r_K)
    throw VerificationFailure("complete rigid module has " + std::to_string(rep.summands.size()) +
                              " summands, expected r - r_K = " + std::to_string(rep.r - rep.r_K));
  return rep;
}

cluster::ExchangeMatrix ExchangeMatrixReport::extended() const {
  auto rows = b.rows();
  rows.insert(rows.end(), extension.begin(), extension.end());
  return cluster::ExchangeMatrix(rows.size(), b.n() + extension.size(), rows);
}

namespace {

QRep sum_with_multiplicities(const std::vector<QRep>& summands, const std::vector<std::size_t>& mult) {
  QRep acc = zero_rep(RationalField{}, summands.front().quiver);
  for (std::size_t i = 0; i < summands.size(); ++i)
    for (std::size_t c = 0; c < mult[i]; ++c) acc = direct_sum(acc, summands[i]);
  return acc;
}

}  // namespace

ExchangeMatrixReport exchange_matrix_from_sequences(const std::vector<QRep>& summands,
                                                    const std::vector<ExchangeSequence>& sequences,
                                                    const std::vector<std::size_t>& J) {
  const std::size_t d = summands.size();
  const std::size_t r = sequences.size();
  if (d == 0 || r > d) throw InvalidInput("exchange matrix: need at least as many summands as directions");
  std::vector<std::vector<long>> rows(d, std::vector<long>(r, 0));
  for (std::size_t k = 0; k < r; ++k) {
    const auto& s = sequences[k];
    if (s.x.size() != d || s.y.size() != d)
      throw InvalidInput("exchange sequence " + std::to_string(k + 1) + ": multiplicity vectors need " +
                         std::to_string(d) + " entries");
    for (std::size_t i = 0; i < d; ++i) {
      if (s.x[i] > 0 && s.y[i] > 0)
        throw InvalidInput("exchange sequence " + std::to_string(k + 1) + ": X and Y share summand " +
                           std::to_string(i + 1));
      rows[i][k] = static_cast<long>(s.y[i]) - static_cast<long>(s.x[i]);
    }
  }
  ExchangeMatrixReport out{cluster::ExchangeMatrix(d, d - r, rows), {}};
  const auto& quiver = summands.front().quiver;
  for (auto j : J) {
    const QRep sj = simple(RationalField{}, quiver, j);
    std::vector<long> row;
    for (const auto& s : sequences) {
      const QRep x = sum_with_multiplicities(summands, s.x);
      const QRep y = sum_with_multiplicities(summands, s.y);
      row.push_back(static_cast<long>(hom_dim(sj, x)) - static_cast<long>(hom_dim(sj, y)));
    }
    out.extension.push_back(std::move(row));
  }
  return out;
}

bool has_short_exact_sequence(const QRep& a, const QRep& b, const QRep& c, std::uint64_t seed) {
  for (std::size_t v = 0; v < a.dims.size(); ++v)
    if (a.dims[v] + c.dims[v] != b.dims[v]) return false;
  const RationalField f;
  auto h = hom_basis(a, b);
  if (h.empty()) return a.total_dim() == 0 && is_isomorphic(b, c, seed);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<Rational> coef;
    for (std::size_t k = 0; k < h.size(); ++k) coef.push_back(random_elem(f, rng));
    Spaces<RationalField> img;
    bool injective = true;
    for (std::size_t v = 0; v < a.dims.size(); ++v) {
      Mat<RationalField> fv(f, b.dims[v], a.dims[v]);
      for (std::size_t k = 0; k < h.size(); ++k) fv = add(f, fv, scale(f, h[k][v], coef[k]));
      img.push_back(image(f, fv));
      if (img.back().dim() != a.dims[v]) injective = false;
    }
    if (!injective) continue;
    if (is_isomorphic(quotient_by(b, img), c, seed + static_cast<std::uint64_t>(attempt))) return true;
  }
  return false;
}

namespace {

std::string spaces_key(const Spaces<RationalField>& u) {
  std::string k;
  for (const auto& s : u) {
    for (const auto& row : s.basis) {
      for (const auto& x : row) k += x.get_str() + ",";
      k += ";";
    }
    k += "|";
  }
  return k;
}

}  // namespace

std::vector<QRep> submodules(const QRep& m) {
  std::vector<Spaces<RationalField>> found{zero_spaces(m)};
  std::set<std::string> seen{spaces_key(found.front())};
  for (std::size_t idx = 0; idx < found.size(); ++idx) {
    const auto u = found[idx];
    const QRep quo = quotient_by(m, u);
    for (std::size_t v = 0; v < m.dims.size(); ++v) {
      const auto soc = socle_space(quo, v);
      if (soc.dim() == 0) continue;
      if (soc.dim() > 1)
        throw InvalidInput("submodules: a quotient has socle of dimension " + std::to_string(soc.dim()) +
                           " at vertex " + std::to_string(v + 1) + "; the submodule family is infinite");
      // Lift the socle line of M/U back to M_v.
      const auto keep = complement_columns(u[v]);
      std::vector<Rational> lift(m.dims[v], Rational(0));
      for (std::size_t i = 0; i < keep.size(); ++i) lift[keep[i]] = soc.basis[0][i];
      std::vector<std::vector<std::vector<Rational>>> gens(m.dims.size());
      for (std::size_t w = 0; w < m.dims.size(); ++w) gens[w] = u[w].basis;
      gens[v].push_back(lift);
      auto next = generated_spaces(m, gens);
      if (seen.insert(spaces_key(next)).second) found.push_back(std::move(next));
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    std::size_t da = 0, db = 0;
    for (const auto& s : a) da += s.dim();
    for (const auto& s : b) db += s.dim();
    return da < db;
  });
  std::vector<QRep> out;
  for (const auto& u : found) out.push_back(restrict_to(m, u));
  return out;
}

QRep random_module(const DynkinType& type, std::mt19937_64& rng, std::size_t max_total_dim) {
  if (max_total_dim == 0) throw InvalidInput("random_module: max_total_dim must be positive");
  const auto& alg = algebra_for(type);
  const std::size_t n = alg.quiver()->vertex_count();
  auto pick = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };
  auto random_vector = [&](std::size_t len) {
    std::vector<Rational> v(len);
    for (auto& x : v) x = static_cast<long>(pick(7)) - 3;
    return v;
  };
  auto random_gens = [&](const QRep& m, std::size_t count) {
    std::vector<std::vector<std::vector<Rational>>> gens(n);
    for (std::size_t c = 0; c < count; ++c) {
      std::vector<std::size_t> live;
      for (std::size_t v = 0; v < n; ++v)
        if (m.dims[v] > 0) live.push_back(v);
      if (live.empty()) break;
      const std::size_t v = live[pick(live.size())];
      gens[v].push_back(random_vector(m.dims[v]));
    }
    return gens;
  };

  for (int attempt = 0; attempt < 10000; ++attempt) {
    QRep m = alg.injective(1 + pick(n));
    if (pick(3) == 0) m = direct_sum(m, alg.injective(1 + pick(n)));
    m = restrict_to(m, generated_spaces(m, random_gens(m, 1 + pick(2))));
    if (m.total_dim() > 0 && pick(2) == 0) {
      auto u = generated_spaces(m, random_gens(m, 1));
      std::size_t ud = 0;
      for (const auto& s : u) ud += s.dim();
      if (ud < m.total_dim()) m = quotient_by(m, u);
    }
    if (m.total_dim() >= 1 && m.total_dim() <= max_total_dim) return m;
  }
  throw ResourceLimit("random_module: no module of the requested size found");
}

QRep d4_nonrigid_module() {
  const RationalField f;
  const Quiver q = make_quiver(DynkinType{'D', 4});
  // Vertex 3 carries the top x and the socle z; vertices 1, 2, 4 carry u_k.
  // 3 -> k sends x to u_k, k -> 3 sends u_k to mu_k z with mu = (1, 1, 2),
  // which satisfies the relation at 3 since -mu_1 - mu_2 + mu_4 = 0.
  QRep m = rep_with_dims(f, q, {1, 1, 2, 1});
  const long mu[] = {1, 1, 0, 2};
  for (std::size_t a = 0; a < q->arrows().size(); ++a) {
    const auto& ar = q->arrows()[a];
    if (ar.source == 2) m.maps[a](0, 0) = 1;
    if (ar.target == 2) m.maps[a](1, 0) = mu[ar.source];
  }
  return m;
}

std::string layers_to_string(const std::vector<std::vector<std::size_t>>& layers) {
  std::ostringstream os;
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
    if (it != layers.rbegin()) os << " | ";
    bool first = true;
    for (std::size_t v = 0; v < it->size(); ++v)
      for (std::size_t c = 0; c < (*it)[v]; ++c) {
        os << (first ? "" : "+") << "S_" << (v + 1);
        first = false;
      }
  }
  return os.str();
}

}  // namespace cf::prep
