#pragma once

// Double quivers of Dynkin graphs and their representations satisfying the
// preprojective relation, over Q or F_p.
//
// Orientation convention: Dynkin edge e = {i, j} with i < j gives the arrow
// 2e : i -> j and 2e+1 : j -> i. The relation at vertex i is
//   sum_{i<j} M(j->i) M(i->j)  -  sum_{j<i} M(j->i) M(i->j)  =  0.

#include <cstddef>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "clusterforge/linalg.hpp"

namespace cf::prep {

struct DynkinType {
  char family = 'A';
  int rank = 1;

  // "A3", "D4", "E6".
  static DynkinType parse(const std::string& s);
  std::string name() const { return std::string(1, family) + std::to_string(rank); }
  bool operator==(const DynkinType& o) const { return family == o.family && rank == o.rank; }
};

struct Arrow {
  std::size_t source, target;  // 0-based vertices
  int sign;                    // +1 for i -> j with i < j
};

class DoubleQuiver {
 public:
  explicit DoubleQuiver(DynkinType type);

  const DynkinType& type() const { return type_; }
  std::size_t vertex_count() const { return n_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<std::size_t>& out_arrows(std::size_t v) const { return out_[v]; }
  const std::vector<std::size_t>& in_arrows(std::size_t v) const { return in_[v]; }
  static std::size_t reverse(std::size_t arrow) { return arrow ^ 1u; }
  bool adjacent(std::size_t a, std::size_t b) const;
  // "1->3" (1-based vertices).
  std::string arrow_label(std::size_t arrow) const;
  std::optional<std::size_t> arrow_by_label(const std::string& label) const;
  // Number of positive roots, i.e. the length of w_0.
  std::size_t positive_root_count() const;
  // Symmetric bilinear form (d, e) = 2 sum d_i e_i - sum_edges (d_i e_j + d_j e_i).
  long form(const std::vector<std::size_t>& d, const std::vector<std::size_t>& e) const;

 private:
  DynkinType type_;
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<std::size_t>> out_, in_;
};

using Quiver = std::shared_ptr<const DoubleQuiver>;
Quiver make_quiver(DynkinType type);

template <class F>
struct Rep {
  F field;
  Quiver quiver;
  std::vector<std::size_t> dims;
  std::vector<Mat<F>> maps;  // maps[a] has shape dims[target] x dims[source]

  std::size_t total_dim() const {
    std::size_t s = 0;
    for (auto d : dims) s += d;
    return s;
  }
};

using QRep = Rep<RationalField>;
using PRep = Rep<PrimeField>;

template <class F>
Rep<F> zero_rep(const F& f, const Quiver& q) {
  Rep<F> r{f, q, std::vector<std::size_t>(q->vertex_count(), 0), {}};
  for (std::size_t a = 0; a < q->arrows().size(); ++a) r.maps.emplace_back(f, 0, 0);
  return r;
}

// Maps all zero; shapes consistent with dims.
template <class F>
Rep<F> rep_with_dims(const F& f, const Quiver& q, std::vector<std::size_t> dims) {
  Rep<F> r{f, q, std::move(dims), {}};
  for (const auto& ar : q->arrows()) r.maps.emplace_back(f, r.dims[ar.target], r.dims[ar.source]);
  return r;
}

// vertex is 1-based.
template <class F>
Rep<F> simple(const F& f, const Quiver& q, std::size_t vertex) {
  if (vertex < 1 || vertex > q->vertex_count()) throw InvalidInput("vertex " + std::to_string(vertex) + " out of range");
  std::vector<std::size_t> d(q->vertex_count(), 0);
  d[vertex - 1] = 1;
  return rep_with_dims(f, q, std::move(d));
}

template <class F>
void check_shapes(const Rep<F>& m) {
  const auto& q = *m.quiver;
  if (m.dims.size() != q.vertex_count() || m.maps.size() != q.arrows().size())
    throw InvalidInput("representation does not match its quiver");
  for (std::size_t a = 0; a < m.maps.size(); ++a) {
    const auto& ar = q.arrows()[a];
    if (m.maps[a].rows != m.dims[ar.target] || m.maps[a].cols != m.dims[ar.source])
      throw InvalidInput("map " + q.arrow_label(a) + " has the wrong shape");
  }
}

template <class F>
void check_same_quiver(const Rep<F>& a, const Rep<F>& b) {
  if (!(a.quiver->type() == b.quiver->type())) throw InvalidInput("modules over different quivers");
  if (!(a.field == b.field)) throw InvalidInput("modules over different fields");
}

// The relation evaluated at vertex v (0-based): a dims[v] x dims[v] matrix.
template <class F>
Mat<F> relation_at(const Rep<F>& m, std::size_t v) {
  const F& f = m.field;
  Mat<F> acc(f, m.dims[v], m.dims[v]);
  for (auto a : m.quiver->out_arrows(v)) {
    Mat<F> path = multiply(f, m.maps[DoubleQuiver::reverse(a)], m.maps[a]);
    acc = m.quiver->arrows()[a].sign > 0 ? add(f, acc, path) : subtract(f, acc, path);
  }
  return acc;
}

// nullopt when the relation holds, else the first failing vertex (1-based).
template <class F>
std::optional<std::size_t> relation_witness(const Rep<F>& m) {
  for (std::size_t v = 0; v < m.dims.size(); ++v)
    if (!is_zero(m.field, relation_at(m, v))) return v + 1;
  return std::nullopt;
}

template <class F>
bool check_relation(const Rep<F>& m) {
  return !relation_witness(m).has_value();
}

template <class F>
Rep<F> direct_sum(const Rep<F>& a, const Rep<F>& b) {
  check_same_quiver(a, b);
  const F& f = a.field;
  std::vector<std::size_t> d(a.dims.size());
  for (std::size_t v = 0; v < d.size(); ++v) d[v] = a.dims[v] + b.dims[v];
  Rep<F> r = rep_with_dims(f, a.quiver, d);
  const auto& arrows = a.quiver->arrows();
  for (std::size_t x = 0; x < arrows.size(); ++x) {
    const auto s = arrows[x].source, t = arrows[x].target;
    for (std::size_t i = 0; i < a.dims[t]; ++i)
      for (std::size_t j = 0; j < a.dims[s]; ++j) r.maps[x](i, j) = a.maps[x](i, j);
    for (std::size_t i = 0; i < b.dims[t]; ++i)
      for (std::size_t j = 0; j < b.dims[s]; ++j) r.maps[x](a.dims[t] + i, a.dims[s] + j) = b.maps[x](i, j);
  }
  return r;
}

// Joint kernel of the outgoing arrows at v: the S_v-isotypic part of the socle.
template <class F>
Subspace<F> socle_space(const Rep<F>& m, std::size_t v) {
  const F& f = m.field;
  std::size_t rows = 0;
  for (auto a : m.quiver->out_arrows(v)) rows += m.maps[a].rows;
  Mat<F> stacked(f, rows, m.dims[v]);
  std::size_t r0 = 0;
  for (auto a : m.quiver->out_arrows(v)) {
    const auto& mp = m.maps[a];
    for (std::size_t i = 0; i < mp.rows; ++i)
      for (std::size_t j = 0; j < mp.cols; ++j) stacked(r0 + i, j) = mp(i, j);
    r0 += mp.rows;
  }
  return kernel(f, stacked);
}

// Sum of the images of incoming arrows at v: the vertex-v part of rad M.
template <class F>
Subspace<F> radical_space(const Rep<F>& m, std::size_t v) {
  const F& f = m.field;
  Subspace<F> acc = span(f, m.dims[v], {});
  for (auto a : m.quiver->in_arrows(v)) acc = sum(f, acc, image(f, m.maps[a]));
  return acc;
}

template <class F>
std::vector<std::size_t> socle_dims(const Rep<F>& m) {
  std::vector<std::size_t> d;
  for (std::size_t v = 0; v < m.dims.size(); ++v) d.push_back(socle_space(m, v).dim());
  return d;
}

template <class F>
std::vector<std::size_t> top_dims(const Rep<F>& m) {
  std::vector<std::size_t> d;
  for (std::size_t v = 0; v < m.dims.size(); ++v) d.push_back(m.dims[v] - radical_space(m, v).dim());
  return d;
}

template <class F>
using Spaces = std::vector<Subspace<F>>;

template <class F>
Spaces<F> full_spaces(const Rep<F>& m) {
  Spaces<F> s;
  for (auto d : m.dims) s.push_back(whole_space(m.field, d));
  return s;
}

template <class F>
Spaces<F> zero_spaces(const Rep<F>& m) {
  Spaces<F> s;
  for (auto d : m.dims) s.push_back(span(m.field, d, {}));
  return s;
}

// The subrepresentation on the given (arrow-closed) subspaces, written in
// their echelon bases.
template <class F>
Rep<F> restrict_to(const Rep<F>& m, const Spaces<F>& u) {
  const F& f = m.field;
  std::vector<std::size_t> d;
  for (const auto& s : u) d.push_back(s.dim());
  Rep<F> r = rep_with_dims(f, m.quiver, d);
  const auto& arrows = m.quiver->arrows();
  for (std::size_t x = 0; x < arrows.size(); ++x) {
    const auto s = arrows[x].source, t = arrows[x].target;
    for (std::size_t j = 0; j < u[s].dim(); ++j) {
      auto img = apply(f, m.maps[x], u[s].basis[j]);
      if (!contains(f, u[t], img)) throw Error(ErrorCode::internal, "restrict_to: subspaces not closed under arrows");
      auto c = coordinates(f, u[t], img);
      for (std::size_t i = 0; i < c.size(); ++i) r.maps[x](i, j) = c[i];
    }
  }
  return r;
}

// M / U, with the quotient at v written in the basis of standard vectors
// outside the pivots of U_v.
template <class F>
Rep<F> quotient_by(const Rep<F>& m, const Spaces<F>& u) {
  const F& f = m.field;
  std::vector<std::vector<std::size_t>> keep;
  std::vector<std::size_t> d;
  for (const auto& s : u) {
    keep.push_back(complement_columns(s));
    d.push_back(keep.back().size());
  }
  Rep<F> r = rep_with_dims(f, m.quiver, d);
  const auto& arrows = m.quiver->arrows();
  for (std::size_t x = 0; x < arrows.size(); ++x) {
    const auto s = arrows[x].source, t = arrows[x].target;
    for (std::size_t j = 0; j < keep[s].size(); ++j) {
      std::vector<typename F::Elem> col(m.dims[t]);
      for (std::size_t i = 0; i < m.dims[t]; ++i) col[i] = m.maps[x](i, keep[s][j]);
      col = reduce(f, u[t], std::move(col));
      for (std::size_t i = 0; i < keep[t].size(); ++i) r.maps[x](i, j) = col[keep[t][i]];
    }
  }
  return r;
}

// Smallest subrepresentation containing the given vectors; gens[v] lists
// vectors in M_v (0-based v).
template <class F>
Spaces<F> generated_spaces(const Rep<F>& m, const std::vector<std::vector<std::vector<typename F::Elem>>>& gens) {
  const F& f = m.field;
  Spaces<F> u = zero_spaces(m);
  std::vector<std::pair<std::size_t, std::vector<typename F::Elem>>> todo;
  for (std::size_t v = 0; v < gens.size(); ++v)
    for (const auto& g : gens[v]) todo.emplace_back(v, g);
  while (!todo.empty()) {
    auto [v, vec] = std::move(todo.back());
    todo.pop_back();
    vec = reduce(f, u[v], std::move(vec));
    bool zero = true;
    for (const auto& x : vec)
      if (!f.is_zero(x)) zero = false;
    if (zero) continue;
    u[v] = span(f, m.dims[v], [&] {
      auto b = u[v].basis;
      b.push_back(vec);
      return b;
    }());
    for (auto a : m.quiver->out_arrows(v)) todo.emplace_back(m.quiver->arrows()[a].target, apply(f, m.maps[a], vec));
  }
  return u;
}

// E_i (1-based i): the kernel of M -> S_i^{m_i(M)}.
template <class F>
Rep<F> functor_E(const Rep<F>& m, std::size_t i) {
  if (i < 1 || i > m.dims.size()) throw InvalidInput("vertex " + std::to_string(i) + " out of range");
  Spaces<F> u = full_spaces(m);
  u[i - 1] = radical_space(m, i - 1);
  return restrict_to(m, u);
}

// E_i^dagger: M modulo the S_i-isotypic part of its socle.
template <class F>
Rep<F> functor_E_dagger(const Rep<F>& m, std::size_t i) {
  if (i < 1 || i > m.dims.size()) throw InvalidInput("vertex " + std::to_string(i) + " out of range");
  Spaces<F> u = zero_spaces(m);
  u[i - 1] = socle_space(m, i - 1);
  return quotient_by(m, u);
}

// E_{i_1} o ... o E_{i_k}: the last letter acts first.
template <class F>
Rep<F> functor_E_word(const Rep<F>& m, const std::vector<std::size_t>& word, bool dagger) {
  Rep<F> r = m;
  for (auto it = word.rbegin(); it != word.rend(); ++it) r = dagger ? functor_E_dagger(r, *it) : functor_E(r, *it);
  return r;
}

// Basis of Hom(M, N); each element is one matrix per vertex (N_v x M_v).
template <class F>
std::vector<std::vector<Mat<F>>> hom_basis(const Rep<F>& m, const Rep<F>& n) {
  check_same_quiver(m, n);
  const F& f = m.field;
  const auto& q = *m.quiver;
  const std::size_t nv = q.vertex_count();
  std::vector<std::size_t> offset(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
  const std::size_t unknowns = offset[nv];
  std::size_t eqs = 0;
  for (const auto& ar : q.arrows()) eqs += n.dims[ar.target] * m.dims[ar.source];
  auto var = [&](std::size_t v, std::size_t r, std::size_t c) { return offset[v] + r * m.dims[v] + c; };

  Mat<F> sys(f, eqs, unknowns);
  std::size_t row = 0;
  for (std::size_t x = 0; x < q.arrows().size(); ++x) {
    const auto s = q.arrows()[x].source, t = q.arrows()[x].target;
    const auto& na = n.maps[x];
    const auto& ma = m.maps[x];
    // (N(a) f_s - f_t M(a))[r][c] = 0
    for (std::size_t r = 0; r < n.dims[t]; ++r)
      for (std::size_t c = 0; c < m.dims[s]; ++c, ++row) {
        for (std::size_t k = 0; k < n.dims[s]; ++k)
          if (!f.is_zero(na(r, k))) sys(row, var(s, k, c)) = f.add(sys(row, var(s, k, c)), na(r, k));
        for (std::size_t k = 0; k < m.dims[t]; ++k)
          if (!f.is_zero(ma(k, c))) sys(row, var(t, r, k)) = f.sub(sys(row, var(t, r, k)), ma(k, c));
      }
  }
  std::vector<std::vector<Mat<F>>> out;
  for (const auto& sol : nullspace(f, std::move(sys))) {
    std::vector<Mat<F>> h;
    for (std::size_t v = 0; v < nv; ++v) {
      Mat<F> fv(f, n.dims[v], m.dims[v]);
      for (std::size_t r = 0; r < n.dims[v]; ++r)
        for (std::size_t c = 0; c < m.dims[v]; ++c) fv(r, c) = sol[var(v, r, c)];
      h.push_back(std::move(fv));
    }
    out.push_back(std::move(h));
  }
  return out;
}

template <class F>
std::size_t hom_dim(const Rep<F>& m, const Rep<F>& n) {
  if (m.total_dim() == 0 || n.total_dim() == 0) return 0;
  return hom_basis(m, n).size();
}

// dim Ext^1(M, N) = hom(M,N) + hom(N,M) - (dim M, dim N).
template <class F>
std::size_t ext1_dim(const Rep<F>& m, const Rep<F>& n) {
  const long v = static_cast<long>(hom_dim(m, n)) + static_cast<long>(hom_dim(n, m)) - m.quiver->form(m.dims, n.dims);
  if (v < 0) throw VerificationFailure("ext1_dim: negative value " + std::to_string(v) + "; input violates the relation");
  return static_cast<std::size_t>(v);
}

template <class F>
bool is_rigid(const Rep<F>& m) {
  return ext1_dim(m, m) == 0;
}

// Dimension vectors of the socle series, bottom layer first. Throws when the
// action is not nilpotent.
template <class F>
std::vector<std::vector<std::size_t>> socle_layers(const Rep<F>& m) {
  std::vector<std::vector<std::size_t>> layers;
  Rep<F> cur = m;
  while (cur.total_dim() > 0) {
    Spaces<F> soc;
    std::vector<std::size_t> d;
    std::size_t total = 0;
    for (std::size_t v = 0; v < cur.dims.size(); ++v) {
      soc.push_back(socle_space(cur, v));
      d.push_back(soc.back().dim());
      total += d.back();
    }
    if (total == 0) throw VerificationFailure("representation is not nilpotent");
    layers.push_back(d);
    cur = quotient_by(cur, soc);
  }
  return layers;
}

// Cheap isomorphism invariants: dims, socle and top, socle series.
template <class F>
std::string fingerprint(const Rep<F>& m) {
  std::string s = m.quiver->type().name() + "|";
  auto put = [&](const std::vector<std::size_t>& d) {
    for (auto x : d) s += std::to_string(x) + ",";
    s += "|";
  };
  put(m.dims);
  put(socle_dims(m));
  put(top_dims(m));
  for (const auto& l : socle_layers(m)) put(l);
  return s;
}

template <class F>
typename F::Elem random_elem(const F& f, std::mt19937_64& rng);

template <>
inline Rational random_elem(const RationalField&, std::mt19937_64& rng) {
  return Rational(static_cast<long>(rng() % 2001) - 1000);
}

template <>
inline std::uint32_t random_elem(const PrimeField& f, std::mt19937_64& rng) {
  return static_cast<std::uint32_t>(rng() % f.p);
}

// Las Vegas isomorphism test: invariants must agree, then up to 8 random
// elements of Hom(M, N) are tried for invertibility at every vertex. A
// "true" answer is always correct; "false" can be wrong with probability
// at most (d/|S|)^8 over Q (Schwartz-Zippel, |S| = 2001, d = dim M).
template <class F>
bool is_isomorphic(const Rep<F>& a, const Rep<F>& b, std::uint64_t seed = 0) {
  check_same_quiver(a, b);
  if (a.dims != b.dims) return false;
  if (a.total_dim() == 0) return true;
  if (socle_dims(a) != socle_dims(b) || top_dims(a) != top_dims(b)) return false;
  auto h = hom_basis(a, b);
  const auto haa = hom_dim(a, a);
  if (h.size() != haa || hom_dim(b, b) != haa || hom_dim(b, a) != haa) return false;
  const F& f = a.field;
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<typename F::Elem> c;
    for (std::size_t k = 0; k < h.size(); ++k) c.push_back(random_elem(f, rng));
    bool ok = true;
    for (std::size_t v = 0; v < a.dims.size() && ok; ++v) {
      Mat<F> fv(f, a.dims[v], a.dims[v]);
      for (std::size_t k = 0; k < h.size(); ++k) fv = add(f, fv, scale(f, h[k][v], c[k]));
      ok = is_invertible(f, fv);
    }
    if (ok) return true;
  }
  return false;
}

// Reduction mod p of a rational representation; nullopt when some entry has
// a denominator divisible by p.
std::optional<PRep> reduce_mod_p(const QRep& m, std::uint32_t p);

}  // namespace cf::prep
