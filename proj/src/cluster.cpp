#include "clusterforge/cluster.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "clusterforge/error.hpp"

namespace cf::cluster {

ExchangeMatrix::ExchangeMatrix(std::size_t d, std::size_t n, std::vector<std::vector<long>> rows)
    : d_(d), n_(n), rows_(std::move(rows)) {
  if (n_ > d_) throw InvalidInput("exchange matrix: coefficient count n exceeds d");
  if (rows_.size() != d_) throw InvalidInput("exchange matrix: expected " + std::to_string(d_) + " rows");
  for (const auto& r : rows_)
    if (r.size() != d_ - n_)
      throw InvalidInput("exchange matrix: every row needs " + std::to_string(d_ - n_) + " entries");
  if (!principal_part_skew_symmetric())
    throw InvalidInput("exchange matrix: principal part is not skew-symmetric");
}

bool ExchangeMatrix::principal_part_skew_symmetric() const {
  const std::size_t r = rank();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (rows_[i][j] != -rows_[j][i]) return false;
  return true;
}

ExchangeMatrix mutate_matrix(const ExchangeMatrix& b, std::size_t k) {
  if (k < 1 || k > b.rank())
    throw InvalidInput("mutation direction " + std::to_string(k) + " outside [1, " + std::to_string(b.rank()) + "]");
  const std::size_t kk = k - 1;
  auto rows = b.rows();
  for (std::size_t i = 0; i < b.d(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) {
      if (i == kk || j == kk) {
        rows[i][j] = -b.at(i, j);
      } else {
        const long bik = b.at(i, kk), bkj = b.at(kk, j);
        rows[i][j] = b.at(i, j) + (std::labs(bik) * bkj + bik * std::labs(bkj)) / 2;
      }
    }
  return ExchangeMatrix(b.d(), b.n(), std::move(rows));
}

Seed make_initial_seed(ExchangeMatrix b, std::vector<std::string> var_names, std::vector<std::string> labels) {
  if (var_names.size() != b.d()) throw InvalidInput("initial seed: need one variable name per row");
  if (labels.empty()) labels = var_names;
  if (labels.size() != b.d()) throw InvalidInput("initial seed: need one label per row");
  if (b.rank() == b.d() && b.d() == 0) throw InvalidInput("initial seed: empty seed");
  Vars vars = make_vars(var_names);
  std::vector<LaurentPoly> cluster;
  cluster.reserve(b.d());
  for (const auto& name : var_names) cluster.push_back(LaurentPoly::variable(vars, name));
  return Seed{std::move(b), std::move(cluster), std::move(labels)};
}

LaurentPoly exchange_binomial(const Seed& s, std::size_t k) {
  if (k < 1 || k > s.rank())
    throw InvalidInput("mutation direction " + std::to_string(k) + " outside [1, " + std::to_string(s.rank()) + "]");
  const Vars& vars = s.vars();
  LaurentPoly pos = LaurentPoly::constant(vars, 1), neg = LaurentPoly::constant(vars, 1);
  for (std::size_t i = 0; i < s.d(); ++i) {
    const long b = s.matrix.at(i, k - 1);
    if (b > 0) pos *= s.cluster[i].pow(static_cast<unsigned>(b));
    if (b < 0) neg *= s.cluster[i].pow(static_cast<unsigned>(-b));
  }
  return pos + neg;
}

namespace {

std::string dump_seed(const Seed& s) {
  std::ostringstream os;
  os << "seed d=" << s.d() << " n=" << s.matrix.n() << "\n";
  for (std::size_t i = 0; i < s.d(); ++i) {
    os << "  [";
    for (std::size_t j = 0; j < s.rank(); ++j) os << (j ? ", " : "") << s.matrix.at(i, j);
    os << "]  " << s.labels[i] << " = " << s.cluster[i].to_string() << "\n";
  }
  return os.str();
}

std::string toggle_star(const std::string& label) {
  if (!label.empty() && label.back() == '*') return label.substr(0, label.size() - 1);
  return label + "*";
}

}  // namespace

Seed mutate_seed(const Seed& s, std::size_t k) {
  LaurentPoly numer = exchange_binomial(s, k);
  Seed out{mutate_matrix(s.matrix, k), s.cluster, s.labels};
  try {
    out.cluster[k - 1] = div_exact(numer, s.cluster[k - 1]);
  } catch (const InexactDivision& e) {
    throw InexactDivision(std::string("Laurent phenomenon violated in direction ") + std::to_string(k) + ": " +
                          e.what() + "\n" + dump_seed(s));
  }
  out.labels[k - 1] = toggle_star(s.labels[k - 1]);
  return out;
}

bool same_seed(const Seed& a, const Seed& b) { return a.matrix == b.matrix && a.cluster == b.cluster; }

std::string seed_key(const Seed& s) {
  std::vector<std::string> mutable_vars;
  for (std::size_t i = 0; i < s.rank(); ++i) mutable_vars.push_back(s.cluster[i].to_string());
  std::sort(mutable_vars.begin(), mutable_vars.end());
  std::string key = "{";
  for (std::size_t i = 0; i < mutable_vars.size(); ++i) key += (i ? "; " : "") + mutable_vars[i];
  key += "}|(";
  for (std::size_t i = s.rank(); i < s.d(); ++i) key += (i > s.rank() ? "; " : "") + s.cluster[i].to_string();
  key += ")";
  return key;
}

namespace {

// Checks that `found` (a freshly mutated seed) and `stored` (same key) carry
// the same exchange matrix up to the permutation matching their clusters.
void assert_matrix_consistent(const Seed& found, const Seed& stored) {
  const std::size_t r = found.rank();
  std::unordered_map<std::string, std::vector<std::size_t>> where;
  for (std::size_t i = 0; i < r; ++i) where[stored.cluster[i].to_string()].push_back(i);
  std::vector<std::size_t> perm(found.d());
  for (std::size_t i = 0; i < r; ++i) {
    auto& slots = where[found.cluster[i].to_string()];
    if (slots.empty()) throw VerificationFailure("seed key collision without matching cluster");
    perm[i] = slots.back();
    slots.pop_back();
  }
  for (std::size_t i = r; i < found.d(); ++i) perm[i] = i;
  for (std::size_t i = 0; i < found.d(); ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (found.matrix.at(i, j) != stored.matrix.at(perm[i], perm[j]))
        throw VerificationFailure("seeds with identical clusters carry inconsistent exchange matrices:\n" +
                                  dump_seed(found) + dump_seed(stored));
}

}  // namespace

MutationClass explore(const Seed& initial, const ExploreLimits& limits) {
  if (limits.max_seeds == 0) throw InvalidInput("explore: max_seeds must be positive");
  MutationClass c;
  std::unordered_map<std::string, std::size_t> index;
  std::set<std::string> var_keys;
  const std::size_t r = initial.rank();

  auto record_vars = [&](const Seed& s) {
    for (std::size_t i = 0; i < r; ++i)
      if (var_keys.insert(s.cluster[i].to_string()).second) c.variables.push_back(s.cluster[i]);
  };
  auto add = [&](Seed s, std::string key, std::size_t depth) {
    record_vars(s);
    index.emplace(key, c.seeds.size());
    c.seeds.push_back(std::move(s));
    c.keys.push_back(std::move(key));
    c.depth.push_back(depth);
    c.edges.emplace_back(r);
  };

  add(initial, seed_key(initial), 0);
  c.exhausted = true;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t id = queue.front();
    queue.pop_front();
    for (std::size_t k = 1; k <= r; ++k) {
      Seed next = mutate_seed(c.seeds[id], k);
      std::string key = seed_key(next);
      if (auto it = index.find(key); it != index.end()) {
        assert_matrix_consistent(next, c.seeds[it->second]);
        c.edges[id][k - 1] = it->second;
        continue;
      }
      if (c.depth[id] >= limits.max_depth || c.seeds.size() >= limits.max_seeds) {
        c.exhausted = false;
        continue;
      }
      const std::size_t nid = c.seeds.size();
      add(std::move(next), std::move(key), c.depth[id] + 1);
      c.edges[id][k - 1] = nid;
      queue.push_back(nid);
    }
  }
  return c;
}

FiniteTypeReport is_finite_type(const Seed& initial, const ExploreLimits& limits) {
  MutationClass c = explore(initial, limits);
  return FiniteTypeReport{c.exhausted, c.exhausted, c.variable_count(), c.cluster_count()};
}

std::vector<ClusterMonomial> cluster_monomials(const MutationClass& c, int degree_bound) {
  if (!c.exhausted) throw InvalidInput("cluster_monomials: mutation class was not exhausted");
  if (degree_bound < 0) throw InvalidInput("cluster_monomials: negative degree bound");
  std::vector<ClusterMonomial> out;
  std::set<std::string> seen;
  for (std::size_t sid = 0; sid < c.seeds.size(); ++sid) {
    const Seed& s = c.seeds[sid];
    const std::size_t d = s.d();
    std::vector<int> exps(d, 0);
    // Enumerate exponent vectors of total degree <= bound in lex order.
    auto rec = [&](auto&& self, std::size_t pos, int remaining, const LaurentPoly& value) -> void {
      if (pos == d) {
        if (seen.insert(value.to_string()).second)
          out.push_back(ClusterMonomial{value, sid, exps, degree_bound - remaining});
        return;
      }
      LaurentPoly v = value;
      for (int e = 0; e <= remaining; ++e) {
        exps[pos] = e;
        self(self, pos + 1, remaining - e, v);
        v *= s.cluster[pos];
      }
      exps[pos] = 0;
    };
    rec(rec, 0, degree_bound, LaurentPoly::constant(s.vars(), 1));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ClusterMonomial& a, const ClusterMonomial& b) { return a.degree < b.degree; });
  return out;
}

std::string to_dot(const MutationClass& c) {
  std::ostringstream os;
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') q += '\\';
      q += ch;
    }
    return q + "\"";
  };
  os << "graph mutation_class {\n";
  for (const auto& key : c.keys) os << "  " << quote(key) << ";\n";
  for (std::size_t a = 0; a < c.seeds.size(); ++a)
    for (std::size_t k = 0; k < c.edges[a].size(); ++k) {
      const auto& b = c.edges[a][k];
      if (b && a < *b) os << "  " << quote(c.keys[a]) << " -- " << quote(c.keys[*b]) << " [label=\"" << (k + 1) << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

Seed quadric_seed(int n) {
  if (n < 4) throw InvalidInput("quadric seed requires n >= 4");
  const auto un = static_cast<std::size_t>(n);
  const std::size_t r = un - 2;            // mutable pairs k = 2..n-1
  const std::size_t d = 2 * un - 1;
  auto y = [](std::size_t i) { return "y" + std::to_string(i); };
  auto p = [](std::size_t s) { return "p" + std::to_string(s); };

  std::vector<std::string> names;
  for (std::size_t k = 2; k <= un - 1; ++k) names.push_back(y(k));
  names.push_back(y(1));
  names.push_back(y(un));
  names.push_back(y(un + 1));
  names.push_back(y(2 * un));
  for (std::size_t s = 1; s <= un - 3; ++s) names.push_back(p(s));

  const std::size_t row_y1 = r, row_yn = r + 1, row_yn1 = r + 2, row_y2n = r + 3;
  auto row_p = [&](std::size_t s) { return r + 3 + s; };

  // Principal part is zero: each mutable y_k only exchanges with
  // y_{2n+1-k} against coefficient monomials. Signs in column k:
  //   k = 2:          y1*y2n (+)  |  p1 (-)
  //   3 <= k <= n-2:  p_{k-2} (+) |  p_{k-1} (-)
  //   k = n-1:        p_{n-3} (+) |  y_n*y_{n+1} (-)
  std::vector<std::vector<long>> rows(d, std::vector<long>(r, 0));
  for (std::size_t k = 2; k <= un - 1; ++k) {
    const std::size_t col = k - 2;
    if (k == 2) {
      rows[row_y1][col] = 1;
      rows[row_y2n][col] = 1;
      rows[row_p(1)][col] = -1;
    } else if (k <= un - 2) {
      rows[row_p(k - 2)][col] = 1;
      rows[row_p(k - 1)][col] = -1;
    } else {
      rows[row_p(un - 3)][col] = 1;
      rows[row_yn][col] = -1;
      rows[row_yn1][col] = -1;
    }
  }
  return make_initial_seed(ExchangeMatrix(d, d - r, std::move(rows)), names, names);
}

Seed grassmannian_2_5_seed() {
  ExchangeMatrix b(7, 5, {{0, -1}, {1, 0}, {-1, 0}, {1, 0}, {-1, 1}, {0, -1}, {0, 1}});
  return make_initial_seed(std::move(b), {"y1", "y2", "y3", "y4", "y5", "y6", "y7"},
                           {"[1,3]", "[1,4]", "[1,2]", "[2,3]", "[3,4]", "[4,5]", "[1,5]"});
}

Seed d4_flag_seed() {
  ExchangeMatrix b(6, 4, {{0, 0}, {0, 0}, {0, -1}, {-1, 1}, {0, -1}, {1, 0}});
  return make_initial_seed(std::move(b), {"M7", "M8", "M4", "M5", "M6", "Q4"},
                           {"phi_M7", "phi_M8", "phi_M4", "phi_M5", "phi_M6", "phi_Q4"});
}

Seed d4_flag_extended_seed() {
  ExchangeMatrix b(7, 5, {{0, 0}, {0, 0}, {0, -1}, {-1, 1}, {0, -1}, {1, 0}, {1, 0}});
  return make_initial_seed(std::move(b), {"M7", "M8", "M4", "M5", "M6", "Q4", "Delta4"},
                           {"phi_M7", "phi_M8", "phi_M4", "phi_M5", "phi_M6", "phi_Q4", "Delta_w4"});
}

Seed builtin_seed(std::string_view name, int n) {
  if (name == "quadric") return quadric_seed(n);
  if (name == "grassmannian_2_5") return grassmannian_2_5_seed();
  if (name == "d4_flag") return d4_flag_seed();
  if (name == "d4_flag_extended") return d4_flag_extended_seed();
  throw InvalidInput("unknown built-in seed '" + std::string(name) + "'");
}

}  // namespace cf::cluster
