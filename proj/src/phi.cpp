#include "clusterforge/phi.hpp"

#include <cstdlib>
#include <type_traits>
#include <unordered_map>

#include "clusterforge/error.hpp"

namespace cf::phi {

using prep::PRep;
using prep::QRep;
using prep::Rep;

std::string backend_name(Backend b) { return b == Backend::exact ? "exact-enumeration" : "interpolated"; }

namespace {

// suffix exponent vector -> number of chains
using Counts = std::map<std::vector<int>, BigInt>;

struct NeedsInterpolation {};

std::size_t memo_budget(const CountOptions& opt) {
  if (opt.memo_bytes) return opt.memo_bytes;
  if (const char* env = std::getenv("CLUSTERFORGE_MAX_MEM")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    double mult = 1;
    if (end && *end) {
      switch (*end) {
        case 'k': case 'K': mult = 1024.0; break;
        case 'm': case 'M': mult = 1024.0 * 1024; break;
        case 'g': case 'G': mult = 1024.0 * 1024 * 1024; break;
        default: throw InvalidInput("CLUSTERFORGE_MAX_MEM: unrecognized suffix");
      }
    }
    if (v > 0) return static_cast<std::size_t>(v * mult);
    throw InvalidInput("CLUSTERFORGE_MAX_MEM must be positive");
  }
  return std::size_t{256} << 20;
}

template <class F>
std::size_t elem_bytes() {
  return sizeof(typename F::Elem) + (std::is_same_v<F, RationalField> ? 16 : 0);
}

// All a-dimensional subspaces of F_p^s as a x s matrices in rref.
std::vector<std::vector<std::vector<std::uint32_t>>> subspaces_mod_p(const PrimeField& f, std::size_t s, std::size_t a) {
  std::vector<std::vector<std::vector<std::uint32_t>>> out;
  std::vector<std::size_t> piv(a);
  auto rec_pivots = [&](auto&& self, std::size_t r, std::size_t from) -> void {
    if (r == a) {
      std::vector<std::pair<std::size_t, std::size_t>> free;
      std::vector<bool> is_piv(s, false);
      for (auto c : piv) is_piv[c] = true;
      for (std::size_t i = 0; i < a; ++i)
        for (std::size_t c = piv[i] + 1; c < s; ++c)
          if (!is_piv[c]) free.emplace_back(i, c);
      std::vector<std::uint32_t> vals(free.size(), 0);
      while (true) {
        std::vector<std::vector<std::uint32_t>> m(a, std::vector<std::uint32_t>(s, 0));
        for (std::size_t i = 0; i < a; ++i) m[i][piv[i]] = 1;
        for (std::size_t k = 0; k < free.size(); ++k) m[free[k].first][free[k].second] = vals[k];
        out.push_back(std::move(m));
        std::size_t k = 0;
        while (k < vals.size() && ++vals[k] == f.p) vals[k++] = 0;
        if (k == vals.size()) break;
      }
      return;
    }
    for (std::size_t c = from; c + (a - r) <= s; ++c) {
      piv[r] = c;
      self(self, r + 1, c + 1);
    }
  };
  rec_pivots(rec_pivots, 0, 0);
  return out;
}

template <class F>
class Counter {
 public:
  Counter(const std::vector<std::size_t>& word, std::size_t nv, bool full_flags, const CountOptions& opt)
      : word_(word), full_(full_flags), opt_(opt), budget_(memo_budget(opt)) {
    suffix_.assign(word.size() + 1, std::vector<std::size_t>(nv, 0));
    for (std::size_t j = word.size(); j-- > 0;) {
      suffix_[j] = suffix_[j + 1];
      ++suffix_[j][word[j] - 1];
    }
  }

  Counts run(const Rep<F>& m) { return count(m, 0); }

 private:
  bool feasible(const Rep<F>& m, std::size_t j) const {
    for (std::size_t v = 0; v < m.dims.size(); ++v) {
      if (full_ && suffix_[j][v] != m.dims[v]) return false;
      if (!full_ && m.dims[v] > 0 && suffix_[j][v] == 0) return false;
    }
    return true;
  }

  Counts count(const Rep<F>& m, std::size_t j) {
    if (++nodes_ > opt_.max_nodes) throw ResourceLimit("flag counting exceeded the node budget");
    if (j == word_.size()) return m.total_dim() == 0 ? Counts{{{}, BigInt(1)}} : Counts{};
    if (!feasible(m, j)) return {};
    if (m.total_dim() == 0) {
      // Only the all-zero continuation remains.
      return Counts{{std::vector<int>(word_.size() - j, 0), BigInt(1)}};
    }

    const std::string key = std::to_string(j) + "#" + prep::fingerprint(m);
    auto& bucket = memo_[key];
    for (const auto& [mod, res] : bucket)
      if (mod.maps == m.maps || prep::is_isomorphic(mod, m, opt_.seed)) return res;

    const F& f = m.field;
    const std::size_t v = word_[j] - 1;
    const auto soc = prep::socle_space(m, v);
    const std::size_t s = soc.dim();
    Counts out;
    auto absorb = [&](int a, const Counts& sub) {
      for (const auto& [suffix, c] : sub) {
        std::vector<int> key_a{a};
        key_a.insert(key_a.end(), suffix.begin(), suffix.end());
        out[key_a] += c;
      }
    };
    auto quotient_by_rows = [&](const std::vector<std::vector<typename F::Elem>>& rows) {
      prep::Spaces<F> u = prep::zero_spaces(m);
      u[v] = span(f, m.dims[v], rows);
      return prep::quotient_by(m, u);
    };

    std::vector<std::size_t> choices;
    if (full_) {
      if (s >= 1) choices.push_back(1);
    } else {
      for (std::size_t a = 0; a <= s; ++a) choices.push_back(a);
    }
    for (auto a : choices) {
      if (a == 0) {
        absorb(0, count(m, j + 1));
      } else if (a == s) {
        absorb(static_cast<int>(a), count(quotient_by_rows(soc.basis), j + 1));
      } else {
        if constexpr (std::is_same_v<F, PrimeField>) {
          for (const auto& c : subspaces_mod_p(f, s, a)) {
            std::vector<std::vector<std::uint32_t>> rows;
            for (const auto& crow : c) {
              std::vector<std::uint32_t> vec(m.dims[v], 0);
              for (std::size_t k = 0; k < s; ++k)
                if (crow[k])
                  for (std::size_t x = 0; x < m.dims[v]; ++x) vec[x] = f.add(vec[x], f.mul(crow[k], soc.basis[k][x]));
              rows.push_back(std::move(vec));
            }
            absorb(static_cast<int>(a), count(quotient_by_rows(rows), j + 1));
          }
        } else {
          throw NeedsInterpolation{};
        }
      }
    }

    std::size_t bytes = 64 + out.size() * (32 + 8 * word_.size());
    for (const auto& mp : m.maps) bytes += mp.data.size() * elem_bytes<F>();
    if (used_ + bytes <= budget_) {
      used_ += bytes;
      bucket.emplace_back(m, out);
    }
    return out;
  }

  const std::vector<std::size_t>& word_;
  bool full_;
  CountOptions opt_;
  std::size_t budget_, used_ = 0, nodes_ = 0;
  std::vector<std::vector<std::size_t>> suffix_;
  std::unordered_map<std::string, std::vector<std::pair<Rep<F>, Counts>>> memo_;
};

void check_word(const QRep& m, const std::vector<std::size_t>& word) {
  for (auto i : word)
    if (i < 1 || i > m.dims.size())
      throw InvalidInput("word letter " + std::to_string(i) + " is not a vertex of " + m.quiver->type().name());
}

std::uint32_t next_prime(std::uint32_t p) {
  for (std::uint32_t c = p + 1;; ++c) {
    bool prime = c >= 2;
    for (std::uint32_t d = 2; d * d <= c && prime; ++d)
      if (c % d == 0) prime = false;
    if (prime) return c;
  }
}

// Value at q = 1 of the polynomial through (xs[0..deg], ys[0..deg]),
// evaluated also at the remaining points to test stability.
std::optional<Rational> stable_value_at_one(const std::vector<std::uint32_t>& xs, const std::vector<BigInt>& ys,
                                            std::size_t extra) {
  auto lagrange = [&](std::size_t npts, const Rational& x) {
    Rational acc = 0;
    for (std::size_t i = 0; i < npts; ++i) {
      Rational term = Rational(ys[i]);
      for (std::size_t k = 0; k < npts; ++k)
        if (k != i) term *= (x - xs[k]) / Rational(static_cast<long>(xs[i]) - static_cast<long>(xs[k]));
      acc += term;
    }
    return acc;
  };
  for (std::size_t npts = 1; npts + extra <= xs.size(); ++npts) {
    bool ok = true;
    for (std::size_t k = npts; k < xs.size() && ok; ++k) ok = lagrange(npts, Rational(xs[k])) == Rational(ys[k]);
    if (ok) return lagrange(npts, Rational(1));
  }
  return std::nullopt;
}

struct Interpolated {
  std::map<std::vector<int>, BigInt> values;
  std::vector<std::uint32_t> primes;
};

Interpolated interpolate_counts(const QRep& m, const std::vector<std::size_t>& word, bool full,
                                const CountOptions& opt) {
  const std::string reference = prep::fingerprint(m);
  std::vector<std::uint32_t> xs;
  std::vector<Counts> results;
  std::uint32_t p = 1;
  for (int tried = 0; xs.size() < opt.max_primes && tried < 64; ++tried) {
    p = next_prime(p);
    auto mp = prep::reduce_mod_p(m, p);
    if (!mp || prep::fingerprint(*mp) != reference) continue;  // bad prime
    Counter<PrimeField> counter(word, m.dims.size(), full, opt);
    results.push_back(counter.run(*mp));
    xs.push_back(p);
    if (xs.size() < 1 + opt.extra_primes) continue;

    std::map<std::vector<int>, bool> keys;
    for (const auto& r : results)
      for (const auto& [k, c] : r) keys[k] = true;
    Interpolated out{{}, xs};
    bool all = true;
    for (const auto& [k, unused] : keys) {
      std::vector<BigInt> ys;
      for (const auto& r : results) {
        auto it = r.find(k);
        ys.push_back(it == r.end() ? BigInt(0) : it->second);
      }
      auto v = stable_value_at_one(xs, ys, opt.extra_primes);
      if (!v) {
        all = false;
        break;
      }
      if (v->get_den() != 1)
        throw Undetermined("interpolated Euler characteristic is not an integer: " + v->get_str());
      if (sgn(*v) != 0) out.values[k] = v->get_num();
    }
    if (all) return out;
  }
  throw Undetermined("point counts did not stabilize within " + std::to_string(opt.max_primes) + " primes");
}

BigInt factorial(int n) {
  BigInt r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

}  // namespace

BigInt count_flags_mod_p(const PRep& m, const std::vector<std::size_t>& word, const CountOptions& opt) {
  for (auto i : word)
    if (i < 1 || i > m.dims.size()) throw InvalidInput("word letter " + std::to_string(i) + " out of range");
  if (word.size() != m.total_dim()) return 0;
  Counter<PrimeField> counter(word, m.dims.size(), true, opt);
  BigInt total = 0;
  for (const auto& [k, c] : counter.run(m)) total += c;
  return total;
}

ChiResult chi(const QRep& m, const std::vector<std::size_t>& word, const CountOptions& opt) {
  check_word(m, word);
  if (word.size() != m.total_dim()) return {BigInt(0), Backend::exact, {}};
  try {
    Counter<RationalField> counter(word, m.dims.size(), true, opt);
    BigInt total = 0;
    for (const auto& [k, c] : counter.run(m)) total += c;
    return {total, Backend::exact, {}};
  } catch (const NeedsInterpolation&) {
  }
  auto it = interpolate_counts(m, word, true, opt);
  BigInt total = 0;
  for (const auto& [k, c] : it.values) total += c;
  return {total, Backend::interpolated, it.primes};
}

PhiResult phi_eval(const QRep& m, const nmat::Word& w, const CountOptions& opt) {
  return phi_eval(m, w, make_vars(w.params), opt);
}

PhiResult phi_eval(const QRep& m, const nmat::Word& w, const Vars& vars, const CountOptions& opt) {
  check_word(m, w.letters);
  if (w.letters.size() != w.params.size()) throw InvalidInput("word: letters and params differ in length");
  std::vector<std::size_t> slot;
  for (const auto& name : w.params) {
    auto idx = vars->index_of(name);
    if (!idx) throw InvalidInput("parameter '" + name + "' is not a ring variable");
    slot.push_back(*idx);
  }

  PhiResult out{LaurentPoly(vars), {}};
  Counts counts;
  try {
    Counter<RationalField> counter(w.letters, m.dims.size(), false, opt);
    counts = counter.run(m);
    out.table.backend = Backend::exact;
  } catch (const NeedsInterpolation&) {
    auto it = interpolate_counts(m, w.letters, false, opt);
    counts = std::move(it.values);
    out.table.backend = Backend::interpolated;
    out.table.primes_used = it.primes;
  }

  std::vector<Term> terms;
  for (const auto& [a, c] : counts) {
    if (sgn(c) == 0) continue;
    ChiEntry e;
    e.multiplicities = a;
    BigInt fact = 1;
    Monomial mono{std::vector<int>(vars->size(), 0)};
    for (std::size_t k = 0; k < a.size(); ++k) {
      for (int r = 0; r < a[k]; ++r) e.expanded_word.push_back(w.letters[k]);
      fact *= factorial(a[k]);
      mono.exps[slot[k]] += a[k];
    }
    e.coefficient = c;
    e.chi = c * fact;
    out.table.entries.push_back(std::move(e));
    terms.push_back({std::move(mono), c});
  }
  out.value = LaurentPoly::from_terms(vars, std::move(terms));
  return out;
}

namespace {

IdentityCheck compare(const LaurentPoly& lhs, const LaurentPoly& rhs) {
  LaurentPoly diff = lhs - rhs;
  IdentityCheck c{diff.is_zero(), {}};
  if (!diff.is_zero()) c.witness = LaurentPoly::from_terms(diff.vars(), {diff.terms().front()}).to_string();
  return c;
}

}  // namespace

MultiplicationReport verify_multiplication(const QRep& m, const QRep& n, const nmat::Word& w, const QRep* x,
                                           const QRep* y, const CountOptions& opt) {
  if ((x == nullptr) != (y == nullptr)) throw InvalidInput("verify_multiplication: give both X and Y or neither");
  const Vars vars = make_vars(w.params);
  const LaurentPoly pm = phi_eval(m, w, vars, opt).value;
  const LaurentPoly pn = phi_eval(n, w, vars, opt).value;
  const LaurentPoly prod = pm * pn;
  MultiplicationReport r;
  r.direct_sum = compare(prod, phi_eval(prep::direct_sum(m, n), w, vars, opt).value);
  if (x) r.exchange = compare(prod, phi_eval(*x, w, vars, opt).value + phi_eval(*y, w, vars, opt).value);
  return r;
}

PositivityReport positivity_check(const std::vector<QRep>& summands, const nmat::Word& w,
                                  const std::vector<Rational>& point, const CountOptions& opt) {
  if (point.size() != w.params.size())
    throw InvalidInput("positivity_check: need " + std::to_string(w.params.size()) + " coordinates");
  RationalPoint pt;
  for (std::size_t k = 0; k < point.size(); ++k) {
    if (sgn(point[k]) <= 0) throw InvalidInput("positivity_check: coordinate " + w.params[k] + " is not positive");
    pt[w.params[k]] = point[k];
  }
  const Vars vars = make_vars(w.params);
  PositivityReport r;
  r.all_positive = true;
  for (const auto& s : summands) {
    LaurentPoly f = phi_eval(s, w, vars, opt).value;
    Rational v = evaluate(f, pt);
    r.functions.push_back(std::move(f));
    r.positive.push_back(sgn(v) > 0);
    r.all_positive = r.all_positive && r.positive.back();
    r.values.push_back(std::move(v));
  }
  return r;
}

}  // namespace cf::phi
