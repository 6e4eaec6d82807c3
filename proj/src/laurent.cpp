#include "clusterforge/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "clusterforge/error.hpp"

namespace cf {

namespace {

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (int e : m.exps) h = (h ^ static_cast<std::size_t>(e + 0x51)) * 0x100000001b3ULL;
    return h;
  }
};

using Accumulator = std::unordered_map<Monomial, BigInt, MonomialHash>;

std::vector<Term> drain(Accumulator&& acc) {
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) out.push_back(Term{m, std::move(c)});
  std::sort(out.begin(), out.end(),
            [](const Term& a, const Term& b) { return GradedLexGreater{}(a.mono, b.mono); });
  return out;
}

Monomial mono_add(const Monomial& a, const Monomial& b) {
  Monomial r{a.exps};
  for (std::size_t i = 0; i < r.exps.size(); ++i) r.exps[i] += b.exps[i];
  return r;
}

}  // namespace

VarContext::VarContext(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw InvalidInput("empty variable name");
    if (!index_.emplace(names_[i], i).second)
      throw InvalidInput("duplicate variable name '" + names_[i] + "'");
  }
}

std::optional<std::size_t> VarContext::index_of(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vars make_vars(std::vector<std::string> names) {
  return std::make_shared<const VarContext>(std::move(names));
}

Vars make_indexed_vars(const std::string& stem, std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) names.push_back(stem + std::to_string(i));
  return make_vars(std::move(names));
}

bool same_ring(const Vars& a, const Vars& b) {
  return a == b || (a && b && *a == *b);
}

int Monomial::degree() const { return std::accumulate(exps.begin(), exps.end(), 0); }

bool Monomial::is_one() const {
  return std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; });
}

bool GradedLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return a.exps > b.exps;
}

LaurentPoly::LaurentPoly(Vars vars) : vars_(std::move(vars)) {
  if (!vars_) throw InvalidInput("LaurentPoly requires a variable context");
}

LaurentPoly LaurentPoly::constant(Vars vars, const BigInt& c) {
  LaurentPoly p(std::move(vars));
  if (c != 0) p.terms_.push_back(Term{Monomial{std::vector<int>(p.vars_->size(), 0)}, c});
  return p;
}

LaurentPoly LaurentPoly::variable(Vars vars, std::string_view name, int power) {
  auto idx = vars->index_of(name);
  if (!idx) throw InvalidInput("unknown variable '" + std::string(name) + "'");
  Monomial m{std::vector<int>(vars->size(), 0)};
  m.exps[*idx] = power;
  return monomial(std::move(vars), std::move(m), 1);
}

LaurentPoly LaurentPoly::monomial(Vars vars, Monomial m, const BigInt& c) {
  LaurentPoly p(std::move(vars));
  if (m.exps.size() != p.vars_->size()) throw InvalidInput("monomial length does not match ring");
  if (c != 0) p.terms_.push_back(Term{std::move(m), c});
  return p;
}

LaurentPoly LaurentPoly::from_terms(Vars vars, std::vector<Term> terms) {
  LaurentPoly p(std::move(vars));
  for (const auto& t : terms)
    if (t.mono.exps.size() != p.vars_->size()) throw InvalidInput("monomial length does not match ring");
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void LaurentPoly::normalize() {
  Accumulator acc;
  for (auto& t : terms_) acc[t.mono] += t.coeff;
  terms_ = drain(std::move(acc));
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

BigInt LaurentPoly::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& x) {
    return GradedLexGreater{}(t.mono, x);
  });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return 0;
}

Monomial LaurentPoly::content() const {
  Monomial m{std::vector<int>(vars_->size(), 0)};
  if (terms_.empty()) return m;
  m = terms_.front().mono;
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < m.exps.size(); ++i) m.exps[i] = std::min(m.exps[i], t.mono.exps[i]);
  return m;
}

bool LaurentPoly::is_polynomial() const {
  for (const auto& t : terms_)
    for (int e : t.mono.exps)
      if (e < 0) return false;
  return true;
}

void LaurentPoly::check_ring(const LaurentPoly& o, const char* op) const {
  if (!same_ring(vars_, o.vars_))
    throw InvalidInput(std::string(op) + ": operands live in different variable contexts");
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_ring(o, "add");
  // Merge two sorted term lists.
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  GradedLexGreater before;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && before(terms_[i].mono, o.terms_[j].mono))) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || before(o.terms_[j].mono, terms_[i].mono)) {
      out.push_back(o.terms_[j++]);
    } else {
      BigInt c = terms_[i].coeff + o.terms_[j].coeff;
      if (c != 0) out.push_back(Term{std::move(terms_[i].mono), std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_ring(b, "mul");
  LaurentPoly r(a.vars_);
  if (a.is_zero() || b.is_zero()) return r;
  Accumulator acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) acc[mono_add(s.mono, t.mono)] += s.coeff * t.coeff;
  r.terms_ = drain(std::move(acc));
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  if (!same_ring(vars_, o.vars_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
  LaurentPoly result = constant(vars_, 1);
  LaurentPoly base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

LaurentPoly LaurentPoly::shifted(const Monomial& m) const {
  if (m.exps.size() != vars_->size()) throw InvalidInput("monomial length does not match ring");
  LaurentPoly r(*this);
  for (auto& t : r.terms_)
    for (std::size_t i = 0; i < m.exps.size(); ++i) t.mono.exps[i] += m.exps[i];
  // A uniform shift preserves lex order within a degree and shifts every
  // degree by the same amount, so the order is unchanged.
  return r;
}

LaurentPoly LaurentPoly::scaled(const BigInt& c) const {
  if (c == 0) return LaurentPoly(vars_);
  LaurentPoly r(*this);
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    BigInt c = t.coeff;
    if (first) {
      if (c < 0) {
        os << '-';
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool wrote = false;
    if (c != 1 || t.mono.is_one()) {
      os << c.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < t.mono.exps.size(); ++i) {
      const int e = t.mono.exps[i];
      if (e == 0) continue;
      if (wrote) os << '*';
      os << vars_->name(i);
      if (e != 1) os << '^' << e;
      wrote = true;
    }
  }
  return os.str();
}

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q) { return p + q; }
LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q) { return p * q; }

LaurentPoly div_exact(const LaurentPoly& p, const LaurentPoly& q) {
  if (!same_ring(p.vars(), q.vars())) throw InvalidInput("div_exact: operands live in different variable contexts");
  if (q.is_zero()) throw InvalidInput("div_exact: division by zero polynomial");
  if (p.is_zero()) return LaurentPoly(p.vars());
  const std::size_t n = p.vars()->size();

  if (q.is_monomial()) {
    const Term& t = q.terms().front();
    Monomial inv{t.mono.exps};
    for (int& e : inv.exps) e = -e;
    std::vector<Term> out;
    out.reserve(p.size());
    for (const auto& s : p.terms()) {
      BigInt quo, rem;
      mpz_tdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), s.coeff.get_mpz_t(), t.coeff.get_mpz_t());
      if (rem != 0)
        throw InexactDivision("div_exact: coefficient " + s.coeff.get_str() + " not divisible by " +
                              t.coeff.get_str());
      Monomial m{s.mono.exps};
      for (std::size_t i = 0; i < n; ++i) m.exps[i] += inv.exps[i];
      out.push_back(Term{std::move(m), std::move(quo)});
    }
    return LaurentPoly::from_terms(p.vars(), std::move(out));
  }

  // Strip monomial content so both sides are ordinary polynomials whose
  // lowest degree in every variable is zero, then run long division.
  const Monomial cp = p.content(), cq = q.content();
  Monomial neg_cp{cp.exps}, neg_cq{cq.exps};
  for (int& e : neg_cp.exps) e = -e;
  for (int& e : neg_cq.exps) e = -e;
  const LaurentPoly a = p.shifted(neg_cp);
  const LaurentPoly b = q.shifted(neg_cq);

  std::map<Monomial, BigInt, GradedLexGreater> rem;
  for (const auto& t : a.terms()) rem.emplace(t.mono, t.coeff);
  const Term& lead = b.terms().front();
  std::vector<Term> quotient;

  while (!rem.empty()) {
    auto it = rem.begin();
    Monomial m{it->first.exps};
    for (std::size_t i = 0; i < n; ++i) {
      m.exps[i] -= lead.mono.exps[i];
      if (m.exps[i] < 0)
        throw InexactDivision("div_exact: (" + p.to_string() + ") / (" + q.to_string() +
                              ") is not a Laurent polynomial");
    }
    BigInt c, r;
    mpz_tdiv_qr(c.get_mpz_t(), r.get_mpz_t(), it->second.get_mpz_t(), lead.coeff.get_mpz_t());
    if (r != 0)
      throw InexactDivision("div_exact: (" + p.to_string() + ") / (" + q.to_string() +
                            ") has non-integral coefficients");
    for (const auto& t : b.terms()) {
      Monomial k = mono_add(m, t.mono);
      auto [pos, inserted] = rem.try_emplace(std::move(k), 0);
      pos->second -= c * t.coeff;
      if (pos->second == 0) rem.erase(pos);
    }
    quotient.push_back(Term{std::move(m), std::move(c)});
  }

  Monomial shift{cp.exps};
  for (std::size_t i = 0; i < n; ++i) shift.exps[i] -= cq.exps[i];
  return LaurentPoly::from_terms(p.vars(), std::move(quotient)).shifted(shift);
}

Rational evaluate(const LaurentPoly& p, const RationalPoint& point) {
  const auto& vars = *p.vars();
  const std::size_t n = vars.size();
  std::vector<int> lo(n, 0), hi(n, 0);
  for (const auto& t : p.terms())
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], t.mono.exps[i]);
      hi[i] = std::max(hi[i], t.mono.exps[i]);
    }
  // powers[i][e - lo[i]] = value_i^e
  std::vector<std::vector<Rational>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (lo[i] == 0 && hi[i] == 0) continue;
    auto it = point.find(vars.name(i));
    if (it == point.end()) throw InvalidInput("evaluate: no value for variable '" + vars.name(i) + "'");
    const Rational& v = it->second;
    if (lo[i] < 0 && v == 0)
      throw InvalidInput("evaluate: variable '" + vars.name(i) + "' is zero at a negative exponent");
    auto& row = powers[i];
    row.resize(static_cast<std::size_t>(hi[i] - lo[i] + 1));
    Rational inv = lo[i] < 0 ? Rational(1) / v : Rational(1);
    Rational acc = 1;
    for (int e = 0; e > lo[i]; --e) acc *= inv;  // acc = v^lo
    for (int e = lo[i]; e <= hi[i]; ++e) {
      row[static_cast<std::size_t>(e - lo[i])] = acc;
      acc *= v;
    }
  }
  Rational total = 0;
  for (const auto& t : p.terms()) {
    Rational term = t.coeff;
    for (std::size_t i = 0; i < n; ++i)
      if (!powers[i].empty()) term *= powers[i][static_cast<std::size_t>(t.mono.exps[i] - lo[i])];
    total += term;
  }
  return total;
}

LaurentPoly parse_laurent(const Vars& vars, std::string_view text) {
  std::vector<Term> terms;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) -> void {
    throw InvalidInput("parse_laurent: " + why + " at offset " + std::to_string(pos) + " in '" +
                       std::string(text) + "'");
  };
  auto read_int = [&]() -> std::string {
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
      fail("expected integer");
    return std::string(text.substr(start, pos - start));
  };

  skip();
  if (text.substr(pos) == "0") return LaurentPoly(vars);
  int sign = 1;
  if (pos < text.size() && text[pos] == '-') {
    sign = -1;
    ++pos;
  }
  while (true) {
    skip();
    Term t{Monomial{std::vector<int>(vars->size(), 0)}, BigInt(sign)};
    bool any = false;
    while (true) {
      skip();
      if (pos >= text.size()) break;
      if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
        t.coeff *= BigInt(read_int());
      } else if (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_') {
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
          ++pos;
        auto name = text.substr(start, pos - start);
        auto idx = vars->index_of(name);
        if (!idx) fail("unknown variable '" + std::string(name) + "'");
        int e = 1;
        skip();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          skip();
          e = std::stoi(read_int());
        }
        t.mono.exps[*idx] += e;
      } else {
        fail("unexpected character");
      }
      any = true;
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!any) fail("empty term");
    terms.push_back(std::move(t));
    skip();
    if (pos >= text.size()) break;
    if (text[pos] == '+') sign = 1;
    else if (text[pos] == '-') sign = -1;
    else fail("expected '+' or '-'");
    ++pos;
  }
  return LaurentPoly::from_terms(vars, std::move(terms));
}

}  // namespace cf
