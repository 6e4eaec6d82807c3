#pragma once

// Exact multivariate Laurent polynomials over Z.
//
// A polynomial lives in a ring context (an ordered list of variable names).
// Terms are kept sorted in descending graded-lex order with no zero
// coefficients, so two polynomials are equal iff their term vectors are.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cf {

using BigInt = mpz_class;
using Rational = mpq_class;

class VarContext {
 public:
  explicit VarContext(std::vector<std::string> names);

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  const std::string& name(std::size_t i) const { return names_[i]; }

  bool operator==(const VarContext& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

using Vars = std::shared_ptr<const VarContext>;

Vars make_vars(std::vector<std::string> names);
// "t", 3 -> {t1, t2, t3}
Vars make_indexed_vars(const std::string& stem, std::size_t count);

bool same_ring(const Vars& a, const Vars& b);

struct Monomial {
  std::vector<int> exps;

  int degree() const;
  bool is_one() const;
  bool operator==(const Monomial& o) const { return exps == o.exps; }
};

// Strict "a comes before b" in the canonical order: higher total degree
// first, ties broken lexicographically (larger exponent vector first).
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

struct Term {
  Monomial mono;
  BigInt coeff;
};

class LaurentPoly {
 public:
  explicit LaurentPoly(Vars vars);

  static LaurentPoly constant(Vars vars, const BigInt& c);
  static LaurentPoly variable(Vars vars, std::string_view name, int power = 1);
  static LaurentPoly monomial(Vars vars, Monomial m, const BigInt& c = 1);
  // Terms may be unsorted, repeated, or zero; the result is canonical.
  static LaurentPoly from_terms(Vars vars, std::vector<Term> terms);

  const Vars& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_constant() const;
  // Coefficient of the given monomial (0 if absent).
  BigInt coeff(const Monomial& m) const;
  // Componentwise minimum exponent over all terms; zero polynomial -> all zeros.
  Monomial content() const;
  // True when no exponent is negative.
  bool is_polynomial() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  bool operator==(const LaurentPoly& o) const;
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  LaurentPoly pow(unsigned e) const;
  // Multiply by x^m (m may have negative entries).
  LaurentPoly shifted(const Monomial& m) const;
  LaurentPoly scaled(const BigInt& c) const;

  // Human-readable, deterministic: "2*x*y^-1 + 3".
  std::string to_string() const;

 private:
  void check_ring(const LaurentPoly& o, const char* op) const;
  void normalize();

  Vars vars_;
  std::vector<Term> terms_;
};

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q);

// Exact division in the Laurent ring. Throws InexactDivision when q does not
// divide p and InvalidInput when q is zero.
LaurentPoly div_exact(const LaurentPoly& p, const LaurentPoly& q);

// Point assignment by variable name. Every variable occurring in p must be
// assigned; a zero value at a negative exponent throws InvalidInput.
using RationalPoint = std::map<std::string, Rational, std::less<>>;
Rational evaluate(const LaurentPoly& p, const RationalPoint& point);

// Parses the output format of to_string (and a little more: spaces,
// leading '-', "x^-2"). Unknown variable names throw InvalidInput.
LaurentPoly parse_laurent(const Vars& vars, std::string_view text);

}  // namespace cf
