#include "clusterforge/nmatrix.hpp"

#include <utility>

#include "clusterforge/error.hpp"

namespace cf::nmat {

NMatrix::NMatrix(Vars vars, std::size_t size)
    : vars_(std::move(vars)), n_(size), e_(size * size, LaurentPoly(vars_)) {
  for (std::size_t i = 0; i < n_; ++i) e_[i * n_ + i] = LaurentPoly::constant(vars_, 1);
}

std::vector<LaurentPoly> NMatrix::row(std::size_t i) const {
  return {e_.begin() + static_cast<std::ptrdiff_t>((i - 1) * n_),
          e_.begin() + static_cast<std::ptrdiff_t>(i * n_)};
}

bool NMatrix::is_unitriangular() const {
  const auto one = LaurentPoly::constant(vars_, 1);
  for (std::size_t i = 1; i <= n_; ++i)
    for (std::size_t j = 1; j <= i; ++j)
      if (at(i, j) != (i == j ? one : LaurentPoly(vars_))) return false;
  return true;
}

std::size_t matrix_size(const DynkinType& t) {
  const auto n = static_cast<std::size_t>(t.rank);
  if (t.family == 'A') return n + 1;
  if (t.family == 'D') return 2 * n;
  throw InvalidInput("matrix realization only for types A and D, not " + t.name());
}

Word Word::with_default_params(std::vector<std::size_t> letters, const std::string& stem) {
  Word w{std::move(letters), {}};
  for (std::size_t k = 1; k <= w.letters.size(); ++k) w.params.push_back(stem + std::to_string(k));
  return w;
}

namespace {

// Positions (row, col), 1-based, of the t-entries of x_i(t).
std::vector<std::pair<std::size_t, std::size_t>> generator_positions(const DynkinType& t, std::size_t i) {
  const auto n = static_cast<std::size_t>(t.rank);
  matrix_size(t);
  if (i < 1 || i > n) throw InvalidInput("vertex " + std::to_string(i) + " invalid for type " + t.name());
  if (t.family == 'A') return {{i, i + 1}};
  if (i == 1) return {{n - 1, n + 1}, {n, n + 2}};
  return {{n - i + 1, n - i + 2}, {n + i - 1, n + i}};
}

}  // namespace

NMatrix generator(const DynkinType& t, std::size_t i, const Vars& vars, const std::string& param) {
  NMatrix m(vars, matrix_size(t));
  const auto tp = LaurentPoly::variable(vars, param);
  for (const auto& [r, c] : generator_positions(t, i)) m.at(r, c) = tp;
  return m;
}

NMatrix product(const DynkinType& t, const Word& w) { return product(t, w, make_vars(w.params)); }

NMatrix product(const DynkinType& t, const Word& w, const Vars& vars) {
  if (w.letters.size() != w.params.size()) throw InvalidInput("word: letters and params differ in length");
  NMatrix m(vars, matrix_size(t));
  const std::size_t size = m.size();
  // Right multiplication by I + t E_{a,b} adds t * (column a) to column b.
  for (std::size_t k = 0; k < w.letters.size(); ++k) {
    const auto tp = LaurentPoly::variable(vars, w.params[k]);
    for (const auto& [a, b] : generator_positions(t, w.letters[k]))
      for (std::size_t r = 1; r <= size; ++r)
        if (!m.at(r, a).is_zero()) m.at(r, b) += m.at(r, a) * tp;
  }
  return m;
}

NMatrix multiply(const NMatrix& a, const NMatrix& b) {
  if (a.size() != b.size()) throw InvalidInput("matrix product: size mismatch");
  if (!same_ring(a.vars(), b.vars())) throw InvalidInput("matrix product: different rings");
  NMatrix c(a.vars(), a.size());
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= a.size(); ++j) {
      LaurentPoly s(a.vars());
      for (std::size_t k = 1; k <= a.size(); ++k)
        if (!a.at(i, k).is_zero() && !b.at(k, j).is_zero()) s += a.at(i, k) * b.at(k, j);
      c.at(i, j) = std::move(s);
    }
  return c;
}

namespace {

void check_indices(const NMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  if (rows.size() != cols.size()) throw InvalidInput("minor: row and column lists differ in length");
  auto check = [&](const std::vector<std::size_t>& v, const char* what) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] < 1 || v[k] > m.size())
        throw InvalidInput(std::string("minor: ") + what + " index " + std::to_string(v[k]) + " out of range");
      if (k > 0 && v[k] <= v[k - 1]) throw InvalidInput(std::string("minor: ") + what + " indices must increase");
    }
  };
  check(rows, "row");
  check(cols, "column");
}

std::vector<std::vector<LaurentPoly>> submatrix(const NMatrix& m, const std::vector<std::size_t>& rows,
                                                const std::vector<std::size_t>& cols) {
  std::vector<std::vector<LaurentPoly>> a;
  for (auto r : rows) {
    std::vector<LaurentPoly> row;
    for (auto c : cols) row.push_back(m.at(r, c));
    a.push_back(std::move(row));
  }
  return a;
}

LaurentPoly cofactor_det(const Vars& vars, const std::vector<std::vector<LaurentPoly>>& a) {
  const std::size_t k = a.size();
  if (k == 0) return LaurentPoly::constant(vars, 1);
  if (k == 1) return a[0][0];
  LaurentPoly det(vars);
  for (std::size_t j = 0; j < k; ++j) {
    if (a[0][j].is_zero()) continue;
    std::vector<std::vector<LaurentPoly>> sub;
    for (std::size_t i = 1; i < k; ++i) {
      std::vector<LaurentPoly> row;
      for (std::size_t c = 0; c < k; ++c)
        if (c != j) row.push_back(a[i][c]);
      sub.push_back(std::move(row));
    }
    const LaurentPoly term = a[0][j] * cofactor_det(vars, sub);
    if (j % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

}  // namespace

LaurentPoly minor_bareiss(const NMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  check_indices(m, rows, cols);
  auto a = submatrix(m, rows, cols);
  const std::size_t k = a.size();
  const Vars& vars = m.vars();
  if (k == 0) return LaurentPoly::constant(vars, 1);
  bool negate = false;
  LaurentPoly prev = LaurentPoly::constant(vars, 1);
  for (std::size_t p = 0; p + 1 < k; ++p) {
    if (a[p][p].is_zero()) {
      std::size_t r = p + 1;
      while (r < k && a[r][p].is_zero()) ++r;
      if (r == k) return LaurentPoly(vars);
      std::swap(a[p], a[r]);
      negate = !negate;
    }
    for (std::size_t i = p + 1; i < k; ++i) {
      for (std::size_t j = p + 1; j < k; ++j) a[i][j] = div_exact(a[p][p] * a[i][j] - a[i][p] * a[p][j], prev);
      a[i][p] = LaurentPoly(vars);
    }
    prev = a[p][p];
  }
  return negate ? -a[k - 1][k - 1] : a[k - 1][k - 1];
}

LaurentPoly minor_cofactor(const NMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  check_indices(m, rows, cols);
  return cofactor_det(m.vars(), submatrix(m, rows, cols));
}

LaurentPoly minor(const NMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  LaurentPoly d = minor_bareiss(m, rows, cols);
  if (rows.size() <= 4 && d != minor_cofactor(m, rows, cols))
    throw VerificationFailure("minor: Bareiss and cofactor expansion disagree");
  return d;
}

NMatrix generic_unitriangular(std::size_t size, const std::string& stem) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= size; ++i)
    for (std::size_t j = i + 1; j <= size; ++j)
      names.push_back(stem + std::to_string(i) + (size > 9 ? "_" : "") + std::to_string(j));
  Vars vars = make_vars(names);
  NMatrix m(vars, size);
  std::size_t k = 0;
  for (std::size_t i = 1; i <= size; ++i)
    for (std::size_t j = i + 1; j <= size; ++j) m.at(i, j) = LaurentPoly::variable(vars, names[k++]);
  return m;
}

QuadricCheck quadric_form_on_row(const std::vector<LaurentPoly>& row) {
  if (row.empty() || row.size() % 2 != 0) throw InvalidInput("quadric form needs a row of even length 2n");
  const std::size_t n = row.size() / 2;
  LaurentPoly q(row.front().vars());
  for (std::size_t i = 1; i <= n; ++i) {
    const LaurentPoly term = row[i - 1] * row[2 * n - i];
    if (i % 2 == 1)
      q += term;
    else
      q -= term;
  }
  QuadricCheck out{q.is_zero(), q, {}};
  if (!q.is_zero()) out.witness = LaurentPoly::from_terms(q.vars(), {q.terms().front()}).to_string();
  return out;
}

QuadricCheck verify_quadric_relation(const DynkinType& t, const Word& w) {
  if (t.family != 'D') throw InvalidInput("quadric relation is defined for type D");
  return quadric_form_on_row(product(t, w).row(1));
}

}  // namespace cf::nmat
