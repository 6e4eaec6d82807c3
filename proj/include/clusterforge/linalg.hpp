#pragma once

// Dense linear algebra over an exact field: Q (GMP rationals) or F_p.
// Everything is templated on a small field descriptor so the same module
// code runs over Q for structure and over F_p for point counting.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "clusterforge/error.hpp"
#include "clusterforge/laurent.hpp"

namespace cf {

struct RationalField {
  using Elem = Rational;
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long v) const { return v; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const { return 1 / a; }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool operator==(const RationalField&) const { return true; }
  std::string name() const { return "Q"; }
};

struct PrimeField {
  using Elem = std::uint32_t;
  std::uint32_t p = 2;

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p; }
  Elem from_int(long v) const {
    long r = v % static_cast<long>(p);
    return static_cast<Elem>(r < 0 ? r + static_cast<long>(p) : r);
  }
  Elem add(Elem a, Elem b) const { return static_cast<Elem>((std::uint64_t(a) + b) % p); }
  Elem sub(Elem a, Elem b) const { return static_cast<Elem>((std::uint64_t(a) + p - b) % p); }
  Elem mul(Elem a, Elem b) const { return static_cast<Elem>((std::uint64_t(a) * b) % p); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem inv(Elem a) const {
    // Fermat: a^(p-2).
    std::uint64_t r = 1, b = a, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return static_cast<Elem>(r);
  }
  bool is_zero(Elem a) const { return a == 0; }
  bool operator==(const PrimeField& o) const { return p == o.p; }
  std::string name() const { return "F" + std::to_string(p); }
};

template <class F>
struct Mat {
  using Elem = typename F::Elem;
  std::size_t rows = 0, cols = 0;
  std::vector<Elem> data;

  Mat() = default;
  Mat(const F& f, std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, f.zero()) {}

  Elem& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Elem& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && data == o.data; }
};

template <class F>
Mat<F> identity(const F& f, std::size_t n) {
  Mat<F> m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

template <class F>
Mat<F> multiply(const F& f, const Mat<F>& a, const Mat<F>& b) {
  if (a.cols != b.rows) throw Error(ErrorCode::internal, "matrix product: shape mismatch");
  Mat<F> c(f, a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const auto& aik = a(i, k);
      if (f.is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) = f.add(c(i, j), f.mul(aik, b(k, j)));
    }
  return c;
}

template <class F>
Mat<F> add(const F& f, const Mat<F>& a, const Mat<F>& b) {
  Mat<F> c = a;
  for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] = f.add(a.data[i], b.data[i]);
  return c;
}

template <class F>
Mat<F> subtract(const F& f, const Mat<F>& a, const Mat<F>& b) {
  Mat<F> c = a;
  for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] = f.sub(a.data[i], b.data[i]);
  return c;
}

template <class F>
Mat<F> scale(const F& f, const Mat<F>& a, const typename F::Elem& s) {
  Mat<F> c = a;
  for (auto& x : c.data) x = f.mul(x, s);
  return c;
}

template <class F>
bool is_zero(const F& f, const Mat<F>& a) {
  for (const auto& x : a.data)
    if (!f.is_zero(x)) return false;
  return true;
}

// In-place reduced row echelon form; returns pivot columns.
template <class F>
std::vector<std::size_t> rref_inplace(const F& f, Mat<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t piv = r;
    while (piv < m.rows && f.is_zero(m(piv, c))) ++piv;
    if (piv == m.rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(r, j));
    const auto inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols; ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      const auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::size_t rank(const F& f, Mat<F> m) {
  return rref_inplace(f, m).size();
}

// Basis of {x : m x = 0}, one vector per entry.
template <class F>
std::vector<std::vector<typename F::Elem>> nullspace(const F& f, Mat<F> m) {
  auto pivots = rref_inplace(f, m);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<typename F::Elem>> basis;
  for (std::size_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename F::Elem> v(m.cols, f.zero());
    v[free] = f.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
bool is_invertible(const F& f, const Mat<F>& m) {
  return m.rows == m.cols && rank(f, m) == m.rows;
}

// A subspace of F^ambient held as a basis in reduced row echelon form.
template <class F>
struct Subspace {
  using Elem = typename F::Elem;
  std::size_t ambient = 0;
  std::vector<std::vector<Elem>> basis;  // rref rows
  std::vector<std::size_t> pivots;       // pivot column of each row

  std::size_t dim() const { return basis.size(); }
};

template <class F>
Subspace<F> span(const F& f, std::size_t ambient, const std::vector<std::vector<typename F::Elem>>& vectors) {
  Mat<F> m(f, vectors.size(), ambient);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < ambient; ++j) m(i, j) = vectors[i][j];
  auto pivots = rref_inplace(f, m);
  Subspace<F> s;
  s.ambient = ambient;
  s.pivots = pivots;
  for (std::size_t r = 0; r < pivots.size(); ++r)
    s.basis.emplace_back(m.data.begin() + static_cast<std::ptrdiff_t>(r * ambient),
                         m.data.begin() + static_cast<std::ptrdiff_t>((r + 1) * ambient));
  return s;
}

template <class F>
Subspace<F> whole_space(const F& f, std::size_t ambient) {
  std::vector<std::vector<typename F::Elem>> e;
  for (std::size_t i = 0; i < ambient; ++i) {
    std::vector<typename F::Elem> v(ambient, f.zero());
    v[i] = f.one();
    e.push_back(std::move(v));
  }
  return span(f, ambient, e);
}

template <class F>
Subspace<F> sum(const F& f, const Subspace<F>& a, const Subspace<F>& b) {
  auto v = a.basis;
  v.insert(v.end(), b.basis.begin(), b.basis.end());
  return span(f, a.ambient, v);
}

// v minus its projection along the echelon basis; zero iff v lies in s.
template <class F>
std::vector<typename F::Elem> reduce(const F& f, const Subspace<F>& s, std::vector<typename F::Elem> v) {
  for (std::size_t r = 0; r < s.basis.size(); ++r) {
    const auto c = v[s.pivots[r]];
    if (f.is_zero(c)) continue;
    for (std::size_t j = 0; j < s.ambient; ++j) v[j] = f.sub(v[j], f.mul(c, s.basis[r][j]));
  }
  return v;
}

template <class F>
bool contains(const F& f, const Subspace<F>& s, const std::vector<typename F::Elem>& v) {
  for (const auto& x : reduce(f, s, v))
    if (!f.is_zero(x)) return false;
  return true;
}

// Coordinates of v (assumed to lie in s) in the echelon basis.
template <class F>
std::vector<typename F::Elem> coordinates(const F&, const Subspace<F>& s, const std::vector<typename F::Elem>& v) {
  std::vector<typename F::Elem> c;
  c.reserve(s.dim());
  for (auto p : s.pivots) c.push_back(v[p]);
  return c;
}

// Columns that are not pivots of s; they index a basis of F^ambient / s.
template <class F>
std::vector<std::size_t> complement_columns(const Subspace<F>& s) {
  std::vector<bool> is_pivot(s.ambient, false);
  for (auto p : s.pivots) is_pivot[p] = true;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < s.ambient; ++j)
    if (!is_pivot[j]) out.push_back(j);
  return out;
}

template <class F>
std::vector<typename F::Elem> apply(const F& f, const Mat<F>& m, const std::vector<typename F::Elem>& v) {
  std::vector<typename F::Elem> out(m.rows, f.zero());
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      if (!f.is_zero(v[j])) out[i] = f.add(out[i], f.mul(m(i, j), v[j]));
  return out;
}

template <class F>
Subspace<F> image(const F& f, const Mat<F>& m) {
  std::vector<std::vector<typename F::Elem>> cols;
  for (std::size_t j = 0; j < m.cols; ++j) {
    std::vector<typename F::Elem> c(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) c[i] = m(i, j);
    cols.push_back(std::move(c));
  }
  return span(f, m.rows, cols);
}

template <class F>
Subspace<F> kernel(const F& f, const Mat<F>& m) {
  return span(f, m.cols, nullspace(f, m));
}

}  // namespace cf
