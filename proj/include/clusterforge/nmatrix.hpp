#pragma once

// Unitriangular matrix realizations of N in types A_n (size n+1) and D_n
// (size 2n): one-parameter subgroups x_i(t), products along words, minors.

#include <cstddef>
#include <string>
#include <vector>

#include "clusterforge/laurent.hpp"
#include "clusterforge/quiver.hpp"

namespace cf::nmat {

using prep::DynkinType;

class NMatrix {
 public:
  NMatrix(Vars vars, std::size_t size);  // identity
  const Vars& vars() const { return vars_; }
  std::size_t size() const { return n_; }
  // 1-based.
  const LaurentPoly& at(std::size_t i, std::size_t j) const { return e_[(i - 1) * n_ + (j - 1)]; }
  LaurentPoly& at(std::size_t i, std::size_t j) { return e_[(i - 1) * n_ + (j - 1)]; }
  std::vector<LaurentPoly> row(std::size_t i) const;
  bool is_unitriangular() const;
  bool operator==(const NMatrix& o) const { return n_ == o.n_ && e_ == o.e_; }

 private:
  Vars vars_;
  std::size_t n_;
  std::vector<LaurentPoly> e_;
};

std::size_t matrix_size(const DynkinType& t);

struct Word {
  std::vector<std::size_t> letters;
  std::vector<std::string> params;

  // params t1..tk.
  static Word with_default_params(std::vector<std::size_t> letters, const std::string& stem = "t");
};

NMatrix generator(const DynkinType& t, std::size_t i, const Vars& vars, const std::string& param);

// x_{i_1}(t_1) ... x_{i_k}(t_k), left to right, over the ring of the params
// (or over `vars`, which must contain them).
NMatrix product(const DynkinType& t, const Word& w);
NMatrix product(const DynkinType& t, const Word& w, const Vars& vars);
NMatrix multiply(const NMatrix& a, const NMatrix& b);

// Determinant of the submatrix on 1-based strictly increasing rows/cols.
// Fraction-free Bareiss; for size <= 4 the cofactor expansion is computed
// as well and the two must agree.
LaurentPoly minor(const NMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols);
LaurentPoly minor_bareiss(const NMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols);
LaurentPoly minor_cofactor(const NMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols);

// Upper unitriangular with independent entries n12, n13, ..., over the ring
// of those names.
NMatrix generic_unitriangular(std::size_t size, const std::string& stem = "n");

struct QuadricCheck {
  bool holds = false;
  LaurentPoly value;
  std::string witness;  // a surviving term when the form does not vanish
};

// q(y) = sum_{i<=n} (-1)^{i-1} y_i y_{2n+1-i} on a row of length 2n.
QuadricCheck quadric_form_on_row(const std::vector<LaurentPoly>& row);
// First row of product(D_n, w) substituted into q.
QuadricCheck verify_quadric_relation(const DynkinType& t, const Word& w);

}  // namespace cf::nmat
