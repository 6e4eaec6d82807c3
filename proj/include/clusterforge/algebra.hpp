#pragma once

// The preprojective algebra of a Dynkin graph: a basis of path classes
// computed degree by degree, and the indecomposable injectives Q_i.

#include <cstddef>
#include <map>
#include <vector>

#include "clusterforge/quiver.hpp"

namespace cf::prep {

// A walk in the double quiver: start vertex, then arrows in traversal order.
struct Walk {
  std::size_t start = 0;
  std::vector<std::size_t> arrows;

  bool operator<(const Walk& o) const { return std::tie(start, arrows) < std::tie(o.start, o.arrows); }
  bool operator==(const Walk& o) const { return start == o.start && arrows == o.arrows; }
};

class PreprojectiveAlgebra {
 public:
  // Throws ResourceLimit when a degree has more than walk_cap walks.
  explicit PreprojectiveAlgebra(Quiver q, std::size_t walk_cap = 200000);

  const Quiver& quiver() const { return q_; }
  std::size_t dim() const { return basis_.size(); }
  // Normal-form walks, ordered by length.
  const std::vector<Walk>& basis() const { return basis_; }
  std::vector<std::size_t> graded_dims() const;
  std::size_t walk_end(const Walk& w) const;

  // Coordinates of the class of w in the normal-form basis.
  std::vector<std::pair<std::size_t, Rational>> normal_form(const Walk& w) const;

  // The injective hull of S_i (1-based), as the dual of the walks ending at i.
  QRep injective(std::size_t i) const;

 private:
  Quiver q_;
  std::vector<Walk> basis_;
  // nf_[L][walk] = normal form of a length-L walk.
  std::vector<std::map<Walk, std::vector<std::pair<std::size_t, Rational>>>> nf_;
};

// Cached per Dynkin type.
const PreprojectiveAlgebra& algebra_for(const DynkinType& t);

inline QRep injective(const DynkinType& t, std::size_t i) { return algebra_for(t).injective(i); }

}  // namespace cf::prep
