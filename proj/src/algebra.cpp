#include "clusterforge/algebra.hpp"

#include <memory>
#include <mutex>

namespace cf::prep {

namespace {

using Sparse = std::map<Walk, Rational>;

}  // namespace

std::size_t PreprojectiveAlgebra::walk_end(const Walk& w) const {
  return w.arrows.empty() ? w.start : q_->arrows()[w.arrows.back()].target;
}

PreprojectiveAlgebra::PreprojectiveAlgebra(Quiver q, std::size_t walk_cap) : q_(std::move(q)) {
  const RationalField f;
  const auto& arrows = q_->arrows();
  const std::size_t n = q_->vertex_count();

  std::vector<Walk> walks;
  for (std::size_t v = 0; v < n; ++v) walks.push_back(Walk{v, {}});

  std::vector<Sparse> ideal;  // echelon basis of the relation ideal in the current degree
  for (std::size_t len = 0;; ++len) {
    if (len > 0) {
      std::vector<Walk> next;
      for (const auto& w : walks)
        for (auto a : q_->out_arrows(walk_end(w))) {
          Walk x = w;
          x.arrows.push_back(a);
          next.push_back(std::move(x));
        }
      walks = std::move(next);
      if (walks.size() > walk_cap)
        throw ResourceLimit("preprojective algebra of type " + q_->type().name() + ": too many walks of length " +
                            std::to_string(len));
    }

    // Spanning set of the ideal in this degree.
    std::vector<Sparse> gens;
    if (len == 2) {
      for (std::size_t v = 0; v < n; ++v) {
        Sparse rho;
        for (auto a : q_->out_arrows(v)) rho[Walk{v, {a, DoubleQuiver::reverse(a)}}] += arrows[a].sign;
        if (!rho.empty()) gens.push_back(std::move(rho));
      }
    } else if (len > 2) {
      for (const auto& row : ideal)
        for (std::size_t a = 0; a < arrows.size(); ++a) {
          Sparse right, left;
          for (const auto& [w, c] : row) {
            if (walk_end(w) == arrows[a].source) {
              Walk x = w;
              x.arrows.push_back(a);
              right[x] += c;
            }
            if (w.start == arrows[a].target) {
              Walk x{arrows[a].source, {a}};
              x.arrows.insert(x.arrows.end(), w.arrows.begin(), w.arrows.end());
              left[x] += c;
            }
          }
          if (!right.empty()) gens.push_back(std::move(right));
          if (!left.empty()) gens.push_back(std::move(left));
        }
    }

    // Echelonize per (start, end) block.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Walk>> block_walks;
    for (const auto& w : walks) block_walks[{w.start, walk_end(w)}].push_back(w);
    std::map<std::pair<std::size_t, std::size_t>, std::vector<const Sparse*>> block_gens;
    for (const auto& g : gens) {
      const Walk& w0 = g.begin()->first;
      block_gens[{w0.start, walk_end(w0)}].push_back(&g);
    }

    std::map<Walk, std::vector<std::pair<std::size_t, Rational>>> nf_here;
    std::vector<Sparse> new_ideal;
    std::size_t added = 0;
    for (const auto& [key, cols] : block_walks) {
      std::map<Walk, std::size_t> col_of;
      for (std::size_t c = 0; c < cols.size(); ++c) col_of[cols[c]] = c;
      const auto& g = block_gens[key];
      Mat<RationalField> m(f, g.size(), cols.size());
      for (std::size_t r = 0; r < g.size(); ++r)
        for (const auto& [w, c] : *g[r]) m(r, col_of.at(w)) = c;
      auto pivots = rref_inplace(f, m);
      std::vector<bool> is_pivot(cols.size(), false);
      for (auto p : pivots) is_pivot[p] = true;

      std::vector<std::size_t> nf_index(cols.size(), 0);
      for (std::size_t c = 0; c < cols.size(); ++c)
        if (!is_pivot[c]) {
          nf_index[c] = basis_.size();
          basis_.push_back(cols[c]);
          nf_here[cols[c]] = {{nf_index[c], Rational(1)}};
          ++added;
        }
      for (std::size_t r = 0; r < pivots.size(); ++r) {
        std::vector<std::pair<std::size_t, Rational>> v;
        Sparse row;
        for (std::size_t c = 0; c < cols.size(); ++c) {
          if (sgn(m(r, c)) == 0) continue;
          row[cols[c]] = m(r, c);
          if (!is_pivot[c]) v.emplace_back(nf_index[c], -m(r, c));
        }
        nf_here[cols[pivots[r]]] = std::move(v);
        new_ideal.push_back(std::move(row));
      }
    }
    nf_.push_back(std::move(nf_here));
    ideal = std::move(new_ideal);
    if (added == 0) break;
  }
}

std::vector<std::size_t> PreprojectiveAlgebra::graded_dims() const {
  std::vector<std::size_t> d;
  for (const auto& w : basis_) {
    if (d.size() <= w.arrows.size()) d.resize(w.arrows.size() + 1, 0);
    ++d[w.arrows.size()];
  }
  return d;
}

std::vector<std::pair<std::size_t, Rational>> PreprojectiveAlgebra::normal_form(const Walk& w) const {
  if (w.arrows.size() >= nf_.size()) return {};
  auto it = nf_[w.arrows.size()].find(w);
  if (it == nf_[w.arrows.size()].end()) throw InvalidInput("normal_form: not a walk of the double quiver");
  return it->second;
}

QRep PreprojectiveAlgebra::injective(std::size_t i) const {
  const std::size_t n = q_->vertex_count();
  if (i < 1 || i > n) throw InvalidInput("vertex " + std::to_string(i) + " out of range");
  const std::size_t target = i - 1;
  const RationalField f;

  // (Q_i)_j has the dual basis of the normal-form walks j ~> i.
  std::vector<std::vector<std::size_t>> at(n);
  std::vector<std::size_t> pos(basis_.size(), 0);
  for (std::size_t b = 0; b < basis_.size(); ++b)
    if (walk_end(basis_[b]) == target) {
      pos[b] = at[basis_[b].start].size();
      at[basis_[b].start].push_back(b);
    }
  std::vector<std::size_t> dims;
  for (const auto& v : at) dims.push_back(v.size());
  QRep r = rep_with_dims(f, q_, dims);

  for (std::size_t a = 0; a < q_->arrows().size(); ++a) {
    const auto j = q_->arrows()[a].source, k = q_->arrows()[a].target;
    for (std::size_t row = 0; row < at[k].size(); ++row) {
      const Walk& wp = basis_[at[k][row]];
      Walk x{j, {a}};
      x.arrows.insert(x.arrows.end(), wp.arrows.begin(), wp.arrows.end());
      for (const auto& [b, c] : normal_form(x)) r.maps[a](row, pos[b]) = c;
    }
  }
  return r;
}

const PreprojectiveAlgebra& algebra_for(const DynkinType& t) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<PreprojectiveAlgebra>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[t.name()];
  if (!slot) slot = std::make_unique<PreprojectiveAlgebra>(make_quiver(t));
  return *slot;
}

}  // namespace cf::prep
