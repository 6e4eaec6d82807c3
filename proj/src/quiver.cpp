#include "clusterforge/quiver.hpp"

#include <algorithm>
#include <cctype>

namespace cf::prep {

DynkinType DynkinType::parse(const std::string& s) {
  if (s.size() < 2) throw InvalidInput("bad Dynkin type '" + s + "'");
  DynkinType t;
  t.family = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  const std::string digits = s.substr(1);
  if (!std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw InvalidInput("bad Dynkin type '" + s + "'");
  t.rank = std::stoi(digits);
  const bool ok = (t.family == 'A' && t.rank >= 1) || (t.family == 'D' && t.rank >= 4) ||
                  (t.family == 'E' && t.rank >= 6 && t.rank <= 8);
  if (!ok) throw InvalidInput("unsupported Dynkin type '" + s + "'");
  return t;
}

DoubleQuiver::DoubleQuiver(DynkinType type) : type_(type), n_(static_cast<std::size_t>(type.rank)) {
  auto edge = [&](std::size_t a, std::size_t b) { edges_.emplace_back(std::min(a, b) - 1, std::max(a, b) - 1); };
  switch (type.family) {
    case 'A':
      for (std::size_t i = 1; i < n_; ++i) edge(i, i + 1);
      break;
    case 'D':
      // Two short legs 1 and 2 attached at 3, then the chain 3 - 4 - ... - n.
      edge(1, 3);
      edge(2, 3);
      for (std::size_t i = 3; i < n_; ++i) edge(i, i + 1);
      break;
    case 'E':
      edge(1, 3);
      edge(2, 4);
      for (std::size_t i = 3; i < n_; ++i) edge(i, i + 1);
      break;
    default:
      throw InvalidInput("unsupported Dynkin family");
  }
  out_.resize(n_);
  in_.resize(n_);
  for (const auto& [a, b] : edges_) {
    const std::size_t id = arrows_.size();
    arrows_.push_back({a, b, +1});
    arrows_.push_back({b, a, -1});
    out_[a].push_back(id);
    in_[b].push_back(id);
    out_[b].push_back(id + 1);
    in_[a].push_back(id + 1);
  }
}

bool DoubleQuiver::adjacent(std::size_t a, std::size_t b) const {
  const auto e = std::make_pair(std::min(a, b), std::max(a, b));
  return std::find(edges_.begin(), edges_.end(), e) != edges_.end();
}

std::string DoubleQuiver::arrow_label(std::size_t arrow) const {
  const auto& a = arrows_.at(arrow);
  return std::to_string(a.source + 1) + "->" + std::to_string(a.target + 1);
}

std::optional<std::size_t> DoubleQuiver::arrow_by_label(const std::string& label) const {
  for (std::size_t a = 0; a < arrows_.size(); ++a)
    if (arrow_label(a) == label) return a;
  return std::nullopt;
}

std::size_t DoubleQuiver::positive_root_count() const {
  switch (type_.family) {
    case 'A':
      return n_ * (n_ + 1) / 2;
    case 'D':
      return n_ * (n_ - 1);
    default:
      return n_ == 6 ? 36 : n_ == 7 ? 63 : 120;
  }
}

long DoubleQuiver::form(const std::vector<std::size_t>& d, const std::vector<std::size_t>& e) const {
  long s = 0;
  for (std::size_t i = 0; i < n_; ++i) s += 2 * static_cast<long>(d[i] * e[i]);
  for (const auto& [a, b] : edges_) s -= static_cast<long>(d[a] * e[b] + d[b] * e[a]);
  return s;
}

Quiver make_quiver(DynkinType type) { return std::make_shared<const DoubleQuiver>(type); }

std::optional<PRep> reduce_mod_p(const QRep& m, std::uint32_t p) {
  PrimeField f{p};
  PRep r = rep_with_dims(f, m.quiver, m.dims);
  for (std::size_t a = 0; a < m.maps.size(); ++a)
    for (std::size_t k = 0; k < m.maps[a].data.size(); ++k) {
      const Rational& x = m.maps[a].data[k];
      const unsigned long den = mpz_fdiv_ui(x.get_den_mpz_t(), p);
      if (den == 0) return std::nullopt;
      const unsigned long num = mpz_fdiv_ui(x.get_num_mpz_t(), p);
      r.maps[a].data[k] = f.mul(static_cast<std::uint32_t>(num), f.inv(static_cast<std::uint32_t>(den)));
    }
  return r;
}

}  // namespace cf::prep
