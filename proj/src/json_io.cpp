#include "clusterforge/json_io.hpp"

#include <fstream>

#include "clusterforge/error.hpp"

namespace cf::io {

json terms_to_json(const LaurentPoly& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) terms.push_back({{"exponents", t.mono.exps}, {"coeff", t.coeff.get_str()}});
  return terms;
}

json poly_to_json(const LaurentPoly& p) { return {{"vars", p.vars()->names()}, {"terms", terms_to_json(p)}}; }

LaurentPoly terms_from_json(const Vars& vars, const json& terms) {
  if (!terms.is_array()) throw InvalidInput("polynomial terms must be an array");
  std::vector<Term> out;
  for (const auto& t : terms) {
    if (!t.contains("exponents") || !t.contains("coeff")) throw InvalidInput("term needs exponents and coeff");
    Monomial m{t.at("exponents").get<std::vector<int>>()};
    if (m.exps.size() != vars->size()) throw InvalidInput("term exponent vector has the wrong length");
    BigInt c;
    const auto& cj = t.at("coeff");
    const std::string cs = cj.is_string() ? cj.get<std::string>() : cj.dump();
    if (c.set_str(cs, 10) != 0) throw InvalidInput("bad coefficient '" + cs + "'");
    out.push_back({std::move(m), std::move(c)});
  }
  return LaurentPoly::from_terms(vars, std::move(out));
}

LaurentPoly poly_from_json(const json& j) {
  if (!j.contains("vars") || !j.contains("terms")) throw InvalidInput("polynomial needs vars and terms");
  return terms_from_json(make_vars(j.at("vars").get<std::vector<std::string>>()), j.at("terms"));
}

json matrix_to_json(const cluster::ExchangeMatrix& b) { return b.rows(); }

json seed_to_json(const cluster::Seed& s) {
  json cl = json::array();
  for (const auto& c : s.cluster) cl.push_back(terms_to_json(c));
  return {{"d", s.d()},
          {"n", s.matrix.n()},
          {"matrix", matrix_to_json(s.matrix)},
          {"vars", s.vars()->names()},
          {"cluster", cl},
          {"labels", s.labels}};
}

cluster::Seed seed_from_json(const json& j) {
  try {
    const auto d = j.at("d").get<std::size_t>();
    const auto n = j.at("n").get<std::size_t>();
    cluster::ExchangeMatrix b(d, n, j.at("matrix").get<std::vector<std::vector<long>>>());
    std::vector<std::string> names;
    if (j.contains("vars")) {
      names = j.at("vars").get<std::vector<std::string>>();
    } else {
      for (std::size_t i = 1; i <= d; ++i) names.push_back("x" + std::to_string(i));
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    cluster::Seed s = cluster::make_initial_seed(std::move(b), names, labels);
    if (j.contains("cluster")) {
      const auto& cl = j.at("cluster");
      if (cl.size() != d) throw InvalidInput("seed cluster needs d entries");
      for (std::size_t i = 0; i < d; ++i)
        s.cluster[i] = cl[i].is_object() ? terms_from_json(s.vars(), cl[i].at("terms")) : terms_from_json(s.vars(), cl[i]);
    }
    return s;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("seed JSON: ") + e.what());
  }
}

json nmatrix_to_json(const nmat::NMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 1; i <= m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 1; j <= m.size(); ++j) row.push_back(terms_to_json(m.at(i, j)));
    rows.push_back(row);
  }
  return {{"vars", m.vars()->names()}, {"size", m.size()}, {"entries", rows}};
}

json module_to_json(const prep::QRep& m) {
  const auto& q = *m.quiver;
  json dims = json::object();
  for (std::size_t v = 0; v < m.dims.size(); ++v) dims[std::to_string(v + 1)] = m.dims[v];
  json maps = json::object();
  for (std::size_t a = 0; a < m.maps.size(); ++a) {
    json mat = json::array();
    for (std::size_t i = 0; i < m.maps[a].rows; ++i) {
      json row = json::array();
      for (std::size_t k = 0; k < m.maps[a].cols; ++k) row.push_back(m.maps[a](i, k).get_str());
      mat.push_back(row);
    }
    maps[q.arrow_label(a)] = mat;
  }
  return {{"type", q.type().name()}, {"dims", dims}, {"maps", maps}};
}

prep::QRep module_from_json(const json& j, bool require_relation) {
  try {
    const auto type = prep::DynkinType::parse(j.at("type").get<std::string>());
    const prep::Quiver q = prep::make_quiver(type);
    std::vector<std::size_t> dims(q->vertex_count(), 0);
    for (const auto& [k, v] : j.at("dims").items()) {
      const std::size_t vertex = std::stoul(k);
      if (vertex < 1 || vertex > dims.size()) throw InvalidInput("module JSON: vertex " + k + " out of range");
      dims[vertex - 1] = v.get<std::size_t>();
    }
    prep::QRep m = prep::rep_with_dims(RationalField{}, q, dims);
    if (j.contains("maps"))
      for (const auto& [label, mat] : j.at("maps").items()) {
        auto a = q->arrow_by_label(label);
        if (!a) throw InvalidInput("module JSON: unknown arrow '" + label + "'");
        auto& target = m.maps[*a];
        if (mat.size() != target.rows) throw InvalidInput("module JSON: map " + label + " has the wrong row count");
        for (std::size_t i = 0; i < target.rows; ++i) {
          if (mat[i].size() != target.cols) throw InvalidInput("module JSON: map " + label + " has the wrong column count");
          for (std::size_t k = 0; k < target.cols; ++k) {
            const auto& e = mat[i][k];
            const std::string s = e.is_string() ? e.get<std::string>() : e.dump();
            Rational r;
            if (r.set_str(s, 10) != 0 || sgn(r.get_den()) == 0)
              throw InvalidInput("module JSON: bad rational '" + s + "'");
            r.canonicalize();
            target(i, k) = r;
          }
        }
      }
    if (auto w = prep::relation_witness(m); w && require_relation)
      throw InvalidInput("module JSON: preprojective relation fails at vertex " + std::to_string(*w));
    return m;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("module JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw InvalidInput("module JSON: vertex keys must be integers");
  }
}

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput("'" + path + "': " + e.what());
  }
}

}  // namespace cf::io
