#pragma once

// JSON encodings of polynomials, seeds, symbolic matrices and modules.

#include <string>

#include <json.hpp>

#include "clusterforge/cluster.hpp"
#include "clusterforge/laurent.hpp"
#include "clusterforge/nmatrix.hpp"
#include "clusterforge/quiver.hpp"

namespace cf::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "clusterforge/1";

// {"vars": [...], "terms": [{"exponents": [...], "coeff": "..."}]}
json poly_to_json(const LaurentPoly& p);
// Term records only, for contexts that carry the variable list once.
json terms_to_json(const LaurentPoly& p);
LaurentPoly poly_from_json(const json& j);
LaurentPoly terms_from_json(const Vars& vars, const json& terms);

json matrix_to_json(const cluster::ExchangeMatrix& b);

// {d, n, matrix, vars, cluster: [poly], labels}
json seed_to_json(const cluster::Seed& s);
// Accepts the full form or a bare {d, n, matrix[, vars][, labels]}.
cluster::Seed seed_from_json(const json& j);

// {vars, size, entries: [[terms]]}
json nmatrix_to_json(const nmat::NMatrix& m);

// {type, dims: {"1": d1, ...}, maps: {"1->3": [["1","0"], ...]}}
json module_to_json(const prep::QRep& m);
// Rejects modules violating the preprojective relation unless told not to.
prep::QRep module_from_json(const json& j, bool require_relation = true);

json parse_json_file(const std::string& path);

}  // namespace cf::io
