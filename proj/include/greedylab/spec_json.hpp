#ifndef GREEDYLAB_SPEC_JSON_HPP_
#define GREEDYLAB_SPEC_JSON_HPP_

#include <string>

#include "json.hpp"
#include "greedylab/norm_spec.hpp"
#include "greedylab/sparse_vector.hpp"
#include "greedylab/weight.hpp"

namespace greedylab {

using Json = nlohmann::json;

inline constexpr int kSpecVersion = 1;

// Node-tagged trees; reals and indices are decimal strings. Parse errors
// throw ContractError whose message starts with the JSON pointer.
Json weight_to_json(const Weight& w);
Weight weight_from_json(const Json& j, const std::string& path = "");
Json norm_to_json(const NormSpec& s);
NormSpec norm_from_json(const Json& j, const std::string& path = "");

// Versioned documents: {"spec_version": 1, "norm": ...}.
Json norm_document(const NormSpec& s);
NormSpec norm_from_document(const Json& j);

Json vector_to_json(const SparseVector& x);  // [["index", "value"], ...]
SparseVector vector_from_json(const Json& j, const std::string& path = "");
Json index_set_to_json(const IndexSet& a);
IndexSet index_set_from_json(const Json& j, const std::string& path = "");

double real_from_json(const Json& j, const std::string& path);
Index index_from_json(const Json& j, const std::string& path);

// FNV-1a of the compact serialization, as 16 hex digits.
std::string spec_hash(const NormSpec& s);

}  // namespace greedylab

#endif  // GREEDYLAB_SPEC_JSON_HPP_
