#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "liftshadow/structure.hpp"

namespace liftshadow {

using Json = nlohmann::ordered_json;

enum class Format { json, arclist };

Format parse_format(std::string_view name);

/// Structure JSON:
///   {"signature":[{"name":"E","arity":2,"symmetric":false}],"universe":3,
///    "relations":{"E":[[0,1],[1,2]]}}
/// arclist (digraphs only): "3; 0 1; 1 2".
/// Both reject unknown fields, out-of-range elements, duplicate tuples and
/// symmetric flags that the tuples violate.
Structure parse_structure(std::string_view text, Format format);
std::string serialize_structure(const Structure& s, Format format);

Json signature_to_json(const Signature& sig);
Signature signature_from_json(const Json& j);
Json structure_to_json(const Structure& s);
Structure structure_from_json(const Json& j);

/// Parses JSON text, turning syntax errors into FormatError.
Json parse_json(std::string_view text);
/// Throws FormatError naming the first key of `j` outside `allowed`.
void require_keys(const Json& j, std::initializer_list<std::string_view> allowed, std::string_view what);

}  // namespace liftshadow
