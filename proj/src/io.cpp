#include "liftshadow/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "liftshadow/errors.hpp"

namespace liftshadow {

Format parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "arclist") return Format::arclist;
  throw FormatError("unknown format '" + std::string(name) + "'");
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

void require_keys(const Json& j, std::initializer_list<std::string_view> allowed, std::string_view what) {
  if (!j.is_object()) throw FormatError(std::string(what) + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw FormatError(std::string(what) + ": unknown field '" + key + "'");
  }
}

Json signature_to_json(const Signature& sig) {
  Json out = Json::array();
  for (const auto& r : sig.relations()) out.push_back(Json{{"name", r.name}, {"arity", r.arity}, {"symmetric", r.symmetric}});
  return out;
}

Signature signature_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("signature: expected an array");
  std::vector<Relation> rels;
  for (const auto& entry : j) {
    require_keys(entry, {"name", "arity", "symmetric"}, "signature entry");
    if (!entry.contains("name") || !entry["name"].is_string()) throw FormatError("signature entry: missing string 'name'");
    if (!entry.contains("arity") || !entry["arity"].is_number_unsigned())
      throw FormatError("signature entry: missing positive integer 'arity'");
    Relation r{entry["name"].get<std::string>(), entry["arity"].get<std::size_t>(), false};
    if (entry.contains("symmetric")) {
      if (!entry["symmetric"].is_boolean()) throw FormatError("signature entry: 'symmetric' must be boolean");
      r.symmetric = entry["symmetric"].get<bool>();
    }
    rels.push_back(std::move(r));
  }
  return Signature(std::move(rels));
}

Json structure_to_json(const Structure& s) {
  Json rels = Json::object();
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    Json list = Json::array();
    for (auto t : s.tuples(r)) list.push_back(Json(std::vector<Element>(t.begin(), t.end())));
    rels[s.signature()[r].name] = std::move(list);
  }
  Json out;
  out["signature"] = signature_to_json(s.signature());
  out["universe"] = s.size();
  out["relations"] = std::move(rels);
  return out;
}

Structure structure_from_json(const Json& j) {
  require_keys(j, {"signature", "universe", "relations"}, "structure");
  if (!j.contains("signature")) throw FormatError("structure: missing 'signature'");
  if (!j.contains("universe") || !j["universe"].is_number_unsigned())
    throw FormatError("structure: missing non-negative integer 'universe'");
  Signature sig = signature_from_json(j["signature"]);
  const auto n = j["universe"].get<std::size_t>();
  StructureBuilder b(sig, n);
  std::size_t given = 0;
  if (j.contains("relations")) {
    const auto& rels = j["relations"];
    if (!rels.is_object()) throw FormatError("structure: 'relations' must be an object");
    for (const auto& [name, list] : rels.items()) {
      auto r = sig.find(name);
      if (!r) throw FormatError("structure: relation '" + name + "' is not in the signature");
      if (!list.is_array()) throw FormatError("structure: tuples of '" + name + "' must be an array");
      for (const auto& t : list) {
        if (!t.is_array()) throw FormatError("structure: tuple must be an array");
        std::vector<Element> tuple;
        for (const auto& e : t) {
          if (!e.is_number_unsigned()) throw FormatError("structure: tuple entries must be non-negative integers");
          const auto v = e.get<std::uint64_t>();
          if (v >= n) throw FormatError("structure: element " + std::to_string(v) + " out of range");
          tuple.push_back(static_cast<Element>(v));
        }
        b.add(*r, tuple);
        ++given;
      }
    }
  }
  Structure s = std::move(b).build();
  if (s.tuple_count() != given) throw FormatError("structure: duplicate tuples");
  return s;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::uint64_t> integers(std::string_view segment) {
  std::vector<std::uint64_t> out;
  segment = trim(segment);
  while (!segment.empty()) {
    std::size_t len = 0;
    while (len < segment.size() && !std::isspace(static_cast<unsigned char>(segment[len]))) ++len;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(segment.data(), segment.data() + len, v);
    if (ec != std::errc() || ptr != segment.data() + len)
      throw FormatError("arclist: '" + std::string(segment.substr(0, len)) + "' is not a non-negative integer");
    out.push_back(v);
    segment = trim(segment.substr(len));
  }
  return out;
}

Structure parse_arclist(std::string_view text) {
  std::vector<std::string_view> segments;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(';', start);
    segments.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  auto head = integers(segments[0]);
  if (head.size() != 1) throw FormatError("arclist: expected the universe size as the first token");
  const auto n = head[0];
  StructureBuilder b(Signature::digraph(), n);
  for (std::size_t i = 1; i < segments.size(); ++i) {
    auto arc = integers(segments[i]);
    if (arc.size() != 2) throw FormatError("arclist: each arc must be two integers 'u v'");
    if (arc[0] >= n || arc[1] >= n)
      throw FormatError("arclist: arc (" + std::to_string(arc[0]) + "," + std::to_string(arc[1]) + ") out of range");
    b.add(0, {static_cast<Element>(arc[0]), static_cast<Element>(arc[1])});
  }
  Structure s = std::move(b).build();
  if (s.tuple_count() != segments.size() - 1) throw FormatError("arclist: duplicate arcs");
  return s;
}

}  // namespace

Structure parse_structure(std::string_view text, Format format) {
  if (format == Format::arclist) return parse_arclist(text);
  return structure_from_json(parse_json(text));
}

std::string serialize_structure(const Structure& s, Format format) {
  if (format == Format::json) return structure_to_json(s).dump();
  const auto& sig = s.signature();
  if (sig.size() != 1 || sig[0].arity != 2) throw FormatError("arclist: only digraphs can be written as arc lists");
  std::string out = std::to_string(s.size());
  for (auto t : s.tuples(0)) out += "; " + std::to_string(t[0]) + " " + std::to_string(t[1]);
  return out;
}

}  // namespace liftshadow
