#include "prec/pg/pg_json.hpp"

#include <limits>

#include <json.hpp>

#include "prec/error.hpp"

namespace prec::pg {

namespace {

using nlohmann::json;

std::string describe(const json& j) { return std::string(j.type_name()); }

std::string idOf(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.dump();
  throw PgError(where + ": id must be a string or an integer, got " + describe(j));
}

Scalar scalarOf(const json& j, const std::string& where) {
  switch (j.type()) {
    case json::value_t::string: return j.get<std::string>();
    case json::value_t::number_integer: return j.get<std::int64_t>();
    case json::value_t::number_unsigned: {
      auto u = j.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
        throw PgError(where + ": integer out of range");
      return static_cast<std::int64_t>(u);
    }
    case json::value_t::number_float: return j.get<double>();
    case json::value_t::array: throw PgError(where + ": nested list value");
    default: throw PgError(where + ": unsupported value type " + describe(j));
  }
}

PropertyValue valueOf(const json& j, const std::string& where) {
  if (j.is_array()) {
    List list;
    for (const auto& item : j) list.push_back(scalarOf(item, where));
    return PropertyValue(std::move(list));
  }
  if (j.is_object()) throw PgError(where + ": non-scalar value");
  return PropertyValue(scalarOf(j, where));
}

PropertyMap propertiesOf(const json& owner, const std::string& where) {
  PropertyMap out;
  auto it = owner.find("properties");
  if (it == owner.end() || it->is_null()) return out;
  if (!it->is_object()) throw PgError(where + ": \"properties\" must be an object");
  for (const auto& [key, raw] : it->items()) {
    std::string at = where + " property '" + key + "'";
    if (key.empty()) throw PgError(where + ": empty property key");
    Property p;
    p.key = key;
    if (raw.is_object()) {
      for (const auto& [field, _] : raw.items()) {
        if (field != "value" && field != "meta")
          throw PgError(at + ": unexpected field \"" + field + "\"");
      }
      if (!raw.contains("value")) throw PgError(at + ": object form needs \"value\"");
      p.value = valueOf(raw.at("value"), at);
      if (auto meta = raw.find("meta"); meta != raw.end()) {
        if (!meta->is_object()) throw PgError(at + ": \"meta\" must be an object");
        for (const auto& [mk, mv] : meta->items()) {
          std::string metaAt = at + " meta '" + mk + "'";
          if (mk.empty()) throw PgError(at + ": empty meta-property key");
          if (mv.is_object()) throw PgError(metaAt + ": non-scalar meta value");
          p.meta[mk] = valueOf(mv, metaAt);
        }
      }
    } else {
      p.value = valueOf(raw, at);
    }
    out.emplace(key, std::move(p));
  }
  return out;
}

const json& arrayField(const json& doc, const char* name) {
  static const json empty = json::array();
  auto it = doc.find(name);
  if (it == doc.end()) return empty;
  if (!it->is_array()) throw PgError(std::string("\"") + name + "\" must be an array");
  return *it;
}

std::string edgeLabelOf(const json& e, const std::string& where) {
  auto single = e.find("label");
  auto many = e.find("labels");
  if (single != e.end() && many != e.end())
    throw PgError(where + ": give either \"label\" or \"labels\", not both");
  if (single != e.end()) {
    if (!single->is_string()) throw PgError(where + ": label must be a string");
    return single->get<std::string>();
  }
  if (many != e.end()) {
    if (!many->is_array()) throw PgError(where + ": \"labels\" must be an array");
    if (many->size() != 1)
      throw PgError(where + ": an edge has exactly one label, got " +
                    std::to_string(many->size()));
    if (!many->front().is_string()) throw PgError(where + ": label must be a string");
    return many->front().get<std::string>();
  }
  throw PgError(where + ": edge has no label");
}

using ordered = nlohmann::ordered_json;

ordered valueToJson(const PropertyValue& value) {
  return std::visit(
      [](const auto& v) -> ordered {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, List>) {
          ordered arr = ordered::array();
          for (const auto& s : v) std::visit([&arr](const auto& x) { arr.push_back(x); }, s);
          return arr;
        } else {
          return ordered(v);
        }
      },
      value.storage());
}

ordered propertiesToJson(const PropertyMap& properties) {
  ordered out = ordered::object();
  for (const auto& [key, p] : properties) {
    if (p.meta.empty()) {
      out[key] = valueToJson(p.value);
    } else {
      ordered meta = ordered::object();
      for (const auto& [mk, mv] : p.meta) meta[mk] = valueToJson(mv);
      out[key] = {{"value", valueToJson(p.value)}, {"meta", meta}};
    }
  }
  return out;
}

}  // namespace

PropertyGraph parsePgJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw PgError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw PgError("top-level JSON value must be an object");

  PropertyGraph graph;
  for (const auto& n : arrayField(doc, "nodes")) {
    if (!n.is_object()) throw PgError("node entries must be objects");
    if (!n.contains("id")) throw PgError("node without \"id\"");
    PgNode node;
    node.id = idOf(n.at("id"), "node");
    std::string where = "node '" + node.id + "'";
    if (auto labels = n.find("labels"); labels != n.end()) {
      if (!labels->is_array()) throw PgError(where + ": \"labels\" must be an array");
      for (const auto& l : *labels) {
        if (!l.is_string()) throw PgError(where + ": labels must be strings");
        node.labels.insert(l.get<std::string>());
      }
    }
    node.properties = propertiesOf(n, where);
    graph.addNode(std::move(node));
  }
  for (const auto& e : arrayField(doc, "edges")) {
    if (!e.is_object()) throw PgError("edge entries must be objects");
    if (!e.contains("id")) throw PgError("edge without \"id\"");
    PgEdge edge;
    edge.id = idOf(e.at("id"), "edge");
    std::string where = "edge '" + edge.id + "'";
    if (!e.contains("start") || !e.contains("end"))
      throw PgError(where + ": needs \"start\" and \"end\"");
    edge.source = idOf(e.at("start"), where);
    edge.destination = idOf(e.at("end"), where);
    edge.label = edgeLabelOf(e, where);
    edge.properties = propertiesOf(e, where);
    graph.addEdge(std::move(edge));
  }
  return graph;
}

std::string toPgJson(const PropertyGraph& graph) {
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (const auto& [id, node] : graph.nodes()) {
    nodes.push_back({{"id", id},
                     {"labels", node.labels},
                     {"properties", propertiesToJson(node.properties)}});
  }
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const auto& [id, edge] : graph.edges()) {
    edges.push_back({{"id", id},
                     {"start", edge.source},
                     {"end", edge.destination},
                     {"label", edge.label},
                     {"properties", propertiesToJson(edge.properties)}});
  }
  nlohmann::ordered_json doc = {{"nodes", nodes}, {"edges", edges}};
  return doc.dump(2) + "\n";
}

}  // namespace prec::pg
