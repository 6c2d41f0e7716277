#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace prec::pg {

using Scalar = std::variant<std::string, std::int64_t, double>;
using List = std::vector<Scalar>;

// A property value: text, integer, double or a flat list of those.
class PropertyValue {
 public:
  using Storage = std::variant<std::string, std::int64_t, double, List>;

  PropertyValue() = default;
  PropertyValue(std::string text) : storage_(std::move(text)) {}
  PropertyValue(const char* text) : storage_(std::string(text)) {}
  PropertyValue(std::int64_t integer) : storage_(integer) {}
  PropertyValue(int integer) : storage_(std::int64_t{integer}) {}
  PropertyValue(double number) : storage_(number) {}
  PropertyValue(List list) : storage_(std::move(list)) {}
  PropertyValue(const Scalar& scalar);

  const Storage& storage() const { return storage_; }
  bool isList() const { return std::holds_alternative<List>(storage_); }

  // Doubles compare equal when both are NaN.
  bool operator==(const PropertyValue& other) const;

 private:
  Storage storage_;
};

bool scalarEquals(const Scalar& a, const Scalar& b);

// Stable textual rendering used in diagnostics and signatures.
std::string toDebugString(const PropertyValue& value);

struct Property {
  std::string key;
  PropertyValue value;
  // Meta-properties carry no meta of their own.
  std::map<std::string, PropertyValue> meta;

  bool operator==(const Property&) const = default;
};

using PropertyMap = std::map<std::string, Property>;

struct PgNode {
  std::string id;
  std::set<std::string> labels;
  PropertyMap properties;
};

struct PgEdge {
  std::string id;
  std::string source;
  std::string destination;
  std::string label;
  PropertyMap properties;
};

// Nodes and edges keyed by id. The add functions enforce the model
// invariants and throw PgError.
class PropertyGraph {
 public:
  void addNode(PgNode node);
  // Endpoints must already exist.
  void addEdge(PgEdge edge);

  const std::map<std::string, PgNode>& nodes() const { return nodes_; }
  const std::map<std::string, PgEdge>& edges() const { return edges_; }

  bool empty() const { return nodes_.empty() && edges_.empty(); }

 private:
  std::map<std::string, PgNode> nodes_;
  std::map<std::string, PgEdge> edges_;
};

// True iff some bijection of node ids and of edge ids makes the graphs
// equal (labels, properties, meta-properties and endpoints).
bool equalUpToIds(const PropertyGraph& a, const PropertyGraph& b);

}  // namespace prec::pg
