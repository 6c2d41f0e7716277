#include "prec/pg/property_graph.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <json.hpp>

#include "prec/error.hpp"

namespace prec::pg {

namespace {

bool doubleEquals(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

nlohmann::json scalarJson(const Scalar& s) {
  return std::visit([](const auto& v) { return nlohmann::json(v); }, s);
}

nlohmann::json valueJson(const PropertyValue& value) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, List>) {
          auto arr = nlohmann::json::array();
          for (const auto& s : v) arr.push_back(scalarJson(s));
          return arr;
        } else {
          return nlohmann::json(v);
        }
      },
      value.storage());
}

// Canonical text of a property map, used to bucket candidates.
std::string propertiesSignature(const PropertyMap& properties) {
  auto out = nlohmann::json::array();
  for (const auto& [key, p] : properties) {
    auto meta = nlohmann::json::object();
    for (const auto& [mk, mv] : p.meta) meta[mk] = valueJson(mv);
    out.push_back({key, valueJson(p.value), meta});
  }
  return out.dump();
}

void checkProperties(const PropertyMap& properties, const std::string& owner) {
  for (const auto& [key, p] : properties) {
    if (key.empty()) throw PgError(owner + ": empty property key");
    if (key != p.key)
      throw PgError(owner + ": property stored under '" + key + "' has key '" + p.key + "'");
    for (const auto& [mk, mv] : p.meta) {
      if (mk.empty()) throw PgError(owner + ": empty meta-property key on '" + key + "'");
    }
  }
}

}  // namespace

PropertyValue::PropertyValue(const Scalar& scalar)
    : storage_(std::visit([](const auto& v) { return Storage(v); }, scalar)) {}

bool scalarEquals(const Scalar& a, const Scalar& b) {
  if (a.index() != b.index()) return false;
  if (const double* x = std::get_if<double>(&a)) return doubleEquals(*x, std::get<double>(b));
  return a == b;
}

bool PropertyValue::operator==(const PropertyValue& other) const {
  if (storage_.index() != other.storage_.index()) return false;
  if (const double* x = std::get_if<double>(&storage_))
    return doubleEquals(*x, std::get<double>(other.storage_));
  if (const List* x = std::get_if<List>(&storage_)) {
    const List& y = std::get<List>(other.storage_);
    return std::equal(x->begin(), x->end(), y.begin(), y.end(), scalarEquals);
  }
  return storage_ == other.storage_;
}

std::string toDebugString(const PropertyValue& value) { return valueJson(value).dump(); }

void PropertyGraph::addNode(PgNode node) {
  if (nodes_.contains(node.id)) throw PgError("duplicate node id '" + node.id + "'");
  if (node.labels.contains("")) throw PgError("node '" + node.id + "': empty label");
  checkProperties(node.properties, "node '" + node.id + "'");
  std::string id = node.id;
  nodes_.emplace(std::move(id), std::move(node));
}

void PropertyGraph::addEdge(PgEdge edge) {
  const std::string owner = "edge '" + edge.id + "'";
  if (edges_.contains(edge.id)) throw PgError("duplicate edge id '" + edge.id + "'");
  if (edge.label.empty()) throw PgError(owner + ": empty label");
  if (!nodes_.contains(edge.source))
    throw PgError(owner + ": dangling start node '" + edge.source + "'");
  if (!nodes_.contains(edge.destination))
    throw PgError(owner + ": dangling end node '" + edge.destination + "'");
  checkProperties(edge.properties, owner);
  std::string id = edge.id;
  edges_.emplace(std::move(id), std::move(edge));
}

namespace {

// Indexed view of one graph for the bijection search.
struct Indexed {
  std::vector<std::string> ids;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::string> signatures;
  // (source, destination) -> sorted edge signatures.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>> edges;

  explicit Indexed(const PropertyGraph& g) {
    for (const auto& [id, node] : g.nodes()) {
      index[id] = ids.size();
      ids.push_back(id);
    }
    std::vector<std::vector<std::string>> outgoing(ids.size()), incoming(ids.size());
    for (const auto& [id, edge] : g.edges()) {
      std::string sig = nlohmann::json(edge.label).dump() + propertiesSignature(edge.properties);
      std::size_t s = index.at(edge.source);
      std::size_t d = index.at(edge.destination);
      edges[{s, d}].push_back(sig);
      outgoing[s].push_back(sig);
      incoming[d].push_back(sig);
    }
    for (auto& [pair, sigs] : edges) std::sort(sigs.begin(), sigs.end());
    for (const auto& [id, node] : g.nodes()) {
      std::size_t i = index.at(id);
      std::sort(outgoing[i].begin(), outgoing[i].end());
      std::sort(incoming[i].begin(), incoming[i].end());
      nlohmann::json sig = {node.labels, propertiesSignature(node.properties), outgoing[i],
                            incoming[i]};
      signatures.push_back(sig.dump());
    }
  }

  const std::vector<std::string>& between(std::size_t s, std::size_t d) const {
    static const std::vector<std::string> none;
    auto it = edges.find({s, d});
    return it == edges.end() ? none : it->second;
  }
};

class NodeMatcher {
 public:
  NodeMatcher(const Indexed& a, const Indexed& b)
      : a_(a), b_(b), forward_(a.ids.size(), kUnset), used_(b.ids.size(), false) {}

  bool search(std::size_t next = 0) {
    if (next == a_.ids.size()) return true;
    for (std::size_t candidate = 0; candidate < b_.ids.size(); ++candidate) {
      if (used_[candidate] || a_.signatures[next] != b_.signatures[candidate]) continue;
      forward_[next] = candidate;
      used_[candidate] = true;
      if (consistent(next) && search(next + 1)) return true;
      forward_[next] = kUnset;
      used_[candidate] = false;
    }
    return false;
  }

 private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  bool consistent(std::size_t node) const {
    for (std::size_t other = 0; other <= node; ++other) {
      std::size_t mn = forward_[node], mo = forward_[other];
      if (a_.between(node, other) != b_.between(mn, mo)) return false;
      if (a_.between(other, node) != b_.between(mo, mn)) return false;
    }
    return true;
  }

  const Indexed& a_;
  const Indexed& b_;
  std::vector<std::size_t> forward_;
  std::vector<bool> used_;
};

}  // namespace

bool equalUpToIds(const PropertyGraph& a, const PropertyGraph& b) {
  if (a.nodes().size() != b.nodes().size() || a.edges().size() != b.edges().size())
    return false;
  Indexed ia(a);
  Indexed ib(b);
  std::vector<std::string> sa = ia.signatures, sb = ib.signatures;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;
  // Edges between a fixed pair of nodes are interchangeable when their
  // signatures agree, so a node bijection with matching per-pair edge
  // multisets induces the edge bijection.
  return NodeMatcher(ia, ib).search();
}

}  // namespace prec::pg
