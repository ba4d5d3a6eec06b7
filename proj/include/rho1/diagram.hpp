#pragma once

// Upright long-knot diagrams: a strictly increasing list of edge labels, the
// crossings (sign, incoming over edge, incoming under edge), and per-edge
// rotation numbers. Only nonzero rotation numbers are stored.

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rho1 {

using Label = std::int64_t;

struct Crossing {
  int s = 1;
  Label i = 0;  // incoming over-strand
  Label j = 0;  // incoming under-strand

  friend bool operator==(const Crossing&, const Crossing&) = default;
  friend auto operator<=>(const Crossing&, const Crossing&) = default;
};

/// A named violation of the diagram invariants.
struct InvalidDiagram : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class UprightDiagram {
 public:
  UprightDiagram() : edges_{1} {}
  UprightDiagram(std::vector<Label> edges, std::vector<Crossing> crossings,
                 std::map<Label, int> rotations = {})
      : edges_(std::move(edges)), crossings_(std::move(crossings)) {
    for (auto [k, v] : rotations)
      if (v != 0) rotations_[k] = v;
  }

  /// The diagram with edges 1..2n+1.
  static UprightDiagram with_consecutive_labels(std::vector<Crossing> crossings,
                                                std::map<Label, int> rotations = {}) {
    std::vector<Label> edges(2 * crossings.size() + 1);
    for (std::size_t k = 0; k < edges.size(); ++k) edges[k] = static_cast<Label>(k + 1);
    return UprightDiagram(std::move(edges), std::move(crossings), std::move(rotations));
  }

  const std::vector<Label>& edges() const { return edges_; }
  const std::vector<Crossing>& crossings() const { return crossings_; }
  const std::map<Label, int>& rotations() const { return rotations_; }
  std::size_t crossing_count() const { return crossings_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  Label first() const { return edges_.front(); }
  Label last() const { return edges_.back(); }

  bool has_edge(Label e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

  /// Position of a label in the edge list.
  std::size_t index_of(Label e) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e)
      throw InvalidDiagram("unknown edge label " + std::to_string(e));
    return static_cast<std::size_t>(it - edges_.begin());
  }

  Label successor(Label e) const {
    std::size_t k = index_of(e);
    if (k + 1 == edges_.size())
      throw InvalidDiagram("last edge " + std::to_string(e) + " has no successor");
    return edges_[k + 1];
  }

  int rotation(Label e) const {
    auto it = rotations_.find(e);
    return it == rotations_.end() ? 0 : it->second;
  }
  void set_rotation(Label e, int phi) {
    if (phi == 0) rotations_.erase(e);
    else rotations_[e] = phi;
  }

  int writhe() const {
    int w = 0;
    for (const auto& c : crossings_) w += c.s;
    return w;
  }
  int total_rotation() const {
    int phi = 0;
    for (auto [k, v] : rotations_) phi += v;
    return phi;
  }

  std::vector<Crossing>& mutable_crossings() { return crossings_; }
  std::vector<Label>& mutable_edges() { return edges_; }

  friend bool operator==(const UprightDiagram&, const UprightDiagram&) = default;

 private:
  std::vector<Label> edges_;
  std::vector<Crossing> crossings_;
  std::map<Label, int> rotations_;
};

/// Checks the combinatorial invariants (labels, strand structure, rotation keys).
/// Planarity and the turning equations are checked by validate() in planar.hpp.
inline void validate_structure(const UprightDiagram& d) {
  const auto& e = d.edges();
  if (e.empty()) throw InvalidDiagram("diagram has no edges");
  for (std::size_t k = 1; k < e.size(); ++k) {
    if (e[k] == e[k - 1]) throw InvalidDiagram("duplicate label " + std::to_string(e[k]));
    if (e[k] < e[k - 1]) throw InvalidDiagram("edge labels are not increasing");
  }
  if (e.size() != 2 * d.crossing_count() + 1)
    throw InvalidDiagram("broken strand: " + std::to_string(d.crossing_count()) +
                         " crossings need " + std::to_string(2 * d.crossing_count() + 1) +
                         " edges, found " + std::to_string(e.size()));
  std::set<Label> incoming;
  for (const auto& c : d.crossings()) {
    if (c.s != 1 && c.s != -1) throw InvalidDiagram("crossing sign must be +1 or -1");
    if (c.i == c.j)
      throw InvalidDiagram("crossing has i = j = " + std::to_string(c.i));
    for (Label x : {c.i, c.j}) {
      if (!d.has_edge(x)) throw InvalidDiagram("crossing references unknown edge " + std::to_string(x));
      if (x == d.last()) throw InvalidDiagram("broken strand: last edge enters a crossing");
      if (!incoming.insert(x).second)
        throw InvalidDiagram("broken strand: edge " + std::to_string(x) + " enters two crossings");
    }
  }
  for (auto [k, v] : d.rotations())
    if (!d.has_edge(k)) throw InvalidDiagram("dangling rotation key " + std::to_string(k));
}

/// Negates every crossing sign and rotation number.
inline UprightDiagram mirror(const UprightDiagram& d) {
  std::vector<Crossing> cs = d.crossings();
  for (auto& c : cs) c.s = -c.s;
  std::map<Label, int> rot;
  for (auto [k, v] : d.rotations()) rot[k] = -v;
  return UprightDiagram(d.edges(), std::move(cs), std::move(rot));
}

inline nlohmann::json to_json(const UprightDiagram& d) {
  nlohmann::json j;
  j["edges"] = d.edges();
  j["crossings"] = nlohmann::json::array();
  for (const auto& c : d.crossings()) j["crossings"].push_back({{"s", c.s}, {"i", c.i}, {"j", c.j}});
  j["rotations"] = nlohmann::json::object();
  for (auto [k, v] : d.rotations()) j["rotations"][std::to_string(k)] = v;
  return j;
}

inline UprightDiagram diagram_from_json(const nlohmann::json& j) {
  try {
    std::vector<Label> edges = j.at("edges").get<std::vector<Label>>();
    std::vector<Crossing> cs;
    for (const auto& c : j.at("crossings"))
      cs.push_back({c.at("s").get<int>(), c.at("i").get<Label>(), c.at("j").get<Label>()});
    std::map<Label, int> rot;
    if (j.contains("rotations"))
      for (const auto& [k, v] : j.at("rotations").items()) rot[std::stoll(k)] = v.get<int>();
    return UprightDiagram(std::move(edges), std::move(cs), std::move(rot));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidDiagram(std::string("malformed diagram JSON: ") + e.what());
  } catch (const std::logic_error& e) {
    throw InvalidDiagram(std::string("malformed rotation key: ") + e.what());
  }
}

}  // namespace rho1
